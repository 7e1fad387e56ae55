#include "nldet/units.hpp"

#include "nldet/errors.hpp"

#include <cmath>

namespace nldet {

DetectorConfig make_config(RadPerSecond omega, Seconds t_window, Meters l_n) {
    if (!std::isfinite(omega.value)) throw ValidationError("omega", "must be finite");
    if (!std::isfinite(t_window.value)) throw ValidationError("t_window", "must be finite");
    if (!std::isfinite(l_n.value)) throw ValidationError("l_n", "must be finite");
    if (t_window.value <= 0.0) throw ValidationError("t_window", "must be > 0");
    if (l_n.value < 0.0) throw ValidationError("l_n", "must be >= 0");

    DimensionlessGroups g;
    g.a = omega.value * t_window.value;
    g.lambda = l_n.value / (kSpeedOfLight * t_window.value);
    return DetectorConfig(omega, t_window, l_n, g);
}

RegimeTag classify_regime(DimensionlessGroups groups, const RegimeThresholds& th) {
    RegimeTag tag;
    const double abs_a = std::fabs(groups.a);

    if (abs_a <= th.near_zero_a) tag.gap_sign = GapSign::near_zero;
    else tag.gap_sign = groups.a > 0.0 ? GapSign::positive : GapSign::negative;

    if (abs_a > th.long_a) tag.time_regime = TimeRegime::long_time;
    else if (abs_a < th.short_a) tag.time_regime = TimeRegime::short_time;
    else tag.time_regime = TimeRegime::intermediate;

    const bool low_energy = groups.lambda * abs_a < th.low_energy_eps;
    const bool long_enough = groups.lambda < th.low_energy_eps;
    tag.validity = (low_energy && long_enough) ? Validity::low_energy_valid : Validity::invalid;
    return tag;
}

RegimeTag classify_regime(const DetectorConfig& config, const RegimeThresholds& th) {
    return classify_regime(config.groups(), th);
}

std::string_view to_string(GapSign s) {
    switch (s) {
    case GapSign::positive: return "positive";
    case GapSign::negative: return "negative";
    case GapSign::near_zero: return "near-zero";
    }
    return "?";
}

std::string_view to_string(TimeRegime r) {
    switch (r) {
    case TimeRegime::short_time: return "short";
    case TimeRegime::long_time: return "long";
    case TimeRegime::intermediate: return "intermediate";
    }
    return "?";
}

std::string_view to_string(Validity v) {
    return v == Validity::low_energy_valid ? "low-energy-valid" : "invalid";
}

} // namespace nldet
