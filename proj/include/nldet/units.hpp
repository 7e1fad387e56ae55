#pragma once

// Physical parameters of an inertial detector and the dimensionless groups
// the numerical engine runs on. Natural units (hbar = c = 1) are used
// everywhere past this header; SI only enters through DetectorConfig.

#include <string_view>

namespace nldet {

inline constexpr double kSpeedOfLight = 299'792'458.0;      // m/s
inline constexpr double kHbarMeVSeconds = 6.582119569e-22;  // MeV s
inline constexpr double kElectronMassMeV = 0.51099895;

struct RadPerSecond { double value; };
struct Seconds { double value; };
struct Meters { double value; };
struct MeV { double value; };

/// Angular frequency -> photon energy (E = hbar * omega).
constexpr MeV to_energy(RadPerSecond omega) { return MeV{omega.value * kHbarMeVSeconds}; }
constexpr RadPerSecond to_angular_frequency(MeV e) { return RadPerSecond{e.value / kHbarMeVSeconds}; }

/// a = Omega T, lambda = l_n / (c T).
struct DimensionlessGroups {
    double a = 0.0;
    double lambda = 0.0;
};

class DetectorConfig {
public:
    RadPerSecond omega() const { return omega_; }
    Seconds t_window() const { return t_window_; }
    Meters l_n() const { return l_n_; }
    static constexpr double c() { return kSpeedOfLight; }

    double a() const { return groups_.a; }
    double lambda() const { return groups_.lambda; }
    DimensionlessGroups groups() const { return groups_; }

private:
    friend DetectorConfig make_config(RadPerSecond, Seconds, Meters);
    DetectorConfig(RadPerSecond omega, Seconds t, Meters l, DimensionlessGroups g)
        : omega_(omega), t_window_(t), l_n_(l), groups_(g) {}

    RadPerSecond omega_;
    Seconds t_window_;
    Meters l_n_;
    DimensionlessGroups groups_;
};

/// Throws ValidationError naming the field for non-finite input,
/// t_window <= 0 or l_n < 0.
DetectorConfig make_config(RadPerSecond omega, Seconds t_window, Meters l_n);

enum class GapSign { positive, negative, near_zero };
enum class TimeRegime { short_time, long_time, intermediate };
enum class Validity { low_energy_valid, invalid };

struct RegimeThresholds {
    double long_a = 1e2;         // |a| > long_a is "long"
    double short_a = 1e-2;       // |a| < short_a is "short"
    double low_energy_eps = 1e-2;
    double near_zero_a = 0.0;    // |a| <= near_zero_a has no definite gap sign
};

struct RegimeTag {
    GapSign gap_sign = GapSign::near_zero;
    TimeRegime time_regime = TimeRegime::intermediate;
    Validity validity = Validity::invalid;

    friend bool operator==(const RegimeTag&, const RegimeTag&) = default;
};

// Low-energy validity: |Omega| l_n / c = lambda |a| < eps and
// T c / l_n = 1 / lambda > 1 / eps. Values exactly on a threshold are
// classified as intermediate / invalid.
RegimeTag classify_regime(DimensionlessGroups groups, const RegimeThresholds& thresholds = {});
RegimeTag classify_regime(const DetectorConfig& config, const RegimeThresholds& thresholds = {});

std::string_view to_string(GapSign s);
std::string_view to_string(TimeRegime r);
std::string_view to_string(Validity v);

} // namespace nldet
