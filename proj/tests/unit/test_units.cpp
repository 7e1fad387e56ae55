#include "nldet/errors.hpp"
#include "nldet/units.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using namespace nldet;
using Catch::Matchers::WithinRel;

TEST_CASE("make_config forms the dimensionless groups") {
    const auto cfg = make_config(RadPerSecond{1e22}, Seconds{1e-18}, Meters{1e-19});
    CHECK_THAT(cfg.a(), WithinRel(1e4, 1e-15));
    // l_n / (c T) = 1e-19 / (299792458 * 1e-18)
    CHECK_THAT(cfg.lambda(), WithinRel(3.3356409519815204e-10, 1e-14));
    CHECK(DetectorConfig::c() == 299792458.0);

    const auto zero = make_config(RadPerSecond{0.0}, Seconds{1.0}, Meters{0.0});
    CHECK(zero.a() == 0.0);
    CHECK(zero.lambda() == 0.0);

    const auto neg = make_config(RadPerSecond{-1e22}, Seconds{1e-18}, Meters{1e-19});
    CHECK_THAT(neg.a(), WithinRel(-1e4, 1e-15));
    CHECK(neg.lambda() == cfg.lambda());
}

TEST_CASE("make_config rejects invalid fields by name") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto field_of = [](auto&& fn) {
        try {
            fn();
        } catch (const ValidationError& e) {
            return e.field();
        }
        return std::string("none");
    };
    CHECK(field_of([] { make_config(RadPerSecond{1.0}, Seconds{0.0}, Meters{1.0}); }) == "t_window");
    CHECK(field_of([] { make_config(RadPerSecond{1.0}, Seconds{-1.0}, Meters{1.0}); }) == "t_window");
    CHECK(field_of([] { make_config(RadPerSecond{1.0}, Seconds{1.0}, Meters{-1e-20}); }) == "l_n");
    CHECK(field_of([&] { make_config(RadPerSecond{nan}, Seconds{1.0}, Meters{1.0}); }) == "omega");
    CHECK(field_of([] {
              make_config(RadPerSecond{std::numeric_limits<double>::infinity()}, Seconds{1.0}, Meters{1.0});
          }) == "omega");
    CHECK(field_of([&] { make_config(RadPerSecond{1.0}, Seconds{nan}, Meters{1.0}); }) == "t_window");
}

TEST_CASE("groups depend only on omega*T and l_n/T") {
    const auto c1 = make_config(RadPerSecond{2e20}, Seconds{5e-17}, Meters{4e-20});
    const auto c2 = make_config(RadPerSecond{1e20}, Seconds{1e-16}, Meters{8e-20});
    CHECK_THAT(c1.a(), WithinRel(c2.a(), 1e-15));
    CHECK_THAT(c1.lambda(), WithinRel(c2.lambda(), 1e-15));
}

TEST_CASE("classify_regime examples") {
    const auto cfg = make_config(RadPerSecond{-1e22}, Seconds{1e-18}, Meters{1e-19});
    const auto tag = classify_regime(cfg);
    CHECK(tag.gap_sign == GapSign::negative);
    CHECK(tag.time_regime == TimeRegime::long_time);
    CHECK(tag.validity == Validity::low_energy_valid);

    CHECK(classify_regime(DimensionlessGroups{1e-3, 0.0}).time_regime == TimeRegime::short_time);
    CHECK(classify_regime(DimensionlessGroups{1e-3, 0.0}).gap_sign == GapSign::positive);
    CHECK(classify_regime(DimensionlessGroups{0.0, 0.0}).gap_sign == GapSign::near_zero);

    // |Omega| l_n / c = lambda |a| = 0.5
    CHECK(classify_regime(DimensionlessGroups{5e3, 1e-4}).validity == Validity::invalid);
    // T c / l_n = 1/lambda must exceed 1/eps
    CHECK(classify_regime(DimensionlessGroups{1.0, 0.5}).validity == Validity::invalid);
}

TEST_CASE("classify_regime boundaries are intermediate / invalid") {
    const RegimeThresholds th;
    CHECK(classify_regime(DimensionlessGroups{th.long_a, 0.0}, th).time_regime == TimeRegime::intermediate);
    CHECK(classify_regime(DimensionlessGroups{-th.long_a, 0.0}, th).time_regime == TimeRegime::intermediate);
    CHECK(classify_regime(DimensionlessGroups{th.short_a, 0.0}, th).time_regime == TimeRegime::intermediate);
    CHECK(classify_regime(DimensionlessGroups{1.0, th.low_energy_eps}, th).validity == Validity::invalid);

    RegimeThresholds custom;
    custom.long_a = 10.0;
    custom.near_zero_a = 0.1;
    CHECK(classify_regime(DimensionlessGroups{20.0, 0.0}, custom).time_regime == TimeRegime::long_time);
    CHECK(classify_regime(DimensionlessGroups{-0.05, 0.0}, custom).gap_sign == GapSign::near_zero);
}

TEST_CASE("classify_regime is pure") {
    const DimensionlessGroups g{-123.0, 1e-7};
    CHECK(classify_regime(g) == classify_regime(g));
}

TEST_CASE("energy conversion round trip") {
    const auto e = to_energy(RadPerSecond{1.67e22});
    CHECK_THAT(e.value, WithinRel(10.992, 1e-3));
    CHECK_THAT(to_angular_frequency(e).value, WithinRel(1.67e22, 1e-15));
}

TEST_CASE("regime tags have stable names") {
    CHECK(to_string(GapSign::near_zero) == "near-zero");
    CHECK(to_string(TimeRegime::long_time) == "long");
    CHECK(to_string(Validity::low_energy_valid) == "low-energy-valid");
}
