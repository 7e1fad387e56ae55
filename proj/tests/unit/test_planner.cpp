#include "nldet/errors.hpp"
#include "nldet/planner.hpp"
#include "nldet/response.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace nldet;
using namespace nldet::planner;
using Catch::Matchers::WithinRel;

TEST_CASE("species catalog") {
    const auto catalog = load_catalog(default_catalog_path());
    const auto& na = find_species(catalog, "Na-20");
    CHECK(na.half_life.value == 0.5);
    CHECK(na.gamma_energy.value == 11.0);
    CHECK(sodium20().name == "Na-20");
    CHECK_THROWS_AS(find_species(catalog, "U-238"), ValidationError);
    CHECK_THROWS_AS(make_species("x", Seconds{0.0}, MeV{1.0}), ValidationError);
    CHECK_THROWS_AS(make_species("x", Seconds{1.0}, MeV{-1.0}), ValidationError);

    const auto path = std::filesystem::temp_directory_path() / "nldet_bad_catalog.json";
    std::ofstream(path) << R"({"format_version": 2, "species": []})";
    CHECK_THROWS_AS(load_catalog(path), ValidationError);
    std::ofstream(path) << R"({"format_version": 1, "species": [{"name": "X"}]})";
    CHECK_THROWS_AS(load_catalog(path), ValidationError);
    std::filesystem::remove(path);
}

TEST_CASE("gamma_events") {
    const auto na = sodium20();
    CHECK(gamma_events(6e23, na, Seconds{0.0}) == 0.0);
    for (auto conv : {DecayConvention::paper, DecayConvention::standard}) {
        CHECK_THAT(gamma_events(6e23, na, Seconds{10.0}, conv), WithinRel(6e23, 1e-5));
    }
    CHECK_THAT(gamma_events(1000.0, na, Seconds{0.5}, DecayConvention::standard), WithinRel(500.0, 1e-14));
    CHECK_THAT(gamma_events(1000.0, na, Seconds{0.5}, DecayConvention::paper),
               WithinRel(1000.0 * (1.0 - std::exp(-1.0 / std::log(2.0))), 1e-14));
    CHECK_THROWS_AS(gamma_events(10.0, na, Seconds{-1.0}), ValidationError);
}

TEST_CASE("gamma_events is monotone and bounded") {
    const auto na = sodium20();
    for (auto conv : {DecayConvention::paper, DecayConvention::standard}) {
        double prev = 0.0;
        for (double t = 0.0; t < 40.0; t += 0.05) {
            const double n = gamma_events(1e6, na, Seconds{t}, conv);
            CHECK(n >= prev);
            CHECK(n <= 1e6);
            prev = n;
        }
    }
}

TEST_CASE("min_resolvable_delta") {
    CHECK_THAT(min_resolvable_delta(1e23), WithinRel(1e-23, 1e-15));
    CHECK(min_resolvable_delta(1.0, StatisticsCriterion::paper_inverse) == 1.0);
    CHECK(min_resolvable_delta(1.0, StatisticsCriterion::shot_noise) == 1.0);
    CHECK_THAT(min_resolvable_delta(1e10, StatisticsCriterion::shot_noise), WithinRel(1e-5, 1e-15));
    CHECK_THROWS_AS(min_resolvable_delta(0.0), ValidationError);
}

TEST_CASE("nonlocality_bound") {
    const double b1 = nonlocality_bound(1e-10, RadPerSecond{1e22}).value;
    CHECK(b1 >= 1e-19);
    CHECK(b1 < 1e-18);
    CHECK_THAT(b1, WithinRel(2.99792458e-19, 1e-14));
    const double b2 = nonlocality_bound(1e-23, RadPerSecond{1e22}).value;
    CHECK(b2 >= 5e-26);
    CHECK(b2 < 5e-25);
    CHECK_THAT(nonlocality_bound(4e-10, RadPerSecond{1e22}).value / b1, WithinRel(2.0, 1e-15));
    CHECK(nonlocality_bound(1e-10, RadPerSecond{-1e22}).value == b1);
    CHECK_THROWS_AS(nonlocality_bound(0.0, RadPerSecond{1e22}), ValidationError);
    CHECK_THROWS_AS(nonlocality_bound(-1.0, RadPerSecond{1e22}), ValidationError);
    CHECK_THROWS_AS(nonlocality_bound(1e-10, RadPerSecond{0.0}), ValidationError);
}

TEST_CASE("bound inverts asymptotic_delta") {
    for (double omega : {1e15, -3.3e19, 1e22, 7.7e24}) {
        for (double l : {1e-25, 2.5e-21, 3e-19, 1e-15}) {
            const double d = asymptotic_delta(RadPerSecond{omega}, Meters{l});
            const double back = nonlocality_bound(d, RadPerSecond{omega}).value;
            CHECK_THAT(back, WithinRel(l, 4e-16));
        }
    }
}

TEST_CASE("confound_check") {
    auto r = confound_check(MeV{11.0}, {kElectronMassMeV});
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].confound);
    CHECK_FALSE(r.clean);
    CHECK_FALSE(r.below_electron_threshold);
    r = confound_check(MeV{1.0}, {kElectronMassMeV});
    CHECK_FALSE(r.entries[0].confound);
    CHECK(r.clean);
    CHECK(r.below_electron_threshold);
    CHECK_THAT(r.electron_threshold_mev, WithinRel(1.0219979, 1e-7));
    CHECK(confound_check(MeV{11.0}, {}).clean);
    CHECK_THROWS_AS(confound_check(MeV{0.0}, {}), ValidationError);
}

TEST_CASE("plan chains the estimates") {
    ExperimentPlan p;
    p.n_atoms = 6e23;
    p.duration = Seconds{10.0};
    p.efficiency = 1e-3;
    const auto r = plan(p, sodium20(), RadPerSecond{1.67e22});
    CHECK_THAT(r.detected_events, WithinRel(6e20, 1e-5));
    CHECK_THAT(r.min_delta, WithinRel(1.0 / 6e20, 1e-5));
    CHECK_THAT(r.bound.value, WithinRel(kSpeedOfLight * std::sqrt(r.min_delta) / 1.67e22, 1e-15));
    CHECK(r.bound_rounded == round_significant(r.bound.value, 1));
    CHECK(r.electron_confound.entries[0].confound);
    CHECK_THAT(r.omega_energy_mev, WithinRel(10.99, 1e-3));

    ExperimentPlan q;
    q.n_atoms = 1e10;
    q.duration = Seconds{1e3};
    q.efficiency = 1.0;
    const auto s = plan(q, sodium20(), RadPerSecond{1e22});
    CHECK_THAT(s.min_delta, WithinRel(1e-10, 1e-12));
    CHECK(s.bound.value >= 1e-19);
    CHECK(s.bound.value < 1e-18);

    ExperimentPlan z = p;
    z.duration = Seconds{0.0};
    CHECK_THROWS_AS(plan(z, sodium20(), RadPerSecond{1e22}), ValidationError);
    z = p;
    z.efficiency = 0.0;
    CHECK_THROWS_AS(plan(z, sodium20(), RadPerSecond{1e22}), ValidationError);
    z.efficiency = 1.5;
    CHECK_THROWS_AS(plan(z, sodium20(), RadPerSecond{1e22}), ValidationError);
}

TEST_CASE("plan bound never weakens with more resources") {
    ExperimentPlan base;
    base.n_atoms = 1e12;
    base.duration = Seconds{0.3};
    base.efficiency = 0.01;
    const RadPerSecond omega{1e22};
    for (auto crit : {StatisticsCriterion::paper_inverse, StatisticsCriterion::shot_noise}) {
        base.statistics_criterion = crit;
        const double b0 = plan(base, sodium20(), omega).bound.value;
        auto more = base;
        more.n_atoms *= 10.0;
        CHECK(plan(more, sodium20(), omega).bound.value <= b0);
        more = base;
        more.duration = Seconds{0.6};
        CHECK(plan(more, sodium20(), omega).bound.value <= b0);
        more = base;
        more.efficiency = 0.5;
        CHECK(plan(more, sodium20(), omega).bound.value <= b0);
    }
}

TEST_CASE("round_significant") {
    CHECK(round_significant(2.449e-19, 1) == 2e-19);
    CHECK(round_significant(0.0, 1) == 0.0);
    CHECK(round_significant(-96.0, 1) == -100.0);
}
