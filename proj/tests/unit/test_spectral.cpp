#include "nldet/errors.hpp"
#include "nldet/spectral.hpp"

#include "../oracles/expint_oracle.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace nldet;
using Catch::Matchers::WithinRel;

constexpr double pi = std::numbers::pi;

TEST_CASE("exponential spectral function") {
    CHECK(rho_hat_exponential(0.0) == 1.0);
    CHECK_THAT(rho_hat_exponential(0.5, 2.0), WithinRel(std::exp(-1.0), 1e-15));
    const double tail = rho_hat_exponential(100.0);
    CHECK(tail >= 0.0);
    CHECK_THAT(tail, WithinRel(std::exp(-100.0), 1e-15));
    CHECK(rho_hat_exponential(1e4) == 0.0);
    CHECK_THROWS_AS(rho_hat_exponential(-1e-3), DomainError);
}

TEST_CASE("causal-set reference values") {
    CHECK(rho_hat_causalset(0.0) == pi);
    CHECK_THAT(rho_hat_causalset(1e-2), WithinRel(2.983547431815842, 1e-10));
    CHECK_THAT(rho_hat_causalset(0.5), WithinRel(1.5324631537035563, 1e-10));
    CHECK_THAT(rho_hat_causalset(2.0), WithinRel(0.8096681087256681, 1e-10));
    CHECK_THAT(rho_hat_causalset(10.0), WithinRel(0.15519141349321336, 1e-10));
    CHECK_THAT(rho_hat_causalset(50.0), WithinRel(2.288662967299028e-8, 1e-9));
    CHECK_THAT(rho_hat_causalset(80.0), WithinRel(1.921589678171124e-14, 1e-9));
    CHECK(rho_hat_causalset(80.0) <= 1e-10 * rho_hat_causalset(0.0));
    CHECK_THROWS_AS(rho_hat_causalset(-1.0), DomainError);
}

TEST_CASE("causal-set closed form matches the eps -> 0+ definition") {
    for (double lx = -2.0; lx <= std::log10(50.0) + 1e-12; lx += 0.125) {
        const double x = std::pow(10.0, lx);
        INFO("x = " << x);
        CHECK_THAT(rho_hat_causalset(x), WithinRel(oracle::rho_cs_extrapolated(x), 1e-6));
    }
}

TEST_CASE("positivity on a log grid") {
    for (double lx = -8.0; lx <= 3.0; lx += 0.05) {
        const double x = std::pow(10.0, lx);
        CHECK(rho_hat_causalset(x) >= 0.0);
        CHECK(rho_hat_exponential(x) >= 0.0);
    }
    CHECK(std::isfinite(rho_hat_causalset(1e5)));
}

TEST_CASE("plateau below 1e-3") {
    for (auto kind : kAllSpectralKinds) {
        const SpectralFunction rho(kind);
        for (double x : {1e-8, 1e-6, 1e-4, 1e-3}) {
            CHECK(std::fabs(rho.rho_hat(x) / rho.plateau() - 1.0) < 0.01);
        }
    }
    CHECK(SpectralFunction(SpectralKind::causal_set).plateau() == pi);
    CHECK(SpectralFunction(SpectralKind::exponential).plateau() == 1.0);
}

TEST_CASE("log rho decreases at least linearly beyond x = 5") {
    for (auto kind : kAllSpectralKinds) {
        const SpectralFunction rho(kind);
        for (double x = 5.0; x < 200.0; x += 1.0) {
            const double slope = std::log(rho.rho_hat(x + 1.0)) - std::log(rho.rho_hat(x));
            CHECK(slope <= -0.05);
        }
    }
}

TEST_CASE("suppression point") {
    for (auto kind : kAllSpectralKinds) {
        const SpectralFunction rho(kind);
        const double x = rho.suppression_point(1e-20);
        CHECK(rho.rho_hat(x) < 1e-20 * rho.plateau());
        CHECK(rho.rho_hat(0.999 * x) >= 0.9e-20 * rho.plateau());
    }
}

TEST_CASE("spectral construction") {
    CHECK(SpectralFunction::from_name("causal-set").kind() == SpectralKind::causal_set);
    CHECK(SpectralFunction::from_name("exponential", 2.0).alpha() == 2.0);
    CHECK_THROWS_AS(SpectralFunction::from_name("gaussian"), ValidationError);
    CHECK_THROWS_AS(SpectralFunction(SpectralKind::exponential, 0.0), ValidationError);
    CHECK_THROWS_AS(SpectralFunction(SpectralKind::exponential, -1.0), ValidationError);
}
