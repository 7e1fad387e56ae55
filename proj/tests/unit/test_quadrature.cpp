#include "nldet/errors.hpp"
#include "nldet/quadrature.hpp"
#include "nldet/special_functions.hpp"

#include "../oracles/expint_oracle.hpp"

#include <catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

using namespace nldet;
using namespace nldet::quad;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

constexpr double pi = std::numbers::pi;

TEST_CASE("integrate closed forms") {
    const Tolerance tol;
    auto r = integrate([](double x) { return x * x; }, 0.0, 1.0, tol);
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinRel(1.0 / 3.0, 1e-12));

    r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, tol);
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinRel(2.0, 1e-8));

    r = integrate([](double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }, -1.0, 1.0, Tolerance{1e-8, 1e-12});
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinAbs(0.0, 1e-12));
}

TEST_CASE("converged implies the error estimate meets the target") {
    const Tolerance tol{1e-10, 1e-14};
    for (double k : {1.0, 5.0, 20.0}) {
        const auto r = integrate([k](double x) { return std::cos(k * x); }, 0.0, 3.0, tol);
        REQUIRE(r.converged);
        CHECK(r.abs_error_estimate <= std::max(tol.abs_tol, tol.rel_tol * std::fabs(r.value)));
    }
}

TEST_CASE("non-finite integrand names the abscissa") {
    try {
        integrate([](double x) { return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; }, 0.0, 1.0);
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK(e.abscissa() > 0.5);
        CHECK(e.abscissa() < 1.0);
    }
}

TEST_CASE("evaluation budget exhaustion is reported, not hidden") {
    const Tolerance tol{1e-14, 1e-300, 200};
    const auto r = integrate([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, tol);
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations <= 200 + 42);
}

TEST_CASE("tolerance validation") {
    CHECK_THROWS_AS((Tolerance{0.0, 1e-14}.validate()), ValidationError);
    CHECK_THROWS_AS((Tolerance{1e-8, -1.0}.validate()), ValidationError);
    CHECK_THROWS_AS((Tolerance{1e-8, 1e-14, 0}.validate()), ValidationError);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0), ValidationError);
    const auto t = Tolerance{}.tightened(100.0);
    CHECK(t.rel_tol == Tolerance{}.rel_tol / 100.0);
}

TEST_CASE("semi-infinite closed forms") {
    const Tolerance tol{1e-10, 1e-14};
    auto r = integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, tol,
                                     DecayHint{TailClass::exponential_decay, 1.0});
    CHECK(r.converged);
    CHECK_FALSE(r.tail_unresolved);
    CHECK_THAT(r.value, WithinRel(1.0, 1e-10));

    r = integrate_semi_infinite([](double x) { return 1.0 / ((1 + x * x) * (1 + x * x)); }, 0.0, tol,
                                DecayHint{TailClass::polynomial_decay, 1.0});
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinRel(pi / 4.0, 1e-10));

    r = integrate_semi_infinite([](double x) { return x <= 1.0 ? 1.0 : 0.0; }, 0.0, tol,
                                DecayHint{TailClass::compact_support, 1.0});
    CHECK(r.converged);
    CHECK_THAT(r.value, WithinRel(1.0, 1e-12));

    r = integrate_semi_infinite([](double x) { return std::exp(-x * x); }, 0.0, tol,
                                DecayHint{TailClass::super_exponential_decay, 1.0});
    CHECK_THAT(r.value, WithinRel(std::sqrt(pi) / 2.0, 1e-10));
}

TEST_CASE("semi-infinite driver flags an unresolved tail") {
    // Hint claims fast decay but the tail is 1/x^1.05: nothing converges.
    const Tolerance tol{1e-10, 1e-14, 20000};
    const auto r = integrate_semi_infinite([](double x) { return std::pow(1.0 + x, -1.05); }, 0.0, tol,
                                           DecayHint{TailClass::exponential_decay, 1.0});
    CHECK((r.tail_unresolved || !r.converged));
}

TEST_CASE("linearity") {
    const Tolerance tol{1e-10, 1e-14};
    auto f = [](double x) { return std::exp(-x) * std::sin(3 * x); };
    auto g = [](double x) { return 1.0 / (1.0 + x * x); };
    const double alpha = 2.5, beta = -0.75;
    const auto rf = integrate(f, 0.0, 4.0, tol);
    const auto rg = integrate(g, 0.0, 4.0, tol);
    const auto rc = integrate([&](double x) { return alpha * f(x) + beta * g(x); }, 0.0, 4.0, tol);
    const double bound = std::fabs(alpha) * rf.abs_error_estimate + std::fabs(beta) * rg.abs_error_estimate +
                         rc.abs_error_estimate + 1e-15;
    CHECK(std::fabs(rc.value - (alpha * rf.value + beta * rg.value)) <= bound);
}

TEST_CASE("interval additivity") {
    const Tolerance tol{1e-10, 1e-14};
    auto f = [](double x) { return std::log(1.0 + x) * std::cos(x); };
    const auto whole = integrate(f, 0.0, 5.0, tol);
    for (double c : {0.3, 1.7, 2.5, 4.9}) {
        const auto left = integrate(f, 0.0, c, tol);
        const auto right = integrate(f, c, 5.0, tol);
        const double bound = whole.abs_error_estimate + left.abs_error_estimate + right.abs_error_estimate + 1e-15;
        CHECK(std::fabs(whole.value - left.value - right.value) <= bound);
    }
}

TEST_CASE("breakpoints variant matches the plain integral") {
    auto f = [](double x) { return std::exp(-std::fabs(x - 1.3)); };
    const std::array<double, 4> pts{-2.0, 0.0, 1.3, 4.0};
    const auto with = integrate(f, pts);
    const double exact = (1.0 - std::exp(-3.3)) + (1.0 - std::exp(-2.7));
    CHECK_THAT(with.value, WithinRel(exact, 1e-10));
}

TEST_CASE("error estimates are honest on a closed-form battery") {
    struct Case {
        std::function<double(double)> f;
        double lo, hi, exact;
    };
    const std::vector<Case> cases = {
        {[](double x) { return x * x * x; }, 0, 2, 4.0},
        {[](double x) { return std::exp(x); }, 0, 1, std::exp(1.0) - 1.0},
        {[](double x) { return std::sin(x); }, 0, pi, 2.0},
        {[](double x) { return 1.0 / (1.0 + x * x); }, -1, 1, pi / 2.0},
        {[](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3.0},
        {[](double x) { return std::log(x); }, 0, 1, -1.0},
        {[](double x) { return 1.0 / std::sqrt(1.0 - x * x); }, -1, 1, pi},
        {[](double x) { return std::cos(50.0 * x); }, 0, 1, std::sin(50.0) / 50.0},
        {[](double x) { return std::exp(-x * x); }, -3, 3, std::sqrt(pi) * std::erf(3.0)},
        {[](double x) { return 1.0 / (1e-4 + x * x); }, -1, 1, 2.0 / 1e-2 * std::atan(1.0 / 1e-2)},
        {[](double x) { return std::fabs(x - 0.3); }, 0, 1, 0.045 + 0.245},
        {[](double x) { return std::pow(x, -0.9); }, 0, 1, 10.0},
        {[](double x) { return std::exp(-x) * x * x; }, 0, 30, 2.0 - std::exp(-30.0) * (900.0 + 60.0 + 2.0)},
    };
    int honest = 0;
    int total = 0;
    for (const auto& tc : {1e-6, 1e-9, 1e-12}) {
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const auto& c = cases[i];
            const auto r = integrate(c.f, c.lo, c.hi, Tolerance{tc, 1e-300});
            const double err = std::fabs(r.value - c.exact);
            ++total;
            if (err <= 10.0 * r.abs_error_estimate + 4 * std::numeric_limits<double>::epsilon() * std::fabs(c.exact)) {
                ++honest;
            } else {
                WARN("case " << i << " tol " << tc << " err " << err << " est " << r.abs_error_estimate);
            }
        }
    }
    CHECK(honest >= static_cast<int>(std::ceil(0.95 * total)));
}

TEST_CASE("deterministic results") {
    auto f = [](double x) { return std::exp(-x) / (1.0 + x); };
    const auto a = integrate_semi_infinite(f, 0.0);
    const auto b = integrate_semi_infinite(f, 0.0);
    CHECK(a.value == b.value);
    CHECK(a.abs_error_estimate == b.abs_error_estimate);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("extrapolate_to_zero") {
    const std::array<double, 3> seq{0.1, 0.05, 0.025};
    auto lin = extrapolate_to_zero([](double e) { return 1.0 + e; }, seq);
    CHECK_THAT(lin.value, WithinAbs(1.0, 1e-14));
    auto c = extrapolate_to_zero([](double e) { return std::cos(e); }, seq);
    CHECK_THAT(c.value, WithinAbs(1.0, 1e-6));

    const std::array<double, 3> eps{1e-2, 1e-3, 1e-4};
    auto cut = extrapolate_to_zero(
        [](double e) {
            return static_cast<double>(oracle::e2_series(std::complex<long double>(-1.0, e)).imag()) / -pi;
        },
        eps);
    CHECK_THAT(cut.value, WithinAbs(1.0, 1e-4));

    const std::array<double, 2> few{0.1, 0.05};
    CHECK_THROWS_AS(extrapolate_to_zero([](double e) { return e; }, few), ValidationError);
    const std::array<double, 3> bad{0.1, 0.2, 0.05};
    CHECK_THROWS_AS(extrapolate_to_zero([](double e) { return e; }, bad), ValidationError);

    // oscillating without limit: extrapolant differences do not shrink
    const std::array<double, 5> s5{0.1, 0.05, 0.025, 0.0125, 0.00625};
    auto div = extrapolate_to_zero([](double e) { return std::sin(1.0 / e); }, s5);
    CHECK_FALSE(div.converged);
    CHECK(c.converged);
}
