#include "nldet/special_functions.hpp"

#include "nldet/detail/gauss_kronrod.hpp"
#include "nldet/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace nldet::special {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr double kSeriesLimit = 40.0;
constexpr double kRootWindow = 0.1;

// gamma + ln x + sum_{k>=1} x^k / (k k!), all terms positive for x > 0.
double ei_series(double x) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 500; ++k) {
        term *= x / k;
        const double contrib = term / k;
        sum += contrib;
        if (contrib < kEps * 0.25 * sum) break;
    }
    return kEulerGamma + std::log(x) + sum;
}

// sum_{k>=0} k!/x^k truncated at the smallest term.
double asymptotic_sum(double x, int first_k) {
    double term = 1.0;
    double sum = first_k == 0 ? 1.0 : 0.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * k / x;
        if (next > term) break;
        term = next;
        if (k >= first_k) sum += term;
        if (term < kEps * 0.25 * std::fabs(sum)) break;
    }
    return sum;
}

// Ei(x) = int_{x0}^{x} e^t / t dt near the positive root, where the series
// loses relative accuracy to cancellation.
double ei_near_root(double x) {
    const double half = 0.5 * (x - kEiRoot);
    const double mid = 0.5 * (x + kEiRoot);
    double sum = 0.0;
    for (std::size_t j = 0; j < detail::kWg10.size(); ++j) {
        const double node = detail::kXgk21[2 * j + 1];
        const double t1 = mid - half * node;
        const double t2 = mid + half * node;
        sum += detail::kWg10[j] * (std::exp(t1) / t1 + std::exp(t2) / t2);
    }
    return sum * half;
}

} // namespace

double expint_ei(double x) {
    if (!(x > 0.0)) throw DomainError("expint_ei: argument must be > 0");
    if (x < kTiny) throw DomainError("expint_ei: argument below 1e-300 (logarithmic divergence)");
    if (std::fabs(x - kEiRoot) < kRootWindow) return ei_near_root(x);
    if (x <= kSeriesLimit) return ei_series(x);
    if (x > 709.0) return std::numeric_limits<double>::infinity();
    return std::exp(x) / x * asymptotic_sum(x, 0);
}

double expint_e1(double x) {
    if (!(x > 0.0)) throw DomainError("expint_e1: argument must be > 0");
    if (x <= 1.0) {
        // -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 100; ++k) {
            term *= -x / k;
            const double contrib = term / k;
            sum += contrib;
            if (std::fabs(contrib) < kEps * 0.25 * std::fabs(sum)) break;
        }
        return -kEulerGamma - std::log(x) - sum;
    }
    // Modified Lentz for the continued fraction e^{-x} / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...))).
    constexpr double fpmin = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h * std::exp(-x);
}

double expint_en(int n, double x) {
    if (n < 0) throw DomainError("expint_en: order must be >= 0");
    if (x < 0.0 || (x == 0.0 && n <= 1)) throw DomainError("expint_en: argument out of domain");
    if (n == 0) return std::exp(-x) / x;
    const int nm1 = n - 1;
    if (x == 0.0) return 1.0 / nm1;

    constexpr double fpmin = 1e-300;
    if (x > 1.0) {
        double b = x + n;
        double c = 1.0 / fpmin;
        double d = 1.0 / b;
        double h = d;
        for (int i = 1; i < 1000; ++i) {
            const double an = -static_cast<double>(i) * (nm1 + i);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            const double del = c * d;
            h *= del;
            if (std::fabs(del - 1.0) < kEps) break;
        }
        return h * std::exp(-x);
    }

    double ans = nm1 != 0 ? 1.0 / nm1 : -std::log(x) - kEulerGamma;
    double fact = 1.0;
    for (int i = 1; i < 1000; ++i) {
        fact *= -x / i;
        double del;
        if (i != nm1) {
            del = -fact / (i - nm1);
        } else {
            double psi = -kEulerGamma;
            for (int ii = 1; ii <= nm1; ++ii) psi += 1.0 / ii;
            del = fact * (-std::log(x) + psi);
        }
        ans += del;
        if (std::fabs(del) < std::fabs(ans) * kEps) break;
    }
    return ans;
}

BranchValue expint_e2_on_cut(double x, CutSide side) {
    if (!(x > 0.0)) throw DomainError("expint_e2_on_cut: argument must be > 0");
    BranchValue v;
    v.side = side == CutSide::above ? BranchValue::Side::above_cut : BranchValue::Side::below_cut;
    const double imag = -std::numbers::pi * x;
    v.imag_part = side == CutSide::above ? imag : -imag;

    if (x < kTiny) {
        v.real_part = 1.0;
    } else if (x <= kSeriesLimit) {
        v.real_part = std::exp(x) - x * expint_ei(x);
    } else {
        // e^x - x Ei(x) = -e^x sum_{k>=1} k!/x^k; avoids the cancellation.
        v.real_part = -std::exp(x) * asymptotic_sum(x, 1);
    }
    return v;
}

double expint_e2_cut_real_scaled(double x) {
    if (!(x > 0.0)) throw DomainError("expint_e2_cut_real_scaled: argument must be > 0");
    if (x < kTiny) return 1.0;
    if (x <= kSeriesLimit) return 1.0 - x * expint_ei(x) * std::exp(-x);
    return -asymptotic_sum(x, 1);
}

double erfc(double x) { return std::erfc(x); }

} // namespace nldet::special
