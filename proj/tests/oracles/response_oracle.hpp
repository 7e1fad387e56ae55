#pragma once

// Independent evaluations of the detector responses.
//  - excess by the opposite integration order (m^2 inner, w outer);
//  - the massive response as a Monte Carlo estimate of the momentum integral
//    d^3k / ((2 pi)^3 2 w) |chi~(w + a)|^2 with w = sqrt(k^2 + m^2).

#include "gauss_legendre.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace oracle {

inline constexpr double kMeasure = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);

using Fn = std::function<double(double)>;

// excess / lambda^2 = C int_0^inf dw chi2(w + a) int_0^{w^2} ds rho(lambda^2 s) sqrt(w^2 - s)
// Inner integral in t with s = w^2 - t^2: int_0^w 2 t^2 rho(lambda^2 (w^2 - t^2)) dt.
// Outer integral truncated to [w_lo, w_hi] with the support of chi2.
inline double excess_swapped(double a, double lambda, const Fn& chi2, const Fn& rho, double w_lo, double w_hi,
                             int panels = 400) {
    const double l2 = lambda * lambda;
    auto inner = [&](double w) {
        if (w <= 0.0) return 0.0;
        auto g = [&](double t) { return 2.0 * t * t * rho(l2 * (w * w - t * t)); };
        const int p = std::max(2, static_cast<int>(std::ceil(w * lambda * 50.0)));
        return composite_gl(g, 0.0, w, std::min(p, 2000), 16);
    };
    auto outer = [&](double w) { return chi2(w + a) * inner(w); };
    return kMeasure * composite_gl(outer, std::max(0.0, w_lo), w_hi, panels, 16) * l2;
}

struct McEstimate {
    double mean;
    double stderr_;
};

// Importance sampling in R^3: isotropic direction, radius drawn from an equal
// mixture of a folded normal N(mu, s) and an exponential of rate `rate`.
inline McEstimate massive_response_mc(double a, double m, const Fn& chi2, double mu, double s, double rate,
                                      std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(mu, s);
    std::exponential_distribution<double> expo(rate);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double pi = std::numbers::pi;
    auto folded_pdf = [&](double r) {
        const double c = 1.0 / (s * std::sqrt(2.0 * pi));
        return c * (std::exp(-0.5 * (r - mu) * (r - mu) / (s * s)) + std::exp(-0.5 * (r + mu) * (r + mu) / (s * s)));
    };
    double sum = 0.0;
    double sum2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = unit(gen) < 0.5 ? std::fabs(normal(gen)) : expo(gen);
        // Direction is drawn for completeness; the integrand is isotropic.
        const double cz = 2.0 * unit(gen) - 1.0;
        const double phi = 2.0 * pi * unit(gen);
        const double kx = r * std::sqrt(1.0 - cz * cz) * std::cos(phi);
        const double ky = r * std::sqrt(1.0 - cz * cz) * std::sin(phi);
        const double kz = r * cz;
        const double k2 = kx * kx + ky * ky + kz * kz;
        const double w = std::sqrt(k2 + m * m);
        const double radial_pdf = 0.5 * folded_pdf(r) + 0.5 * rate * std::exp(-rate * r);
        const double pdf3 = radial_pdf / (4.0 * pi * r * r);
        const double f = chi2(w + a) / (std::pow(2.0 * pi, 3) * 2.0 * w);
        const double v = f / pdf3;
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = (sum2 / static_cast<double>(n) - mean * mean) / static_cast<double>(n - 1);
    return {mean, std::sqrt(std::max(var, 0.0))};
}

} // namespace oracle
