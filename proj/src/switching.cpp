#include "nldet/switching.hpp"

#include "nldet/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace nldet {
namespace {

using std::numbers::pi;

// Wynn epsilon acceleration of a sequence of partial sums. Returns the last
// entry of the highest even column and the change from the previous one.
struct Accelerated {
    double value;
    double error;
};

Accelerated wynn_epsilon(const std::vector<double>& sums) {
    const std::size_t n = sums.size();
    std::vector<double> prev(n + 1, 0.0);  // column k-2
    std::vector<double> cur(sums);         // column k-1
    double best = sums.back();
    double previous_best = n >= 2 ? sums[n - 2] : best;
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<double> next(cur.size() - 1);
        bool degenerate = false;
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            const double diff = cur[i + 1] - cur[i];
            if (diff == 0.0) {
                degenerate = true;
                break;
            }
            next[i] = prev[i + 1] + 1.0 / diff;
        }
        if (degenerate) break;
        prev = std::move(cur);
        cur = std::move(next);
        if (k % 2 == 0 && !cur.empty()) {
            if (cur.size() >= 2) previous_best = cur[cur.size() - 2];
            else previous_best = best;
            best = cur.back();
        }
    }
    return {best, std::fabs(best - previous_best)};
}

// int_0^inf h(t) dt for h with zeros at (k + phase) * period, summed over
// half-periods and accelerated.
quad::QuadratureResult oscillatory_tail_sum(const quad::Integrand& h, double half_period, double first_zero,
                                            const quad::Tolerance& tol) {
    quad::QuadratureResult out;
    std::vector<double> sums;
    double sum = 0.0;
    double lo = 0.0;
    double hi = first_zero;
    double err = 0.0;
    int small_terms = 0;
    Accelerated acc{0.0, std::numeric_limits<double>::infinity()};
    for (int k = 0; k < 400; ++k) {
        const auto piece = quad::integrate(h, lo, hi, tol.tightened(10.0));
        out.evaluations += piece.evaluations;
        err += piece.abs_error_estimate;
        sum += piece.value;
        sums.push_back(sum);
        lo = hi;
        hi += half_period;

        const double target = std::max(tol.abs_tol, tol.rel_tol * std::fabs(sum));
        small_terms = std::fabs(piece.value) < 1e-3 * target ? small_terms + 1 : 0;
        if (small_terms >= 2) {
            out.value = sum;
            out.abs_error_estimate = err;
            out.converged = err <= target;
            return out;
        }
        if (sums.size() >= 8 && sums.size() % 2 == 0) {
            const std::size_t window = std::min<std::size_t>(sums.size(), 40);
            std::vector<double> tail(sums.end() - static_cast<std::ptrdiff_t>(window), sums.end());
            const Accelerated next = wynn_epsilon(tail);
            const bool stable = std::fabs(next.value - acc.value) < 0.1 * target;
            acc = next;
            if (stable && acc.error < target) {
                out.value = acc.value;
                out.abs_error_estimate = acc.error + err;
                out.converged = out.abs_error_estimate <= 10.0 * target;
                return out;
            }
        }
    }
    out.value = acc.value;
    out.abs_error_estimate = acc.error + err;
    out.converged = false;
    return out;
}

// int_0^inf sin(s)/s ds, evaluated numerically.
quad::QuadratureResult sine_integral_infinity(const quad::Tolerance& tol) {
    auto h = [](double s) { return s == 0.0 ? 1.0 : std::sin(s) / s; };
    return oscillatory_tail_sum(h, pi, pi, tol);
}

} // namespace

std::string_view to_string(SwitchingKind kind) {
    switch (kind) {
    case SwitchingKind::exponential: return "exponential";
    case SwitchingKind::sinc: return "sinc";
    case SwitchingKind::lorentzian: return "lorentzian";
    case SwitchingKind::gaussian: return "gaussian";
    }
    return "?";
}

SwitchingFunction SwitchingFunction::from_name(std::string_view name) {
    for (auto kind : kAllSwitchingKinds) {
        if (to_string(kind) == name) return SwitchingFunction(kind);
    }
    throw ValidationError("switching", "unknown switching function '" + std::string(name) + "'");
}

std::string_view SwitchingFunction::name() const { return to_string(kind_); }

quad::TailClass SwitchingFunction::tail_class() const {
    switch (kind_) {
    case SwitchingKind::exponential: return quad::TailClass::polynomial_decay;
    case SwitchingKind::sinc: return quad::TailClass::compact_support;
    case SwitchingKind::lorentzian: return quad::TailClass::exponential_decay;
    case SwitchingKind::gaussian: return quad::TailClass::super_exponential_decay;
    }
    return quad::TailClass::polynomial_decay;
}

std::optional<double> SwitchingFunction::support_radius() const {
    if (kind_ == SwitchingKind::sinc) return 1.0;
    return std::nullopt;
}

double SwitchingFunction::evaluate(double t) const {
    switch (kind_) {
    case SwitchingKind::exponential: return std::exp(-std::fabs(t));
    case SwitchingKind::sinc:
        if (std::fabs(t) < 1e-4) return 1.0 - t * t / 6.0;
        return std::sin(t) / t;
    case SwitchingKind::lorentzian: return 1.0 / (t * t + 1.0);
    case SwitchingKind::gaussian: return std::exp(-t * t);
    }
    return 0.0;
}

double SwitchingFunction::fourier(double w) const {
    const double aw = std::fabs(w);
    switch (kind_) {
    case SwitchingKind::exponential: return 2.0 / (1.0 + aw * aw);
    case SwitchingKind::sinc:
        if (aw < 1.0) return pi;
        return aw == 1.0 ? 0.5 * pi : 0.0;
    case SwitchingKind::lorentzian: return pi * std::exp(-aw);
    case SwitchingKind::gaussian: return std::sqrt(pi) * std::exp(-0.25 * aw * aw);
    }
    return 0.0;
}

double SwitchingFunction::fourier_squared(double w) const {
    const double aw = std::fabs(w);
    switch (kind_) {
    case SwitchingKind::exponential: {
        const double d = 1.0 + aw * aw;
        return 4.0 / (d * d);
    }
    case SwitchingKind::sinc:
        if (aw < 1.0) return pi * pi;
        return aw == 1.0 ? 0.25 * pi * pi : 0.0;
    case SwitchingKind::lorentzian: return pi * pi * std::exp(-2.0 * aw);
    case SwitchingKind::gaussian: return pi * std::exp(-0.5 * aw * aw);
    }
    return 0.0;
}

double SwitchingFunction::ft_norm_squared() const {
    switch (kind_) {
    case SwitchingKind::exponential: return 2.0 * pi;
    case SwitchingKind::sinc: return 2.0 * pi * pi;
    case SwitchingKind::lorentzian: return pi * pi;
    case SwitchingKind::gaussian: return pi * std::sqrt(2.0 * pi);
    }
    return 0.0;
}

double SwitchingFunction::tail_cutoff(double w_ref, double rel) const {
    const double r = std::fabs(w_ref);
    const double log_inv = std::log(1.0 / rel);
    switch (kind_) {
    case SwitchingKind::exponential: return std::numeric_limits<double>::infinity();
    case SwitchingKind::sinc: return std::max(1.0, r);
    case SwitchingKind::lorentzian: return r + 0.5 * log_inv;
    case SwitchingKind::gaussian: return std::sqrt(r * r + 2.0 * log_inv);
    }
    return std::numeric_limits<double>::infinity();
}

quad::QuadratureResult fourier_numeric(SwitchingKind kind, double w, const quad::Tolerance& tol) {
    const SwitchingFunction sw(kind);
    const double aw = std::fabs(w);

    if (kind == SwitchingKind::sinc) {
        // 2 int_0^inf sin(t) cos(wt)/t dt = S(1+w) + S(1-w), S(b) = sgn(b) int_0^inf sin(s)/s ds.
        const auto si = sine_integral_infinity(tol);
        auto sgn = [](double b) { return b > 0.0 ? 1.0 : (b < 0.0 ? -1.0 : 0.0); };
        const double weight = sgn(1.0 + aw) + sgn(1.0 - aw);
        quad::QuadratureResult out = si;
        out.value = weight * si.value;
        out.abs_error_estimate = std::fabs(weight) * si.abs_error_estimate;
        return out;
    }

    auto chi = [sw](double t) { return sw.evaluate(t); };
    quad::QuadratureResult half;
    if (aw == 0.0) {
        quad::DecayHint hint;
        hint.tail = kind == SwitchingKind::lorentzian ? quad::TailClass::polynomial_decay
                                                       : quad::TailClass::exponential_decay;
        half = quad::integrate_semi_infinite(chi, 0.0, tol.tightened(2.0), hint);
    } else {
        auto h = [sw, aw](double t) { return sw.evaluate(t) * std::cos(aw * t); };
        const double half_period = pi / aw;
        half = oscillatory_tail_sum(h, half_period, 0.5 * half_period, tol.tightened(2.0));
    }
    half.value *= 2.0;
    half.abs_error_estimate *= 2.0;
    half.converged = half.converged && half.abs_error_estimate <= half.target(tol);
    return half;
}

} // namespace nldet
