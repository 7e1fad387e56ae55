#include "nldet/response.hpp"

#include "nldet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace nldet {
namespace {

using quad::QuadratureResult;
using quad::Tolerance;

void accumulate(QuadratureResult& total, const QuadratureResult& part) {
    total.value += part.value;
    total.abs_error_estimate += part.abs_error_estimate;
    total.evaluations += part.evaluations;
    total.converged = total.converged && part.converged;
    total.tail_unresolved = total.tail_unresolved || part.tail_unresolved;
}

QuadratureResult scaled(QuadratureResult r, double factor) {
    r.value *= factor;
    r.abs_error_estimate *= factor;
    return r;
}

// Sorted, de-duplicated breakpoints strictly inside (lo, hi) plus both ends.
std::vector<double> partition(double lo, double hi, std::initializer_list<double> interior) {
    std::vector<double> pts{lo};
    for (double p : interior) {
        if (p > lo && p < hi) pts.push_back(p);
    }
    std::sort(pts.begin() + 1, pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    pts.push_back(hi);
    return pts;
}

quad::DecayHint decay_hint(const SwitchingFunction& sw, double scale) {
    return quad::DecayHint{sw.tail_class(), scale};
}

// int_a^inf (x - a) |chi~(x)|^2 dx, without the measure constant.
QuadratureResult raw_massless(double a, const SwitchingFunction& sw, const Tolerance& tol, double width) {
    QuadratureResult total;
    auto f = [&sw, a](double x) { return (x - a) * sw.fourier_squared(x); };

    if (const auto radius = sw.support_radius()) {
        const double lo = std::max(a, -*radius);
        if (lo >= *radius) return total;
        return quad::integrate(f, lo, *radius, tol);
    }

    const double last = std::max({a + width, width});
    const auto pts = partition(a, last, {-width, 0.0, width});
    accumulate(total, quad::integrate(f, pts, tol));
    accumulate(total, quad::integrate_semi_infinite(f, last, tol, decay_hint(sw, 1.0)));
    return total;
}

// int_m^inf sqrt(w^2 - m^2) |chi~(w + a)|^2 dw, without the measure constant.
QuadratureResult raw_massive(double a, double m, const SwitchingFunction& sw, const Tolerance& tol, double width) {
    QuadratureResult total;
    const double peak = -a;

    auto direct = [&sw, a, m](double w) {
        const double d = (w - m) * (w + m);
        return d > 0.0 ? std::sqrt(d) * sw.fourier_squared(w + a) : 0.0;
    };
    // w = m + t^2 removes the square-root behaviour at threshold.
    auto substituted = [&sw, a, m](double t) {
        const double t2 = t * t;
        return 2.0 * t2 * std::sqrt(2.0 * m + t2) * sw.fourier_squared(m + t2 + a);
    };

    if (const auto radius = sw.support_radius()) {
        const double hi = peak + *radius;
        if (hi <= m) return total;
        const double lo = peak - *radius;
        if (lo <= m) return quad::integrate(substituted, 0.0, std::sqrt(hi - m), tol);
        return quad::integrate(direct, lo, hi, tol);
    }

    double first_end = m + width;
    for (double p : {peak - width, peak, peak + width}) {
        if (p > m) {
            first_end = p;
            break;
        }
    }
    accumulate(total, quad::integrate(substituted, 0.0, std::sqrt(first_end - m), tol));

    const double last = std::max(first_end, peak + width);
    if (last > first_end) {
        const auto pts = partition(first_end, last, {peak - width, peak, peak + width});
        accumulate(total, quad::integrate(direct, pts, tol));
    }
    accumulate(total, quad::integrate_semi_infinite(direct, last, tol, decay_hint(sw, width)));
    return total;
}

} // namespace

void ResponseRequest::validate() const {
    if (!std::isfinite(a)) throw ValidationError("a", "must be finite");
    if (!std::isfinite(lambda)) throw ValidationError("lambda", "must be finite");
    if (lambda < 0.0) throw ValidationError("lambda", "must be >= 0");
    tol.validate();
}

QuadratureResult response_massless(double a, const SwitchingFunction& switching, const Tolerance& tol,
                                   const EngineOptions& options) {
    if (!std::isfinite(a)) throw ValidationError("a", "must be finite");
    tol.validate();
    return scaled(raw_massless(a, switching, tol, options.peak_halfwidth), options.measure_constant);
}

QuadratureResult response_massive(double a, double m, const SwitchingFunction& switching, const Tolerance& tol,
                                  const EngineOptions& options) {
    if (!std::isfinite(a)) throw ValidationError("a", "must be finite");
    if (!(m >= 0.0) || !std::isfinite(m)) throw ValidationError("m", "must be finite and >= 0");
    tol.validate();
    return scaled(raw_massive(a, m, switching, tol, options.peak_halfwidth), options.measure_constant);
}

namespace {

// int_0^inf dm^2 rho_hat(lambda^2 m^2) int_m^inf sqrt(w^2-m^2) |chi~(w+a)|^2 dw,
// i.e. the excess without lambda^2 and without the measure constant.
QuadratureResult raw_excess_integral(const ResponseRequest& req, const EngineOptions& opt) {
    QuadratureResult total;
    const auto& sw = req.switching;
    const auto& rho = req.spectral;
    const double a = req.a;
    const double lambda = req.lambda;
    const double width = sw.support_radius().value_or(opt.peak_halfwidth);

    // m beyond which the inner integrand never reaches the transform's bulk.
    const double m_chi = sw.tail_cutoff(std::max(a, 0.0), opt.truncation_rel) - a;
    const double m_rho = std::sqrt(rho.suppression_point(opt.truncation_rel)) / lambda;
    const double m_cut = std::min(m_chi, m_rho);
    if (!(m_cut > 0.0)) return total;

    const Tolerance inner_tol = req.tol.tightened(opt.inner_tightening);
    bool inner_ok = true;
    std::size_t inner_evals = 0;
    const double lambda2 = lambda * lambda;

    auto integrand_m = [&](double m) {
        const double weight = rho.rho_hat(lambda2 * m * m);
        if (weight == 0.0) return 0.0;
        const auto inner = raw_massive(a, m, sw, inner_tol, width);
        inner_ok = inner_ok && inner.converged;
        inner_evals += inner.evaluations;
        return 2.0 * m * weight * inner.value;
    };

    const double peak = -a;
    std::vector<double> pts{0.0};
    for (double p : {peak - width, peak, peak + width}) {
        if (p > pts.back() && p < m_cut) pts.push_back(p);
    }
    const bool compact = sw.tail_class() == quad::TailClass::compact_support;
    if (compact) pts.push_back(m_cut);

    if (pts.size() >= 2) accumulate(total, quad::integrate(integrand_m, pts, req.tol));

    if (!compact) {
        // Tail in a logarithmic variable m = m0 + expm1(s): spans both the
        // transform's decay scale and the 1/lambda spectral scale.
        const double m0 = pts.back();
        if (m_cut > m0) {
            auto integrand_s = [&](double s) {
                const double e = std::exp(s);
                return integrand_m(m0 + (e - 1.0)) * e;
            };
            const double s_max = std::log1p(m_cut - m0);
            accumulate(total, quad::integrate(integrand_s, 0.0, s_max, req.tol));

            const double edge = std::fabs(integrand_m(m_cut)) * std::max(1.0, m_cut - m0);
            if (edge > 1e-2 * total.target(req.tol)) total.tail_unresolved = true;
        }
    }

    total.abs_error_estimate += req.tol.rel_tol / opt.inner_tightening * std::fabs(total.value);
    total.evaluations += inner_evals;
    total.converged = total.converged && inner_ok && !total.tail_unresolved;
    return total;
}

} // namespace

QuadratureResult nonlocal_excess(const ResponseRequest& req, const EngineOptions& options) {
    req.validate();
    if (req.lambda == 0.0) return QuadratureResult{};
    const auto raw = raw_excess_integral(req, options);
    return scaled(raw, req.lambda * req.lambda * options.measure_constant);
}

ResponseBreakdown relative_response(const ResponseRequest& req, const EngineOptions& options) {
    req.validate();
    ResponseBreakdown out;
    out.regime = classify_regime(DimensionlessGroups{req.a, req.lambda});

    const auto raw_f0 = raw_massless(req.a, req.switching, req.tol, options.peak_halfwidth);
    out.f0 = raw_f0.value * options.measure_constant;
    out.f0_error = raw_f0.abs_error_estimate * options.measure_constant;
    if (!(out.f0 >= req.tol.abs_tol)) {
        std::ostringstream msg;
        msg << "F0 = " << out.f0 << " is below abs_tol = " << req.tol.abs_tol
            << "; report excess and F0 separately";
        throw DivisionGuardError(msg.str());
    }

    QuadratureResult raw_ex;
    if (req.lambda > 0.0) raw_ex = raw_excess_integral(req, options);
    const double lambda2 = req.lambda * req.lambda;
    out.excess = raw_ex.value * lambda2 * options.measure_constant;
    out.excess_error = raw_ex.abs_error_estimate * lambda2 * options.measure_constant;

    // The measure constant never enters the ratio.
    out.delta = lambda2 * raw_ex.value / raw_f0.value;
    double rel = raw_f0.abs_error_estimate / raw_f0.value;
    if (raw_ex.value > 0.0) rel += raw_ex.abs_error_estimate / raw_ex.value;
    out.delta_error = out.delta * rel;

    out.converged = raw_f0.converged && raw_ex.converged;
    out.evaluations = raw_f0.evaluations + raw_ex.evaluations;
    return out;
}

double asymptotic_excess(double a, double lambda, const SwitchingFunction& switching, double plateau,
                         const EngineOptions& options) {
    if (!std::isfinite(a) || !(a < -1.0)) throw ValidationError("a", "asymptotic form requires a < -1");
    if (!std::isfinite(lambda) || lambda < 0.0) throw ValidationError("lambda", "must be finite and >= 0");
    const double abs_a = -a;
    if (!(lambda * abs_a < 1.0)) throw ValidationError("lambda", "asymptotic form requires lambda |a| < 1");
    return options.measure_constant * (2.0 / 3.0) * plateau * lambda * lambda * abs_a * abs_a * abs_a *
           switching.ft_norm_squared();
}

double asymptotic_delta(RadPerSecond omega, Meters l_n) {
    const double r = std::fabs(omega.value) * l_n.value / kSpeedOfLight;
    return r * r;
}

} // namespace nldet
