#pragma once

// Adaptive one-dimensional quadrature. Globally adaptive Gauss-Kronrod
// (10/21 points) bisection with QUADPACK-style error estimates; the rules
// never evaluate the integrand at interval endpoints, so integrable endpoint
// singularities are admissible. Node placement depends only on the inputs,
// so results are bitwise reproducible.

#include <cstddef>
#include <functional>
#include <span>

namespace nldet::quad {

struct Tolerance {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    std::size_t max_evaluations = 1'000'000;

    /// Throws ValidationError unless rel_tol, abs_tol > 0 and max_evaluations > 0.
    void validate() const;
    /// Tolerance for a nested inner integral: both tolerances tightened by `factor`.
    Tolerance tightened(double factor) const;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
    /// Set by the semi-infinite driver when the neglected tail could exceed the tolerance.
    bool tail_unresolved = false;

    double target(const Tolerance& tol) const;
};

enum class TailClass { polynomial_decay, compact_support, exponential_decay, super_exponential_decay };

struct DecayHint {
    TailClass tail = TailClass::exponential_decay;
    /// Characteristic length of the decay; for compact support, the distance
    /// from `lo` to the support edge.
    double scale = 1.0;
};

using Integrand = std::function<double(double)>;

/// Integral over [lo, hi]. A NaN/inf from f throws EvaluationError naming
/// the abscissa; exhausting the evaluation budget yields converged = false.
QuadratureResult integrate(const Integrand& f, double lo, double hi, const Tolerance& tol = {});

/// Integral over [points.front(), points.back()], with the interior points
/// used as initial subdivision. Points must be non-decreasing.
QuadratureResult integrate(const Integrand& f, std::span<const double> points, const Tolerance& tol = {});

/// Integral over [lo, inf). Polynomial decay: compactifying map
/// x = lo + s t/(1-t). Exponential decay: progressive truncation over
/// geometrically growing panels. Compact support: [lo, lo + scale] only.
QuadratureResult integrate_semi_infinite(const Integrand& f, double lo, const Tolerance& tol = {},
                                         DecayHint hint = {});

struct Extrapolation {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

/// Polynomial (Richardson/Neville) extrapolation of g(eps) to eps = 0 from
/// a decreasing sequence of at least three positive eps values. The error
/// estimate is the difference of the last two extrapolants; `converged` is
/// false unless the differences of successive extrapolants shrink monotonically.
Extrapolation extrapolate_to_zero(const std::function<double(double)>& g, std::span<const double> seq);

} // namespace nldet::quad
