#pragma once

// Finite-time response of an inertial two-level detector, in dimensionless
// variables a = Omega T and lambda = l_n / (c T).
//
// With the momentum measure d^3k / ((2 pi)^3 2 omega) the responses reduce to
//
//   F0(a)     = C int_a^inf (x - a) |chi~(x)|^2 dx
//   F_m(a)    = C int_m^inf sqrt(w^2 - m^2) |chi~(w + a)|^2 dw
//   F - F0    = lambda^2 int_0^inf dm^2 rho_hat(lambda^2 m^2) F_m(a)
//
// where C = 1/(4 pi^2) is the measure constant. The excess integral is a
// nested adaptive quadrature: outer over m, inner over w. The relative
// response is formed from the raw integrals so that C cancels exactly.

#include "nldet/quadrature.hpp"
#include "nldet/spectral.hpp"
#include "nldet/switching.hpp"
#include "nldet/units.hpp"

namespace nldet {

struct EngineOptions {
    double measure_constant = 0.025330295910584444; // 1 / (4 pi^2)
    /// Breakpoints are placed at peak +- peak_halfwidth in w and m.
    double peak_halfwidth = 8.0;
    /// Relative size below which rho_hat or |chi~|^2 are treated as zero
    /// when choosing the m^2 cutoff.
    double truncation_rel = 1e-30;
    /// Inner (w) tolerances are tightened by this factor relative to the outer (m) integral.
    double inner_tightening = 100.0;
};

struct ResponseRequest {
    double a = 0.0;
    double lambda = 0.0;
    SwitchingFunction switching{SwitchingKind::gaussian};
    SpectralFunction spectral{SpectralKind::exponential};
    quad::Tolerance tol{};

    /// Throws ValidationError for non-finite a / lambda or lambda < 0.
    void validate() const;
};

struct ResponseBreakdown {
    double f0 = 0.0;
    double excess = 0.0;
    double delta = 0.0;
    double f0_error = 0.0;
    double excess_error = 0.0;
    double delta_error = 0.0;
    bool converged = true;
    std::size_t evaluations = 0;
    RegimeTag regime{};
};

quad::QuadratureResult response_massless(double a, const SwitchingFunction& switching, const quad::Tolerance& tol = {},
                                         const EngineOptions& options = {});

/// Response of a detector coupled to a local field of dimensionless mass m >= 0.
quad::QuadratureResult response_massive(double a, double m, const SwitchingFunction& switching,
                                        const quad::Tolerance& tol = {}, const EngineOptions& options = {});

/// F - F0. Exactly zero when lambda = 0 or when the transform's support
/// never reaches the mass shell (sinc with a >= 1). `tail_unresolved` is set
/// when the m^2 truncation is not justified at the requested tolerance.
quad::QuadratureResult nonlocal_excess(const ResponseRequest& request, const EngineOptions& options = {});

/// Throws DivisionGuardError when F0 is below tol.abs_tol.
ResponseBreakdown relative_response(const ResponseRequest& request, const EngineOptions& options = {});

/// Long-time emission limit C (2/3) plateau lambda^2 |a|^3 int |chi~|^2.
/// Requires a < -1, lambda >= 0 and lambda |a| < 1.
double asymptotic_excess(double a, double lambda, const SwitchingFunction& switching, double plateau = 1.0,
                         const EngineOptions& options = {});

/// (|Omega| l_n / c)^2, unit coefficient.
double asymptotic_delta(RadPerSecond omega, Meters l_n);

} // namespace nldet
