#pragma once

// Exponential integrals on the positive real axis and the boundary values of
// E2 on its branch cut along the negative real axis. Target accuracy is
// 1e-12 relative so that quadrature error dominates downstream.

namespace nldet::special {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
/// Positive zero of Ei.
inline constexpr double kEiRoot = 0.37250741078136663446199186658010976;

/// Principal-value exponential integral Ei(x) for x > 0.
/// Throws DomainError for x <= 0 and for x < 1e-300 (log divergence).
double expint_ei(double x);

/// E1(x) = int_1^inf e^{-xt}/t dt, x > 0.
double expint_e1(double x);

/// E_n(x) = int_1^inf e^{-xt}/t^n dt for n >= 0, x > 0 (x = 0 allowed for n >= 2).
/// Series / continued fraction evaluation, independent of expint_e1.
double expint_en(int n, double x);

enum class CutSide { above, below };

struct BranchValue {
    enum class Side { above_cut, below_cut, off_cut };
    double real_part = 0.0;
    double imag_part = 0.0;
    Side side = Side::off_cut;
};

/// Boundary value of E2 at argument -x (x > 0) approached from the requested
/// side of the cut. Above the cut: real = e^x - x Ei(x), imag = -pi x.
BranchValue expint_e2_on_cut(double x, CutSide side);

/// e^{-x} * Re E2(-x +- i0), finite for all x > 0 (no overflow for large x).
double expint_e2_cut_real_scaled(double x);

/// Complementary error function.
double erfc(double x);

} // namespace nldet::special
