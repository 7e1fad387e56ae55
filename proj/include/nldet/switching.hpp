#pragma once

#include "nldet/quadrature.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace nldet {

enum class SwitchingKind { exponential, sinc, lorentzian, gaussian };

/// Window chi(t) in dimensionless time t = tau/T and its Fourier transform
/// chi~(w) = int dt e^{-iwt} chi(t). All four kinds are even with real,
/// nonnegative transforms.
class SwitchingFunction {
public:
    explicit SwitchingFunction(SwitchingKind kind) : kind_(kind) {}

    /// Parses the CLI names "exponential", "sinc", "lorentzian", "gaussian".
    static SwitchingFunction from_name(std::string_view name);

    SwitchingKind kind() const { return kind_; }
    std::string_view name() const;
    quad::TailClass tail_class() const;
    /// Half-width of the transform's support (sinc only).
    std::optional<double> support_radius() const;

    double evaluate(double t) const;
    double fourier(double w) const;
    double fourier_squared(double w) const;
    /// int |chi~(x)|^2 dx over the real line.
    double ft_norm_squared() const;

    /// Smallest |w| >= |w_ref| beyond which chi~(w)^2 <= rel * chi~(w_ref)^2;
    /// +inf for polynomial tails, the support edge for sinc.
    double tail_cutoff(double w_ref, double rel) const;

    friend bool operator==(const SwitchingFunction&, const SwitchingFunction&) = default;

private:
    SwitchingKind kind_;
};

inline constexpr SwitchingKind kAllSwitchingKinds[] = {SwitchingKind::exponential, SwitchingKind::sinc,
                                                       SwitchingKind::lorentzian, SwitchingKind::gaussian};

std::string_view to_string(SwitchingKind kind);

/// Direct quadrature of the defining Fourier integral. Oscillatory tails are
/// summed over half-periods with Wynn epsilon acceleration; for sinc the
/// integrand is split into its two sine frequencies first.
quad::QuadratureResult fourier_numeric(SwitchingKind kind, double w, const quad::Tolerance& tol = {1e-11, 1e-13});

} // namespace nldet
