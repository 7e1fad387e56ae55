#pragma once

// Dimensionless discontinuity functions rho_hat(x), x = l_n^2 mu^2, with
// rho(mu^2) = l_n^2 rho_hat(l_n^2 mu^2). Only the finite (massive-continuum)
// part is represented; the delta(mu^2) piece is the massless response.

#include <string_view>

namespace nldet {

enum class SpectralKind { exponential, causal_set };

/// e^{-alpha x}. Throws DomainError for x < 0.
double rho_hat_exponential(double x, double alpha = 1.0);

/// pi e^u / [(e^u - u Ei(u))^2 + (pi u)^2] with u = x/2: the cut boundary
/// values of E2 substituted into the causal-set discontinuity. Returns the
/// limit pi at x = 0; throws DomainError for x < 0.
double rho_hat_causalset(double x);

class SpectralFunction {
public:
    /// Throws ValidationError unless alpha > 0 and finite.
    explicit SpectralFunction(SpectralKind kind, double alpha = 1.0);

    /// "exponential" or "causal-set".
    static SpectralFunction from_name(std::string_view name, double alpha = 1.0);

    SpectralKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    std::string_view name() const;

    double rho_hat(double x) const;
    /// rho_hat(0): 1 for the exponential kind, pi for the causal-set kind.
    double plateau() const;
    /// Smallest x beyond which rho_hat(x) < rel * plateau() (rho_hat is decreasing).
    double suppression_point(double rel) const;

    friend bool operator==(const SpectralFunction&, const SpectralFunction&) = default;

private:
    SpectralKind kind_;
    double alpha_;
};

inline constexpr SpectralKind kAllSpectralKinds[] = {SpectralKind::exponential, SpectralKind::causal_set};

std::string_view to_string(SpectralKind kind);

} // namespace nldet
