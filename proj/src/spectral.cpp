#include "nldet/spectral.hpp"

#include "nldet/errors.hpp"
#include "nldet/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nldet {

using std::numbers::pi;

double rho_hat_exponential(double x, double alpha) {
    if (!(x >= 0.0)) throw DomainError("rho_hat_exponential: x must be >= 0");
    return std::exp(-alpha * x);
}

double rho_hat_causalset(double x) {
    if (!(x >= 0.0)) throw DomainError("rho_hat_causalset: x must be >= 0");
    if (x == 0.0) return pi;
    const double u = 0.5 * x;
    // Numerator and denominator scaled by e^{-2u}; stays finite for any u.
    const double re_scaled = special::expint_e2_cut_real_scaled(u);
    const double eu = std::exp(-u);
    const double im_scaled = pi * u * eu;
    return pi * eu / (re_scaled * re_scaled + im_scaled * im_scaled);
}

SpectralFunction::SpectralFunction(SpectralKind kind, double alpha) : kind_(kind), alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha", "must be > 0");
}

SpectralFunction SpectralFunction::from_name(std::string_view name, double alpha) {
    if (name == "exponential") return SpectralFunction(SpectralKind::exponential, alpha);
    if (name == "causal-set") return SpectralFunction(SpectralKind::causal_set, alpha);
    throw ValidationError("spectral", "unknown spectral function '" + std::string(name) + "'");
}

std::string_view to_string(SpectralKind kind) {
    return kind == SpectralKind::exponential ? "exponential" : "causal-set";
}

std::string_view SpectralFunction::name() const { return to_string(kind_); }

double SpectralFunction::rho_hat(double x) const {
    return kind_ == SpectralKind::exponential ? rho_hat_exponential(x, alpha_) : rho_hat_causalset(x);
}

double SpectralFunction::plateau() const { return kind_ == SpectralKind::exponential ? 1.0 : pi; }

double SpectralFunction::suppression_point(double rel) const {
    if (kind_ == SpectralKind::exponential) return std::log(1.0 / rel) / alpha_;
    const double threshold = rel * plateau();
    double hi = 1.0;
    while (rho_hat(hi) >= threshold && hi < 1e6) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (rho_hat(mid) >= threshold) lo = mid;
        else hi = mid;
    }
    return hi;
}

} // namespace nldet
