#include "nldet/quadrature.hpp"

#include "nldet/detail/gauss_kronrod.hpp"
#include "nldet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace nldet::quad {
namespace {

constexpr double kEpmach = std::numeric_limits<double>::epsilon();
constexpr double kUflow = std::numeric_limits<double>::min();
constexpr std::size_t kPanelEvals = 21;

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
};

struct ByError {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.lo > y.lo; // deterministic tie-break
    }
};

class CountingIntegrand {
public:
    explicit CountingIntegrand(const Integrand& f) : f_(f) {}

    double operator()(double x) {
        ++count_;
        const double y = f_(x);
        if (!std::isfinite(y)) {
            std::ostringstream os;
            os.precision(17);
            os << "integrand returned non-finite value " << y << " at x=" << x;
            throw EvaluationError(x, os.str());
        }
        return y;
    }

    std::size_t count() const { return count_; }

private:
    const Integrand& f_;
    std::size_t count_ = 0;
};

Panel gk21(CountingIntegrand& f, double lo, double hi) {
    using detail::kWg10;
    using detail::kWgk21;
    using detail::kXgk21;

    const double centr = 0.5 * (lo + hi);
    const double hlgth = 0.5 * (hi - lo);
    const double dhlgth = std::fabs(hlgth);

    std::array<double, 10> fv1{};
    std::array<double, 10> fv2{};

    const double fc = f(centr);
    double resg = 0.0;
    double resk = kWgk21[10] * fc;
    double resabs = std::fabs(resk);

    for (int j = 0; j < 5; ++j) {
        const int jtw = 2 * j + 1;
        const double absc = hlgth * kXgk21[jtw];
        const double f1 = f(centr - absc);
        const double f2 = f(centr + absc);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += kWg10[j] * (f1 + f2);
        resk += kWgk21[jtw] * (f1 + f2);
        resabs += kWgk21[jtw] * (std::fabs(f1) + std::fabs(f2));
    }
    for (int j = 0; j < 5; ++j) {
        const int jtwm1 = 2 * j;
        const double absc = hlgth * kXgk21[jtwm1];
        const double f1 = f(centr - absc);
        const double f2 = f(centr + absc);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += kWgk21[jtwm1] * (f1 + f2);
        resabs += kWgk21[jtwm1] * (std::fabs(f1) + std::fabs(f2));
    }

    const double reskh = 0.5 * resk;
    double resasc = kWgk21[10] * std::fabs(fc - reskh);
    for (int j = 0; j < 10; ++j) resasc += kWgk21[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

    const double result = resk * hlgth;
    resabs *= dhlgth;
    resasc *= dhlgth;
    double abserr = std::fabs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0) abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    if (resabs > kUflow / (50.0 * kEpmach)) abserr = std::max(kEpmach * 50.0 * resabs, abserr);
    return Panel{lo, hi, result, abserr};
}

QuadratureResult adapt(CountingIntegrand& f, const std::vector<double>& points, const Tolerance& tol) {
    QuadratureResult out;
    std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
    std::vector<Panel> frozen;

    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i + 1] > points[i]) heap.push(gk21(f, points[i], points[i + 1]));
    }

    auto totals = [&] {
        // Summed in a fixed order so the result does not depend on heap layout.
        std::vector<Panel> all;
        all.reserve(heap.size() + frozen.size());
        auto copy = heap;
        while (!copy.empty()) {
            all.push_back(copy.top());
            copy.pop();
        }
        all.insert(all.end(), frozen.begin(), frozen.end());
        std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
        double v = 0.0;
        double e = 0.0;
        for (const auto& p : all) {
            v += p.value;
            e += p.error;
        }
        return std::pair{v, e};
    };

    double value = 0.0;
    double error = 0.0;
    {
        auto [v, e] = totals();
        value = v;
        error = e;
    }

    std::size_t iter = 0;
    while (!heap.empty()) {
        const double target = std::max(tol.abs_tol, tol.rel_tol * std::fabs(value));
        if (error <= target) {
            auto [v, e] = totals();
            value = v;
            error = e;
            if (error <= std::max(tol.abs_tol, tol.rel_tol * std::fabs(value))) break;
        }
        if (f.count() + 2 * kPanelEvals > tol.max_evaluations) break;

        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const double outer = 0.5 * (mid - worst.lo) * detail::kXgk21[0];
        const double c_left = 0.5 * (worst.lo + mid);
        const double c_right = 0.5 * (mid + worst.hi);
        const bool resolvable = c_left - outer > worst.lo && c_right + outer < worst.hi;
        if (!(mid > worst.lo && mid < worst.hi) || !resolvable) {
            frozen.push_back(worst);
            continue;
        }
        const Panel left = gk21(f, worst.lo, mid);
        const Panel right = gk21(f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);

        if (++iter % 64 == 0) {
            auto [v, e] = totals();
            value = v;
            error = e;
        }
    }

    auto [v, e] = totals();
    out.value = v;
    out.abs_error_estimate = e;
    out.evaluations = f.count();
    out.converged = e <= std::max(tol.abs_tol, tol.rel_tol * std::fabs(v));
    return out;
}

} // namespace

void Tolerance::validate() const {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) throw ValidationError("rel_tol", "must be > 0");
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) throw ValidationError("abs_tol", "must be > 0");
    if (max_evaluations == 0) throw ValidationError("max_evaluations", "must be > 0");
}

Tolerance Tolerance::tightened(double factor) const {
    Tolerance t = *this;
    t.rel_tol = std::max(rel_tol / factor, 4.0 * kEpmach);
    t.abs_tol = abs_tol / factor;
    return t;
}

double QuadratureResult::target(const Tolerance& tol) const {
    return std::max(tol.abs_tol, tol.rel_tol * std::fabs(value));
}

QuadratureResult integrate(const Integrand& f, double lo, double hi, const Tolerance& tol) {
    const double pts[] = {lo, hi};
    return integrate(f, std::span<const double>(pts), tol);
}

QuadratureResult integrate(const Integrand& f, std::span<const double> points, const Tolerance& tol) {
    tol.validate();
    if (points.size() < 2) throw ValidationError("points", "need at least two points");
    for (double p : points) {
        if (!std::isfinite(p)) throw ValidationError("points", "integration limits must be finite");
    }
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i + 1] < points[i]) throw ValidationError("points", "must be non-decreasing");
    }
    CountingIntegrand counted(f);
    return adapt(counted, std::vector<double>(points.begin(), points.end()), tol);
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double lo, const Tolerance& tol, DecayHint hint) {
    tol.validate();
    if (!std::isfinite(lo)) throw ValidationError("lo", "must be finite");
    if (!(hint.scale > 0.0) || !std::isfinite(hint.scale)) throw ValidationError("scale", "must be > 0");

    switch (hint.tail) {
    case TailClass::compact_support:
        return integrate(f, lo, lo + hint.scale, tol);

    case TailClass::polynomial_decay: {
        const double s = hint.scale;
        auto mapped = [&](double t) {
            const double one_minus = 1.0 - t;
            const double x = lo + s * t / one_minus;
            if (!std::isfinite(x)) return 0.0;
            const double y = f(x);
            if (y == 0.0) return 0.0;
            return y * s / (one_minus * one_minus);
        };
        auto r = integrate(mapped, 0.0, 1.0, tol);
        r.tail_unresolved = !r.converged;
        return r;
    }

    case TailClass::exponential_decay:
    case TailClass::super_exponential_decay:
        break;
    }

    // Progressive truncation: panels [lo + s(2^{k-1}-1), lo + s(2^k-1)] until two
    // consecutive panels are negligible against the running total.
    CountingIntegrand counted(f);
    std::vector<double> edges{lo};
    double running = 0.0;
    int negligible_run = 0;
    bool resolved = false;
    for (int k = 1; k <= 60; ++k) {
        const double a = edges.back();
        const double b = lo + hint.scale * (std::ldexp(1.0, k) - 1.0);
        const Panel p = gk21(counted, a, b);
        const double edge_bound = std::fabs(counted(a)) * std::min(b - a, hint.scale);
        running += p.value;
        edges.push_back(b);
        const double bound = std::fabs(p.value) + p.error + edge_bound;
        const double target = std::max(tol.abs_tol, tol.rel_tol * std::fabs(running));
        negligible_run = bound <= 1e-2 * target ? negligible_run + 1 : 0;
        if (negligible_run >= 2) {
            resolved = true;
            break;
        }
    }
    // The second negligible panel only confirms the first; it is not integrated again.
    if (resolved && edges.size() > 2) edges.pop_back();

    const std::size_t scan_evals = counted.count();
    Tolerance rest = tol;
    rest.max_evaluations = tol.max_evaluations > scan_evals ? tol.max_evaluations - scan_evals : 1;
    CountingIntegrand main_pass(f);
    QuadratureResult r = adapt(main_pass, edges, rest);
    r.evaluations += scan_evals;
    r.tail_unresolved = !resolved;
    if (!resolved) r.converged = false;
    return r;
}

Extrapolation extrapolate_to_zero(const std::function<double(double)>& g, std::span<const double> seq) {
    if (seq.size() < 3) throw ValidationError("seq", "need at least three points");
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (!(seq[i] > 0.0)) throw ValidationError("seq", "points must be positive");
        if (i > 0 && !(seq[i] < seq[i - 1])) throw ValidationError("seq", "points must be strictly decreasing");
    }
    const std::size_t n = seq.size();
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = g(seq[i]);
        if (!std::isfinite(values[i])) throw EvaluationError(seq[i], "extrapolation sample is not finite");
    }

    // extrapolants[k] = value at 0 of the degree-k interpolant through the k+1 smallest points.
    std::vector<double> extrapolants;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t first = n - 1 - k;
        std::vector<double> p(values.begin() + static_cast<std::ptrdiff_t>(first), values.end());
        std::span<const double> xs = seq.subspan(first);
        // Neville at x = 0.
        for (std::size_t level = 1; level <= k; ++level) {
            for (std::size_t i = 0; i + level <= k; ++i) {
                const double xi = xs[i];
                const double xj = xs[i + level];
                p[i] = (xi * p[i + 1] - xj * p[i]) / (xi - xj);
            }
        }
        extrapolants.push_back(p[0]);
    }

    Extrapolation out;
    out.value = extrapolants[n - 1];
    const double d_last = std::fabs(extrapolants[n - 1] - extrapolants[n - 2]);
    out.error_estimate = d_last;
    bool shrinking = true;
    for (std::size_t k = 2; k < n; ++k) {
        const double d = std::fabs(extrapolants[k] - extrapolants[k - 1]);
        const double before = std::fabs(extrapolants[k - 1] - extrapolants[k - 2]);
        shrinking = shrinking && d <= before;
    }
    out.converged = shrinking || d_last <= 1e-14 * std::fabs(out.value);
    return out;
}

} // namespace nldet::quad
