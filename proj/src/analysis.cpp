#include "nldet/analysis.hpp"

#include "nldet/errors.hpp"
#include "nldet/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace nldet::analysis {

std::string_view to_string(FitVariable v) {
    switch (v) {
    case FitVariable::lambda: return "lambda";
    case FitVariable::abs_a: return "abs_a";
    case FitVariable::t_at_fixed_omega: return "T-at-fixed-omega";
    case FitVariable::a: return "a";
    case FitVariable::a_squared_half: return "a^2/2";
    }
    return "?";
}

std::string_view to_string(TableRow row) {
    switch (row) {
    case TableRow::vacuum: return "vacuum";
    case TableRow::short_time: return "short-time";
    case TableRow::emission: return "emission";
    }
    return "?";
}

std::string_view to_string(CellStatus status) {
    switch (status) {
    case CellStatus::pass: return "pass";
    case CellStatus::fail: return "fail";
    case CellStatus::info: return "info";
    }
    return "?";
}

namespace {

// Ordinary least squares of y on [1, columns...]. Returns coefficients and
// the standard error of coefficient `report` (1-based over the columns).
struct LinearFit {
    std::vector<double> coef;
    double standard_error = 0.0;
    double r_squared = 0.0;
};

LinearFit least_squares(const std::vector<std::vector<double>>& columns, const std::vector<double>& y,
                        std::size_t report) {
    const std::size_t n = y.size();
    const std::size_t k = columns.size() + 1;

    // Centre every column; the intercept then decouples.
    std::vector<std::vector<double>> xc(columns.size(), std::vector<double>(n));
    std::vector<double> means(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        double m = 0.0;
        for (double v : columns[j]) m += v;
        m /= static_cast<double>(n);
        means[j] = m;
        for (std::size_t i = 0; i < n; ++i) xc[j][i] = columns[j][i] - m;
    }
    double ymean = 0.0;
    for (double v : y) ymean += v;
    ymean /= static_cast<double>(n);

    const std::size_t p = columns.size();
    std::vector<std::vector<double>> a(p, std::vector<double>(2 * p + 1, 0.0));
    for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t c = 0; c < p; ++c) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += xc[r][i] * xc[c][i];
            a[r][c] = s;
        }
        a[r][p + r] = 1.0;
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += xc[r][i] * (y[i] - ymean);
        a[r][2 * p] = s;
    }
    // Gauss-Jordan with partial pivoting; the right block becomes the inverse.
    for (std::size_t col = 0; col < p; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < p; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        }
        std::swap(a[col], a[piv]);
        const double d = a[col][col];
        if (!(std::fabs(d) > 0.0)) throw ValidationError("samples", "degenerate regressor range");
        for (double& v : a[col]) v /= d;
        for (std::size_t r = 0; r < p; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            for (std::size_t c = 0; c <= 2 * p; ++c) a[r][c] -= f * a[col][c];
        }
    }

    LinearFit out;
    out.coef.resize(k);
    double intercept = ymean;
    for (std::size_t j = 0; j < p; ++j) {
        out.coef[j + 1] = a[j][2 * p];
        intercept -= out.coef[j + 1] * means[j];
    }
    out.coef[0] = intercept;

    double rss = 0.0;
    double tss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double pred = ymean;
        for (std::size_t j = 0; j < p; ++j) pred += out.coef[j + 1] * xc[j][i];
        rss += (y[i] - pred) * (y[i] - pred);
        tss += (y[i] - ymean) * (y[i] - ymean);
    }
    out.r_squared = tss > 0.0 ? std::clamp(1.0 - rss / tss, 0.0, 1.0) : 1.0;
    const double dof = static_cast<double>(n) - static_cast<double>(k);
    const double s2 = dof > 0.0 ? rss / dof : 0.0;
    out.standard_error = std::sqrt(s2 * a[report - 1][p + report - 1]);
    return out;
}

void require_samples(std::span<const Sample> samples, bool positive_x) {
    if (samples.size() < 4) throw ValidationError("samples", "at least 4 samples required");
    for (const auto& s : samples) {
        if (!std::isfinite(s.x) || !std::isfinite(s.y)) throw ValidationError("samples", "non-finite sample");
        if (!(s.y > 0.0)) throw ValidationError("samples", "y must be strictly positive");
        if (positive_x && !(s.x > 0.0)) throw ValidationError("samples", "x must be strictly positive");
    }
}

void require_spread(const std::vector<double>& x) {
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    const double scale = std::max({std::fabs(*lo), std::fabs(*hi), 1.0});
    if (!(*hi - *lo > 1e-12 * scale)) throw ValidationError("samples", "degenerate x range");
}

ScalingFit make_fit(FitVariable variable, const LinearFit& f, std::size_t n) {
    ScalingFit out;
    out.variable = variable;
    out.fitted_exponent = f.coef[1];
    out.standard_error = f.standard_error;
    out.r_squared = f.r_squared;
    out.sample_count = n;
    return out;
}

} // namespace

ScalingFit fit_power_law(std::span<const Sample> samples, FitVariable variable) {
    require_samples(samples, true);
    const double x0 = samples.front().x;
    const double y0 = samples.front().y;
    std::vector<double> lx;
    std::vector<double> ly;
    for (const auto& s : samples) {
        lx.push_back(std::log(s.x / x0));
        ly.push_back(std::log(s.y / y0));
    }
    require_spread(lx);
    return make_fit(variable, least_squares({lx}, ly, 1), samples.size());
}

ScalingFit fit_exponential_rate(std::span<const Sample> samples, FitVariable variable) {
    require_samples(samples, false);
    std::vector<double> x;
    std::vector<double> ly;
    for (const auto& s : samples) {
        x.push_back(s.x);
        ly.push_back(std::log(s.y));
    }
    require_spread(x);
    return make_fit(variable, least_squares({x}, ly, 1), samples.size());
}

ScalingFit fit_exponential_rate_with_power(std::span<const Sample> samples, std::span<const double> z,
                                           FitVariable variable, double* power) {
    require_samples(samples, false);
    if (z.size() != samples.size()) throw ValidationError("z", "must have one entry per sample");
    if (samples.size() < 5) throw ValidationError("samples", "at least 5 samples required for two regressors");
    std::vector<double> x;
    std::vector<double> lz;
    std::vector<double> ly;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(z[i] > 0.0)) throw ValidationError("z", "must be strictly positive");
        x.push_back(samples[i].x);
        lz.push_back(std::log(z[i]));
        ly.push_back(std::log(samples[i].y));
    }
    require_spread(x);
    require_spread(lz);
    const auto f = least_squares({x, lz}, ly, 1);
    if (power) *power = f.coef[2];
    return make_fit(variable, f, samples.size());
}

const Table1Cell* Table1Report::find(SwitchingKind sw, TableRow row) const {
    for (const auto& c : cells) {
        if (c.switching == sw && c.row == row) return &c;
    }
    return nullptr;
}

GridPoint evaluate_point(double a, double lambda, const SwitchingFunction& switching,
                         const SpectralFunction& spectral, const quad::Tolerance& tol) {
    GridPoint p{switching.kind(), spectral.kind(), TableRow::emission, a, lambda};
    try {
        const auto f0 = response_massless(a, switching, tol);
        const auto ex = nonlocal_excess(ResponseRequest{a, lambda, switching, spectral, tol});
        p.f0 = f0.value;
        p.f0_error = f0.abs_error_estimate;
        p.excess = ex.value;
        p.excess_error = ex.abs_error_estimate;
        p.converged = f0.converged && ex.converged;
        if (f0.value > 0.0) p.delta = ex.value / f0.value;
    } catch (const std::exception& e) {
        p.f0 = p.excess = std::numeric_limits<double>::quiet_NaN();
        p.converged = false;
        p.error = e.what();
    }
    return p;
}

namespace {

struct Job {
    SwitchingKind switching;
    TableRow row;
    double a;
    double lambda;
};

class JobList {
public:
    std::size_t add(SwitchingKind sw, TableRow row, double a, double lambda) {
        jobs_.push_back(Job{sw, row, a, lambda});
        return jobs_.size() - 1;
    }
    std::vector<std::size_t> add_all(SwitchingKind sw, TableRow row, const std::vector<double>& as,
                                     const std::vector<double>& lambdas) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < as.size(); ++i) idx.push_back(add(sw, row, as[i], lambdas[i]));
        return idx;
    }
    const std::vector<Job>& jobs() const { return jobs_; }

private:
    std::vector<Job> jobs_;
};

std::vector<double> repeat(double v, std::size_t n) { return std::vector<double>(n, v); }

std::vector<double> negated(const std::vector<double>& v) {
    std::vector<double> out;
    for (double x : v) out.push_back(-x);
    return out;
}

struct CellPlan {
    SwitchingKind switching;
    // emission
    std::vector<std::size_t> em_lambda, em_abs_a, em_fixed_product;
    // short-time
    std::vector<std::size_t> st_lambda, st_pos, st_neg;
    // vacuum
    std::vector<std::size_t> vac_a, vac_lambda;
};

void add_check(Table1Cell& cell, std::string name, double measured, double expected, double tolerance) {
    Check c{std::move(name), measured, expected, tolerance, std::fabs(measured - expected) <= tolerance};
    cell.checks.push_back(std::move(c));
}

void add_failed_check(Table1Cell& cell, std::string name, double expected, double tolerance, const std::string& why) {
    cell.checks.push_back(Check{std::move(name), std::numeric_limits<double>::quiet_NaN(), expected, tolerance, false});
    if (!cell.note.empty()) cell.note += "; ";
    cell.note += why;
}

std::vector<Sample> collect(const std::vector<GridPoint>& pts, const std::vector<std::size_t>& idx,
                            double (*x_of)(const GridPoint&), bool use_delta) {
    std::vector<Sample> s;
    for (auto i : idx) {
        const auto& p = pts[i];
        if (!p.error.empty()) throw ValidationError("samples", "grid point failed: " + p.error);
        s.push_back(Sample{x_of(p), use_delta ? p.delta.value_or(0.0) : p.excess});
    }
    return s;
}

double x_lambda(const GridPoint& p) { return p.lambda; }
double x_abs_a(const GridPoint& p) { return std::fabs(p.a); }
double x_a(const GridPoint& p) { return p.a; }
double x_a2_half(const GridPoint& p) { return 0.5 * p.a * p.a; }

// Fit, record it and check it against an expected value.
template <class FitFn>
void fit_and_check(Table1Cell& cell, const std::string& name, double expected, double tolerance, FitFn&& fn) {
    try {
        ScalingFit f = fn();
        add_check(cell, name, f.fitted_exponent, expected, tolerance);
        cell.fits.push_back(std::move(f));
    } catch (const std::exception& e) {
        add_failed_check(cell, name, expected, tolerance, name + ": " + e.what());
    }
}

bool all_converged(const std::vector<GridPoint>& pts, const std::vector<std::size_t>& idx) {
    return std::all_of(idx.begin(), idx.end(), [&](auto i) { return pts[i].converged; });
}

void finish(Table1Cell& cell, bool converged) {
    if (!converged) {
        if (!cell.note.empty()) cell.note += "; ";
        cell.note += "some grid points did not converge";
    }
    if (cell.status == CellStatus::info) return;
    const bool ok = std::all_of(cell.checks.begin(), cell.checks.end(), [](const Check& c) { return c.passed; });
    cell.status = ok && converged ? CellStatus::pass : CellStatus::fail;
}

Table1Cell emission_cell(const CellPlan& plan, const std::vector<GridPoint>& pts, const Table1Tolerances& tol) {
    Table1Cell cell{plan.switching, TableRow::emission, "T l_n^2 |Omega|^3  (lambda^2 |a|^3)"};
    cell.status = CellStatus::pass;
    fit_and_check(cell, "excess vs lambda", 2.0, tol.power_exponent, [&] {
        return fit_power_law(collect(pts, plan.em_lambda, x_lambda, false), FitVariable::lambda);
    });
    fit_and_check(cell, "delta vs lambda", 2.0, tol.power_exponent, [&] {
        auto f = fit_power_law(collect(pts, plan.em_lambda, x_lambda, true), FitVariable::lambda);
        f.quantity = "delta";
        return f;
    });
    fit_and_check(cell, "excess vs |a| at fixed lambda", 3.0, tol.power_exponent, [&] {
        return fit_power_law(collect(pts, plan.em_abs_a, x_abs_a, false), FitVariable::abs_a);
    });
    fit_and_check(cell, "excess vs T at fixed Omega and l_n", 1.0, tol.power_exponent, [&] {
        return fit_power_law(collect(pts, plan.em_fixed_product, x_abs_a, false), FitVariable::t_at_fixed_omega);
    });
    std::vector<std::size_t> all = plan.em_lambda;
    all.insert(all.end(), plan.em_abs_a.begin(), plan.em_abs_a.end());
    all.insert(all.end(), plan.em_fixed_product.begin(), plan.em_fixed_product.end());
    finish(cell, all_converged(pts, all));
    return cell;
}

Table1Cell short_cell(const CellPlan& plan, const std::vector<GridPoint>& pts, const Table1Tolerances& tol) {
    Table1Cell cell{plan.switching, TableRow::short_time, "l_n^2 / T^2  (lambda^2)"};
    if (plan.switching == SwitchingKind::exponential) cell.predicted_form = "~ l_n^2 / T^2  (lambda^2)";
    cell.status = CellStatus::pass;
    fit_and_check(cell, "excess vs lambda", 2.0, tol.power_exponent, [&] {
        return fit_power_law(collect(pts, plan.st_lambda, x_lambda, false), FitVariable::lambda);
    });
    for (std::size_t i = 0; i < plan.st_pos.size(); ++i) {
        const auto& p = pts[plan.st_pos[i]];
        const auto& n = pts[plan.st_neg[i]];
        std::ostringstream name;
        name << "sign symmetry at |a| = " << p.a;
        if (!p.error.empty() || !n.error.empty()) {
            add_failed_check(cell, name.str(), 0.0, tol.sign_symmetry, "symmetry point failed");
            continue;
        }
        const double asym = std::fabs(p.excess - n.excess) / std::max(std::fabs(p.excess), std::fabs(n.excess));
        add_check(cell, name.str(), asym, 0.0, tol.sign_symmetry);
    }
    std::vector<std::size_t> all = plan.st_lambda;
    all.insert(all.end(), plan.st_pos.begin(), plan.st_pos.end());
    all.insert(all.end(), plan.st_neg.begin(), plan.st_neg.end());
    finish(cell, all_converged(pts, all));
    return cell;
}

Table1Cell vacuum_cell(const CellPlan& plan, const std::vector<GridPoint>& pts, const Table1Tolerances& tol,
                       double zero_tol) {
    Table1Cell cell{plan.switching, TableRow::vacuum, ""};
    cell.status = CellStatus::pass;
    switch (plan.switching) {
    case SwitchingKind::sinc: {
        cell.predicted_form = "0";
        double worst = 0.0;
        bool failed = false;
        for (auto i : plan.vac_a) {
            if (!pts[i].error.empty()) failed = true;
            else worst = std::max(worst, std::fabs(pts[i].excess));
        }
        if (failed) add_failed_check(cell, "max |excess|", 0.0, zero_tol, "vacuum point failed");
        else add_check(cell, "max |excess|", worst, 0.0, zero_tol);
        break;
    }
    case SwitchingKind::lorentzian:
        cell.predicted_form = "l_n^2 / T^2 e^{-2 Omega T}  (lambda^2 e^{-2a})";
        fit_and_check(cell, "log excess slope vs a", -2.0, tol.exponential_rate, [&] {
            return fit_exponential_rate(collect(pts, plan.vac_a, x_a, false), FitVariable::a);
        });
        break;
    case SwitchingKind::gaussian: {
        cell.predicted_form = "e^{-Omega^2 T^2/2} l_n^2 / (Omega^4 T^6)  (lambda^2 e^{-a^2/2} / a^4)";
        // Leading behaviour: strip the tabulated a^-4 prefactor, then fit the rate.
        fit_and_check(cell, "log(a^4 excess) slope vs a^2/2", -1.0, tol.exponential_rate, [&] {
            auto s = collect(pts, plan.vac_a, x_a2_half, false);
            for (std::size_t i = 0; i < s.size(); ++i) {
                const double a = pts[plan.vac_a[i]].a;
                s[i].y *= a * a * a * a;
            }
            auto f = fit_exponential_rate(s, FitVariable::a_squared_half);
            f.quantity = "a^4 excess";
            return f;
        });
        try {
            auto raw = fit_exponential_rate(collect(pts, plan.vac_a, x_a2_half, false), FitVariable::a_squared_half);
            cell.fits.push_back(raw);
            std::vector<double> z;
            for (auto i : plan.vac_a) z.push_back(pts[i].a);
            double power = 0.0;
            auto two = fit_exponential_rate_with_power(collect(pts, plan.vac_a, x_a2_half, false), z,
                                                       FitVariable::a_squared_half, &power);
            two.quantity = "excess, free power of a";
            cell.fits.push_back(two);
            std::ostringstream n;
            n << "raw log-excess slope " << raw.fitted_exponent << "; with free a^p prefactor slope "
              << two.fitted_exponent << ", p = " << power;
            cell.note = n.str();
        } catch (const std::exception&) {
        }
        break;
    }
    case SwitchingKind::exponential: {
        cell.predicted_form = "~ l_n^2 / T^2  (lambda^2)";
        cell.status = CellStatus::info;
        try {
            cell.fits.push_back(fit_power_law(collect(pts, plan.vac_lambda, x_lambda, false), FitVariable::lambda));
            auto fa = fit_power_law(collect(pts, plan.vac_a, x_abs_a, false), FitVariable::abs_a);
            cell.fits.push_back(fa);
            std::ostringstream n;
            n << "approximate form; lambda exponent " << cell.fits[0].fitted_exponent << ", a exponent "
              << fa.fitted_exponent;
            cell.note = n.str();
        } catch (const std::exception& e) {
            cell.note = e.what();
        }
        break;
    }
    }
    std::vector<std::size_t> all = plan.vac_a;
    all.insert(all.end(), plan.vac_lambda.begin(), plan.vac_lambda.end());
    finish(cell, all_converged(pts, all));
    return cell;
}

Table1Report scan(std::span<const SwitchingKind> kinds, const SpectralFunction& spectral, const Table1Grid& grid,
                  const quad::Tolerance& tol, const Table1Tolerances& tolerances, unsigned threads) {
    tol.validate();
    JobList jobs;
    std::vector<CellPlan> plans;
    for (auto sw : kinds) {
        CellPlan p{sw};
        const auto& el = grid.emission_lambdas;
        p.em_lambda = jobs.add_all(sw, TableRow::emission, repeat(grid.emission_a_for_lambda_fit, el.size()), el);
        p.em_abs_a = jobs.add_all(sw, TableRow::emission, negated(grid.emission_abs_a),
                                  repeat(grid.emission_lambda_for_a_fit, grid.emission_abs_a.size()));
        std::vector<double> fixed;
        for (double x : grid.emission_abs_a) fixed.push_back(grid.emission_fixed_lambda_abs_a / x);
        p.em_fixed_product = jobs.add_all(sw, TableRow::emission, negated(grid.emission_abs_a), fixed);

        const auto& sl = grid.short_lambdas;
        p.st_lambda = jobs.add_all(sw, TableRow::short_time, repeat(grid.short_a_for_lambda_fit, sl.size()), sl);
        const auto sym = repeat(grid.short_lambda_for_symmetry, grid.short_abs_a.size());
        p.st_pos = jobs.add_all(sw, TableRow::short_time, grid.short_abs_a, sym);
        p.st_neg = jobs.add_all(sw, TableRow::short_time, negated(grid.short_abs_a), sym);

        const std::vector<double>* va = nullptr;
        switch (sw) {
        case SwitchingKind::sinc: va = &grid.vacuum_sinc_a; break;
        case SwitchingKind::lorentzian: va = &grid.vacuum_lorentzian_a; break;
        case SwitchingKind::gaussian: va = &grid.vacuum_gaussian_a; break;
        case SwitchingKind::exponential: va = &grid.vacuum_exponential_a; break;
        }
        p.vac_a = jobs.add_all(sw, TableRow::vacuum, *va, repeat(grid.vacuum_lambda, va->size()));
        if (sw == SwitchingKind::exponential) {
            const auto& vl = grid.vacuum_exponential_lambdas;
            p.vac_lambda = jobs.add_all(sw, TableRow::vacuum, repeat(va->front(), vl.size()), vl);
        }
        plans.push_back(std::move(p));
    }

    // Excesses span many decades, so only the relative tolerance controls the scan.
    quad::Tolerance scan_tol = tol;
    scan_tol.abs_tol = 1e-300;

    Table1Report report{spectral.kind(), spectral.alpha()};
    const auto& js = jobs.jobs();
    report.points.resize(js.size());
    parallel_for(js.size(), threads, [&](std::size_t i) {
        const auto& j = js[i];
        auto p = evaluate_point(j.a, j.lambda, SwitchingFunction(j.switching), spectral, scan_tol);
        p.row = j.row;
        report.points[i] = std::move(p);
    });

    for (const auto& plan : plans) {
        report.cells.push_back(vacuum_cell(plan, report.points, tolerances, tol.abs_tol));
        report.cells.push_back(short_cell(plan, report.points, tolerances));
        report.cells.push_back(emission_cell(plan, report.points, tolerances));
    }
    return report;
}

} // namespace

Table1Report table1_scan(SwitchingKind switching, const SpectralFunction& spectral, const Table1Grid& grid,
                         const quad::Tolerance& tol, const Table1Tolerances& tolerances, unsigned threads) {
    const std::array kinds{switching};
    return scan(kinds, spectral, grid, tol, tolerances, threads);
}

Table1Report table1_scan_all(const SpectralFunction& spectral, const Table1Grid& grid, const quad::Tolerance& tol,
                             const Table1Tolerances& tolerances, unsigned threads) {
    return scan(kAllSwitchingKinds, spectral, grid, tol, tolerances, threads);
}

std::vector<ExponentComparison> compare_reports(const Table1Report& first, const Table1Report& second,
                                                const Table1Tolerances& tolerances) {
    std::vector<ExponentComparison> out;
    for (const auto& c1 : first.cells) {
        const auto* c2 = second.find(c1.switching, c1.row);
        if (!c2) continue;
        for (const auto& f1 : c1.fits) {
            for (const auto& f2 : c2->fits) {
                if (f1.variable != f2.variable || f1.quantity != f2.quantity) continue;
                const bool rate = f1.variable == FitVariable::a || f1.variable == FitVariable::a_squared_half;
                const double t = rate ? tolerances.exponential_rate : tolerances.power_exponent;
                out.push_back(ExponentComparison{c1.switching, c1.row, f1.variable, f1.fitted_exponent,
                                                 f2.fitted_exponent, t,
                                                 std::fabs(f1.fitted_exponent - f2.fitted_exponent) <= t});
            }
        }
    }
    return out;
}

Figure1Result figure1_sweep(const Figure1Axes& axes, const SwitchingFunction& switching,
                            const SpectralFunction& spectral, const quad::Tolerance& tol, unsigned threads) {
    tol.validate();
    std::vector<Figure1Point> pts;
    auto add = [&](char panel, double a, double lambda) {
        const auto tag = classify_regime(DimensionlessGroups{a, lambda});
        if (tag.validity != Validity::low_energy_valid || lambda < 0.0) {
            std::ostringstream msg;
            msg << "panel " << panel << " point (a = " << a << ", lambda = " << lambda
                << ") is outside low-energy validity";
            throw ValidationError("axes", msg.str());
        }
        Figure1Point p;
        p.panel = panel;
        p.a = a;
        p.lambda = lambda;
        pts.push_back(p);
    };
    for (double sign : {-1.0, 1.0}) {
        for (double l : axes.panel_a_lambdas) add('a', sign * axes.panel_a_abs_a, l);
    }
    for (double sign : {-1.0, 1.0}) {
        for (double l : axes.panel_b_lambdas) add('b', sign * axes.panel_b_abs_a, l);
    }
    for (double x : axes.panel_c_abs_a) {
        for (double l : axes.panel_c_lambdas) add('c', axes.panel_c_sign * x, l);
    }

    quad::Tolerance sweep_tol = tol;
    sweep_tol.abs_tol = 1e-300;
    parallel_for(pts.size(), threads, [&](std::size_t i) {
        auto& p = pts[i];
        const auto g = evaluate_point(p.a, p.lambda, switching, spectral, sweep_tol);
        p.f0 = g.f0;
        p.excess = g.excess;
        p.delta = g.delta;
        p.f0_error = g.f0_error;
        p.excess_error = g.excess_error;
        p.converged = g.converged;
        p.error = g.error;
    });

    Figure1Result out;
    out.switching = switching.kind();
    out.spectral = spectral.kind();
    out.points = std::move(pts);

    const std::size_t nb = axes.panel_b_lambdas.size();
    const std::size_t b0 = 2 * axes.panel_a_lambdas.size();
    bool overlap = nb > 0;
    for (std::size_t i = 0; i < nb; ++i) {
        const auto& neg = out.points[b0 + i];
        const auto& pos = out.points[b0 + nb + i];
        if (!neg.delta || !pos.delta) {
            overlap = false;
            continue;
        }
        if (*neg.delta == 0.0 && *pos.delta == 0.0) continue;
        const double r = std::fabs(*pos.delta - *neg.delta) / std::fabs(*neg.delta);
        out.panel_b_max_asymmetry = std::max(out.panel_b_max_asymmetry, r);
    }
    out.panel_b_overlap = overlap && out.panel_b_max_asymmetry <= axes.overlap_tolerance;

    const std::size_t na = axes.panel_a_lambdas.size();
    auto panel_a_fit = [&](std::size_t start) -> std::optional<ScalingFit> {
        std::vector<Sample> s;
        for (std::size_t i = 0; i < na; ++i) {
            const auto& p = out.points[start + i];
            if (!p.delta || !(*p.delta > 0.0) || !(p.lambda > 0.0)) return std::nullopt;
            s.push_back(Sample{p.lambda, *p.delta});
        }
        try {
            auto f = fit_power_law(s, FitVariable::lambda);
            f.quantity = "delta";
            return f;
        } catch (const ValidationError&) {
            return std::nullopt;
        }
    };
    out.panel_a_emission_fit = panel_a_fit(0);
    out.panel_a_vacuum_fit = panel_a_fit(na);
    return out;
}

} // namespace nldet::analysis
