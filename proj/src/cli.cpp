#include "nldet/cli.hpp"

#include "nldet/analysis.hpp"
#include "nldet/errors.hpp"
#include "nldet/parallel.hpp"
#include "nldet/planner.hpp"
#include "nldet/response.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace nldet::cli {
namespace {

using nlohmann::json;

enum class Format { csv, json };

struct Outcome {
    bool converged = true;
};

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

std::string csv_row(std::initializer_list<std::string> cells) {
    std::string line;
    bool first = true;
    for (const auto& c : cells) {
        if (!first) line += ',';
        line += c;
        first = false;
    }
    line += '\n';
    return line;
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json regime_json(const RegimeTag& r) {
    return {{"gap_sign", to_string(r.gap_sign)},
            {"time_regime", to_string(r.time_regime)},
            {"validity", to_string(r.validity)}};
}

json fit_json(const analysis::ScalingFit& f) {
    return {{"variable", analysis::to_string(f.variable)},
            {"quantity", f.quantity},
            {"fitted_exponent", f.fitted_exponent},
            {"stderr", f.standard_error},
            {"r_squared", f.r_squared},
            {"sample_count", f.sample_count}};
}

std::vector<double> parse_range(const std::string& spec, const std::string& flag, bool logarithmic) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(flag, "expected start:stop:count, got '" + spec + "'");
        }
    }
    if (parts.size() != 3) throw ValidationError(flag, "expected start:stop:count, got '" + spec + "'");
    const double lo = parts[0];
    const double hi = parts[1];
    const double count = parts[2];
    if (!(count >= 1.0) || count != std::floor(count) || count > 1e6) {
        throw ValidationError(flag, "count must be a positive integer");
    }
    if (logarithmic && !(lo * hi > 0.0)) throw ValidationError(flag, "log range endpoints must be nonzero with equal sign");
    const auto n = static_cast<std::size_t>(count);
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        if (logarithmic) {
            const double sign = lo < 0 ? -1.0 : 1.0;
            const double l0 = std::log10(std::fabs(lo));
            const double l1 = std::log10(std::fabs(hi));
            out.push_back(sign * std::pow(10.0, l0 + t * (l1 - l0)));
        } else {
            out.push_back(lo + t * (hi - lo));
        }
    }
    return out;
}

struct Common {
    std::string switching = "gaussian";
    std::string spectral = "exponential";
    double alpha = 1.0;
    double rel_tol = quad::Tolerance{}.rel_tol;
    double abs_tol = quad::Tolerance{}.abs_tol;
    std::size_t max_evals = quad::Tolerance{}.max_evaluations;
    std::string output;
    std::string format;
    unsigned threads = default_thread_count();

    quad::Tolerance tolerance() const {
        quad::Tolerance t{rel_tol, abs_tol, max_evals};
        t.validate();
        return t;
    }
    SwitchingFunction switching_fn() const { return SwitchingFunction::from_name(switching); }
    SpectralFunction spectral_fn() const { return SpectralFunction::from_name(spectral, alpha); }
    Format fmt(Format fallback) const {
        if (format.empty()) return fallback;
        if (format == "csv") return Format::csv;
        if (format == "json") return Format::json;
        throw ValidationError("format", "expected csv or json");
    }
};

void add_common(CLI::App* sub, Common& c, bool with_physics, bool with_threads) {
    if (with_physics) {
        sub->add_option("--switching", c.switching, "exponential | sinc | lorentzian | gaussian")->capture_default_str();
        sub->add_option("--spectral", c.spectral, "exponential | causal-set")->capture_default_str();
        sub->add_option("--alpha", c.alpha, "exponential spectral decay constant")->capture_default_str();
        sub->add_option("--rel-tol", c.rel_tol, "relative quadrature tolerance")->capture_default_str();
        sub->add_option("--abs-tol", c.abs_tol, "absolute quadrature tolerance")->capture_default_str();
        sub->add_option("--max-evals", c.max_evals, "integrand evaluation budget per integral")->capture_default_str();
    }
    sub->add_option("--output,-o", c.output, "output file (default stdout)");
    sub->add_option("--format", c.format, "csv | json");
    if (with_threads) sub->add_option("--threads", c.threads, "worker threads")->capture_default_str();
}

// (a, lambda) or (omega, t_window, l_n) parameterization of one or more points.
struct PointArgs {
    std::vector<double> a, lambda, omega, t_window, l_n;
    std::string a_log, lambda_log;
    CLI::Option *o_a = nullptr, *o_lambda = nullptr, *o_omega = nullptr, *o_t = nullptr, *o_l = nullptr;
    CLI::Option *o_a_log = nullptr, *o_lambda_log = nullptr;
};

void add_point_args(CLI::App* sub, PointArgs& p, bool grids) {
    p.o_a = sub->add_option("--a", p.a, "a = Omega T")->delimiter(',')->allow_extra_args(false);
    p.o_lambda = sub->add_option("--lambda", p.lambda, "lambda = l_n / (c T)")->delimiter(',')->allow_extra_args(false);
    p.o_omega = sub->add_option("--omega", p.omega, "gap Omega in rad/s")->delimiter(',')->allow_extra_args(false);
    p.o_t = sub->add_option("--t-window", p.t_window, "switching time T in s")->delimiter(',')->allow_extra_args(false);
    p.o_l = sub->add_option("--l-n", p.l_n, "nonlocality scale l_n in m")->delimiter(',')->allow_extra_args(false);
    if (grids) {
        p.o_a_log = sub->add_option("--a-log", p.a_log, "log-spaced a grid start:stop:count");
        p.o_lambda_log = sub->add_option("--lambda-log", p.lambda_log, "log-spaced lambda grid start:stop:count");
    }
}

bool given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

std::vector<DimensionlessGroups> resolve_points(const PointArgs& p, bool need_lambda) {
    const std::pair<const CLI::Option*, const char*> dimless[] = {
        {p.o_a, "--a"}, {p.o_lambda, "--lambda"}, {p.o_a_log, "--a-log"}, {p.o_lambda_log, "--lambda-log"}};
    const std::pair<const CLI::Option*, const char*> physical[] = {
        {p.o_omega, "--omega"}, {p.o_t, "--t-window"}, {p.o_l, "--l-n"}};
    const char* dim_flag = nullptr;
    for (const auto& [o, name] : dimless) {
        if (given(o) && !dim_flag) dim_flag = name;
    }
    const char* phys_flag = nullptr;
    for (const auto& [o, name] : physical) {
        if (given(o) && !phys_flag) phys_flag = name;
    }
    if (dim_flag && phys_flag) {
        throw ValidationError(std::string(phys_flag).substr(2),
                              std::string(phys_flag) + " cannot be combined with " + dim_flag);
    }

    std::vector<DimensionlessGroups> out;
    if (phys_flag) {
        if (!given(p.o_omega)) throw ValidationError("omega", "--omega is required with --t-window / --l-n");
        if (!given(p.o_t)) throw ValidationError("t-window", "--t-window is required with --omega");
        if (need_lambda && !given(p.o_l)) throw ValidationError("l-n", "--l-n is required with --omega");
        const std::vector<double> zero{0.0};
        const auto& ls = given(p.o_l) ? p.l_n : zero;
        for (double w : p.omega) {
            for (double t : p.t_window) {
                for (double l : ls) out.push_back(make_config(RadPerSecond{w}, Seconds{t}, Meters{l}).groups());
            }
        }
        return out;
    }

    std::vector<double> as = p.a;
    if (given(p.o_a_log)) {
        if (given(p.o_a)) throw ValidationError("a-log", "--a-log cannot be combined with --a");
        as = parse_range(p.a_log, "a-log", true);
    }
    std::vector<double> ls = p.lambda;
    if (given(p.o_lambda_log)) {
        if (given(p.o_lambda)) throw ValidationError("lambda-log", "--lambda-log cannot be combined with --lambda");
        ls = parse_range(p.lambda_log, "lambda-log", true);
    }
    if (as.empty()) throw ValidationError("a", "--a (or --omega with --t-window) is required");
    if (ls.empty()) {
        if (need_lambda) throw ValidationError("lambda", "--lambda (or --l-n with --omega and --t-window) is required");
        ls.push_back(0.0);
    }
    for (double a : as) {
        if (!std::isfinite(a)) throw ValidationError("a", "must be finite");
        for (double l : ls) {
            if (!std::isfinite(l) || l < 0.0) throw ValidationError("lambda", "must be finite and >= 0");
            out.push_back(DimensionlessGroups{a, l});
        }
    }
    return out;
}

DimensionlessGroups single_point(const PointArgs& p, bool need_lambda) {
    const auto pts = resolve_points(p, need_lambda);
    if (pts.size() != 1) throw ValidationError("a", "exactly one point expected; use `sweep` for grids");
    return pts.front();
}

std::filesystem::path resolve_output(const std::string& output) {
    std::filesystem::path path(output);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("NLDET_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
    }
    return path;
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
    if (c.output.empty()) {
        out << text;
        return;
    }
    const auto path = resolve_output(c.output);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("output", "cannot open " + path.string());
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- subcommands ---

Outcome cmd_rho(const Common& c, const std::vector<double>& xs_in, const std::string& x_log, std::ostream& out) {
    const auto rho = c.spectral_fn();
    auto xs = xs_in;
    if (!x_log.empty()) xs = parse_range(x_log, "x-log", true);
    if (xs.empty()) xs = parse_range("1e-3:1e2:11", "x-log", true);
    for (double x : xs) {
        if (!(x >= 0.0)) throw ValidationError("x", "must be >= 0");
    }
    if (c.fmt(Format::csv) == Format::csv) {
        std::string s = csv_row({"x", "rho_hat"});
        for (double x : xs) s += csv_row({num(x), num(rho.rho_hat(x))});
        emit(c, s, out);
    } else {
        json rows = json::array();
        for (double x : xs) rows.push_back({{"x", x}, {"rho_hat", rho.rho_hat(x)}});
        emit(c, dump({{"spectral", rho.name()}, {"alpha", rho.alpha()}, {"rows", rows}}), out);
    }
    return {};
}

Outcome cmd_switching(const Common& c, const std::vector<double>& xs_in, const std::string& x_lin, std::ostream& out) {
    const auto sw = c.switching_fn();
    auto xs = xs_in;
    if (!x_lin.empty()) xs = parse_range(x_lin, "x-lin", false);
    if (xs.empty()) xs = parse_range("-5:5:21", "x-lin", false);
    if (c.fmt(Format::csv) == Format::csv) {
        std::string s = csv_row({"x", "chi", "chi_tilde", "chi_tilde_sq"});
        for (double x : xs) s += csv_row({num(x), num(sw.evaluate(x)), num(sw.fourier(x)), num(sw.fourier_squared(x))});
        emit(c, s, out);
    } else {
        json rows = json::array();
        for (double x : xs) {
            rows.push_back({{"x", x}, {"chi", sw.evaluate(x)}, {"chi_tilde", sw.fourier(x)},
                            {"chi_tilde_sq", sw.fourier_squared(x)}});
        }
        emit(c, dump({{"switching", sw.name()}, {"ft_norm_squared", sw.ft_norm_squared()}, {"rows", rows}}), out);
    }
    return {};
}

Outcome cmd_response(const Common& c, const PointArgs& p, const std::vector<double>& masses, std::ostream& out) {
    const auto g = single_point(p, false);
    const auto sw = c.switching_fn();
    const auto tol = c.tolerance();
    struct Row {
        std::string kind;
        double mass;
        quad::QuadratureResult r;
    };
    std::vector<Row> rows;
    rows.push_back({"massless", 0.0, response_massless(g.a, sw, tol)});
    for (double m : masses) {
        if (!(m >= 0.0) || !std::isfinite(m)) throw ValidationError("mass", "must be finite and >= 0");
        rows.push_back({"massive", m, response_massive(g.a, m, sw, tol)});
    }
    Outcome o;
    for (const auto& r : rows) o.converged = o.converged && r.r.converged;
    if (c.fmt(Format::csv) == Format::csv) {
        std::string s = csv_row({"a", "kind", "mass", "value", "abs_error", "converged"});
        for (const auto& r : rows) {
            s += csv_row({num(g.a), r.kind, num(r.mass), num(r.r.value), num(r.r.abs_error_estimate),
                          csv_bool(r.r.converged)});
        }
        emit(c, s, out);
    } else {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"kind", r.kind}, {"mass", r.mass}, {"value", r.r.value},
                           {"abs_error", r.r.abs_error_estimate}, {"evaluations", r.r.evaluations},
                           {"converged", r.r.converged}});
        }
        emit(c, dump({{"switching", sw.name()}, {"a", g.a}, {"rows", arr}}), out);
    }
    return o;
}

Outcome cmd_excess(const Common& c, const PointArgs& p, std::ostream& out) {
    const auto g = single_point(p, true);
    const ResponseRequest req{g.a, g.lambda, c.switching_fn(), c.spectral_fn(), c.tolerance()};
    const auto r = nonlocal_excess(req);
    const auto regime = classify_regime(g);
    if (c.fmt(Format::json) == Format::csv) {
        std::string s = csv_row({"switching", "spectral", "a", "lambda", "excess", "excess_err", "converged"});
        s += csv_row({std::string(req.switching.name()), std::string(req.spectral.name()), num(g.a), num(g.lambda),
                      num(r.value), num(r.abs_error_estimate), csv_bool(r.converged)});
        emit(c, s, out);
    } else {
        emit(c,
             dump({{"switching", req.switching.name()},
                   {"spectral", req.spectral.name()},
                   {"alpha", req.spectral.alpha()},
                   {"a", g.a},
                   {"lambda", g.lambda},
                   {"excess", r.value},
                   {"excess_error", r.abs_error_estimate},
                   {"evaluations", r.evaluations},
                   {"tail_unresolved", r.tail_unresolved},
                   {"converged", r.converged},
                   {"regime", regime_json(regime)}}),
             out);
    }
    return {r.converged};
}

Outcome cmd_delta(const Common& c, const PointArgs& p, std::ostream& out) {
    const auto g = single_point(p, true);
    const ResponseRequest req{g.a, g.lambda, c.switching_fn(), c.spectral_fn(), c.tolerance()};
    const auto r = relative_response(req);
    if (c.fmt(Format::json) == Format::csv) {
        std::string s = csv_row({"switching", "spectral", "a", "lambda", "f0", "excess", "delta", "f0_err",
                                 "excess_err", "delta_err", "converged"});
        s += csv_row({std::string(req.switching.name()), std::string(req.spectral.name()), num(g.a), num(g.lambda),
                      num(r.f0), num(r.excess), num(r.delta), num(r.f0_error), num(r.excess_error),
                      num(r.delta_error), csv_bool(r.converged)});
        emit(c, s, out);
    } else {
        emit(c,
             dump({{"switching", req.switching.name()},
                   {"spectral", req.spectral.name()},
                   {"alpha", req.spectral.alpha()},
                   {"a", g.a},
                   {"lambda", g.lambda},
                   {"f0", r.f0},
                   {"excess", r.excess},
                   {"delta", r.delta},
                   {"f0_error", r.f0_error},
                   {"excess_error", r.excess_error},
                   {"delta_error", r.delta_error},
                   {"evaluations", r.evaluations},
                   {"converged", r.converged},
                   {"regime", regime_json(r.regime)}}),
             out);
    }
    return {r.converged};
}

std::string points_csv(const std::vector<analysis::GridPoint>& pts, bool with_row) {
    std::string s = with_row ? csv_row({"switching", "spectral", "a", "lambda", "f0", "excess", "delta", "f0_err",
                                        "excess_err", "converged", "row"})
                             : csv_row({"switching", "spectral", "a", "lambda", "f0", "excess", "delta", "f0_err",
                                        "excess_err", "converged"});
    for (const auto& p : pts) {
        std::string line = std::string(to_string(p.switching)) + ',' + std::string(to_string(p.spectral)) + ',' +
                           num(p.a) + ',' + num(p.lambda) + ',' + num(p.f0) + ',' + num(p.excess) + ',' +
                           num(p.delta.value_or(std::nan(""))) + ',' + num(p.f0_error) + ',' + num(p.excess_error) +
                           ',' + csv_bool(p.converged);
        if (with_row) line += ',' + std::string(analysis::to_string(p.row));
        s += line + '\n';
    }
    return s;
}

json point_json(const analysis::GridPoint& p) {
    json j = {{"a", p.a},
              {"lambda", p.lambda},
              {"f0", p.f0},
              {"excess", p.excess},
              {"delta", opt_json(p.delta)},
              {"f0_err", p.f0_error},
              {"excess_err", p.excess_error},
              {"converged", p.converged}};
    if (!p.error.empty()) j["error"] = p.error;
    return j;
}

Outcome cmd_sweep(const Common& c, const PointArgs& p, std::ostream& out) {
    const auto groups = resolve_points(p, true);
    const auto sw = c.switching_fn();
    const auto rho = c.spectral_fn();
    const auto tol = c.tolerance();
    std::vector<analysis::GridPoint> pts(groups.size());
    parallel_for(groups.size(), c.threads, [&](std::size_t i) {
        pts[i] = analysis::evaluate_point(groups[i].a, groups[i].lambda, sw, rho, tol);
    });
    Outcome o;
    for (const auto& pt : pts) o.converged = o.converged && pt.converged;
    if (c.fmt(Format::csv) == Format::csv) {
        emit(c, points_csv(pts, false), out);
    } else {
        json arr = json::array();
        for (const auto& pt : pts) arr.push_back(point_json(pt));
        emit(c, dump({{"switching", sw.name()}, {"spectral", rho.name()}, {"alpha", rho.alpha()}, {"points", arr}}),
             out);
    }
    return o;
}

json report_json(const analysis::Table1Report& r) {
    json cells = json::array();
    for (const auto& cell : r.cells) {
        json fits = json::array();
        for (const auto& f : cell.fits) fits.push_back(fit_json(f));
        json checks = json::array();
        for (const auto& ch : cell.checks) {
            checks.push_back({{"name", ch.name},
                              {"measured", ch.measured},
                              {"expected", ch.expected},
                              {"tolerance", ch.tolerance},
                              {"passed", ch.passed}});
        }
        cells.push_back({{"switching", to_string(cell.switching)},
                         {"row", analysis::to_string(cell.row)},
                         {"predicted_form", cell.predicted_form},
                         {"status", analysis::to_string(cell.status)},
                         {"note", cell.note},
                         {"fits", fits},
                         {"checks", checks}});
    }
    return {{"spectral", to_string(r.spectral)}, {"alpha", r.alpha}, {"cells", cells}};
}

Outcome cmd_table1(const Common& c, std::ostream& out) {
    const auto tol = c.tolerance();
    std::vector<SpectralFunction> spectra;
    if (c.spectral == "both") {
        spectra = {SpectralFunction(SpectralKind::exponential, c.alpha), SpectralFunction(SpectralKind::causal_set)};
    } else {
        spectra.push_back(c.spectral_fn());
    }
    std::vector<analysis::Table1Report> reports;
    for (const auto& rho : spectra) {
        if (c.switching == "all") reports.push_back(analysis::table1_scan_all(rho, {}, tol, {}, c.threads));
        else reports.push_back(analysis::table1_scan(c.switching_fn().kind(), rho, {}, tol, {}, c.threads));
    }
    Outcome o;
    for (const auto& r : reports) {
        for (const auto& p : r.points) o.converged = o.converged && p.converged;
    }
    if (c.fmt(Format::json) == Format::csv) {
        std::vector<analysis::GridPoint> all;
        for (const auto& r : reports) all.insert(all.end(), r.points.begin(), r.points.end());
        emit(c, points_csv(all, true), out);
        return o;
    }
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    json doc = {{"reports", arr}};
    if (reports.size() == 2) {
        json cmp = json::array();
        for (const auto& e : analysis::compare_reports(reports[0], reports[1])) {
            cmp.push_back({{"switching", to_string(e.switching)},
                           {"row", analysis::to_string(e.row)},
                           {"variable", analysis::to_string(e.variable)},
                           {"exponent_first", e.exponent_first},
                           {"exponent_second", e.exponent_second},
                           {"tolerance", e.tolerance},
                           {"agree", e.agree}});
        }
        doc["comparison"] = cmp;
    }
    emit(c, dump(doc), out);
    return o;
}

Outcome cmd_fig1(const Common& c, const analysis::Figure1Axes& axes, std::ostream& out) {
    const auto r = analysis::figure1_sweep(axes, c.switching_fn(), c.spectral_fn(), c.tolerance(), c.threads);
    Outcome o;
    for (const auto& p : r.points) o.converged = o.converged && p.converged;
    if (c.fmt(Format::json) == Format::csv) {
        std::string s = csv_row({"panel", "a", "lambda", "f0", "excess", "delta", "f0_err", "excess_err", "converged"});
        for (const auto& p : r.points) {
            s += csv_row({std::string(1, p.panel), num(p.a), num(p.lambda), num(p.f0), num(p.excess),
                          num(p.delta.value_or(std::nan(""))), num(p.f0_error), num(p.excess_error),
                          csv_bool(p.converged)});
        }
        emit(c, s, out);
        return o;
    }
    json pts = json::array();
    for (const auto& p : r.points) {
        json j = {{"panel", std::string(1, p.panel)},
                  {"a", p.a},
                  {"lambda", p.lambda},
                  {"f0", p.f0},
                  {"excess", p.excess},
                  {"delta", opt_json(p.delta)},
                  {"f0_err", p.f0_error},
                  {"excess_err", p.excess_error},
                  {"converged", p.converged}};
        if (!p.error.empty()) j["error"] = p.error;
        pts.push_back(j);
    }
    auto fit_or_null = [](const std::optional<analysis::ScalingFit>& f) { return f ? fit_json(*f) : json(nullptr); };
    emit(c,
         dump({{"switching", to_string(r.switching)},
               {"spectral", to_string(r.spectral)},
               {"panel_b_max_asymmetry", r.panel_b_max_asymmetry},
               {"panel_b_overlap", r.panel_b_overlap},
               {"panel_a_emission_fit", fit_or_null(r.panel_a_emission_fit)},
               {"panel_a_vacuum_fit", fit_or_null(r.panel_a_vacuum_fit)},
               {"points", pts}}),
         out);
    return o;
}

struct PlanArgs {
    std::string species = "Na-20";
    std::string catalog;
    double atoms = 0.0;
    double duration = 0.0;
    double efficiency = 1.0;
    std::string convention = "paper";
    std::string criterion = "paper-inverse";
    double omega = 0.0;
    double energy = 0.0;
    std::vector<double> masses;
    CLI::Option *o_omega = nullptr, *o_energy = nullptr, *o_atoms = nullptr, *o_duration = nullptr;
};

Outcome cmd_plan(const Common& c, const PlanArgs& a, std::ostream& out) {
    if (!given(a.o_atoms)) throw ValidationError("atoms", "--atoms is required");
    if (!given(a.o_duration)) throw ValidationError("duration", "--duration is required");
    if (given(a.o_omega) && given(a.o_energy)) throw ValidationError("energy", "--energy cannot be combined with --omega");
    if (!given(a.o_omega) && !given(a.o_energy)) throw ValidationError("omega", "--omega or --energy is required");
    const RadPerSecond omega = given(a.o_omega) ? RadPerSecond{a.omega} : to_angular_frequency(MeV{a.energy});

    const auto catalog = planner::load_catalog(a.catalog.empty() ? planner::default_catalog_path() : std::filesystem::path(a.catalog));
    const auto& species = planner::find_species(catalog, a.species);
    planner::ExperimentPlan p;
    p.n_atoms = a.atoms;
    p.duration = Seconds{a.duration};
    p.efficiency = a.efficiency;
    p.decay_convention = planner::decay_convention_from_name(a.convention);
    p.statistics_criterion = planner::statistics_criterion_from_name(a.criterion);
    const auto r = planner::plan(p, species, omega);

    std::vector<double> masses = a.masses;
    const auto confound = planner::confound_check(MeV{r.omega_energy_mev}, masses);

    if (c.fmt(Format::json) == Format::csv) {
        std::string s = csv_row({"quantity", "value"});
        auto kv = [&s](const std::string& k, double v) { s += csv_row({k, num(v)}); };
        kv("n_atoms", p.n_atoms);
        kv("duration_s", p.duration.value);
        kv("efficiency", p.efficiency);
        kv("omega_rad_s", omega.value);
        kv("omega_energy_MeV", r.omega_energy_mev);
        kv("gamma_events", r.gamma_events);
        kv("detected_events", r.detected_events);
        kv("min_delta", r.min_delta);
        kv("bound_m", r.bound.value);
        kv("bound_m_1sf", r.bound_rounded);
        emit(c, s, out);
        return {};
    }
    json entries = json::array();
    for (const auto& e : confound.entries) {
        entries.push_back(json{{"mass_MeV", e.mass_mev}, {"pair_threshold_MeV", e.pair_threshold_mev},
                               {"confound", e.confound}});
    }
    emit(c,
         dump({{"species",
                json{{"name", species.name},
                 {"half_life_s", species.half_life.value},
                 {"gamma_energy_MeV", species.gamma_energy.value}}},
               {"plan",
                json{{"n_atoms", p.n_atoms},
                 {"duration_s", p.duration.value},
                 {"efficiency", p.efficiency},
                 {"decay_convention", planner::to_string(p.decay_convention)},
                 {"statistics_criterion", planner::to_string(p.statistics_criterion)}}},
               {"omega_rad_s", omega.value},
               {"omega_energy_MeV", r.omega_energy_mev},
               {"gamma_events", r.gamma_events},
               {"detected_events", r.detected_events},
               {"min_delta", r.min_delta},
               {"bound_m", r.bound.value},
               {"bound_m_1sf", r.bound_rounded},
               {"confound",
                json{{"electron_threshold_MeV", confound.electron_threshold_mev},
                 {"below_electron_threshold", confound.below_electron_threshold},
                 {"clean", confound.clean},
                 {"candidates", entries}}}}),
         out);
    return {};
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-time detector response with a nonlocal scalar field"};
    app.name("nldet");
    app.require_subcommand(1);

    Common rho_c, sw_c, resp_c, ex_c, delta_c, sweep_c, t1_c, fig_c, plan_c;
    rho_c.spectral = "exponential";
    t1_c.switching = "all";
    fig_c.switching = "exponential";
    fig_c.spectral = "causal-set";

    auto* rho = app.add_subcommand("rho", "tabulate a spectral function");
    add_common(rho, rho_c, true, false);
    std::vector<double> rho_x;
    std::string rho_x_log;
    rho->add_option("--x", rho_x, "argument values")->delimiter(',');
    rho->add_option("--x-log", rho_x_log, "log-spaced grid start:stop:count");

    auto* swc = app.add_subcommand("switching", "tabulate a switching function and its transform");
    add_common(swc, sw_c, true, false);
    std::vector<double> sw_x;
    std::string sw_x_lin;
    swc->add_option("--x", sw_x, "abscissae, used as t for chi and w for chi~")->delimiter(',');
    swc->add_option("--x-lin", sw_x_lin, "linear grid start:stop:count");

    auto* resp = app.add_subcommand("response", "massless and massive local responses");
    add_common(resp, resp_c, true, false);
    PointArgs resp_p;
    add_point_args(resp, resp_p, false);
    std::vector<double> masses;
    resp->add_option("--mass", masses, "dimensionless masses m T")->delimiter(',');

    auto* ex = app.add_subcommand("excess", "nonlocal excess F - F0");
    add_common(ex, ex_c, true, false);
    PointArgs ex_p;
    add_point_args(ex, ex_p, false);

    auto* dl = app.add_subcommand("delta", "relative response (F - F0) / F0");
    add_common(dl, delta_c, true, false);
    PointArgs dl_p;
    add_point_args(dl, dl_p, false);

    auto* sweep = app.add_subcommand("sweep", "grid of responses");
    add_common(sweep, sweep_c, true, true);
    PointArgs sweep_p;
    add_point_args(sweep, sweep_p, true);

    auto* t1 = app.add_subcommand("table1", "scaling table for the switching functions");
    add_common(t1, t1_c, true, true);

    auto* fig = app.add_subcommand("fig1", "relative-response data for three plot panels");
    add_common(fig, fig_c, true, true);
    analysis::Figure1Axes axes;
    fig->add_option("--panel-a-abs-a", axes.panel_a_abs_a, "|a| of panel a")->capture_default_str();
    fig->add_option("--panel-a-lambdas", axes.panel_a_lambdas, "lambda values of panel a")->delimiter(',');
    fig->add_option("--panel-b-abs-a", axes.panel_b_abs_a, "|a| of panel b")->capture_default_str();
    fig->add_option("--panel-b-lambdas", axes.panel_b_lambdas, "lambda values of panel b")->delimiter(',');
    fig->add_option("--panel-c-abs-a", axes.panel_c_abs_a, "|a| values of panel c")->delimiter(',');
    fig->add_option("--panel-c-lambdas", axes.panel_c_lambdas, "lambda values of panel c")->delimiter(',');
    fig->add_option("--panel-c-sign", axes.panel_c_sign, "sign of a in panel c")->capture_default_str();

    auto* pl = app.add_subcommand("plan", "counting-statistics bound on l_n");
    add_common(pl, plan_c, false, false);
    PlanArgs plan_a;
    pl->add_option("--species", plan_a.species, "catalog entry")->capture_default_str();
    pl->add_option("--catalog", plan_a.catalog, "species catalog JSON");
    plan_a.o_atoms = pl->add_option("--atoms", plan_a.atoms, "number of atoms");
    plan_a.o_duration = pl->add_option("--duration", plan_a.duration, "observation time in s");
    pl->add_option("--efficiency", plan_a.efficiency, "detection efficiency in (0, 1]")->capture_default_str();
    pl->add_option("--decay-convention", plan_a.convention, "paper | standard")->capture_default_str();
    pl->add_option("--criterion", plan_a.criterion, "paper-inverse | shot-noise")->capture_default_str();
    plan_a.o_omega = pl->add_option("--omega", plan_a.omega, "gap in rad/s");
    plan_a.o_energy = pl->add_option("--energy", plan_a.energy, "gap in MeV");
    pl->add_option("--mass", plan_a.masses, "candidate massive-field masses in MeV")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInvalidConfig;
    }

    try {
        Outcome o;
        if (*rho) o = cmd_rho(rho_c, rho_x, rho_x_log, out);
        else if (*swc) o = cmd_switching(sw_c, sw_x, sw_x_lin, out);
        else if (*resp) o = cmd_response(resp_c, resp_p, masses, out);
        else if (*ex) o = cmd_excess(ex_c, ex_p, out);
        else if (*dl) o = cmd_delta(delta_c, dl_p, out);
        else if (*sweep) o = cmd_sweep(sweep_c, sweep_p, out);
        else if (*t1) o = cmd_table1(t1_c, out);
        else if (*fig) o = cmd_fig1(fig_c, axes, out);
        else if (*pl) o = cmd_plan(plan_c, plan_a, out);
        if (!o.converged) {
            err << "nldet: quadrature did not converge for at least one result\n";
            return kNotConverged;
        }
        return kSuccess;
    } catch (const ValidationError& e) {
        err << "nldet: invalid configuration: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const DomainError& e) {
        err << "nldet: invalid configuration: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const DivisionGuardError& e) {
        err << "nldet: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const EvaluationError& e) {
        err << "nldet: integrand evaluation failed at " << e.abscissa() << ": " << e.what() << '\n';
        return kNotConverged;
    } catch (const std::exception& e) {
        err << "nldet: internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

} // namespace nldet::cli
