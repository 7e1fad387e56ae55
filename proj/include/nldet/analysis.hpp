#pragma once

// Scaling-law extraction over (a, lambda) grids: power-law and exponential
// fits, the three-row response table for each switching function, and the
// relative-response sweep data for plotting.

#include "nldet/response.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nldet::analysis {

enum class FitVariable { lambda, abs_a, t_at_fixed_omega, a, a_squared_half };

std::string_view to_string(FitVariable v);

struct ScalingFit {
    FitVariable variable = FitVariable::lambda;
    /// What was fitted, e.g. "excess" or "delta".
    std::string quantity = "excess";
    double fitted_exponent = 0.0;
    double standard_error = 0.0;
    double r_squared = 0.0;
    std::size_t sample_count = 0;
};

struct Sample {
    double x;
    double y;
};

/// Least-squares slope of log y against log x. Requires >= 4 strictly
/// positive samples and a non-degenerate x range (ValidationError otherwise).
/// Logs are taken of x / x_first, so rescaling every x by a power of two
/// leaves the exponent bitwise unchanged.
ScalingFit fit_power_law(std::span<const Sample> samples, FitVariable variable = FitVariable::lambda);

/// Slope of log y against x (exponential rate), same preconditions on y.
ScalingFit fit_exponential_rate(std::span<const Sample> samples, FitVariable variable = FitVariable::a);

/// Slope of log y against x with an additional free log(z) regressor:
/// log y = c + slope x + p log z. Returns the slope; `power` receives p.
ScalingFit fit_exponential_rate_with_power(std::span<const Sample> samples, std::span<const double> z,
                                           FitVariable variable = FitVariable::a_squared_half,
                                           double* power = nullptr);

enum class TableRow { vacuum, short_time, emission };
enum class CellStatus { pass, fail, info };

std::string_view to_string(TableRow row);
std::string_view to_string(CellStatus status);

struct Check {
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct GridPoint {
    SwitchingKind switching;
    SpectralKind spectral;
    TableRow row;
    double a = 0.0;
    double lambda = 0.0;
    double f0 = 0.0;
    double excess = 0.0;
    std::optional<double> delta;
    double f0_error = 0.0;
    double excess_error = 0.0;
    bool converged = false;
    std::string error;
};

struct Table1Cell {
    SwitchingKind switching;
    TableRow row;
    std::string predicted_form;
    std::vector<ScalingFit> fits;
    std::vector<Check> checks;
    CellStatus status = CellStatus::info;
    std::string note;
};

struct Table1Report {
    SpectralKind spectral;
    double alpha = 1.0;
    std::vector<Table1Cell> cells;
    std::vector<GridPoint> points;

    const Table1Cell* find(SwitchingKind sw, TableRow row) const;
};

struct Table1Grid {
    // emission row (a < 0)
    double emission_a_for_lambda_fit = -1e3;
    std::vector<double> emission_lambdas{1e-8, 3.1622776601683795e-8, 1e-7, 3.1622776601683795e-7, 1e-6};
    std::vector<double> emission_abs_a{1e2, 3.1622776601683795e2, 1e3, 3.1622776601683795e3, 1e4};
    double emission_lambda_for_a_fit = 1e-10;
    double emission_fixed_lambda_abs_a = 1e-6;
    // short-time row
    double short_a_for_lambda_fit = 1e-3;
    std::vector<double> short_lambdas{1e-6, 3.1622776601683795e-6, 1e-5, 3.1622776601683795e-5, 1e-4};
    std::vector<double> short_abs_a{1e-4, 3.1622776601683795e-4, 1e-3, 3.1622776601683795e-3, 1e-2};
    double short_lambda_for_symmetry = 1e-5;
    // vacuum row (a > 0)
    double vacuum_lambda = 1e-4;
    std::vector<double> vacuum_sinc_a{1.5, 2.0, 4.0, 8.0, 12.0};
    std::vector<double> vacuum_lorentzian_a{2.0, 4.0, 6.0, 8.0, 10.0};
    std::vector<double> vacuum_gaussian_a{2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0};
    std::vector<double> vacuum_exponential_a{2.0, 4.0, 6.0, 8.0, 10.0, 12.0};
    std::vector<double> vacuum_exponential_lambdas{1e-6, 3.1622776601683795e-6, 1e-5, 3.1622776601683795e-5, 1e-4};
};

struct Table1Tolerances {
    double power_exponent = 0.05;
    double exponential_rate = 0.1;
    double sign_symmetry = 0.01;
};

/// Evaluates the three table rows for one switching function. Per-point
/// failures are recorded in the report; the scan never throws for them.
/// Quadrature runs with tol.rel_tol and an absolute floor of 1e-300 because
/// the sampled excesses span many decades; tol.abs_tol is the zero threshold
/// for compact-support cells.
Table1Report table1_scan(SwitchingKind switching, const SpectralFunction& spectral, const Table1Grid& grid = {},
                         const quad::Tolerance& tol = {}, const Table1Tolerances& tolerances = {},
                         unsigned threads = 1);

/// All four switching functions (12 cells).
Table1Report table1_scan_all(const SpectralFunction& spectral, const Table1Grid& grid = {},
                             const quad::Tolerance& tol = {}, const Table1Tolerances& tolerances = {},
                             unsigned threads = 1);

struct ExponentComparison {
    SwitchingKind switching;
    TableRow row;
    FitVariable variable;
    double exponent_first = 0.0;
    double exponent_second = 0.0;
    double tolerance = 0.0;
    bool agree = false;
};

/// Pairs up every fit present in both reports and checks |e1 - e2| <= tolerance.
std::vector<ExponentComparison> compare_reports(const Table1Report& first, const Table1Report& second,
                                                const Table1Tolerances& tolerances = {});

struct Figure1Axes {
    double panel_a_abs_a = 1e3;
    std::vector<double> panel_a_lambdas{1e-9, 1e-8, 1e-7, 1e-6};
    double panel_b_abs_a = 1e-3;
    std::vector<double> panel_b_lambdas{1e-6, 1e-5, 1e-4, 1e-3};
    std::vector<double> panel_c_abs_a{1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
    std::vector<double> panel_c_lambdas{1e-10, 1e-9, 1e-8, 1e-7, 1e-6};
    double panel_c_sign = -1.0;
    double overlap_tolerance = 0.02;
};

struct Figure1Point {
    char panel = 'a';
    double a = 0.0;
    double lambda = 0.0;
    double f0 = 0.0;
    double excess = 0.0;
    std::optional<double> delta;
    double f0_error = 0.0;
    double excess_error = 0.0;
    bool converged = false;
    std::string error;
};

struct Figure1Result {
    SwitchingKind switching = SwitchingKind::exponential;
    SpectralKind spectral = SpectralKind::causal_set;
    std::vector<Figure1Point> points;
    /// Largest |Delta(+a) - Delta(-a)| / Delta(-a) over panel (b).
    double panel_b_max_asymmetry = 0.0;
    bool panel_b_overlap = false;
    std::optional<ScalingFit> panel_a_emission_fit;
    std::optional<ScalingFit> panel_a_vacuum_fit;
};

/// Relative-response data for the three plot panels. Points outside the
/// low-energy regime or failing quadrature are recorded as gaps.
Figure1Result figure1_sweep(const Figure1Axes& axes = {}, const SwitchingFunction& switching = SwitchingFunction(SwitchingKind::exponential),
                            const SpectralFunction& spectral = SpectralFunction(SpectralKind::causal_set),
                            const quad::Tolerance& tol = {}, unsigned threads = 1);

/// One grid point: F0, F - F0 and Delta (Delta absent when F0 is not positive).
GridPoint evaluate_point(double a, double lambda, const SwitchingFunction& switching,
                         const SpectralFunction& spectral, const quad::Tolerance& tol);

} // namespace nldet::analysis
