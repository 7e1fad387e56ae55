#include "nldet/planner.hpp"

#include "nldet/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>

namespace nldet::planner {

NuclearSpecies make_species(std::string name, Seconds half_life, MeV gamma_energy) {
    if (!(half_life.value > 0.0) || !std::isfinite(half_life.value)) {
        throw ValidationError("half_life", "must be finite and > 0");
    }
    if (!(gamma_energy.value > 0.0) || !std::isfinite(gamma_energy.value)) {
        throw ValidationError("gamma_energy", "must be finite and > 0");
    }
    return NuclearSpecies{std::move(name), half_life, gamma_energy};
}

NuclearSpecies sodium20() { return make_species("Na-20", Seconds{0.5}, MeV{11.0}); }

std::vector<NuclearSpecies> load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("catalog", "cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("catalog", path.string() + ": " + e.what());
    }
    if (doc.value("format_version", 0) != 1) throw ValidationError("catalog", "unsupported format_version");
    std::vector<NuclearSpecies> out;
    try {
        for (const auto& s : doc.at("species")) {
            out.push_back(make_species(s.at("name").get<std::string>(), Seconds{s.at("half_life_s").get<double>()},
                                       MeV{s.at("gamma_energy_MeV").get<double>()}));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("catalog", path.string() + ": " + e.what());
    }
    return out;
}

std::filesystem::path default_catalog_path() { return std::filesystem::path(NLDET_DATA_DIR) / "species.json"; }

const NuclearSpecies& find_species(const std::vector<NuclearSpecies>& catalog, std::string_view name) {
    for (const auto& s : catalog) {
        if (s.name == name) return s;
    }
    throw ValidationError("species", "unknown species '" + std::string(name) + "'");
}

std::string_view to_string(DecayConvention c) { return c == DecayConvention::paper ? "paper" : "standard"; }

std::string_view to_string(StatisticsCriterion c) {
    return c == StatisticsCriterion::paper_inverse ? "paper-inverse" : "shot-noise";
}

DecayConvention decay_convention_from_name(std::string_view name) {
    if (name == "paper") return DecayConvention::paper;
    if (name == "standard") return DecayConvention::standard;
    throw ValidationError("decay-convention", "expected paper or standard");
}

StatisticsCriterion statistics_criterion_from_name(std::string_view name) {
    if (name == "paper-inverse") return StatisticsCriterion::paper_inverse;
    if (name == "shot-noise") return StatisticsCriterion::shot_noise;
    throw ValidationError("criterion", "expected paper-inverse or shot-noise");
}

double gamma_events(double n_atoms, const NuclearSpecies& species, Seconds duration, DecayConvention convention) {
    if (!(n_atoms >= 0.0) || !std::isfinite(n_atoms)) throw ValidationError("n_atoms", "must be finite and >= 0");
    if (!(duration.value >= 0.0)) throw ValidationError("duration", "must be >= 0");
    const double ratio = duration.value / species.half_life.value;
    const double rate = convention == DecayConvention::paper ? ratio / std::numbers::ln2 : ratio * std::numbers::ln2;
    return -n_atoms * std::expm1(-rate);
}

double min_resolvable_delta(double detected_events, StatisticsCriterion criterion) {
    if (!(detected_events > 0.0) || !std::isfinite(detected_events)) {
        throw ValidationError("detected_events", "must be finite and > 0");
    }
    return criterion == StatisticsCriterion::paper_inverse ? 1.0 / detected_events : 1.0 / std::sqrt(detected_events);
}

Meters nonlocality_bound(double delta, RadPerSecond omega) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw ValidationError("delta", "must be finite and > 0");
    if (!(omega.value != 0.0) || !std::isfinite(omega.value)) throw ValidationError("omega", "must be finite and nonzero");
    return Meters{kSpeedOfLight * std::sqrt(delta) / std::fabs(omega.value)};
}

ConfoundReport confound_check(MeV omega_energy, const std::vector<double>& candidate_masses_mev) {
    if (!(omega_energy.value > 0.0)) throw ValidationError("omega_energy", "must be > 0");
    ConfoundReport r;
    r.omega_energy_mev = omega_energy.value;
    r.below_electron_threshold = omega_energy.value < r.electron_threshold_mev;
    for (double m : candidate_masses_mev) {
        if (!(m >= 0.0)) throw ValidationError("mass", "must be >= 0");
        const bool flagged = 2.0 * m < omega_energy.value;
        r.entries.push_back(ConfoundEntry{m, 2.0 * m, flagged});
        r.clean = r.clean && !flagged;
    }
    return r;
}

void ExperimentPlan::validate() const {
    if (!(n_atoms > 0.0) || !std::isfinite(n_atoms)) throw ValidationError("atoms", "must be finite and > 0");
    if (!(duration.value >= 0.0) || !std::isfinite(duration.value)) throw ValidationError("duration", "must be >= 0");
    if (!(efficiency > 0.0 && efficiency <= 1.0)) throw ValidationError("efficiency", "must be in (0, 1]");
}

double round_significant(double x, int digits) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    const int e = static_cast<int>(std::floor(std::log10(std::fabs(x))));
    const double scale = std::pow(10.0, digits - 1 - e);
    return std::round(x * scale) / scale;
}

PlanReport plan(const ExperimentPlan& p, const NuclearSpecies& species, RadPerSecond omega) {
    p.validate();
    PlanReport r{p, species, omega};
    r.omega_energy_mev = std::fabs(to_energy(omega).value);
    r.gamma_events = gamma_events(p.n_atoms, species, p.duration, p.decay_convention);
    r.detected_events = r.gamma_events * p.efficiency;
    if (!(r.detected_events > 0.0)) {
        throw ValidationError("duration", "no detected events; minimum resolvable delta is undefined");
    }
    r.min_delta = min_resolvable_delta(r.detected_events, p.statistics_criterion);
    r.bound = nonlocality_bound(r.min_delta, omega);
    r.bound_rounded = round_significant(r.bound.value, 1);
    r.electron_confound = confound_check(MeV{r.omega_energy_mev}, {kElectronMassMeV});
    return r;
}

} // namespace nldet::planner
