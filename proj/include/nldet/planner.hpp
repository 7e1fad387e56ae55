#pragma once

// Counting-statistics estimates for a decay-based emission experiment:
// events -> smallest resolvable relative response -> bound on l_n.

#include "nldet/units.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace nldet::planner {

struct NuclearSpecies {
    std::string name;
    Seconds half_life;
    MeV gamma_energy;
};

/// Throws ValidationError unless half_life > 0 and gamma_energy > 0.
NuclearSpecies make_species(std::string name, Seconds half_life, MeV gamma_energy);

/// Compiled-in Na-20 entry (0.5 s, 11 MeV).
NuclearSpecies sodium20();

/// Reads {"format_version": 1, "species": [{name, half_life_s, gamma_energy_MeV}]}.
std::vector<NuclearSpecies> load_catalog(const std::filesystem::path& path);

/// Catalog shipped with the sources.
std::filesystem::path default_catalog_path();

/// Throws ValidationError("species") when absent.
const NuclearSpecies& find_species(const std::vector<NuclearSpecies>& catalog, std::string_view name);

enum class DecayConvention { paper, standard };
enum class StatisticsCriterion { paper_inverse, shot_noise };

std::string_view to_string(DecayConvention c);
std::string_view to_string(StatisticsCriterion c);
DecayConvention decay_convention_from_name(std::string_view name);
StatisticsCriterion statistics_criterion_from_name(std::string_view name);

/// paper:    n (1 - exp(-(tau / T_half) / ln 2))
/// standard: n (1 - exp(-tau ln 2 / T_half))
double gamma_events(double n_atoms, const NuclearSpecies& species, Seconds duration,
                    DecayConvention convention = DecayConvention::paper);

/// paper-inverse: 1/N; shot-noise: 1/sqrt(N). Requires N > 0.
double min_resolvable_delta(double detected_events,
                            StatisticsCriterion criterion = StatisticsCriterion::paper_inverse);

/// c sqrt(delta) / |omega|. Requires delta > 0 and omega != 0.
Meters nonlocality_bound(double delta, RadPerSecond omega);

struct ConfoundEntry {
    double mass_mev;
    double pair_threshold_mev;
    bool confound;
};

struct ConfoundReport {
    double omega_energy_mev = 0.0;
    double electron_threshold_mev = 2.0 * kElectronMassMeV;
    bool below_electron_threshold = false;
    std::vector<ConfoundEntry> entries;
    bool clean = true;
};

/// Flags every mass m with 2m < omega_energy.
ConfoundReport confound_check(MeV omega_energy, const std::vector<double>& candidate_masses_mev);

struct ExperimentPlan {
    double n_atoms = 0.0;
    Seconds duration{0.0};
    double efficiency = 1.0;
    DecayConvention decay_convention = DecayConvention::paper;
    StatisticsCriterion statistics_criterion = StatisticsCriterion::paper_inverse;

    /// n_atoms > 0, duration >= 0, efficiency in (0, 1].
    void validate() const;
};

struct PlanReport {
    ExperimentPlan plan;
    NuclearSpecies species;
    RadPerSecond omega{0.0};
    double omega_energy_mev = 0.0;
    double gamma_events = 0.0;
    double detected_events = 0.0;
    double min_delta = 0.0;
    Meters bound{0.0};
    /// bound rounded to one significant figure.
    double bound_rounded = 0.0;
    ConfoundReport electron_confound;
};

/// Throws ValidationError("duration") when no events are detected.
PlanReport plan(const ExperimentPlan& plan, const NuclearSpecies& species, RadPerSecond omega);

double round_significant(double x, int digits);

} // namespace nldet::planner
