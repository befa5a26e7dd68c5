#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "dvhop/candidate.hpp"
#include "dvhop/objectives.hpp"
#include "dvhop/rng.hpp"

namespace dvhop {

/// NSGA-II settings. Defaults follow the evaluation protocol: population
/// 20, 500 generations, Pc = 0.9, Pm = 0.1 per coordinate.
struct GaConfig {
  std::size_t population_size = 20;
  std::size_t max_iterations = 500;
  double crossover_prob = 0.9;
  double mutation_prob = 0.1;
  double eta_c = 20.0;
  double eta_m = 20.0;
  double lower = 0.0;
  double upper = 100.0;
  std::uint64_t seed = 0;

  /// Throws InvalidConfig.
  void validate() const;
};

struct Individual {
  Candidate candidate;
  ObjectiveVector objectives;
};

/// Mutually non-dominated individuals.
using ParetoFront = std::vector<Individual>;

/// `a` is no worse in both objectives and strictly better in one.
constexpr bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) noexcept {
  return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

/// Fast non-dominated sort. Fronts hold indices into `objectives` in
/// ascending order; front 0 is the non-dominated set.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const ObjectiveVector> objectives);

/// Crowding distance of each member of one front. Boundary members of either
/// objective get +inf; interior members sum neighbour gaps normalized by the
/// objective's range over the front. Equal values keep index order.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Simulated binary crossover. With probability Pc every coordinate is
/// recombined (children randomly exchanged per coordinate), otherwise the
/// children are copies. Children are clamped to the bounds.
std::pair<Candidate, Candidate> sbx_crossover(const Candidate& p1, const Candidate& p2,
                                              const GaConfig& config, Rng& rng);

/// Bounded polynomial mutation, each coordinate with probability Pm.
Candidate polynomial_mutation(Candidate c, const GaConfig& config, Rng& rng);

struct GenerationStats {
  std::size_t generation = 0;
  double best_f1 = 0.0;
  double best_f2 = 0.0;
  std::size_t front_size = 0;
  double elapsed_ms = 0.0;
};

struct EvolveResult {
  ParetoFront front;
  /// Row 0 describes the initial population.
  std::vector<GenerationStats> log;
  std::size_t generations = 0;
  double total_seconds = 0.0;
  /// Wall-clock time spent inside hop-loss evaluation.
  double hop_loss_seconds = 0.0;
  double cpu_seconds = 0.0;
};

/// Half the population is the DV-Hop multilateration fix with Gaussian
/// jitter (sigma = R/4), the rest is uniform over the bounds.
std::vector<Candidate> initial_population(const Problem& problem, const GaConfig& config, Rng& rng);

/// Runs NSGA-II for `config.max_iterations` generations and returns the
/// first front of the final population. `initial` replaces the default
/// initialization when non-empty (it must hold population_size candidates).
EvolveResult evolve(const Problem& problem, HopLossKind kind, const GaConfig& config,
                    std::vector<Candidate> initial = {});

/// Member minimizing the sum of the min-max normalized objectives; ties go to
/// the lowest index. Throws EmptyFront.
std::size_t select_solution(std::span<const ObjectiveVector> front);
const Individual& select_solution(const ParetoFront& front);

/// CSV: generation,best_f1,best_f2,front_size,elapsed_ms
void write_generation_log(std::ostream& out, std::span<const GenerationStats> log);

}  // namespace dvhop
