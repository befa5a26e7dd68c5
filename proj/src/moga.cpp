#include "dvhop/moga.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numeric>
#include <ostream>

#include "dvhop/error.hpp"

namespace dvhop {

void GaConfig::validate() const {
  if (population_size < 4 || population_size % 2 != 0)
    throw Error(Errc::InvalidConfig, "population size must be even and >= 4");
  if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0))
    throw Error(Errc::InvalidConfig, "crossover probability outside [0, 1]");
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
    throw Error(Errc::InvalidConfig, "mutation probability outside [0, 1]");
  if (!(eta_c > 0.0) || !(eta_m > 0.0))
    throw Error(Errc::InvalidConfig, "distribution indices must be positive");
  if (!(upper > lower)) throw Error(Errc::InvalidConfig, "empty bounds");
}

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const ObjectiveVector> objectives) {
  const std::size_t n = objectives.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> dominators(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (dominates(objectives[p], objectives[q]))
        dominated[p].push_back(q);
      else if (dominates(objectives[q], objectives[p]))
        ++dominators[p];
    }
    if (dominators[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (const std::size_t p : current)
      for (const std::size_t q : dominated[p])
        if (--dominators[q] == 0) next.push_back(q);
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
  const std::size_t n = front.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), inf);
    return dist;
  }
  std::vector<std::size_t> order(n);
  for (const auto member : {&ObjectiveVector::f1, &ObjectiveVector::f2}) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return front[a].*member < front[b].*member; });
    dist[order.front()] = inf;
    dist[order.back()] = inf;
    const double range = front[order.back()].*member - front[order.front()].*member;
    if (!(range > 0.0)) continue;
    for (std::size_t i = 1; i + 1 < n; ++i)
      dist[order[i]] += (front[order[i + 1]].*member - front[order[i - 1]].*member) / range;
  }
  return dist;
}

std::pair<Candidate, Candidate> sbx_crossover(const Candidate& p1, const Candidate& p2,
                                              const GaConfig& config, Rng& rng) {
  if (p1.size() != p2.size()) throw Error(Errc::DimensionMismatch, "parents differ in dimension");
  Candidate c1 = p1;
  Candidate c2 = p2;
  if (!rng.bernoulli(config.crossover_prob)) return {std::move(c1), std::move(c2)};

  const double exponent = 1.0 / (config.eta_c + 1.0);
  for (std::size_t i = 0; i < p1.size(); ++i) {
    const double u = rng.uniform();
    const double beta = u <= 0.5 ? std::pow(2.0 * u, exponent) : std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
    double a = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]);
    double b = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]);
    if (rng.bernoulli(0.5)) std::swap(a, b);
    c1[i] = std::clamp(a, config.lower, config.upper);
    c2[i] = std::clamp(b, config.lower, config.upper);
  }
  return {std::move(c1), std::move(c2)};
}

Candidate polynomial_mutation(Candidate c, const GaConfig& config, Rng& rng) {
  const double span = config.upper - config.lower;
  const double exponent = 1.0 / (config.eta_m + 1.0);
  for (double& x : c.coords()) {
    if (!rng.bernoulli(config.mutation_prob)) continue;
    const double d1 = (x - config.lower) / span;
    const double d2 = (config.upper - x) / span;
    const double r = rng.uniform();
    double deltaq;
    if (r < 0.5) {
      const double val = 2.0 * r + (1.0 - 2.0 * r) * std::pow(1.0 - d1, config.eta_m + 1.0);
      deltaq = std::pow(val, exponent) - 1.0;
    } else {
      const double val = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * std::pow(1.0 - d2, config.eta_m + 1.0);
      deltaq = 1.0 - std::pow(val, exponent);
    }
    x = std::clamp(x + deltaq * span, config.lower, config.upper);
  }
  return c;
}

std::vector<Candidate> initial_population(const Problem& problem, const GaConfig& config, Rng& rng) {
  const std::size_t dim = problem.dimension();
  const double sigma = problem.network().radius() / 4.0;
  std::vector<Candidate> pop;
  pop.reserve(config.population_size);
  const std::size_t seeded = config.population_size / 2;
  for (std::size_t i = 0; i < seeded; ++i) {
    Candidate c = problem.dv_hop_fix();
    for (double& v : c.coords()) v = std::clamp(v + sigma * rng.normal(), config.lower, config.upper);
    pop.push_back(std::move(c));
  }
  while (pop.size() < config.population_size) {
    Candidate c(dim / 2);
    for (double& v : c.coords()) v = rng.uniform(config.lower, config.upper);
    pop.push_back(std::move(c));
  }
  return pop;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class TimedEvaluator {
 public:
  TimedEvaluator(const Problem& problem, HopLossKind kind) : problem_(problem), kind_(kind) {}

  ObjectiveVector operator()(const Candidate& c) {
    ObjectiveVector v;
    v.f1 = problem_.distance_loss(c);
    const auto start = Clock::now();
    v.f2 = problem_.hop_loss(kind_, c);
    hop_seconds_ += seconds_since(start);
    return v;
  }

  double hop_seconds() const noexcept { return hop_seconds_; }

 private:
  const Problem& problem_;
  HopLossKind kind_;
  double hop_seconds_ = 0.0;
};

struct Ranked {
  std::vector<Individual> members;
  std::vector<std::size_t> rank;
  std::vector<double> crowding;
};

std::vector<ObjectiveVector> objectives_of(std::span<const Individual> members) {
  std::vector<ObjectiveVector> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.objectives);
  return out;
}

// Environmental selection: keep whole fronts while they fit, then the most
// spread-out members of the first front that does not.
Ranked survive(std::vector<Individual> pool, std::size_t keep) {
  const auto objs = objectives_of(pool);
  const auto fronts = non_dominated_sort(objs);
  Ranked next;
  for (std::size_t f = 0; f < fronts.size() && next.members.size() < keep; ++f) {
    std::vector<ObjectiveVector> fo;
    for (const auto i : fronts[f]) fo.push_back(objs[i]);
    const auto cd = crowding_distance(fo);
    std::vector<std::size_t> order(fronts[f].size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (next.members.size() + order.size() > keep)
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
    for (const auto o : order) {
      if (next.members.size() == keep) break;
      next.members.push_back(std::move(pool[fronts[f][o]]));
      next.rank.push_back(f);
      next.crowding.push_back(cd[o]);
    }
  }
  return next;
}

std::size_t tournament(const Ranked& pop, Rng& rng) {
  const std::size_t a = rng.below(pop.members.size());
  const std::size_t b = rng.below(pop.members.size());
  if (pop.rank[a] != pop.rank[b]) return pop.rank[a] < pop.rank[b] ? a : b;
  if (pop.crowding[a] != pop.crowding[b]) return pop.crowding[a] > pop.crowding[b] ? a : b;
  return std::min(a, b);
}

GenerationStats stats_of(const Ranked& pop, std::size_t generation, Clock::time_point start) {
  GenerationStats s;
  s.generation = generation;
  s.best_f1 = std::numeric_limits<double>::infinity();
  s.best_f2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    s.best_f1 = std::min(s.best_f1, pop.members[i].objectives.f1);
    s.best_f2 = std::min(s.best_f2, pop.members[i].objectives.f2);
    if (pop.rank[i] == 0) ++s.front_size;
  }
  s.elapsed_ms = 1e3 * seconds_since(start);
  return s;
}

}  // namespace

EvolveResult evolve(const Problem& problem, HopLossKind kind, const GaConfig& config,
                    std::vector<Candidate> initial) {
  config.validate();
  const auto start = Clock::now();
  const std::clock_t cpu_start = std::clock();
  Rng rng(config.seed);
  TimedEvaluator eval(problem, kind);

  if (initial.empty()) initial = initial_population(problem, config, rng);
  if (initial.size() != config.population_size)
    throw Error(Errc::InvalidConfig, "initial population size does not match configuration");

  std::vector<Individual> seed_members;
  seed_members.reserve(initial.size());
  for (auto& c : initial) {
    if (c.size() != problem.dimension()) throw Error(Errc::DimensionMismatch, "initial candidate dimension");
    const auto v = eval(c);
    seed_members.push_back({std::move(c), v});
  }
  Ranked pop = survive(std::move(seed_members), config.population_size);

  EvolveResult result;
  result.log.push_back(stats_of(pop, 0, start));

  for (std::size_t gen = 1; gen <= config.max_iterations; ++gen) {
    std::vector<Individual> pool = pop.members;
    pool.reserve(2 * config.population_size);
    std::vector<Candidate> children;
    children.reserve(config.population_size);
    while (children.size() < config.population_size) {
      const auto& a = pop.members[tournament(pop, rng)].candidate;
      const auto& b = pop.members[tournament(pop, rng)].candidate;
      auto [c1, c2] = sbx_crossover(a, b, config, rng);
      children.push_back(polynomial_mutation(std::move(c1), config, rng));
      if (children.size() < config.population_size)
        children.push_back(polynomial_mutation(std::move(c2), config, rng));
    }
    for (auto& c : children) {
      const auto v = eval(c);
      pool.push_back({std::move(c), v});
    }
    pop = survive(std::move(pool), config.population_size);
    result.log.push_back(stats_of(pop, gen, start));
  }

  for (std::size_t i = 0; i < pop.members.size(); ++i)
    if (pop.rank[i] == 0) result.front.push_back(std::move(pop.members[i]));
  result.generations = config.max_iterations;
  result.hop_loss_seconds = eval.hop_seconds();
  result.total_seconds = seconds_since(start);
  result.cpu_seconds = static_cast<double>(std::clock() - cpu_start) / CLOCKS_PER_SEC;
  return result;
}

std::size_t select_solution(std::span<const ObjectiveVector> front) {
  if (front.empty()) throw Error(Errc::EmptyFront, "cannot select from an empty front");
  double lo1 = front[0].f1, hi1 = front[0].f1, lo2 = front[0].f2, hi2 = front[0].f2;
  for (const auto& v : front) {
    lo1 = std::min(lo1, v.f1);
    hi1 = std::max(hi1, v.f1);
    lo2 = std::min(lo2, v.f2);
    hi2 = std::max(hi2, v.f2);
  }
  const auto norm = [](double v, double lo, double hi) { return hi > lo ? (v - lo) / (hi - lo) : 0.0; };
  std::size_t best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < front.size(); ++i) {
    const double score = norm(front[i].f1, lo1, hi1) + norm(front[i].f2, lo2, hi2);
    if (score < best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

const Individual& select_solution(const ParetoFront& front) {
  const auto objs = objectives_of(front);
  return front[select_solution(std::span<const ObjectiveVector>(objs))];
}

void write_generation_log(std::ostream& out, std::span<const GenerationStats> log) {
  out << "generation,best_f1,best_f2,front_size,elapsed_ms\n";
  for (const auto& s : log)
    out << s.generation << ',' << s.best_f1 << ',' << s.best_f2 << ',' << s.front_size << ','
        << s.elapsed_ms << '\n';
}

}  // namespace dvhop
