// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dvhop/experiment.hpp"
#include "dvhop/localization.hpp"
#include "dvhop/metrics.hpp"
#include "dvhop/moga.hpp"
#include "dvhop/objectives.hpp"
#include "dvhop/rng.hpp"
#include "dvhop/verify.hpp"
#include "oracles.hpp"

using namespace dvhop;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

int g_failures = 0;

void report(const std::string& name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s %s: %s [%.1fs]\n", out.passed ? "PASS" : "FAIL", name.c_str(), out.detail.c_str(), secs);
  std::fflush(stdout);
  if (!out.passed) ++g_failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel_err(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

oracle::Pts random_points(std::size_t n, double region, Rng& rng) {
  oracle::Pts p(n);
  for (auto& q : p) q = {rng.uniform(0, region), rng.uniform(0, region)};
  return p;
}

// Candidate near the truth for some instances so that few pairs disagree.
Candidate random_candidate(const Network& net, Rng& rng) {
  Candidate c(net.unknown_count());
  const bool near = rng.bernoulli(0.5);
  const double sigma = rng.uniform(0.5, net.radius());
  for (std::size_t k = 0; k < net.unknown_count(); ++k) {
    const auto p = net.position(net.anchor_count() + k);
    if (near)
      c.set(k, std::clamp(p.x + sigma * rng.normal(), 0.0, net.region()),
            std::clamp(p.y + sigma * rng.normal(), 0.0, net.region()));
    else
      c.set(k, rng.uniform(0, net.region()), rng.uniform(0, net.region()));
  }
  return c;
}

// ---------------------------------------------------------------------------

Outcome activation_coverage() {
  constexpr std::size_t kTrials = 20000;
  Rng rng(0xC0FFEE);
  std::size_t mismatched = 0, counterexamples = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const std::size_t n = 2 + rng.below(7);
    const std::size_t na = 1 + rng.below(n - 1);
    const double r = rng.uniform(10, 60);
    const Network net(random_points(n, 100, rng), na, r);
    const auto cand = random_candidate(net, rng);
    const auto real = oracle::hops(oracle::truth(net), r);
    const auto pred_pts = oracle::compose(net, cand);
    const auto pred = oracle::hops(pred_pts, r);
    if (real == pred) continue;
    ++mismatched;
    const auto lib_real = hop_matrix(build_adjacency(net));
    bool any = false;
    for (std::size_t i = 0; i < n && !any; ++i)
      for (std::size_t j = 0; j < n && !any; ++j)
        any = i != j && ac_cc(lib_real(i, j), distance(pred_pts[i], pred_pts[j]), r);
    if (!any) ++counterexamples;
  }
  return {counterexamples == 0 && kTrials >= 10000,
          fmt("%zu instances (N<=8), %zu with hop mismatch, %zu counterexamples", kTrials, mismatched,
              counterexamples)};
}

Outcome folded_chain() {
  const auto ex = folded_chain_example();
  const auto real = hop_matrix(build_adjacency(ex.network));
  const double base = hop_loss(HopLossKind::Base, ex.network, real, ex.candidate);
  const double dcc = hop_loss(HopLossKind::DCC, ex.network, real, ex.candidate);
  return {base == 0.0 && dcc > 0.0, fmt("HL_base=%g HL_dcc=%g", base, dcc)};
}

Outcome continuity() {
  constexpr std::size_t kTrials = 1000;
  Rng rng(0xD1CE);
  std::size_t violations = 0;
  double worst = 0.0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const std::size_t n = 3 + rng.below(38);
    const std::size_t na = 1 + rng.below(n - 1);
    const double r = rng.uniform(15, 45);
    const Network net(random_points(n, 100, rng), na, r);
    const auto real = hop_matrix(build_adjacency(net));
    const auto cand = random_candidate(net, rng);
    const double delta = rng.uniform(0, 0.01);
    Candidate moved = cand;
    for (std::size_t k = 0; k < net.unknown_count(); ++k) {
      const double a = rng.uniform(0, 2 * std::numbers::pi), m = rng.uniform(0, delta);
      moved.set(k, cand.x(k) + m * std::cos(a), cand.y(k) + m * std::sin(a));
    }
    const double change = std::abs(hop_loss(HopLossKind::DCC, net, real, moved) -
                                   hop_loss(HopLossKind::DCC, net, real, cand));
    const double bound = 2.0 * static_cast<double>(n * n) * delta;
    if (change > bound) ++violations;
    if (bound > 0) worst = std::max(worst, change / bound);
  }

  const auto ex = boundary_crossing_example();
  const auto real = hop_matrix(build_adjacency(ex.network));
  Candidate moved = ex.candidate;
  moved.set(1, moved.x(1) - 1e-6, moved.y(1));
  const double base_jump = std::abs(hop_loss(HopLossKind::Base, ex.network, real, moved) -
                                    hop_loss(HopLossKind::Base, ex.network, real, ex.candidate));
  const double dcc_jump = std::abs(hop_loss(HopLossKind::DCC, ex.network, real, moved) -
                                   hop_loss(HopLossKind::DCC, ex.network, real, ex.candidate));
  return {violations == 0 && base_jump >= 1.0,
          fmt("%zu perturbations, %zu bound violations, max ratio %.4f; witness |dHL_base|=%g |dHL_dcc|=%.3g",
              kTrials, violations, worst, base_jump, dcc_jump)};
}

// ---------------------------------------------------------------------------

struct OracleTally {
  std::size_t instances = 0;
  double worst = 0.0;
  std::size_t mismatches = 0;
  void add(double a, double b) {
    const double e = rel_err(a, b);
    worst = std::max(worst, e);
    if (!(e <= 1e-9)) ++mismatches;
  }
};

Outcome formula_oracles() {
  constexpr std::size_t kInstances = 150;
  const Topology topologies[] = {Topology::Random, Topology::CShaped, Topology::OShaped, Topology::XShaped};
  std::map<std::string, OracleTally> tally;
  Rng rng(0xF0F0);
  for (std::size_t t = 0; t < kInstances; ++t) {
    const auto topo = topologies[t % 4];
    const std::size_t n = 20 + rng.below(81);
    const std::size_t na = 3 + rng.below(std::min<std::size_t>(n / 3, 30));
    const double r = rng.uniform(25, 40);
    const auto net = generate_topology(topo, n, na, r, rng());
    const auto truth = oracle::truth(net);
    const auto real = hop_matrix(build_adjacency(net));
    const auto ref_hops = oracle::hops(truth, r);

    // Average hop distance and distance estimates.
    const auto avg = avg_hop_distance(net, real);
    const auto ref_avg = oracle::avg_dis(truth, na, ref_hops);
    const auto est = estimate_distances(avg.meters, real, net);
    for (std::size_t i = 0; i < na; ++i) {
      if (!std::isnan(ref_avg[i])) tally["avg_hop_distance"].add(avg.meters[i], ref_avg[i]);
      for (std::size_t k = 0; k < net.unknown_count(); ++k) {
        const int h = ref_hops[i][na + k];
        if (h >= oracle::kInf) {
          if (est.at(i, k).has_value()) ++tally["estimate_distances"].mismatches;
          continue;
        }
        tally["estimate_distances"].add(est.at(i, k).value_or(NAN), avg.meters[i] * h);
      }
    }
    ++tally["avg_hop_distance"].instances;
    ++tally["estimate_distances"].instances;

    // Hop losses, activation, individual loss and MLEs on a random candidate.
    const auto cand = random_candidate(net, rng);
    const auto pred = oracle::compose(net, cand);
    const auto pred_hops = oracle::hops(pred, r);
    tally["HL_base"].add(hop_loss(HopLossKind::Base, net, real, cand), oracle::hl_base(truth, pred, r));
    tally["HL_accc"].add(hop_loss(HopLossKind::ACCC, net, real, cand), oracle::hl_accc(truth, pred, r));
    tally["HL_dcc"].add(hop_loss(HopLossKind::DCC, net, real, cand), oracle::hl_dcc(truth, pred, r));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double d = oracle::dist(pred[i], pred[j]);
        const bool lib = ac_cc(real(i, j), distance(pred[i], pred[j]), r);
        if (lib != oracle::cc_active(ref_hops[i][j], pred_hops[i][j])) ++tally["AC_cc"].mismatches;
        tally["IL_dst"].add(il_dst(distance(pred[i], pred[j]), r), std::abs(d - r));
      }
    const oracle::Pts act(truth.begin() + static_cast<std::ptrdiff_t>(na), truth.end());
    const oracle::Pts est_pts(pred.begin() + static_cast<std::ptrdiff_t>(na), pred.end());
    tally["MLEs"].add(mles(net, cand), oracle::mles(est_pts, act, r));
    for (const char* k : {"HL_base", "HL_accc", "HL_dcc", "AC_cc", "IL_dst", "MLEs"}) ++tally[k].instances;
  }

  bool ok = true;
  std::string detail;
  for (const auto& [name, t] : tally) {
    ok = ok && t.mismatches == 0 && t.instances >= 100;
    detail += fmt("%s %zu inst/%zu bad/max %.1e; ", name.c_str(), t.instances, t.mismatches, t.worst);
  }
  return {ok, detail};
}

// ---------------------------------------------------------------------------

struct AccuracyRun {
  std::size_t anchors;
  double radius;
  std::size_t repeat;
  HopLossKind kind;
  RunOutput out;
};

std::vector<AccuracyRun> g_accuracy_runs;
std::vector<RunOutput> g_timing_runs;

ExperimentConfig accuracy_config() {
  ExperimentConfig cfg;
  cfg.topologies = {Topology::Random};
  cfg.anchor_counts = {10, 20};
  cfg.radii = {25, 40};
  cfg.repeats = 10;
  cfg.kinds = {HopLossKind::Base, HopLossKind::ACCC, HopLossKind::DCC};
  cfg.ga.max_iterations = 200;
  cfg.base_seed = 20240601;
  return cfg;
}

void run_accuracy_sweep() {
  const auto cfg = accuracy_config();
  for (const auto na : cfg.anchor_counts)
    for (const auto r : cfg.radii)
      for (std::size_t rep = 0; rep < cfg.repeats; ++rep)
        for (const auto kind : cfg.kinds)
          g_accuracy_runs.push_back({na, r, rep, kind, run_single(cfg, Topology::Random, na, r, rep, kind)});
}

double mean_mles(std::size_t na, double r, HopLossKind kind) {
  double s = 0;
  std::size_t c = 0;
  for (const auto& run : g_accuracy_runs)
    if (run.anchors == na && run.radius == r && run.kind == kind) s += run.out.result.mles, ++c;
  return s / static_cast<double>(c);
}

const AccuracyRun& find_run(std::size_t na, double r, std::size_t rep, HopLossKind kind) {
  for (const auto& run : g_accuracy_runs)
    if (run.anchors == na && run.radius == r && run.repeat == rep && run.kind == kind) return run;
  throw std::logic_error("missing run");
}

Outcome relative_accuracy() {
  const auto start = std::chrono::steady_clock::now();
  run_accuracy_sweep();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto cfg = accuracy_config();
  std::size_t cells_won = 0, paired_wins = 0, pairs = 0;
  bool paired_networks = true;
  std::string detail;
  for (const auto na : cfg.anchor_counts)
    for (const auto r : cfg.radii) {
      const double base = mean_mles(na, r, HopLossKind::Base), dcc = mean_mles(na, r, HopLossKind::DCC);
      if (dcc < base) ++cells_won;
      detail += fmt("N_a=%zu R=%g base %.2f dcc %.2f; ", na, r, base, dcc);
      for (std::size_t rep = 0; rep < cfg.repeats; ++rep) {
        const auto& b = find_run(na, r, rep, HopLossKind::Base);
        const auto& d = find_run(na, r, rep, HopLossKind::DCC);
        paired_networks = paired_networks && b.out.network == d.out.network;
        ++pairs;
        if (d.out.result.mles < b.out.result.mles) ++paired_wins;
      }
    }
  const double win_rate = static_cast<double>(paired_wins) / static_cast<double>(pairs);
  detail += fmt("cells %zu/4, paired wins %zu/%zu (%.0f%%), sweep %.0fs", cells_won, paired_wins, pairs,
                100 * win_rate, secs);
  return {paired_networks && cells_won >= 3 && win_rate >= 0.6 && secs <= 1800, detail};
}

Outcome ablation_ordering() {
  const auto cfg = accuracy_config();
  std::size_t cells = 0;
  std::string detail;
  for (const auto na : cfg.anchor_counts)
    for (const auto r : cfg.radii) {
      const double accc = mean_mles(na, r, HopLossKind::ACCC), dcc = mean_mles(na, r, HopLossKind::DCC);
      if (dcc <= accc) ++cells;
      detail += fmt("N_a=%zu R=%g accc %.2f dcc %.2f; ", na, r, accc, dcc);
    }
  detail += fmt("DCC <= ACCC in %zu/4 cells", cells);
  return {cells >= 3, detail};
}

Outcome relative_timing() {
  ExperimentConfig cfg;
  cfg.ga.max_iterations = 100;
  cfg.base_seed = 77;
  constexpr std::size_t kRepeats = 3;
  double base = 0, dcc = 0, base_cpu = 0, dcc_cpu = 0;
  for (std::size_t rep = 0; rep < kRepeats; ++rep) {
    const auto net = generate_topology(Topology::Random, 100, 20, 25.0,
                                       derive_seed(cfg.base_seed, Topology::Random, 20, 25.0, rep));
    const Problem problem(net);
    auto b = run_single(cfg, problem, rep, HopLossKind::Base);
    auto d = run_single(cfg, problem, rep, HopLossKind::DCC);
    base += b.result.total_time;
    dcc += d.result.total_time;
    base_cpu += b.result.cpu_time;
    dcc_cpu += d.result.cpu_time;
    g_timing_runs.push_back(std::move(b));
    g_timing_runs.push_back(std::move(d));
  }
  return {dcc <= 0.8 * base, fmt("%zu matched seeds: base %.3fs dcc %.3fs wall (ratio %.3f), cpu ratio %.3f",
                                 kRepeats, base, dcc, dcc / base, dcc_cpu / base_cpu)};
}

// ---------------------------------------------------------------------------

bool front_is_valid(const ParetoFront& front) {
  for (std::size_t i = 0; i < front.size(); ++i)
    for (std::size_t j = 0; j < front.size(); ++j)
      if (i != j && oracle::dominates(front[j].objectives, front[i].objectives)) return false;
  return !front.empty();
}

bool elitist(const EvolveResult& ev) {
  for (std::size_t g = 1; g < ev.log.size(); ++g)
    if (ev.log[g].best_f1 > ev.log[g - 1].best_f1 || ev.log[g].best_f2 > ev.log[g - 1].best_f2) return false;
  return true;
}

bool same_bits(const ParetoFront& a, const ParetoFront& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& ca = a[i].candidate.coords();
    const auto& cb = b[i].candidate.coords();
    if (ca.size() != cb.size() || std::memcmp(ca.data(), cb.data(), ca.size() * sizeof(double)) != 0) return false;
    if (std::memcmp(&a[i].objectives, &b[i].objectives, sizeof(ObjectiveVector)) != 0) return false;
  }
  return true;
}

Outcome optimizer_validity() {
  std::size_t runs = 0, invalid = 0, non_elitist = 0;
  auto check = [&](const RunOutput& out) {
    ++runs;
    if (!front_is_valid(out.evolution.front)) ++invalid;
    if (!elitist(out.evolution)) ++non_elitist;
  };
  for (const auto& r : g_accuracy_runs) check(r.out);
  for (const auto& r : g_timing_runs) check(r);

  // Seeded reruns: one repeat per kind in every accuracy cell, compared bit for bit.
  const auto cfg = accuracy_config();
  std::size_t reruns = 0, differing = 0;
  for (const auto& r : g_accuracy_runs) {
    if (r.repeat != 0) continue;
    const auto again = run_single(cfg, Topology::Random, r.anchors, r.radius, r.repeat, r.kind);
    ++reruns;
    if (!same_bits(again.evolution.front, r.out.evolution.front) || !(again.selected.candidate == r.out.selected.candidate) ||
        again.result.mles != r.out.result.mles)
      ++differing;
  }

  // Whole-sweep rerun with a different worker count: identical rows up to timings.
  ExperimentConfig small;
  small.anchor_counts = {10};
  small.radii = {30};
  small.repeats = 2;
  small.kinds = {HopLossKind::Base, HopLossKind::ACCC, HopLossKind::DCC};
  small.ga.max_iterations = 20;
  const auto dir = std::filesystem::temp_directory_path() / "dvhop_acceptance";
  std::uint64_t digest[2] = {0, 0};
  for (int pass = 0; pass < 2; ++pass) {
    std::filesystem::remove_all(dir);
    small.output_dir = dir.string();
    SweepOptions opts;
    opts.threads = pass == 0 ? 1 : 3;
    const auto rep = run_sweep(small, opts);
    digest[pass] = determinism_digest(rep.rows);
  }
  std::filesystem::remove_all(dir);

  return {invalid == 0 && non_elitist == 0 && differing == 0 && digest[0] == digest[1] && runs > 0,
          fmt("%zu fronts, %zu dominated members, %zu elitism breaks; %zu reruns, %zu differ; sweep digest %s",
              runs, invalid, non_elitist, reruns, differing, digest[0] == digest[1] ? "stable" : "CHANGED")};
}

}  // namespace

int main() {
  report("hop-mismatch activation coverage", activation_coverage);
  report("folded-chain regression", folded_chain);
  report("dcc continuity and base discontinuity", continuity);
  report("formula oracles", formula_oracles);
  report("relative accuracy (dcc vs base)", relative_accuracy);
  report("relative timing (dcc vs base)", relative_timing);
  report("optimizer validity", optimizer_validity);
  report("ablation ordering (dcc vs accc)", ablation_ordering);
  std::printf("%s: %d failing criteria\n", g_failures == 0 ? "ALL PASS" : "FAILURES", g_failures);
  return g_failures == 0 ? 0 : 1;
}
