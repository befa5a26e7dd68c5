#include "dvhop/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dvhop/objectives.hpp"
#include "dvhop/rng.hpp"

namespace dvhop {

Example folded_chain_example() {
  // Real: 20 m spacing on a line, R = 25.
  Network net({{10, 50}, {30, 50}, {50, 50}, {70, 50}}, 1, 25.0);
  // Predicted: a 20 m square, so 1-4 become neighbours and the diagonals
  // (28.3 m) stay disconnected.
  Candidate c(3);
  c.set(0, 30, 50);
  c.set(1, 30, 70);
  c.set(2, 10, 70);
  return {std::move(net), std::move(c)};
}

Example boundary_crossing_example() {
  Network net({{10, 50}, {30, 50}, {50, 50}}, 1, 25.0);
  Candidate c(2);
  c.set(0, 30, 50);
  c.set(1, 55.0000005, 50);
  return {std::move(net), std::move(c)};
}

Example random_example(std::size_t nodes, std::uint64_t seed) {
  Rng rng(seed);
  const double region = 100.0;
  std::vector<Point> pts(nodes);
  for (auto& p : pts) p = {rng.uniform(0, region), rng.uniform(0, region)};
  const std::size_t anchors = 1 + rng.below(nodes - 1);
  const double radius = rng.uniform(10.0, 70.0);
  Network net(std::move(pts), anchors, radius, region);
  Candidate c = net.ground_truth();
  if (rng.bernoulli(0.5)) {
    const double sigma = radius * rng.uniform(0.05, 0.5);
    for (double& v : c.coords()) v = std::clamp(v + sigma * rng.normal(), 0.0, region);
  } else {
    for (double& v : c.coords()) v = rng.uniform(0, region);
  }
  return {std::move(net), std::move(c)};
}

CheckResult check_activation_coverage(std::size_t trials, std::uint64_t seed, std::size_t max_nodes) {
  CheckResult res{"activation coverage", true, 0, {}};
  Rng rng(seed);
  std::size_t mismatched = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = 2 + rng.below(max_nodes - 1);
    const auto ex = random_example(n, rng.next());
    const auto& net = ex.network;
    const auto real = hop_matrix(build_adjacency(net));
    const auto pred = predicted_hops(ex.candidate, net);
    ++res.cases;
    if (real == pred) continue;
    ++mismatched;
    const auto pos = compose_positions(net, ex.candidate);
    bool activated = false;
    for (std::size_t i = 0; i < n && !activated; ++i)
      for (std::size_t j = 0; j < n && !activated; ++j)
        activated = i != j && ac_cc(real(i, j), distance(pos[i], pos[j]), net.radius());
    if (!activated) {
      res.passed = false;
      res.detail = "counterexample at trial " + std::to_string(t);
      return res;
    }
  }
  res.detail = std::to_string(mismatched) + " instances with hop mismatch, all activated";
  return res;
}

CheckResult check_folded_chain() {
  CheckResult res{"folded chain", false, 1, {}};
  const auto ex = folded_chain_example();
  const auto real = hop_matrix(build_adjacency(ex.network));
  const double base = hop_loss(HopLossKind::Base, ex.network, real, ex.candidate);
  const double dcc = hop_loss(HopLossKind::DCC, ex.network, real, ex.candidate);
  const auto pos = compose_positions(ex.network, ex.candidate);
  const bool act = ac_cc(real(0, 3), distance(pos[0], pos[3]), ex.network.radius());
  res.passed = base == 0.0 && dcc > 0.0 && act;
  std::ostringstream os;
  os << "HL_base=" << base << " HL_dcc=" << dcc << " AC_cc(1,4)=" << act;
  res.detail = os.str();
  return res;
}

CheckResult check_dcc_continuity(std::size_t trials, std::uint64_t seed) {
  CheckResult res{"dcc continuity", true, 0, {}};
  Rng rng(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = 3 + rng.below(28);
    const auto ex = random_example(n, rng.next());
    const auto real = hop_matrix(build_adjacency(ex.network));
    Candidate moved = ex.candidate;
    const std::size_t coord = rng.below(moved.size());
    const double delta = rng.uniform(-0.01, 0.01);
    moved[coord] += delta;
    const double before = hop_loss(HopLossKind::DCC, ex.network, real, ex.candidate);
    const double after = hop_loss(HopLossKind::DCC, ex.network, real, moved);
    const double bound = 2.0 * static_cast<double>(n * n) * std::abs(delta);
    const double ratio = bound > 0 ? std::abs(after - before) / bound : 0.0;
    worst = std::max(worst, ratio);
    ++res.cases;
    if (std::abs(after - before) > bound * (1 + 1e-9) + 1e-12) {
      res.passed = false;
      res.detail = "bound violated at trial " + std::to_string(t);
      return res;
    }
  }
  res.detail = "max |dHL|/(2N^2 delta) = " + std::to_string(worst);
  return res;
}

CheckResult check_base_discontinuity() {
  CheckResult res{"base discontinuity", false, 1, {}};
  const auto ex = boundary_crossing_example();
  const auto real = hop_matrix(build_adjacency(ex.network));
  Candidate moved = ex.candidate;
  moved[2] -= 1e-6;
  const double jump_base = std::abs(hop_loss(HopLossKind::Base, ex.network, real, moved) -
                                    hop_loss(HopLossKind::Base, ex.network, real, ex.candidate));
  const double jump_dcc = std::abs(hop_loss(HopLossKind::DCC, ex.network, real, moved) -
                                   hop_loss(HopLossKind::DCC, ex.network, real, ex.candidate));
  res.passed = jump_base >= 1.0 && jump_dcc < 1e-5;
  std::ostringstream os;
  os << "|dHL_base|=" << jump_base << " |dHL_dcc|=" << jump_dcc;
  res.detail = os.str();
  return res;
}

CheckResult check_network_invariants(std::uint64_t seed) {
  CheckResult res{"network invariants", true, 0, {}};
  auto fail = [&](const std::string& why) {
    res.passed = false;
    res.detail = why;
    return res;
  };
  for (const auto topo : {Topology::Random, Topology::CShaped, Topology::OShaped, Topology::XShaped}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto net = generate_topology(topo, 100, 20, 25.0, hash_combine(seed, s));
      if (!(net == generate_topology(topo, 100, 20, 25.0, hash_combine(seed, s))))
        return fail("non-deterministic generation");
      const auto adj = build_adjacency(net);
      const auto hops = hop_matrix(adj);
      const std::size_t n = net.node_count();
      for (std::size_t i = 0; i < n; ++i) {
        if (!in_mask(topo, net.position(i), net.region())) return fail("node outside mask");
        if (adj(i, i) || hops(i, i) != 0) return fail("non-zero diagonal");
        for (std::size_t j = 0; j < n; ++j) {
          if (adj(i, j) != adj(j, i) || hops(i, j) != hops(j, i)) return fail("asymmetric matrix");
          if (i != j && (hops(i, j) == 1) != adj(i, j)) return fail("hop 1 disagrees with adjacency");
          if (hops(i, j) == kUnreachable) continue;
          for (std::size_t k = 0; k < n; ++k)
            if (hops(j, k) != kUnreachable && hops(i, k) > hops(i, j) + hops(j, k))
              return fail("triangle inequality");
        }
      }
      if (!anchors_reach_all(net, hops)) return fail("node unreachable from anchors");
      ++res.cases;
    }
  }
  res.detail = "all generated networks consistent";
  return res;
}

std::vector<CheckResult> run_all_checks(std::uint64_t seed) {
  return {check_activation_coverage(10000, seed), check_folded_chain(), check_dcc_continuity(1000, seed + 1),
          check_base_discontinuity(), check_network_invariants(seed + 2)};
}

}  // namespace dvhop
