#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dvhop/candidate.hpp"
#include "dvhop/network.hpp"

namespace dvhop {

/// Outcome of one self-check run by `dvhop verify`.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  std::string detail;
};

struct Example {
  Network network;
  Candidate candidate;
};

/// Four nodes on a chain (real hops 1-2-3-4, so nodes 1 and 4 are 3 hops
/// apart) with a prediction that folds node 4 next to node 1 while every
/// other pair keeps its real connectivity. Node 1 is the only anchor.
Example folded_chain_example();

/// Three-node chain whose candidate sits 5e-7 m outside the radius on one
/// link; moving node 3 by -1e-6 m in x crosses the boundary.
Example boundary_crossing_example();

/// Random layout of `nodes` nodes (not necessarily connected) and a random
/// candidate for it. Half the candidates are the ground truth with Gaussian
/// jitter, the rest uniform.
Example random_example(std::size_t nodes, std::uint64_t seed);

/// Any hop mismatch between real and predicted hop matrices implies at least
/// one pair with connectivity-consistency activation.
CheckResult check_activation_coverage(std::size_t trials, std::uint64_t seed, std::size_t max_nodes = 8);
CheckResult check_folded_chain();
/// Lipschitz bound 2 N^2 delta on the DCC loss under perturbations up to 0.01 m.
CheckResult check_dcc_continuity(std::size_t trials, std::uint64_t seed);
/// The baseline loss jumps by >= 1 across the radius boundary while DCC moves < 1e-5.
CheckResult check_base_discontinuity();
/// Symmetry, hop/adjacency agreement, triangle inequality, mask conformance
/// and determinism of generated networks.
CheckResult check_network_invariants(std::uint64_t seed);

std::vector<CheckResult> run_all_checks(std::uint64_t seed);

}  // namespace dvhop
