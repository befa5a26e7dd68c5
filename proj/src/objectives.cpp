#include "dvhop/objectives.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "dvhop/error.hpp"

namespace dvhop {

std::string_view to_string(HopLossKind kind) noexcept {
  switch (kind) {
    case HopLossKind::Base: return "base";
    case HopLossKind::ACCC: return "accc";
    case HopLossKind::DCC: return "dcc";
  }
  return "base";
}

HopLossKind parse_hop_loss_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "base") return HopLossKind::Base;
  if (lower == "accc") return HopLossKind::ACCC;
  if (lower == "dcc") return HopLossKind::DCC;
  throw Error(Errc::ParseError, "unknown hop loss kind '" + std::string(name) + "'");
}

namespace {

double base_loss(const HopMatrix& real, const HopMatrix& pred) {
  const std::size_t n = real.size();
  const Hop cap = static_cast<Hop>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (ac_base(real(i, j))) sum += il_base(real(i, j), pred(i, j), cap);
  return 2.0 * sum;
}

}  // namespace

double hop_loss(HopLossKind kind, const Network& network, const HopMatrix& real_hops,
                const Candidate& candidate) {
  const auto positions = compose_positions(network, candidate);
  const std::size_t n = positions.size();
  if (real_hops.size() != n) throw Error(Errc::DimensionMismatch, "hop matrix does not match network");
  const double radius = network.radius();

  switch (kind) {
    case HopLossKind::Base:
      return base_loss(real_hops, hop_matrix(build_adjacency(positions, radius)));

    case HopLossKind::ACCC: {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> active;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (ac_cc(real_hops(i, j), distance(positions[i], positions[j]), radius))
            active.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
      if (active.empty()) return 0.0;
      const HopMatrix pred = hop_matrix(build_adjacency(positions, radius));
      const Hop cap = static_cast<Hop>(n);
      double sum = 0.0;
      for (const auto& [i, j] : active) sum += il_base(real_hops(i, j), pred(i, j), cap);
      return 2.0 * sum;
    }

    case HopLossKind::DCC: {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double d = distance(positions[i], positions[j]);
          if (ac_cc(real_hops(i, j), d, radius)) sum += il_dst(d, radius);
        }
      }
      return 2.0 * sum;
    }
  }
  return 0.0;
}

double distance_residual_loss(const Network& network, const DistanceEstimate& est,
                              const Candidate& candidate) {
  if (candidate.size() != 2 * network.unknown_count())
    throw Error(Errc::DimensionMismatch, "candidate does not match network");
  if (est.anchor_count() != network.anchor_count() || est.unknown_count() != network.unknown_count())
    throw Error(Errc::DimensionMismatch, "distance estimate does not match network");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < network.anchor_count(); ++i) {
    const Point& a = network.position(i);
    for (std::size_t k = 0; k < network.unknown_count(); ++k) {
      const auto& d = est.at(i, k);
      if (!d) continue;
      const double r = distance(a, {candidate.x(k), candidate.y(k)}) - *d;
      sum += r * r;
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

ObjectiveVector evaluate(HopLossKind kind, const Network& network, const HopMatrix& real_hops,
                         const DistanceEstimate& est, const Candidate& candidate) {
  return {distance_residual_loss(network, est, candidate), hop_loss(kind, network, real_hops, candidate)};
}

Problem::Problem(Network network)
    : network_(std::move(network)),
      real_hops_(hop_matrix(build_adjacency(network_))),
      estimate_(estimate_distances(network_, real_hops_)),
      dv_hop_fix_(least_squares_fix(network_, estimate_)) {}

Problem::Problem(Network network, DistanceEstimate estimate)
    : network_(std::move(network)),
      real_hops_(hop_matrix(build_adjacency(network_))),
      estimate_(std::move(estimate)),
      dv_hop_fix_(least_squares_fix(network_, estimate_)) {
  if (estimate_.anchor_count() != network_.anchor_count() || estimate_.unknown_count() != network_.unknown_count())
    throw Error(Errc::DimensionMismatch, "distance estimate does not match network");
}

std::vector<ObjectiveVector> Problem::evaluate_batch(HopLossKind kind,
                                                     std::span<const Candidate> batch) const {
  std::vector<ObjectiveVector> out;
  out.reserve(batch.size());
  for (const auto& c : batch) out.push_back(evaluate(kind, c));
  return out;
}

}  // namespace dvhop
