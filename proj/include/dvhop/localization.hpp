#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dvhop/candidate.hpp"
#include "dvhop/network.hpp"

namespace dvhop {

/// Per-anchor average hop distance in meters.
struct AvgHopDistance {
  std::vector<double> meters;
  /// True where the anchor reached no other anchor and was given the mean
  /// of the valid anchors instead.
  std::vector<bool> imputed;
};

/// Average hop length seen from each anchor, using the anchor-to-anchor
/// Euclidean distances and hop counts. Throws NoReachableAnchor when no
/// anchor reaches any other.
AvgHopDistance avg_hop_distance(const Network& network, const HopMatrix& hops);

/// Anchor-to-unknown distance estimates. Pairs with no hop path are missing.
class DistanceEstimate {
 public:
  DistanceEstimate(std::vector<double> avg_dis, std::size_t unknowns)
      : avg_dis_(std::move(avg_dis)), unknowns_(unknowns), dist_(avg_dis_.size() * unknowns) {}

  std::size_t anchor_count() const noexcept { return avg_dis_.size(); }
  std::size_t unknown_count() const noexcept { return unknowns_; }
  std::span<const double> avg_dis() const noexcept { return avg_dis_; }

  /// Estimate from anchor `i` to unknown `k` (k counted among unknowns only).
  const std::optional<double>& at(std::size_t i, std::size_t k) const { return dist_[i * unknowns_ + k]; }
  std::optional<double>& at(std::size_t i, std::size_t k) { return dist_[i * unknowns_ + k]; }

 private:
  std::vector<double> avg_dis_;
  std::size_t unknowns_;
  std::vector<std::optional<double>> dist_;
};

DistanceEstimate estimate_distances(std::span<const double> avg_dis, const HopMatrix& hops,
                                    const Network& network);

/// avg_hop_distance followed by estimate_distances.
DistanceEstimate estimate_distances(const Network& network, const HopMatrix& hops);

/// Linearized least-squares position from circles around `anchors`.
/// The last anchor is the pivot subtracted from the others. Throws
/// DegenerateGeometry for fewer than 3 anchors or a rank-deficient system.
Point multilaterate(std::span<const Point> anchors, std::span<const double> distances);

/// Multilateration per unknown node, clamped to the region. Nodes with fewer
/// than 3 usable anchors, or degenerate anchor geometry, fall back to the
/// centroid of their usable anchors.
Candidate least_squares_fix(const Network& network, const DistanceEstimate& est);

/// Clamp every coordinate into [0, region].
void clamp_to_region(Candidate& candidate, double region);

}  // namespace dvhop
