#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "dvhop/candidate.hpp"
#include "dvhop/localization.hpp"
#include "dvhop/network.hpp"

namespace dvhop {

enum class HopLossKind { Base, ACCC, DCC };

inline constexpr HopLossKind kAllHopLossKinds[] = {HopLossKind::Base, HopLossKind::ACCC,
                                                   HopLossKind::DCC};

std::string_view to_string(HopLossKind kind) noexcept;
HopLossKind parse_hop_loss_kind(std::string_view name);

/// f1: distance residual loss, f2: hop loss. Both minimized.
struct ObjectiveVector {
  double f1 = 0.0;
  double f2 = 0.0;

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

// Per-pair building blocks of the hop losses.

/// Baseline activation: only pairs with fewer than 3 real hops.
constexpr bool ac_base(Hop hop_real) noexcept { return hop_real < 3; }

/// Squared hop difference. Unreachable on either side is replaced by `cap`,
/// which must exceed every finite hop count (the node count works).
constexpr double il_base(Hop hop_real, Hop hop_pred, Hop cap) noexcept {
  const double r = hop_real == kUnreachable ? cap : hop_real;
  const double p = hop_pred == kUnreachable ? cap : hop_pred;
  return (r - p) * (r - p);
}

/// Connectivity-consistency activation: the real and the predicted pair
/// disagree on whether they are direct neighbours. Predicted connectivity is
/// `dist_pred <= radius`, so no predicted hop counts are needed.
constexpr bool ac_cc(Hop hop_real, double dist_pred, double radius) noexcept {
  const bool pred_connected = dist_pred <= radius;
  return (hop_real == 1 && !pred_connected) || (hop_real > 1 && pred_connected);
}

/// Distance to the connectivity boundary.
inline double il_dst(double dist_pred, double radius) noexcept { return std::abs(dist_pred - radius); }

/// Total hop loss summed over ordered pairs (i, j), i != j.
///
/// Base and ACCC need predicted hop counts (one BFS per source); DCC only
/// needs the predicted pairwise distances. ACCC skips the BFS when no pair
/// is activated.
double hop_loss(HopLossKind kind, const Network& network, const HopMatrix& real_hops,
                const Candidate& candidate);

/// Mean squared difference between predicted anchor-to-unknown distances and
/// the hop-based estimates, over all non-missing pairs.
double distance_residual_loss(const Network& network, const DistanceEstimate& est,
                              const Candidate& candidate);

ObjectiveVector evaluate(HopLossKind kind, const Network& network, const HopMatrix& real_hops,
                         const DistanceEstimate& est, const Candidate& candidate);

/// A localization instance: the network plus everything precomputed from the
/// real hop counts. Immutable and shareable across threads.
class Problem {
 public:
  explicit Problem(Network network);
  /// Uses `estimate` in place of the DV-Hop distance estimates.
  Problem(Network network, DistanceEstimate estimate);

  const Network& network() const noexcept { return network_; }
  const HopMatrix& real_hops() const noexcept { return real_hops_; }
  const DistanceEstimate& estimate() const noexcept { return estimate_; }
  /// Classic DV-Hop multilateration result.
  const Candidate& dv_hop_fix() const noexcept { return dv_hop_fix_; }
  std::size_t dimension() const noexcept { return 2 * network_.unknown_count(); }

  double distance_loss(const Candidate& c) const {
    return distance_residual_loss(network_, estimate_, c);
  }
  double hop_loss(HopLossKind kind, const Candidate& c) const {
    return dvhop::hop_loss(kind, network_, real_hops_, c);
  }
  ObjectiveVector evaluate(HopLossKind kind, const Candidate& c) const {
    return {distance_loss(c), hop_loss(kind, c)};
  }
  std::vector<ObjectiveVector> evaluate_batch(HopLossKind kind, std::span<const Candidate> batch) const;

 private:
  Network network_;
  HopMatrix real_hops_;
  DistanceEstimate estimate_;
  Candidate dv_hop_fix_;
};

}  // namespace dvhop
