#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dvhop/candidate.hpp"

namespace dvhop {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Euclidean distance. Every connectivity decision in the library goes
/// through this one function so the R boundary is classified consistently.
inline double distance(const Point& a, const Point& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

enum class Topology { Random, CShaped, OShaped, XShaped };

std::string_view to_string(Topology topology) noexcept;
/// Accepts "random", "c-shaped"/"c", "o-shaped"/"o", "x-shaped"/"x" (case-insensitive).
Topology parse_topology(std::string_view name);

/// Geometry of the irregular deployment masks. All lengths in meters.
struct MaskParams {
  double inner_radius = 20.0;     // C and O annulus
  double outer_radius = 50.0;     // C and O annulus
  double c_gap_half_angle = 45.0; // degrees, C opening centered on +x
  double x_band_half_width = 12.0;
};

struct TopologyOptions {
  double region = 100.0;
  MaskParams mask{};
  int max_attempts = 100;
};

/// True iff `p` lies in the admissible area of `topology` inside [0, region]^2.
bool in_mask(Topology topology, const Point& p, double region, const MaskParams& mask = {});

/// A deployed sensor network. The first `anchor_count` nodes are anchors.
///
/// Construction checks counts, radius and that every node lies in the
/// region. Anchor reachability is guaranteed by generate_topology, not here,
/// so hand-built layouts can be disconnected.
class Network {
 public:
  Network(std::vector<Point> positions, std::size_t anchor_count, double radius,
          double region = 100.0, Topology topology = Topology::Random, std::uint64_t seed = 0);

  std::span<const Point> positions() const noexcept { return positions_; }
  const Point& position(std::size_t i) const { return positions_.at(i); }
  std::span<const Point> anchors() const noexcept { return {positions_.data(), anchor_count_}; }
  std::span<const Point> unknowns() const noexcept {
    return {positions_.data() + anchor_count_, positions_.size() - anchor_count_};
  }

  std::size_t node_count() const noexcept { return positions_.size(); }
  std::size_t anchor_count() const noexcept { return anchor_count_; }
  std::size_t unknown_count() const noexcept { return positions_.size() - anchor_count_; }
  bool is_anchor(std::size_t i) const noexcept { return i < anchor_count_; }
  double radius() const noexcept { return radius_; }
  double region() const noexcept { return region_; }
  Topology topology() const noexcept { return topology_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Ground-truth unknown positions as a Candidate.
  Candidate ground_truth() const;

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::vector<Point> positions_;
  std::size_t anchor_count_;
  double radius_;
  double region_;
  Topology topology_;
  std::uint64_t seed_;
};

/// Symmetric unit-disk connectivity with zero diagonal.
class Adjacency {
 public:
  explicit Adjacency(std::size_t n) : n_(n), bits_(n * n, 0), neighbors_(n) {}

  std::size_t size() const noexcept { return n_; }
  bool operator()(std::size_t i, std::size_t j) const noexcept { return bits_[i * n_ + j] != 0; }
  std::span<const std::uint32_t> neighbors(std::size_t i) const noexcept { return neighbors_[i]; }
  void connect(std::size_t i, std::size_t j);

 private:
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
  std::vector<std::vector<std::uint32_t>> neighbors_;
};

using Hop = std::int32_t;
inline constexpr Hop kUnreachable = std::numeric_limits<Hop>::max();

/// All-pairs minimum hop counts. Disconnected pairs hold kUnreachable.
class HopMatrix {
 public:
  explicit HopMatrix(std::size_t n) : n_(n), hops_(n * n, kUnreachable) {
    for (std::size_t i = 0; i < n; ++i) hops_[i * n + i] = 0;
  }

  std::size_t size() const noexcept { return n_; }
  Hop operator()(std::size_t i, std::size_t j) const noexcept { return hops_[i * n_ + j]; }
  Hop& at(std::size_t i, std::size_t j) noexcept { return hops_[i * n_ + j]; }
  std::span<const Hop> row(std::size_t i) const noexcept { return {hops_.data() + i * n_, n_}; }

  friend bool operator==(const HopMatrix&, const HopMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<Hop> hops_;
};

Network generate_topology(Topology topology, std::size_t total_nodes, std::size_t anchor_count,
                          double radius, std::uint64_t seed, const TopologyOptions& options = {});

Adjacency build_adjacency(std::span<const Point> positions, double radius);
inline Adjacency build_adjacency(const Network& network) {
  return build_adjacency(network.positions(), network.radius());
}

/// Per-source breadth-first search over `adjacency`.
HopMatrix hop_matrix(const Adjacency& adjacency);

/// Anchor positions followed by the candidate's unknown positions.
std::vector<Point> compose_positions(const Network& network, const Candidate& candidate);

HopMatrix predicted_hops(const Candidate& candidate, const Network& network);

/// True iff every node reaches at least one anchor.
bool anchors_reach_all(const Network& network, const HopMatrix& hops);

/// Line-oriented text format:
///   N N_a R topology seed [region]
///   index x y is_anchor        (N lines)
/// The region field is written only when it differs from 100.
void write_network(std::ostream& out, const Network& network);
Network read_network(std::istream& in);

/// FNV-1a digest of the serialized network; identifies a layout in results.
std::uint64_t network_hash(const Network& network);

}  // namespace dvhop
