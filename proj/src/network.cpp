#include "dvhop/network.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "dvhop/error.hpp"
#include "dvhop/rng.hpp"

namespace dvhop {

std::string_view to_string(Topology topology) noexcept {
  switch (topology) {
    case Topology::Random: return "random";
    case Topology::CShaped: return "c-shaped";
    case Topology::OShaped: return "o-shaped";
    case Topology::XShaped: return "x-shaped";
  }
  return "random";
}

Topology parse_topology(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "random") return Topology::Random;
  if (lower == "c-shaped" || lower == "c" || lower == "cshaped") return Topology::CShaped;
  if (lower == "o-shaped" || lower == "o" || lower == "oshaped") return Topology::OShaped;
  if (lower == "x-shaped" || lower == "x" || lower == "xshaped") return Topology::XShaped;
  throw Error(Errc::ParseError, "unknown topology '" + std::string(name) + "'");
}

bool in_mask(Topology topology, const Point& p, double region, const MaskParams& mask) {
  if (p.x < 0.0 || p.y < 0.0 || p.x > region || p.y > region) return false;
  const double cx = region / 2.0;
  const double cy = region / 2.0;
  const double r = std::hypot(p.x - cx, p.y - cy);
  switch (topology) {
    case Topology::Random:
      return true;
    case Topology::OShaped:
      return r >= mask.inner_radius && r <= mask.outer_radius;
    case Topology::CShaped: {
      if (r < mask.inner_radius || r > mask.outer_radius) return false;
      const double angle = std::atan2(p.y - cy, p.x - cx) * 180.0 / std::numbers::pi;
      return std::abs(angle) >= mask.c_gap_half_angle;
    }
    case Topology::XShaped:
      return std::abs(p.y - p.x) <= mask.x_band_half_width ||
             std::abs(p.y - (region - p.x)) <= mask.x_band_half_width;
  }
  return false;
}

Network::Network(std::vector<Point> positions, std::size_t anchor_count, double radius,
                 double region, Topology topology, std::uint64_t seed)
    : positions_(std::move(positions)),
      anchor_count_(anchor_count),
      radius_(radius),
      region_(region),
      topology_(topology),
      seed_(seed) {
  if (anchor_count_ < 1 || anchor_count_ >= positions_.size())
    throw Error(Errc::InvalidConfig, "anchor count must satisfy 1 <= N_a < N");
  if (!(radius_ > 0.0) || !std::isfinite(radius_))
    throw Error(Errc::InvalidConfig, "radius must be positive");
  if (!(region_ > 0.0) || !std::isfinite(region_))
    throw Error(Errc::InvalidConfig, "region must be positive");
  for (const auto& p : positions_) {
    if (!(p.x >= 0.0 && p.x <= region_ && p.y >= 0.0 && p.y <= region_))
      throw Error(Errc::InvalidConfig, "node position outside the deployment region");
  }
}

Candidate Network::ground_truth() const {
  Candidate c(unknown_count());
  for (std::size_t k = 0; k < unknown_count(); ++k) {
    const auto& p = positions_[anchor_count_ + k];
    c.set(k, p.x, p.y);
  }
  return c;
}

void Adjacency::connect(std::size_t i, std::size_t j) {
  if (i == j || (*this)(i, j)) return;
  bits_[i * n_ + j] = 1;
  bits_[j * n_ + i] = 1;
  neighbors_[i].push_back(static_cast<std::uint32_t>(j));
  neighbors_[j].push_back(static_cast<std::uint32_t>(i));
}

Adjacency build_adjacency(std::span<const Point> positions, double radius) {
  const std::size_t n = positions.size();
  Adjacency adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(positions[i], positions[j]) <= radius) adj.connect(i, j);
    }
  }
  return adj;
}

HopMatrix hop_matrix(const Adjacency& adjacency) {
  const std::size_t n = adjacency.size();
  HopMatrix hops(n);
  std::vector<std::uint32_t> queue(n);
  for (std::size_t source = 0; source < n; ++source) {
    std::size_t head = 0;
    std::size_t tail = 0;
    queue[tail++] = static_cast<std::uint32_t>(source);
    while (head < tail) {
      const std::uint32_t node = queue[head++];
      const Hop next = hops(source, node) + 1;
      for (const std::uint32_t nb : adjacency.neighbors(node)) {
        if (hops(source, nb) == kUnreachable) {
          hops.at(source, nb) = next;
          queue[tail++] = nb;
        }
      }
    }
  }
  return hops;
}

std::vector<Point> compose_positions(const Network& network, const Candidate& candidate) {
  if (candidate.size() != 2 * network.unknown_count())
    throw Error(Errc::DimensionMismatch, "candidate has " + std::to_string(candidate.size()) +
                                             " coordinates, expected " +
                                             std::to_string(2 * network.unknown_count()));
  std::vector<Point> out(network.anchors().begin(), network.anchors().end());
  out.reserve(network.node_count());
  for (std::size_t k = 0; k < candidate.node_count(); ++k) out.push_back({candidate.x(k), candidate.y(k)});
  return out;
}

HopMatrix predicted_hops(const Candidate& candidate, const Network& network) {
  const auto positions = compose_positions(network, candidate);
  return hop_matrix(build_adjacency(positions, network.radius()));
}

bool anchors_reach_all(const Network& network, const HopMatrix& hops) {
  for (std::size_t i = 0; i < network.node_count(); ++i) {
    bool reached = false;
    for (std::size_t a = 0; a < network.anchor_count() && !reached; ++a)
      reached = hops(a, i) != kUnreachable;
    if (!reached) return false;
  }
  return true;
}

Network generate_topology(Topology topology, std::size_t total_nodes, std::size_t anchor_count,
                          double radius, std::uint64_t seed, const TopologyOptions& options) {
  if (anchor_count < 1 || total_nodes < anchor_count + 1)
    throw Error(Errc::InvalidConfig, "need 1 <= N_a and N >= N_a + 1");
  if (!(radius > 0.0)) throw Error(Errc::InvalidConfig, "radius must be positive");
  if (!(options.region > 0.0)) throw Error(Errc::InvalidConfig, "region must be positive");

  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(attempt));
    std::vector<Point> positions;
    positions.reserve(total_nodes);
    constexpr int kMaxRejections = 1'000'000;
    int rejections = 0;
    while (positions.size() < total_nodes) {
      const Point p{rng.uniform(0.0, options.region), rng.uniform(0.0, options.region)};
      if (in_mask(topology, p, options.region, options.mask)) {
        positions.push_back(p);
      } else if (++rejections > kMaxRejections) {
        throw Error(Errc::InvalidConfig, "topology mask has (almost) no admissible area");
      }
    }
    Network net(std::move(positions), anchor_count, radius, options.region, topology, seed);
    if (anchors_reach_all(net, hop_matrix(build_adjacency(net)))) return net;
  }
  throw Error(Errc::GenerationFailed, "no anchor-reachable layout within " +
                                          std::to_string(options.max_attempts) + " attempts");
}

void write_network(std::ostream& out, const Network& network) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  out << network.node_count() << ' ' << network.anchor_count() << ' ' << network.radius() << ' '
      << to_string(network.topology()) << ' ' << network.seed();
  if (network.region() != 100.0) out << ' ' << network.region();
  out << '\n';
  for (std::size_t i = 0; i < network.node_count(); ++i) {
    const auto& p = network.position(i);
    out << i << ' ' << p.x << ' ' << p.y << ' ' << (network.is_anchor(i) ? 1 : 0) << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

Network read_network(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::ParseError, "missing network header");
  std::istringstream header(line);
  std::size_t n = 0, na = 0;
  double radius = 0.0, region = 100.0;
  std::string topo;
  std::uint64_t seed = 0;
  if (!(header >> n >> na >> radius >> topo >> seed))
    throw Error(Errc::ParseError, "malformed network header: '" + line + "'");
  header >> region;

  std::vector<Point> positions(n);
  std::vector<bool> seen(n, false);
  for (std::size_t row = 0; row < n; ++row) {
    if (!std::getline(in, line)) throw Error(Errc::ParseError, "truncated node list");
    std::istringstream ls(line);
    std::size_t index = 0;
    Point p;
    int is_anchor = 0;
    if (!(ls >> index >> p.x >> p.y >> is_anchor) || index >= n || seen[index])
      throw Error(Errc::ParseError, "malformed node line: '" + line + "'");
    if ((index < na) != (is_anchor != 0))
      throw Error(Errc::ParseError, "anchors must be the first N_a nodes");
    seen[index] = true;
    positions[index] = p;
  }
  return Network(std::move(positions), na, radius, region, parse_topology(topo), seed);
}

std::uint64_t network_hash(const Network& network) {
  std::ostringstream os;
  write_network(os, network);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : os.str()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace dvhop
