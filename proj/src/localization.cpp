#include "dvhop/localization.hpp"

#include <Eigen/Dense>
#include <algorithm>

#include "dvhop/error.hpp"

namespace dvhop {

AvgHopDistance avg_hop_distance(const Network& network, const HopMatrix& hops) {
  const std::size_t na = network.anchor_count();
  AvgHopDistance out{std::vector<double>(na, 0.0), std::vector<bool>(na, false)};
  double valid_sum = 0.0;
  std::size_t valid = 0;
  for (std::size_t i = 0; i < na; ++i) {
    double dist_sum = 0.0;
    long long hop_sum = 0;
    for (std::size_t j = 0; j < na; ++j) {
      if (j == i || hops(i, j) == kUnreachable) continue;
      dist_sum += distance(network.position(i), network.position(j));
      hop_sum += hops(i, j);
    }
    if (hop_sum > 0) {
      out.meters[i] = dist_sum / static_cast<double>(hop_sum);
      valid_sum += out.meters[i];
      ++valid;
    } else {
      out.imputed[i] = true;
    }
  }
  if (valid == 0) throw Error(Errc::NoReachableAnchor, "no anchor reaches another anchor");
  const double mean = valid_sum / static_cast<double>(valid);
  for (std::size_t i = 0; i < na; ++i)
    if (out.imputed[i]) out.meters[i] = mean;
  return out;
}

DistanceEstimate estimate_distances(std::span<const double> avg_dis, const HopMatrix& hops,
                                    const Network& network) {
  const std::size_t na = network.anchor_count();
  if (avg_dis.size() != na) throw Error(Errc::DimensionMismatch, "one average distance per anchor expected");
  DistanceEstimate est({avg_dis.begin(), avg_dis.end()}, network.unknown_count());
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t k = 0; k < network.unknown_count(); ++k) {
      const Hop h = hops(i, na + k);
      if (h != kUnreachable) est.at(i, k) = avg_dis[i] * h;
    }
  }
  return est;
}

DistanceEstimate estimate_distances(const Network& network, const HopMatrix& hops) {
  return estimate_distances(avg_hop_distance(network, hops).meters, hops, network);
}

Point multilaterate(std::span<const Point> anchors, std::span<const double> distances) {
  const std::size_t m = anchors.size();
  if (m != distances.size()) throw Error(Errc::DimensionMismatch, "one distance per anchor expected");
  if (m < 3) throw Error(Errc::DegenerateGeometry, "multilateration needs at least 3 anchors");

  const Point& pivot = anchors[m - 1];
  const double dp = distances[m - 1];
  Eigen::MatrixX2d a(m - 1, 2);
  Eigen::VectorXd b(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const Point& p = anchors[i];
    a(i, 0) = 2.0 * (pivot.x - p.x);
    a(i, 1) = 2.0 * (pivot.y - p.y);
    b(i) = distances[i] * distances[i] - dp * dp - p.x * p.x + pivot.x * pivot.x - p.y * p.y +
           pivot.y * pivot.y;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixX2d> qr(a);
  qr.setThreshold(1e-9);
  if (qr.rank() < 2) throw Error(Errc::DegenerateGeometry, "anchors are collinear");
  const Eigen::Vector2d sol = qr.solve(b);
  return {sol(0), sol(1)};
}

void clamp_to_region(Candidate& candidate, double region) {
  for (double& v : candidate.coords()) v = std::clamp(v, 0.0, region);
}

Candidate least_squares_fix(const Network& network, const DistanceEstimate& est) {
  const std::size_t na = network.anchor_count();
  Candidate out(network.unknown_count());
  std::vector<Point> anchors;
  std::vector<double> dists;
  for (std::size_t k = 0; k < network.unknown_count(); ++k) {
    anchors.clear();
    dists.clear();
    for (std::size_t i = 0; i < na; ++i) {
      if (const auto& d = est.at(i, k)) {
        anchors.push_back(network.position(i));
        dists.push_back(*d);
      }
    }
    Point p{network.region() / 2.0, network.region() / 2.0};
    try {
      p = multilaterate(anchors, dists);
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateGeometry) throw;
      if (!anchors.empty()) {
        p = {0.0, 0.0};
        for (const auto& a : anchors) {
          p.x += a.x;
          p.y += a.y;
        }
        p.x /= static_cast<double>(anchors.size());
        p.y /= static_cast<double>(anchors.size());
      }
    }
    out.set(k, p.x, p.y);
  }
  clamp_to_region(out, network.region());
  return out;
}

}  // namespace dvhop
