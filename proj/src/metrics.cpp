#include "dvhop/metrics.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "dvhop/error.hpp"

namespace dvhop {

double mles(std::span<const Point> predicted, std::span<const Point> actual, double radius) {
  if (predicted.empty()) throw Error(Errc::EmptyInput, "no unknown nodes");
  if (predicted.size() != actual.size()) throw Error(Errc::DimensionMismatch, "position lists differ in length");
  if (!(radius > 0.0)) throw Error(Errc::InvalidConfig, "radius must be positive");
  double sum = 0.0;
  for (std::size_t k = 0; k < predicted.size(); ++k) sum += distance(predicted[k], actual[k]);
  return 100.0 * sum / (static_cast<double>(predicted.size()) * radius);
}

double mles(const Network& network, const Candidate& predicted) {
  const auto composed = compose_positions(network, predicted);
  const std::span<const Point> pred(composed.data() + network.anchor_count(), network.unknown_count());
  return mles(pred, network.unknowns(), network.radius());
}

std::vector<double> per_node_errors(const Network& network, const Candidate& predicted) {
  const auto composed = compose_positions(network, predicted);
  std::vector<double> out;
  out.reserve(network.unknown_count());
  for (std::size_t i = network.anchor_count(); i < network.node_count(); ++i)
    out.push_back(distance(composed[i], network.position(i)));
  return out;
}

ConfidenceInterval confidence_interval(std::span<const double> samples, double level) {
  const std::size_t n = samples.size();
  if (n < 2) throw Error(Errc::InsufficientSamples, "confidence interval needs at least 2 samples");
  if (!(level > 0.0 && level < 1.0)) throw Error(Errc::InvalidConfig, "confidence level outside (0, 1)");
  double mean = 0.0;
  for (const double s : samples) mean += s;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (const double s : samples) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double t = boost::math::quantile(dist, 0.5 + level / 2.0);
  const double half = t * sd / std::sqrt(static_cast<double>(n));
  return {mean, mean - half, mean + half};
}

TimeProfile time_profile(const RunResult& run) noexcept {
  return {run.total_time, run.objective_time, run.total_time > 0.0 ? run.objective_time / run.total_time : 0.0};
}

}  // namespace dvhop
