#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dvhop/network.hpp"
#include "dvhop/objectives.hpp"

namespace dvhop {

/// Mean localization error as a percentage of the communication radius.
/// Throws EmptyInput for empty input and DimensionMismatch for unequal sizes.
double mles(std::span<const Point> predicted, std::span<const Point> actual, double radius);

/// Convenience overload: compares a candidate with the network's ground truth.
double mles(const Network& network, const Candidate& predicted);

/// Euclidean error of each unknown node.
std::vector<double> per_node_errors(const Network& network, const Candidate& predicted);

struct ConfidenceInterval {
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
};

/// Two-sided Student-t interval for the mean. Needs at least 2 samples
/// (InsufficientSamples otherwise).
ConfidenceInterval confidence_interval(std::span<const double> samples, double level = 0.95);

struct RunResult {
  double mles = 0.0;
  std::vector<double> per_node_errors;
  double total_time = 0.0;      // seconds, monotonic clock
  double objective_time = 0.0;  // seconds inside hop-loss evaluation
  double cpu_time = 0.0;        // process CPU seconds
  std::size_t generations_run = 0;
  HopLossKind kind = HopLossKind::DCC;
  std::uint64_t seed = 0;
};

struct TimeProfile {
  double total = 0.0;
  double objective = 0.0;
  /// objective / total, 0 for a zero-length run.
  double share = 0.0;
};

TimeProfile time_profile(const RunResult& run) noexcept;

}  // namespace dvhop
