#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dvhop {

/// Coordinates for every unknown node, flattened as x0, y0, x1, y1, ...
/// in network index order.
class Candidate {
 public:
  Candidate() = default;
  explicit Candidate(std::vector<double> coords) : coords_(std::move(coords)) {}
  explicit Candidate(std::size_t unknown_count) : coords_(2 * unknown_count, 0.0) {}

  std::size_t size() const noexcept { return coords_.size(); }
  std::size_t node_count() const noexcept { return coords_.size() / 2; }
  double x(std::size_t k) const { return coords_[2 * k]; }
  double y(std::size_t k) const { return coords_[2 * k + 1]; }
  void set(std::size_t k, double x, double y) {
    coords_[2 * k] = x;
    coords_[2 * k + 1] = y;
  }

  double& operator[](std::size_t i) { return coords_[i]; }
  double operator[](std::size_t i) const { return coords_[i]; }

  std::span<double> coords() noexcept { return coords_; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const Candidate&, const Candidate&) = default;

 private:
  std::vector<double> coords_;
};

}  // namespace dvhop
