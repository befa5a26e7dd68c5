#include <cmath>

#include "doctest.h"
#include "dvhop/error.hpp"
#include "dvhop/metrics.hpp"
#include "dvhop/moga.hpp"
#include "dvhop/rng.hpp"
#include "oracles.hpp"

using namespace dvhop;

TEST_CASE("mles") {
  const std::vector<Point> a{{1, 2}, {3, 4}};
  CHECK(mles(a, a, 25.0) == 0.0);

  const std::vector<Point> pred{{25, 0}}, act{{0, 0}};
  CHECK(mles(pred, act, 25.0) == doctest::Approx(100.0));

  Rng rng(80);
  for (int t = 0; t < 100; ++t) {
    std::vector<Point> p(80), q(80);
    for (auto& x : p) x = {rng.uniform(0, 100), rng.uniform(0, 100)};
    for (auto& x : q) x = {rng.uniform(0, 100), rng.uniform(0, 100)};
    const double ref = oracle::mles(p, q, 30.0);
    REQUIRE(std::abs(mles(p, q, 30.0) - ref) <= 1e-9 * ref);
  }

  CHECK_THROWS_AS(mles(std::vector<Point>{}, std::vector<Point>{}, 25.0), Error);
  CHECK_THROWS_AS(mles(pred, a, 25.0), Error);
}

TEST_CASE("mles: rigid motions and radius scaling") {
  Rng rng(81);
  std::vector<Point> p(30), q(30);
  for (auto& x : p) x = {rng.uniform(0, 100), rng.uniform(0, 100)};
  for (auto& x : q) x = {rng.uniform(0, 100), rng.uniform(0, 100)};
  const double base = mles(p, q, 25.0);
  const double c = std::cos(0.7), s = std::sin(0.7);
  auto move = [&](std::vector<Point> v) {
    for (auto& x : v) x = {c * x.x - s * x.y + 13.0, s * x.x + c * x.y - 4.0};
    return v;
  };
  CHECK(mles(move(p), move(q), 25.0) == doctest::Approx(base).epsilon(1e-12));
  CHECK(mles(p, q, 50.0) == doctest::Approx(base / 2).epsilon(1e-12));
}

TEST_CASE("mles from a network and candidate") {
  const auto net = generate_topology(Topology::Random, 30, 10, 30.0, 2);
  CHECK(mles(net, net.ground_truth()) == 0.0);
  Candidate shifted = net.ground_truth();
  for (std::size_t k = 0; k < shifted.node_count(); ++k) shifted.set(k, shifted.x(k), shifted.y(k) >= 50 ? shifted.y(k) - 3 : shifted.y(k) + 3);
  CHECK(mles(net, shifted) == doctest::Approx(10.0));
  const auto err = per_node_errors(net, shifted);
  CHECK(err.size() == 20);
  for (const double e : err) CHECK(e == doctest::Approx(3.0));
}

TEST_CASE("confidence_interval") {
  const std::vector<double> constant(5, 7.5);
  const auto z = confidence_interval(constant);
  CHECK(z.mean == 7.5);
  CHECK(z.low == 7.5);
  CHECK(z.high == 7.5);

  // n = 2: mean 12, s = 2*sqrt(2), half width = 12.706 * s / sqrt(2) = 12.706 * 2.
  const std::vector<double> two{10, 14};
  const auto ci = confidence_interval(two);
  CHECK(ci.mean == doctest::Approx(12.0));
  CHECK(ci.low == doctest::Approx(-13.41).epsilon(1e-3));
  CHECK(ci.high == doctest::Approx(37.41).epsilon(1e-3));
  CHECK((ci.high - ci.mean) / 2.0 == doctest::Approx(12.706).epsilon(1e-4));

  CHECK_THROWS_AS(confidence_interval(std::vector<double>{1.0}), Error);
}

TEST_CASE("confidence_interval: empirical coverage") {
  Rng rng(123);
  const double mu = 3.0;
  int covered = 0;
  const int resamples = 1000;
  for (int r = 0; r < resamples; ++r) {
    std::vector<double> s(50);
    for (auto& x : s) x = mu + 2.0 * rng.normal();
    const auto ci = confidence_interval(s);
    covered += ci.low <= mu && mu <= ci.high;
  }
  // Binomial(1000, 0.95) has sd ~ 6.9; allow about 4 sd.
  CHECK(std::abs(covered / double(resamples) - 0.95) <= 0.028);
}

TEST_CASE("time_profile") {
  RunResult run;
  run.total_time = 10.0;
  run.objective_time = 4.0;
  const auto p = time_profile(run);
  CHECK(p.share == doctest::Approx(0.4));
  CHECK(time_profile(RunResult{}).share == 0.0);
  CHECK(time_profile(RunResult{}).objective == 0.0);
}

TEST_CASE("time_profile: zero-generation run spends no time in the hop loss") {
  const Problem problem(generate_topology(Topology::Random, 30, 6, 30.0, 1));
  GaConfig cfg;
  cfg.max_iterations = 0;
  const auto evo = evolve(problem, HopLossKind::DCC, cfg);
  CHECK(evo.generations == 0);
  CHECK(evo.hop_loss_seconds <= evo.total_seconds);
}
