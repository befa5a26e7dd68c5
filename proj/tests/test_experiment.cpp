#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "dvhop/error.hpp"
#include "dvhop/experiment.hpp"

using namespace dvhop;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("dvhop_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig tiny_config(const fs::path& dir) {
  ExperimentConfig c;
  c.topologies = {Topology::Random};
  c.anchor_counts = {6};
  c.radii = {35};
  c.repeats = 3;
  c.total_nodes = 25;
  c.kinds = {HopLossKind::Base, HopLossKind::DCC};
  c.ga.max_iterations = 10;
  c.base_seed = 11;
  c.output_dir = dir.string();
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config text overrides defaults") {
  ExperimentConfig c;
  std::istringstream in(
      "# desk sweep\n"
      "topologies = random, o-shaped\n"
      "anchor_counts = 10, 20\n"
      "radii = 25, 40   # two radii\n"
      "repeats = 10\n"
      "kinds = base, accc, dcc\n"
      "max_iterations = 200\n"
      "base_seed = 99\n");
  apply_config_text(c, in);
  CHECK(c.topologies == std::vector<Topology>{Topology::Random, Topology::OShaped});
  CHECK(c.anchor_counts == std::vector<std::size_t>{10, 20});
  CHECK(c.radii == std::vector<double>{25, 40});
  CHECK(c.repeats == 10);
  CHECK(c.kinds.size() == 3);
  CHECK(c.ga.max_iterations == 200);
  CHECK(c.ga.population_size == 20);
  CHECK(c.base_seed == 99);
  CHECK(c.expected_rows() == 2 * 2 * 2 * 3 * 10);

  std::istringstream bad("population = 20\n");
  CHECK_THROWS_AS(apply_config_text(c, bad), Error);
  std::istringstream bad_value("repeats = ten\n");
  CHECK_THROWS_AS(apply_config_text(c, bad_value), Error);
}

TEST_CASE("config JSON round-trip") {
  ExperimentConfig c;
  c.topologies = {Topology::XShaped, Topology::CShaped};
  c.kinds = {HopLossKind::ACCC};
  c.ga.eta_m = 15;
  const auto back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
}

TEST_CASE("seed derivation") {
  const auto s = derive_seed(1, Topology::Random, 20, 25.0, 0);
  CHECK(s == derive_seed(1, Topology::Random, 20, 25.0, 0));
  CHECK(s != derive_seed(1, Topology::Random, 20, 25.0, 1));
  CHECK(s != derive_seed(1, Topology::Random, 20, 30.0, 0));
  CHECK(s != derive_seed(1, Topology::OShaped, 20, 25.0, 0));
  CHECK(s != derive_seed(2, Topology::Random, 20, 25.0, 0));
}

TEST_CASE("results rows round-trip through CSV") {
  ResultRow r;
  r.topology = Topology::CShaped;
  r.anchors = 15;
  r.radius = 30;
  r.kind = HopLossKind::ACCC;
  r.repeat = 7;
  r.seed = 1234567890123ULL;
  r.network_hash = 0xdeadbeefcafef00dULL;
  r.mles = 21.5;
  r.f1 = 3.25;
  r.f2 = 0.125;
  r.generations = 200;
  r.total_time = 1.5;
  const auto back = parse_row(format_row(r));
  CHECK(format_row(back) == format_row(r));
  CHECK_THROWS_AS(parse_row("random,1,2"), Error);
}

TEST_CASE("run_sweep: cardinality, pairing, resume") {
  const auto dir = fresh_dir("sweep");
  const auto cfg = tiny_config(dir);
  const auto report = run_sweep(cfg);
  CHECK(report.rows.size() == 6);
  CHECK(report.computed == 6);
  CHECK(report.failed == 0);
  CHECK(fs::exists(dir / "manifest.json"));

  // Base and DCC rows of the same repeat ran on the same network.
  std::map<std::size_t, std::uint64_t> hash_of_repeat;
  for (const auto& r : report.rows) {
    CHECK(r.ok());
    CHECK(r.seed == derive_seed(cfg.base_seed, r.topology, r.anchors, r.radius, r.repeat));
    auto [it, inserted] = hash_of_repeat.emplace(r.repeat, r.network_hash);
    if (!inserted) CHECK(it->second == r.network_hash);
  }
  CHECK(hash_of_repeat.size() == 3);

  const auto before = slurp(dir / "results.csv");
  const auto again = run_sweep(cfg);
  CHECK(again.computed == 0);
  CHECK(again.skipped == 6);
  CHECK(slurp(dir / "results.csv") == before);

  // Interrupted sweep: drop the last two rows and resume.
  {
    std::istringstream in(before);
    std::string line, kept;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    for (std::size_t i = 0; i + 2 < lines.size(); ++i) kept += lines[i] + "\n";
    std::ofstream(dir / "results.csv") << kept;
  }
  const auto resumed = run_sweep(cfg);
  CHECK(resumed.computed == 2);
  CHECK(determinism_digest(resumed.rows) == determinism_digest(report.rows));

  auto other = cfg;
  other.repeats = 4;
  CHECK_THROWS_AS(run_sweep(other), Error);
}

TEST_CASE("run_sweep: determinism across runs and thread counts") {
  const auto d1 = fresh_dir("det1");
  const auto d2 = fresh_dir("det2");
  const auto a = run_sweep(tiny_config(d1));
  SweepOptions opts;
  opts.threads = 3;
  const auto b = run_sweep(tiny_config(d2), opts);
  CHECK(determinism_digest(a.rows) == determinism_digest(b.rows));
  CHECK(determinism_digest(read_results(d1 / "results.csv")) == determinism_digest(a.rows));
}

TEST_CASE("run_sweep: per-row failures are recorded") {
  const auto dir = fresh_dir("fail");
  auto cfg = tiny_config(dir);
  cfg.radii = {0.5};
  cfg.repeats = 1;
  const auto report = run_sweep(cfg);
  CHECK(report.failed == 2);
  for (const auto& r : report.rows) CHECK(r.status.rfind("GenerationFailed", 0) == 0);
}

TEST_CASE("summarize") {
  ResultRow r;
  r.mles = 12.5;
  r.total_time = 2.0;
  const std::vector<ResultRow> one{r};
  const auto s = summarize(one);
  REQUIRE(s.size() == 1);
  CHECK(s[0].mean_mles == 12.5);
  CHECK(s[0].ci_low == 12.5);
  CHECK(s[0].ci_high == 12.5);

  std::vector<ResultRow> flat(4, r);
  for (std::size_t i = 0; i < 4; ++i) flat[i].repeat = i;
  const auto z = summarize(flat);
  CHECK(z[0].ci_low == 12.5);
  CHECK(z[0].ci_high == 12.5);

  // Recompute a cell by hand from raw rows.
  std::vector<ResultRow> cell;
  double sum = 0;
  for (int i = 0; i < 50; ++i) {
    ResultRow x = r;
    x.repeat = static_cast<std::size_t>(i);
    x.mles = 10.0 + (i * 37 % 11);
    sum += x.mles;
    cell.push_back(x);
  }
  CHECK(summarize(cell)[0].mean_mles == doctest::Approx(sum / 50));

  std::ostringstream csv, txt;
  write_summary_csv(csv, summarize(cell));
  write_summary_text(txt, summarize(cell));
  CHECK(csv.str().find("random,0,0,dcc,50,") != std::string::npos);
  CHECK(txt.str().find("N_a=0") != std::string::npos);
}

TEST_CASE("emit_plot_data") {
  const auto dir = fresh_dir("plots");
  auto cfg = tiny_config(dir);
  cfg.anchor_counts = {5};
  cfg.radii = {25, 30, 35, 40};
  cfg.repeats = 1;
  cfg.total_nodes = 20;
  cfg.ga.max_iterations = 2;
  const auto report = run_sweep(cfg);

  PlotRequest ci;
  ci.kind = PlotKind::CiBars;
  const auto ci_files = emit_plot_data(report.rows, cfg, ci, dir);
  CHECK(slurp(ci_files.at(0)).find("random,5,25,base,") != std::string::npos);

  PlotRequest timing;
  timing.kind = PlotKind::TimingCurves;
  timing.fixed_anchors = 5;
  const auto t_files = emit_plot_data(report.rows, cfg, timing, dir);
  const auto text = slurp(t_files.at(0));
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 4 * 2);

  PlotRequest ev;
  ev.kind = PlotKind::ErrorVectors;
  ev.anchors = 5;
  ev.radius = 30;
  ev.hop_kind = HopLossKind::DCC;
  const auto ev_files = emit_plot_data(report.rows, cfg, ev, dir);
  const auto vectors = slurp(ev_files.at(0));
  CHECK(std::count(vectors.begin(), vectors.end(), '\n') == 1 + 15);

  ev.anchors = 25;
  CHECK_THROWS_AS(emit_plot_data(report.rows, cfg, ev, dir), Error);
  timing.fixed_anchors = 7;
  timing.fixed_radius = 99;
  CHECK_THROWS_AS(emit_plot_data(report.rows, cfg, timing, dir), Error);
}
