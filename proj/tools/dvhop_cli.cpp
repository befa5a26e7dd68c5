// dvhop: run localization sweeps, summarize them and export plot data.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dvhop/error.hpp"
#include "dvhop/experiment.hpp"
#include "dvhop/verify.hpp"

namespace fs = std::filesystem;
using namespace dvhop;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

std::string output_dir_override(const std::string& configured) {
  if (const char* env = std::getenv("DVHOP_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return configured;
}

ExperimentConfig load_manifest(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw Error(Errc::Io, "no manifest.json in " + dir.string());
  std::stringstream ss;
  ss << in.rdbuf();
  auto cfg = config_from_json(ss.str());
  cfg.output_dir = dir.string();
  return cfg;
}

struct SweepFlags {
  std::string config_file;
  std::vector<std::string> topologies;
  std::vector<std::size_t> anchors;
  std::vector<double> radii;
  std::vector<std::string> kinds;
  std::size_t threads = 1;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DV-Hop localization with hop-loss multi-objective optimization"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  SweepFlags flags;
  auto* sweep = app.add_subcommand("sweep", "Run a seeded experiment grid and append to results.csv");
  sweep->add_option("-c,--config", flags.config_file, "key = value config file (wins over flags)");
  sweep->add_option("--topologies", flags.topologies, "random, c-shaped, o-shaped, x-shaped");
  sweep->add_option("--anchors", flags.anchors, "Anchor counts N_a");
  sweep->add_option("--radii", flags.radii, "Communication radii R (m)");
  sweep->add_option("--kinds", flags.kinds, "Hop losses: base, accc, dcc");
  sweep->add_option("--repeats", cfg.repeats, "Independent repeats per cell");
  sweep->add_option("--nodes", cfg.total_nodes, "Total nodes per network");
  sweep->add_option("--population", cfg.ga.population_size, "GA population size");
  sweep->add_option("--iterations", cfg.ga.max_iterations, "GA generations");
  sweep->add_option("--pc", cfg.ga.crossover_prob, "Crossover probability");
  sweep->add_option("--pm", cfg.ga.mutation_prob, "Per-coordinate mutation probability");
  sweep->add_option("--eta-c", cfg.ga.eta_c, "SBX distribution index");
  sweep->add_option("--eta-m", cfg.ga.eta_m, "Polynomial mutation distribution index");
  sweep->add_option("--seed", cfg.base_seed, "Base seed");
  sweep->add_option("-o,--output", cfg.output_dir, "Output directory");
  sweep->add_option("-j,--threads", flags.threads, "Worker threads");

  std::string dir = "results";
  auto* summarize_cmd = app.add_subcommand("summarize", "Write summary.csv and summary.txt from results.csv");
  summarize_cmd->add_option("-o,--output", dir, "Sweep output directory");

  PlotRequest plot;
  std::string plot_kind = "ci_bars", plot_topology = "random", plot_hop = "dcc";
  auto* plot_cmd = app.add_subcommand("plot-data", "Export plot-ready CSV");
  plot_cmd->add_option("-o,--output", dir, "Sweep output directory");
  plot_cmd->add_option("--kind", plot_kind, "ci_bars, timing_curves or error_vectors");
  plot_cmd->add_option("--fixed-anchors", plot.fixed_anchors, "timing_curves: N_a for the radius series");
  plot_cmd->add_option("--fixed-radius", plot.fixed_radius, "timing_curves: R for the anchor series");
  plot_cmd->add_option("--topology", plot_topology, "error_vectors: topology");
  plot_cmd->add_option("--anchors", plot.anchors, "error_vectors: N_a");
  plot_cmd->add_option("--radius", plot.radius, "error_vectors: R");
  plot_cmd->add_option("--repeat", plot.repeat, "error_vectors: repeat index");
  plot_cmd->add_option("--hop-loss", plot_hop, "error_vectors: base, accc or dcc");

  std::uint64_t verify_seed = 2024;
  auto* verify_cmd = app.add_subcommand("verify", "Run the property self-checks");
  verify_cmd->add_option("--seed", verify_seed, "Seed for the randomized checks");

  std::string net_topology = "random";
  std::size_t net_nodes = 100, net_anchors = 20;
  double net_radius = 25.0;
  std::uint64_t net_seed = 1;
  auto* network_cmd = app.add_subcommand("network", "Print a generated network in the text format");
  network_cmd->add_option("--topology", net_topology);
  network_cmd->add_option("--nodes", net_nodes);
  network_cmd->add_option("--anchors", net_anchors);
  network_cmd->add_option("--radius", net_radius);
  network_cmd->add_option("--seed", net_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sweep) {
      if (!flags.topologies.empty()) {
        cfg.topologies.clear();
        for (const auto& t : flags.topologies) cfg.topologies.push_back(parse_topology(t));
      }
      if (!flags.anchors.empty()) cfg.anchor_counts = flags.anchors;
      if (!flags.radii.empty()) cfg.radii = flags.radii;
      if (!flags.kinds.empty()) {
        cfg.kinds.clear();
        for (const auto& k : flags.kinds) cfg.kinds.push_back(parse_hop_loss_kind(k));
      }
      if (!flags.config_file.empty()) {
        std::ifstream in(flags.config_file);
        if (!in) throw Error(Errc::InvalidConfig, "cannot read " + flags.config_file);
        apply_config_text(cfg, in);
      }
      cfg.output_dir = output_dir_override(cfg.output_dir);
      cfg.validate();
      std::cerr << "sweep: " << cfg.expected_rows() << " rows -> " << cfg.output_dir << "\n";
      SweepOptions opts;
      opts.threads = flags.threads;
      opts.on_row = [](const ResultRow& r) {
        std::cerr << to_string(r.topology) << " N_a=" << r.anchors << " R=" << r.radius << " "
                  << to_string(r.kind) << " #" << r.repeat << ": "
                  << (r.ok() ? "MLEs " + std::to_string(r.mles) + "% in " + std::to_string(r.total_time) + "s"
                             : r.status)
                  << "\n";
      };
      const auto report = run_sweep(cfg, opts);
      std::cerr << "computed " << report.computed << ", skipped " << report.skipped << ", failed "
                << report.failed << "\n";
      return report.failed > 0 ? kExitPartial : kExitOk;
    }

    if (*summarize_cmd) {
      const fs::path out = output_dir_override(dir);
      const auto rows = read_results(out / "results.csv");
      if (rows.empty()) throw Error(Errc::MissingCells, "results.csv is empty");
      const auto summary = summarize(rows);
      std::ofstream csv(out / "summary.csv");
      write_summary_csv(csv, summary);
      std::ofstream txt(out / "summary.txt");
      write_summary_text(txt, summary);
      write_summary_text(std::cout, summary);
      if (!csv || !txt) throw Error(Errc::Io, "cannot write summaries in " + out.string());
      return kExitOk;
    }

    if (*plot_cmd) {
      const fs::path out = output_dir_override(dir);
      const auto sweep_cfg = load_manifest(out);
      const auto rows = read_results(out / "results.csv");
      plot.kind = parse_plot_kind(plot_kind);
      plot.topology = parse_topology(plot_topology);
      plot.hop_kind = parse_hop_loss_kind(plot_hop);
      for (const auto& p : emit_plot_data(rows, sweep_cfg, plot, out)) std::cout << p.string() << "\n";
      return kExitOk;
    }

    if (*verify_cmd) {
      bool all = true;
      for (const auto& r : run_all_checks(verify_seed)) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases): " << r.detail << "\n";
        all = all && r.passed;
      }
      return all ? kExitOk : kExitPartial;
    }

    if (*network_cmd) {
      write_network(std::cout, generate_topology(parse_topology(net_topology), net_nodes, net_anchors, net_radius,
                                                 net_seed));
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "dvhop: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
