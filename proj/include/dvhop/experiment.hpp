#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dvhop/metrics.hpp"
#include "dvhop/moga.hpp"
#include "dvhop/network.hpp"
#include "dvhop/objectives.hpp"

namespace dvhop {

struct ExperimentConfig {
  std::vector<Topology> topologies{Topology::Random};
  std::vector<std::size_t> anchor_counts{5, 10, 15, 20, 25, 30};
  std::vector<double> radii{25, 30, 35, 40};
  std::size_t repeats = 50;
  std::size_t total_nodes = 100;
  double region = 100.0;
  GaConfig ga{};
  std::vector<HopLossKind> kinds{HopLossKind::Base, HopLossKind::DCC};
  std::uint64_t base_seed = 1;
  std::string output_dir = "results";

  /// Throws InvalidConfig.
  void validate() const;
  /// Number of rows a complete sweep produces.
  std::size_t expected_rows() const noexcept {
    return topologies.size() * anchor_counts.size() * radii.size() * kinds.size() * repeats;
  }
};

/// Applies `key = value` lines ('#' starts a comment, lists are
/// comma-separated) on top of `config`. Throws ParseError on unknown keys or
/// malformed values.
void apply_config_text(ExperimentConfig& config, std::istream& in);

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

/// Network seed of one grid cell and repeat. The hop-loss kind is not an
/// input, so every kind sees the same layout.
std::uint64_t derive_seed(std::uint64_t base_seed, Topology topology, std::size_t anchors, double radius,
                          std::size_t repeat) noexcept;

struct ResultRow {
  Topology topology = Topology::Random;
  std::size_t anchors = 0;
  double radius = 0.0;
  HopLossKind kind = HopLossKind::DCC;
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  std::uint64_t network_hash = 0;
  /// "ok" or the error that aborted the run.
  std::string status = "ok";
  double mles = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  std::size_t generations = 0;
  double total_time = 0.0;
  double objective_time = 0.0;
  double cpu_time = 0.0;

  bool ok() const noexcept { return status == "ok"; }
};

inline constexpr const char* kResultsHeader =
    "topology,anchors,radius,kind,repeat,seed,network_hash,status,mles,f1,f2,generations,"
    "total_time,objective_time,cpu_time";

std::string format_row(const ResultRow& row);
ResultRow parse_row(const std::string& line);
std::vector<ResultRow> read_results(std::istream& in);
std::vector<ResultRow> read_results(const std::filesystem::path& file);

/// Digest over every column except the timings.
std::uint64_t determinism_digest(std::span<const ResultRow> rows);

/// Everything produced by one (cell, repeat, kind) run.
struct RunOutput {
  Network network;
  EvolveResult evolution;
  Individual selected;
  RunResult result;
};

RunOutput run_single(const ExperimentConfig& config, Topology topology, std::size_t anchors, double radius,
                     std::size_t repeat, HopLossKind kind);
/// Same, on a network that was already generated for this cell and repeat.
RunOutput run_single(const ExperimentConfig& config, const Problem& problem, std::size_t repeat,
                     HopLossKind kind);

struct SweepOptions {
  std::size_t threads = 1;
  /// Called from the writer for every newly persisted row.
  std::function<void(const ResultRow&)> on_row;
};

struct SweepReport {
  std::vector<ResultRow> rows;  // full record, in grid order
  std::size_t computed = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
};

/// Runs the whole grid, appending to <output_dir>/results.csv and writing
/// <output_dir>/manifest.json. Rows already on disk are skipped, so an
/// interrupted sweep resumes and a finished one is left untouched. Throws Io
/// when the output cannot be written and InvalidConfig when the directory
/// holds a sweep with a different configuration.
SweepReport run_sweep(const ExperimentConfig& config, const SweepOptions& options = {});

struct SummaryRow {
  Topology topology = Topology::Random;
  std::size_t anchors = 0;
  double radius = 0.0;
  HopLossKind kind = HopLossKind::DCC;
  std::size_t samples = 0;
  double mean_mles = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_total_time = 0.0;
  double mean_objective_time = 0.0;
};

/// Per (topology, N_a, R, kind) statistics over the successful rows. A
/// single-sample cell reports a zero-width interval.
std::vector<SummaryRow> summarize(std::span<const ResultRow> rows);
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> summary);
/// One block per topology and N_a: rows are hop-loss kinds, columns are radii.
void write_summary_text(std::ostream& out, std::span<const SummaryRow> summary);

enum class PlotKind { CiBars, TimingCurves, ErrorVectors };
PlotKind parse_plot_kind(std::string_view name);

struct PlotRequest {
  PlotKind kind = PlotKind::CiBars;
  /// TimingCurves: N_a held fixed for the radius sweep and R held fixed for
  /// the anchor sweep.
  std::size_t fixed_anchors = 20;
  double fixed_radius = 25.0;
  /// ErrorVectors: the run to re-create.
  Topology topology = Topology::Random;
  std::size_t anchors = 20;
  double radius = 25.0;
  std::size_t repeat = 0;
  HopLossKind hop_kind = HopLossKind::DCC;
};

/// Writes plot-ready CSV files into `dir` and returns their paths. Error
/// vectors are recomputed from `config` (runs are deterministic). Throws
/// MissingCells when the record lacks the requested cells.
std::vector<std::filesystem::path> emit_plot_data(std::span<const ResultRow> rows, const ExperimentConfig& config,
                                                  const PlotRequest& request, const std::filesystem::path& dir);

}  // namespace dvhop
