#include "dvhop/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "dvhop/error.hpp"
#include "dvhop/rng.hpp"

namespace dvhop {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  T value{};
  if (!(is >> value) || !(is >> std::ws).eof())
    throw Error(Errc::ParseError, "bad value '" + text + "' for " + key);
  return value;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (topologies.empty() || anchor_counts.empty() || radii.empty() || kinds.empty())
    throw Error(Errc::InvalidConfig, "grid lists must be non-empty");
  if (repeats < 1) throw Error(Errc::InvalidConfig, "repeats must be >= 1");
  for (const auto na : anchor_counts)
    if (na < 1 || na >= total_nodes) throw Error(Errc::InvalidConfig, "anchor count must satisfy 1 <= N_a < N");
  for (const auto r : radii)
    if (!(r > 0.0)) throw Error(Errc::InvalidConfig, "radii must be positive");
  if (!(region > 0.0)) throw Error(Errc::InvalidConfig, "region must be positive");
  ga.validate();
}

void apply_config_text(ExperimentConfig& config, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));

    if (key == "topologies") {
      config.topologies.clear();
      for (const auto& t : split(value, ',')) config.topologies.push_back(parse_topology(t));
    } else if (key == "anchor_counts") {
      config.anchor_counts.clear();
      for (const auto& t : split(value, ',')) config.anchor_counts.push_back(parse_number<std::size_t>(t, key));
    } else if (key == "radii") {
      config.radii.clear();
      for (const auto& t : split(value, ',')) config.radii.push_back(parse_number<double>(t, key));
    } else if (key == "kinds") {
      config.kinds.clear();
      for (const auto& t : split(value, ',')) config.kinds.push_back(parse_hop_loss_kind(t));
    } else if (key == "repeats") {
      config.repeats = parse_number<std::size_t>(value, key);
    } else if (key == "total_nodes") {
      config.total_nodes = parse_number<std::size_t>(value, key);
    } else if (key == "region") {
      config.region = parse_number<double>(value, key);
      config.ga.upper = config.region;
    } else if (key == "base_seed") {
      config.base_seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "output_dir") {
      config.output_dir = value;
    } else if (key == "population_size") {
      config.ga.population_size = parse_number<std::size_t>(value, key);
    } else if (key == "max_iterations") {
      config.ga.max_iterations = parse_number<std::size_t>(value, key);
    } else if (key == "crossover_prob") {
      config.ga.crossover_prob = parse_number<double>(value, key);
    } else if (key == "mutation_prob") {
      config.ga.mutation_prob = parse_number<double>(value, key);
    } else if (key == "eta_c") {
      config.ga.eta_c = parse_number<double>(value, key);
    } else if (key == "eta_m") {
      config.ga.eta_m = parse_number<double>(value, key);
    } else {
      throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["topologies"] = json::array();
  for (const auto t : c.topologies) j["topologies"].push_back(std::string(to_string(t)));
  j["anchor_counts"] = c.anchor_counts;
  j["radii"] = c.radii;
  j["kinds"] = json::array();
  for (const auto k : c.kinds) j["kinds"].push_back(std::string(to_string(k)));
  j["repeats"] = c.repeats;
  j["total_nodes"] = c.total_nodes;
  j["region"] = c.region;
  j["base_seed"] = c.base_seed;
  j["output_dir"] = c.output_dir;
  j["ga"] = {{"population_size", c.ga.population_size}, {"max_iterations", c.ga.max_iterations},
             {"crossover_prob", c.ga.crossover_prob},   {"mutation_prob", c.ga.mutation_prob},
             {"eta_c", c.ga.eta_c},                     {"eta_m", c.ga.eta_m},
             {"lower", c.ga.lower},                     {"upper", c.ga.upper}};
  j["schema"] = "dvhop-sweep/1";
  return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ExperimentConfig c;
    c.topologies.clear();
    for (const auto& t : j.at("topologies")) c.topologies.push_back(parse_topology(t.get<std::string>()));
    c.anchor_counts = j.at("anchor_counts").get<std::vector<std::size_t>>();
    c.radii = j.at("radii").get<std::vector<double>>();
    c.kinds.clear();
    for (const auto& k : j.at("kinds")) c.kinds.push_back(parse_hop_loss_kind(k.get<std::string>()));
    c.repeats = j.at("repeats").get<std::size_t>();
    c.total_nodes = j.at("total_nodes").get<std::size_t>();
    c.region = j.at("region").get<double>();
    c.base_seed = j.at("base_seed").get<std::uint64_t>();
    c.output_dir = j.at("output_dir").get<std::string>();
    const auto& g = j.at("ga");
    c.ga.population_size = g.at("population_size").get<std::size_t>();
    c.ga.max_iterations = g.at("max_iterations").get<std::size_t>();
    c.ga.crossover_prob = g.at("crossover_prob").get<double>();
    c.ga.mutation_prob = g.at("mutation_prob").get<double>();
    c.ga.eta_c = g.at("eta_c").get<double>();
    c.ga.eta_m = g.at("eta_m").get<double>();
    c.ga.lower = g.at("lower").get<double>();
    c.ga.upper = g.at("upper").get<double>();
    return c;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("manifest: ") + e.what());
  }
}

std::uint64_t derive_seed(std::uint64_t base_seed, Topology topology, std::size_t anchors, double radius,
                          std::size_t repeat) noexcept {
  std::uint64_t h = splitmix64(base_seed);
  h = hash_combine(h, static_cast<std::uint64_t>(topology));
  h = hash_combine(h, anchors);
  h = hash_combine(h, std::bit_cast<std::uint64_t>(radius));
  h = hash_combine(h, repeat);
  return h;
}

std::string format_row(const ResultRow& r) {
  std::ostringstream os;
  os << to_string(r.topology) << ',' << r.anchors << ',' << fmt_double(r.radius) << ',' << to_string(r.kind)
     << ',' << r.repeat << ',' << r.seed << ',' << hex64(r.network_hash) << ',' << r.status << ','
     << fmt_double(r.mles) << ',' << fmt_double(r.f1) << ',' << fmt_double(r.f2) << ',' << r.generations << ','
     << fmt_double(r.total_time) << ',' << fmt_double(r.objective_time) << ',' << fmt_double(r.cpu_time);
  return os.str();
}

ResultRow parse_row(const std::string& line) {
  const auto f = split(line, ',');
  if (f.size() != 15) throw Error(Errc::ParseError, "results row has " + std::to_string(f.size()) + " fields");
  ResultRow r;
  r.topology = parse_topology(f[0]);
  r.anchors = parse_number<std::size_t>(f[1], "anchors");
  r.radius = parse_number<double>(f[2], "radius");
  r.kind = parse_hop_loss_kind(f[3]);
  r.repeat = parse_number<std::size_t>(f[4], "repeat");
  r.seed = parse_number<std::uint64_t>(f[5], "seed");
  r.network_hash = std::stoull(f[6], nullptr, 16);
  r.status = f[7];
  r.mles = parse_number<double>(f[8], "mles");
  r.f1 = parse_number<double>(f[9], "f1");
  r.f2 = parse_number<double>(f[10], "f2");
  r.generations = parse_number<std::size_t>(f[11], "generations");
  r.total_time = parse_number<double>(f[12], "total_time");
  r.objective_time = parse_number<double>(f[13], "objective_time");
  r.cpu_time = parse_number<double>(f[14], "cpu_time");
  return r;
}

std::vector<ResultRow> read_results(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  if (trim(line) != kResultsHeader) throw Error(Errc::ParseError, "unexpected results header");
  while (std::getline(in, line))
    if (!trim(line).empty()) rows.push_back(parse_row(line));
  return rows;
}

std::vector<ResultRow> read_results(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::Io, "cannot open " + file.string());
  return read_results(in);
}

std::uint64_t determinism_digest(std::span<const ResultRow> rows) {
  std::uint64_t h = 0;
  for (auto r : rows) {
    r.total_time = r.objective_time = r.cpu_time = 0.0;
    for (const unsigned char c : format_row(r)) h = hash_combine(h, c);
  }
  return h;
}

RunOutput run_single(const ExperimentConfig& config, const Problem& problem, std::size_t repeat,
                     HopLossKind kind) {
  const Network& net = problem.network();
  GaConfig ga = config.ga;
  ga.lower = 0.0;
  ga.upper = net.region();
  ga.seed = hash_combine(net.seed(), 0x6761u + repeat);

  EvolveResult evo = evolve(problem, kind, ga);
  Individual chosen = select_solution(evo.front);

  RunResult rr;
  rr.mles = mles(net, chosen.candidate);
  rr.per_node_errors = per_node_errors(net, chosen.candidate);
  rr.total_time = evo.total_seconds;
  rr.objective_time = evo.hop_loss_seconds;
  rr.cpu_time = evo.cpu_seconds;
  rr.generations_run = evo.generations;
  rr.kind = kind;
  rr.seed = net.seed();
  return {net, std::move(evo), std::move(chosen), std::move(rr)};
}

RunOutput run_single(const ExperimentConfig& config, Topology topology, std::size_t anchors, double radius,
                     std::size_t repeat, HopLossKind kind) {
  TopologyOptions opts;
  opts.region = config.region;
  const auto seed = derive_seed(config.base_seed, topology, anchors, radius, repeat);
  const Problem problem(generate_topology(topology, config.total_nodes, anchors, radius, seed, opts));
  return run_single(config, problem, repeat, kind);
}

namespace {

using RowKey = std::tuple<Topology, std::size_t, double, HopLossKind, std::size_t>;

RowKey key_of(const ResultRow& r) { return {r.topology, r.anchors, r.radius, r.kind, r.repeat}; }

struct Task {
  Topology topology;
  std::size_t anchors;
  double radius;
  std::size_t repeat;
};

std::vector<ResultRow> run_task(const ExperimentConfig& config, const Task& t, const std::set<RowKey>& done) {
  std::vector<HopLossKind> todo;
  for (const auto k : config.kinds)
    if (!done.contains({t.topology, t.anchors, t.radius, k, t.repeat})) todo.push_back(k);
  std::vector<ResultRow> rows;
  if (todo.empty()) return rows;

  const auto seed = derive_seed(config.base_seed, t.topology, t.anchors, t.radius, t.repeat);
  auto blank = [&](HopLossKind k) {
    ResultRow r;
    r.topology = t.topology;
    r.anchors = t.anchors;
    r.radius = t.radius;
    r.kind = k;
    r.repeat = t.repeat;
    r.seed = seed;
    return r;
  };

  std::optional<Problem> problem;
  std::string failure;
  try {
    TopologyOptions opts;
    opts.region = config.region;
    problem.emplace(generate_topology(t.topology, config.total_nodes, t.anchors, t.radius, seed, opts));
  } catch (const Error& e) {
    failure = e.what();
  }
  for (const auto k : todo) {
    ResultRow r = blank(k);
    if (!problem) {
      r.status = failure;
    } else {
      r.network_hash = network_hash(problem->network());
      try {
        const auto out = run_single(config, *problem, t.repeat, k);
        r.mles = out.result.mles;
        r.f1 = out.selected.objectives.f1;
        r.f2 = out.selected.objectives.f2;
        r.generations = out.result.generations_run;
        r.total_time = out.result.total_time;
        r.objective_time = out.result.objective_time;
        r.cpu_time = out.result.cpu_time;
      } catch (const Error& e) {
        r.status = e.what();
      }
    }
    // Commas would break the CSV.
    std::replace(r.status.begin(), r.status.end(), ',', ';');
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

SweepReport run_sweep(const ExperimentConfig& config, const SweepOptions& options) {
  config.validate();
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create " + dir.string() + ": " + ec.message());

  const fs::path manifest = dir / "manifest.json";
  const fs::path results = dir / "results.csv";
  ExperimentConfig comparable = config;
  comparable.output_dir.clear();
  const std::string manifest_text = config_to_json(comparable);
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    std::stringstream ss;
    ss << in.rdbuf();
    if (trim(ss.str()) != trim(manifest_text))
      throw Error(Errc::InvalidConfig, dir.string() + " holds a sweep with a different configuration");
  } else {
    std::ofstream out(manifest);
    out << manifest_text << '\n';
    if (!out) throw Error(Errc::Io, "cannot write " + manifest.string());
  }

  SweepReport report;
  std::set<RowKey> done;
  if (fs::exists(results)) {
    report.rows = read_results(results);
    for (const auto& r : report.rows) done.insert(key_of(r));
  }
  std::ofstream out(results, std::ios::app);
  if (!out) throw Error(Errc::Io, "cannot open " + results.string());
  if (report.rows.empty() && fs::file_size(results) == 0) out << kResultsHeader << '\n' << std::flush;

  std::vector<Task> tasks;
  for (const auto topo : config.topologies)
    for (const auto na : config.anchor_counts)
      for (const auto r : config.radii)
        for (std::size_t rep = 0; rep < config.repeats; ++rep) tasks.push_back({topo, na, r, rep});

  // Rows are written in task order regardless of which worker finishes first.
  std::mutex mu;
  std::vector<std::optional<std::vector<ResultRow>>> finished(tasks.size());
  std::size_t next_to_write = 0;
  std::atomic<std::size_t> next_task{0};
  bool io_failed = false;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next_task.fetch_add(1);
      if (i >= tasks.size()) return;
      auto rows = run_task(config, tasks[i], done);
      std::lock_guard lock(mu);
      finished[i] = std::move(rows);
      while (next_to_write < tasks.size() && finished[next_to_write]) {
        for (auto& row : *finished[next_to_write]) {
          out << format_row(row) << '\n';
          out.flush();
          if (!out) io_failed = true;
          ++report.computed;
          if (!row.ok()) ++report.failed;
          if (options.on_row) options.on_row(row);
          report.rows.push_back(std::move(row));
        }
        finished[next_to_write].reset();
        ++next_to_write;
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, tasks.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (io_failed) throw Error(Errc::Io, "failed writing " + results.string());
  report.skipped = done.size();
  for (const auto& r : report.rows)
    if (!r.ok() && done.contains(key_of(r))) ++report.failed;
  return report;
}

std::vector<SummaryRow> summarize(std::span<const ResultRow> rows) {
  using CellKey = std::tuple<Topology, std::size_t, double, HopLossKind>;
  std::map<CellKey, std::vector<const ResultRow*>> cells;
  for (const auto& r : rows)
    if (r.ok()) cells[{r.topology, r.anchors, r.radius, r.kind}].push_back(&r);

  std::vector<SummaryRow> out;
  for (const auto& [key, members] : cells) {
    SummaryRow s;
    std::tie(s.topology, s.anchors, s.radius, s.kind) = key;
    s.samples = members.size();
    std::vector<double> values;
    for (const auto* r : members) {
      values.push_back(r->mles);
      s.mean_total_time += r->total_time;
      s.mean_objective_time += r->objective_time;
    }
    s.mean_total_time /= static_cast<double>(s.samples);
    s.mean_objective_time /= static_cast<double>(s.samples);
    if (values.size() >= 2) {
      const auto ci = confidence_interval(values);
      s.mean_mles = ci.mean;
      s.ci_low = ci.low;
      s.ci_high = ci.high;
    } else {
      s.mean_mles = s.ci_low = s.ci_high = values.front();
    }
    out.push_back(s);
  }
  return out;
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> summary) {
  out << "topology,anchors,radius,kind,samples,mean_mles,ci_low,ci_high,mean_total_time,mean_objective_time\n";
  for (const auto& s : summary)
    out << to_string(s.topology) << ',' << s.anchors << ',' << fmt_double(s.radius) << ',' << to_string(s.kind)
        << ',' << s.samples << ',' << fmt_double(s.mean_mles) << ',' << fmt_double(s.ci_low) << ','
        << fmt_double(s.ci_high) << ',' << fmt_double(s.mean_total_time) << ','
        << fmt_double(s.mean_objective_time) << '\n';
}

void write_summary_text(std::ostream& out, std::span<const SummaryRow> summary) {
  std::map<std::pair<Topology, std::size_t>, std::vector<const SummaryRow*>> blocks;
  for (const auto& s : summary) blocks[{s.topology, s.anchors}].push_back(&s);
  char buf[128];
  for (const auto& [key, members] : blocks) {
    std::set<double> radii;
    std::set<HopLossKind> kinds;
    for (const auto* s : members) {
      radii.insert(s->radius);
      kinds.insert(s->kind);
    }
    out << "MLEs (%)  topology=" << to_string(key.first) << "  N_a=" << key.second << '\n';
    std::snprintf(buf, sizeof buf, "%-8s", "kind");
    out << buf;
    for (const double r : radii) {
      std::snprintf(buf, sizeof buf, " %18s", ("R=" + fmt_double(r)).c_str());
      out << buf;
    }
    out << '\n';
    for (const auto k : kinds) {
      std::snprintf(buf, sizeof buf, "%-8s", std::string(to_string(k)).c_str());
      out << buf;
      for (const double r : radii) {
        const auto it = std::find_if(members.begin(), members.end(),
                                     [&](const SummaryRow* s) { return s->kind == k && s->radius == r; });
        if (it == members.end()) {
          std::snprintf(buf, sizeof buf, " %18s", "-");
        } else {
          std::snprintf(buf, sizeof buf, " %8.2f +/- %6.2f", (*it)->mean_mles,
                        ((*it)->ci_high - (*it)->ci_low) / 2.0);
        }
        out << buf;
      }
      out << '\n';
    }
    out << '\n';
  }
}

PlotKind parse_plot_kind(std::string_view name) {
  if (name == "ci_bars" || name == "ci-bars") return PlotKind::CiBars;
  if (name == "timing_curves" || name == "timing-curves") return PlotKind::TimingCurves;
  if (name == "error_vectors" || name == "error-vectors") return PlotKind::ErrorVectors;
  throw Error(Errc::ParseError, "unknown plot kind '" + std::string(name) + "'");
}

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
}

// Mean and CI of the total time per (topology, kind) along one varying axis.
std::string timing_series(std::span<const ResultRow> rows, bool vary_radius, std::size_t fixed_anchors,
                          double fixed_radius) {
  using Key = std::tuple<Topology, HopLossKind, double>;
  std::map<Key, std::vector<double>> series;
  for (const auto& r : rows) {
    if (!r.ok()) continue;
    if (vary_radius && r.anchors != fixed_anchors) continue;
    if (!vary_radius && r.radius != fixed_radius) continue;
    const double x = vary_radius ? r.radius : static_cast<double>(r.anchors);
    series[{r.topology, r.kind, x}].push_back(r.total_time);
  }
  if (series.empty()) return {};
  std::ostringstream os;
  os << "topology,kind,x,y,y_low,y_high\n";
  for (const auto& [key, values] : series) {
    const auto& [topo, kind, x] = key;
    double mean = 0.0, lo = 0.0, hi = 0.0;
    if (values.size() >= 2) {
      const auto ci = confidence_interval(values);
      mean = ci.mean;
      lo = ci.low;
      hi = ci.high;
    } else {
      mean = lo = hi = values.front();
    }
    os << to_string(topo) << ',' << to_string(kind) << ',' << fmt_double(x) << ',' << fmt_double(mean) << ','
       << fmt_double(lo) << ',' << fmt_double(hi) << '\n';
  }
  return os.str();
}

}  // namespace

std::vector<fs::path> emit_plot_data(std::span<const ResultRow> rows, const ExperimentConfig& config,
                                     const PlotRequest& request, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create " + dir.string());
  std::vector<fs::path> written;

  switch (request.kind) {
    case PlotKind::CiBars: {
      const auto summary = summarize(rows);
      if (summary.empty()) throw Error(Errc::MissingCells, "no successful rows to plot");
      std::ostringstream os;
      os << "topology,anchors,radius,kind,y,y_low,y_high\n";
      for (const auto& s : summary)
        os << to_string(s.topology) << ',' << s.anchors << ',' << fmt_double(s.radius) << ',' << to_string(s.kind)
           << ',' << fmt_double(s.mean_mles) << ',' << fmt_double(s.ci_low) << ',' << fmt_double(s.ci_high)
           << '\n';
      written.push_back(dir / "plot_ci_bars.csv");
      write_file(written.back(), os.str());
      break;
    }
    case PlotKind::TimingCurves: {
      const auto by_radius = timing_series(rows, true, request.fixed_anchors, request.fixed_radius);
      const auto by_anchors = timing_series(rows, false, request.fixed_anchors, request.fixed_radius);
      if (by_radius.empty() && by_anchors.empty())
        throw Error(Errc::MissingCells, "no rows with N_a=" + std::to_string(request.fixed_anchors) +
                                            " or R=" + fmt_double(request.fixed_radius));
      if (!by_radius.empty()) {
        written.push_back(dir / "plot_timing_vs_radius.csv");
        write_file(written.back(), by_radius);
      }
      if (!by_anchors.empty()) {
        written.push_back(dir / "plot_timing_vs_anchors.csv");
        write_file(written.back(), by_anchors);
      }
      break;
    }
    case PlotKind::ErrorVectors: {
      const auto it = std::find_if(rows.begin(), rows.end(), [&](const ResultRow& r) {
        return r.ok() && r.topology == request.topology && r.anchors == request.anchors &&
               r.radius == request.radius && r.repeat == request.repeat && r.kind == request.hop_kind;
      });
      if (it == rows.end()) throw Error(Errc::MissingCells, "requested run is not in the record");
      const auto out = run_single(config, request.topology, request.anchors, request.radius, request.repeat,
                                  request.hop_kind);
      const auto& net = out.network;
      std::ostringstream os;
      os << "node,x_real,y_real,x_pred,y_pred\n";
      for (std::size_t k = 0; k < net.unknown_count(); ++k) {
        const auto& p = net.position(net.anchor_count() + k);
        os << net.anchor_count() + k << ',' << fmt_double(p.x) << ',' << fmt_double(p.y) << ','
           << fmt_double(out.selected.candidate.x(k)) << ',' << fmt_double(out.selected.candidate.y(k)) << '\n';
      }
      written.push_back(dir / ("plot_error_vectors_" + std::string(to_string(request.topology)) + "_na" +
                               std::to_string(request.anchors) + "_r" + fmt_double(request.radius) + "_rep" +
                               std::to_string(request.repeat) + "_" + std::string(to_string(request.hop_kind)) +
                               ".csv"));
      write_file(written.back(), os.str());
      break;
    }
  }
  return written;
}

}  // namespace dvhop
