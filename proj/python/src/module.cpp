#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dvhop/error.hpp"
#include "dvhop/localization.hpp"
#include "dvhop/metrics.hpp"
#include "dvhop/moga.hpp"
#include "dvhop/network.hpp"
#include "dvhop/objectives.hpp"
#include "dvhop/verify.hpp"

namespace py = pybind11;
using namespace dvhop;

namespace {

using Xy = std::pair<double, double>;

std::vector<Point> to_points(const std::vector<Xy>& xy) {
  std::vector<Point> out;
  out.reserve(xy.size());
  for (const auto& [x, y] : xy) out.push_back({x, y});
  return out;
}

std::vector<Xy> to_pairs(std::span<const Point> pts) {
  std::vector<Xy> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.emplace_back(p.x, p.y);
  return out;
}

py::array_t<std::int32_t> to_array(const HopMatrix& h) {
  const auto n = static_cast<py::ssize_t>(h.size());
  py::array_t<std::int32_t> out({n, n});
  auto view = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t j = 0; j < n; ++j) {
      const Hop v = h(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      view(i, j) = v == kUnreachable ? -1 : v;
    }
  return out;
}

std::vector<double> to_list(const Candidate& c) {
  const auto v = c.coords();
  return {v.begin(), v.end()};
}

py::dict front_member(const Individual& ind) {
  py::dict d;
  d["coords"] = to_list(ind.candidate);
  d["f1"] = ind.objectives.f1;
  d["f2"] = ind.objectives.f2;
  return d;
}

}  // namespace

PYBIND11_MODULE(_dvhop, m) {
  m.doc() = "DV-Hop localization with connectivity-consistent hop losses and NSGA-II";

  py::register_exception<Error>(m, "DvhopError", PyExc_ValueError);

  py::enum_<Topology>(m, "Topology")
      .value("RANDOM", Topology::Random)
      .value("C_SHAPED", Topology::CShaped)
      .value("O_SHAPED", Topology::OShaped)
      .value("X_SHAPED", Topology::XShaped)
      .def_static("parse", [](const std::string& s) { return parse_topology(s); })
      .def("__str__", [](Topology t) { return std::string(to_string(t)); });

  py::enum_<HopLossKind>(m, "HopLossKind")
      .value("BASE", HopLossKind::Base)
      .value("ACCC", HopLossKind::ACCC)
      .value("DCC", HopLossKind::DCC)
      .def_static("parse", [](const std::string& s) { return parse_hop_loss_kind(s); })
      .def("__str__", [](HopLossKind k) { return std::string(to_string(k)); });

  py::class_<Network>(m, "Network")
      .def(py::init([](const std::vector<Xy>& positions, std::size_t anchors, double radius, double region) {
             return Network(to_points(positions), anchors, radius, region);
           }),
           py::arg("positions"), py::arg("anchor_count"), py::arg("radius"), py::arg("region") = 100.0)
      .def_property_readonly("positions", [](const Network& n) { return to_pairs(n.positions()); })
      .def_property_readonly("node_count", &Network::node_count)
      .def_property_readonly("anchor_count", &Network::anchor_count)
      .def_property_readonly("unknown_count", &Network::unknown_count)
      .def_property_readonly("radius", &Network::radius)
      .def_property_readonly("region", &Network::region)
      .def_property_readonly("topology", &Network::topology)
      .def_property_readonly("seed", &Network::seed)
      .def("ground_truth", [](const Network& n) { return to_list(n.ground_truth()); })
      .def("to_text",
           [](const Network& n) {
             std::ostringstream os;
             write_network(os, n);
             return os.str();
           })
      .def_static("from_text",
                  [](const std::string& text) {
                    std::istringstream is(text);
                    return read_network(is);
                  })
      .def("__eq__", [](const Network& a, const Network& b) { return a == b; });

  m.def(
      "generate_topology",
      [](Topology topology, std::size_t nodes, std::size_t anchors, double radius, std::uint64_t seed,
         double region) { return generate_topology(topology, nodes, anchors, radius, seed, TopologyOptions{region}); },
      py::arg("topology"), py::arg("nodes"), py::arg("anchors"), py::arg("radius"), py::arg("seed"),
      py::arg("region") = 100.0);

  m.def(
      "hop_matrix", [](const Network& n) { return to_array(hop_matrix(build_adjacency(n))); }, py::arg("network"),
      "All-pairs minimum hop counts; -1 marks unreachable pairs.");
  m.def(
      "predicted_hops",
      [](const std::vector<double>& coords, const Network& n) { return to_array(predicted_hops(Candidate(coords), n)); },
      py::arg("coords"), py::arg("network"));

  m.def(
      "estimate_distances",
      [](const Network& n) {
        const auto est = estimate_distances(n, hop_matrix(build_adjacency(n)));
        std::vector<std::vector<std::optional<double>>> dist(est.anchor_count());
        for (std::size_t i = 0; i < est.anchor_count(); ++i)
          for (std::size_t k = 0; k < est.unknown_count(); ++k) dist[i].push_back(est.at(i, k));
        const auto avg = est.avg_dis();
        return py::make_tuple(std::vector<double>(avg.begin(), avg.end()), dist);
      },
      py::arg("network"), "Returns (avg_dis per anchor, anchor x unknown distances with None for missing).");

  m.def(
      "hop_loss",
      [](HopLossKind kind, const Network& n, const std::vector<double>& coords) {
        return hop_loss(kind, n, hop_matrix(build_adjacency(n)), Candidate(coords));
      },
      py::arg("kind"), py::arg("network"), py::arg("coords"));

  py::class_<Problem>(m, "Problem")
      .def(py::init<Network>(), py::arg("network"))
      .def_property_readonly("network", &Problem::network)
      .def_property_readonly("dimension", &Problem::dimension)
      .def("dv_hop_fix", [](const Problem& p) { return to_list(p.dv_hop_fix()); })
      .def(
          "evaluate",
          [](const Problem& p, HopLossKind kind, const std::vector<double>& coords) {
            const auto o = p.evaluate(kind, Candidate(coords));
            return py::make_tuple(o.f1, o.f2);
          },
          py::arg("kind"), py::arg("coords"))
      .def("distance_loss", [](const Problem& p, const std::vector<double>& c) { return p.distance_loss(Candidate(c)); })
      .def("hop_loss", [](const Problem& p, HopLossKind kind, const std::vector<double>& c) {
        return p.hop_loss(kind, Candidate(c));
      });

  py::class_<GaConfig>(m, "GaConfig")
      .def(py::init<>())
      .def_readwrite("population_size", &GaConfig::population_size)
      .def_readwrite("max_iterations", &GaConfig::max_iterations)
      .def_readwrite("crossover_prob", &GaConfig::crossover_prob)
      .def_readwrite("mutation_prob", &GaConfig::mutation_prob)
      .def_readwrite("eta_c", &GaConfig::eta_c)
      .def_readwrite("eta_m", &GaConfig::eta_m)
      .def_readwrite("lower", &GaConfig::lower)
      .def_readwrite("upper", &GaConfig::upper)
      .def_readwrite("seed", &GaConfig::seed);

  m.def(
      "evolve",
      [](const Problem& problem, HopLossKind kind, const GaConfig& config) {
        EvolveResult r;
        {
          py::gil_scoped_release release;
          r = evolve(problem, kind, config);
        }
        py::list front;
        for (const auto& ind : r.front) front.append(front_member(ind));
        py::list log;
        for (const auto& g : r.log)
          log.append(py::make_tuple(g.generation, g.best_f1, g.best_f2, g.front_size, g.elapsed_ms));
        py::dict out;
        out["front"] = front;
        out["selected"] = front_member(select_solution(r.front));
        out["log"] = log;
        out["generations"] = r.generations;
        out["total_seconds"] = r.total_seconds;
        out["hop_loss_seconds"] = r.hop_loss_seconds;
        out["cpu_seconds"] = r.cpu_seconds;
        return out;
      },
      py::arg("problem"), py::arg("kind"), py::arg("config"));

  m.def(
      "select_solution",
      [](const std::vector<Xy>& objectives) {
        std::vector<ObjectiveVector> v;
        for (const auto& [f1, f2] : objectives) v.push_back({f1, f2});
        return select_solution(v);
      },
      py::arg("objectives"), "Index of the front member with the smallest min-max normalized f1 + f2.");

  m.def(
      "mles", [](const Network& n, const std::vector<double>& coords) { return mles(n, Candidate(coords)); },
      py::arg("network"), py::arg("coords"));

  m.def(
      "confidence_interval",
      [](const std::vector<double>& samples, double level) {
        const auto ci = confidence_interval(samples, level);
        return py::make_tuple(ci.mean, ci.low, ci.high);
      },
      py::arg("samples"), py::arg("level") = 0.95);

  m.def(
      "run_checks",
      [](std::uint64_t seed) {
        py::list out;
        for (const auto& c : run_all_checks(seed)) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["cases"] = c.cases;
          d["detail"] = c.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 2024);
}
