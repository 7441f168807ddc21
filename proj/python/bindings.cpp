#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rgcap/bounds.hpp"
#include "rgcap/experiments.hpp"
#include "rgcap/generators.hpp"
#include "rgcap/mincut.hpp"
#include "rgcap/serialize.hpp"

namespace py = pybind11;
using namespace rgcap;

namespace {

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<std::tuple<NodeId, NodeId, double>> edge_tuples(const Graph& g) {
  std::vector<std::tuple<NodeId, NodeId, double>> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v, e.capacity);
  return out;
}

Graph make_graph(std::size_t n, const std::vector<std::tuple<NodeId, NodeId, double>>& edges) {
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const auto& [u, v, c] : edges) list.push_back({u, v, c});
  return Graph(n, std::move(list));
}

TerminalPolicy policy_from(const py::object& terminals) {
  if (py::isinstance<py::str>(terminals)) {
    const auto name = terminals.cast<std::string>();
    if (name == "antipodal") return AntipodalTerminals{};
    if (name == "random") return RandomTerminals{};
    throw std::invalid_argument("terminals must be 'antipodal', 'random' or a list of nodes");
  }
  return ExplicitTerminals{terminals.cast<std::vector<NodeId>>()};
}

}  // namespace

PYBIND11_MODULE(_rgcap, m) {
  m.doc() = "Capacity bounds and Monte Carlo checks for random network models";
  m.attr("__version__") = kVersion;

  py::register_exception<ResourceLimitError>(m, "ResourceLimitError");
  py::register_exception<BudgetExceededError>(m, "BudgetExceededError");

  py::enum_<Metric>(m, "Metric").value("TORUS", Metric::Torus).value("SQUARE", Metric::Square);
  py::enum_<CapacityMode>(m, "CapacityMode")
      .value("PAPER", CapacityMode::Paper)
      .value("GRAPH", CapacityMode::GraphTheoretic);

  py::class_<SwsParams>(m, "SwsParams")
      .def(py::init([](std::size_t n, std::size_t k, double p) {
             SwsParams params{n, k, p};
             validate(params);
             return params;
           }),
           py::arg("n"), py::arg("k"), py::arg("p"))
      .def_readonly("n", &SwsParams::n)
      .def_readonly("k", &SwsParams::k)
      .def_readonly("p", &SwsParams::p)
      .def("__repr__", [](const SwsParams& s) { return "SwsParams(" + describe(s) + ")"; });

  py::class_<SwrParams>(m, "SwrParams")
      .def(py::init([](std::size_t n, std::size_t k, double p) {
             SwrParams params{n, k, p};
             validate(params);
             return params;
           }),
           py::arg("n"), py::arg("k"), py::arg("p"))
      .def_readonly("n", &SwrParams::n)
      .def_readonly("k", &SwrParams::k)
      .def_readonly("p", &SwrParams::p)
      .def("__repr__", [](const SwrParams& s) { return "SwrParams(" + describe(s) + ")"; });

  py::class_<DrnParams>(m, "DrnParams")
      .def(py::init([](std::size_t n, double p, double rs, double rl, Metric metric) {
             DrnParams params{n, p, rs, rl, metric};
             validate(params);
             return params;
           }),
           py::arg("n"), py::arg("p"), py::arg("rs"), py::arg("rl"),
           py::arg("metric") = Metric::Torus)
      .def_readonly("n", &DrnParams::n)
      .def_readonly("p", &DrnParams::p)
      .def_readonly("rs", &DrnParams::r_short)
      .def_readonly("rl", &DrnParams::r_long)
      .def_readonly("metric", &DrnParams::metric)
      .def("__repr__", [](const DrnParams& s) { return "DrnParams(" + describe(s) + ")"; });

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"),
           "Graph on nodes 0..n-1 from (u, v, capacity) tuples.")
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("edges", &edge_tuples)
      .def("has_edge", &Graph::has_edge)
      .def("capacity", &Graph::capacity)
      .def("to_edge_list", [](const Graph& g) { return to_edge_list(g); })
      .def_static("from_edge_list",
                  [](const std::string& text) {
                    std::istringstream in(text);
                    return read_edge_list(in);
                  })
      .def(py::self == py::self);

  py::class_<RoleAssignment>(m, "RoleAssignment")
      .def(py::init<std::size_t, NodeId, std::vector<NodeId>>(), py::arg("n"), py::arg("source"),
           py::arg("terminals"))
      .def_property_readonly("source", &RoleAssignment::source)
      .def_property_readonly("terminals", [](const RoleAssignment& r) {
        return std::vector<NodeId>(r.terminals().begin(), r.terminals().end());
      })
      .def_property_readonly("relays", [](const RoleAssignment& r) {
        return std::vector<NodeId>(r.relays().begin(), r.relays().end());
      });

  py::class_<CapacityResult>(m, "CapacityResult")
      .def_readonly("value", &CapacityResult::value)
      .def_readonly("terminal", &CapacityResult::terminal)
      .def_readonly("mode", &CapacityResult::mode)
      .def_property_readonly("witness",
                             [](const CapacityResult& r) { return r.witness.members; });

  py::class_<WeightedGraph>(m, "WeightedGraph")
      .def_property_readonly("node_count", &WeightedGraph::node_count)
      .def("weight", &WeightedGraph::weight);

  m.def("sample_graph", &sample_graph, py::arg("model"), py::arg("seed"));
  m.def(
      "sample_drn",
      [](const DrnParams& params, std::uint64_t seed) {
        DrnSample s = sample_drn(params, seed);
        std::vector<std::pair<double, double>> positions;
        for (const Point& pt : s.positions) positions.emplace_back(pt.x, pt.y);
        std::vector<bool> long_range(s.long_range.begin(), s.long_range.end());
        return py::make_tuple(std::move(s.graph), positions, long_range);
      },
      py::arg("model"), py::arg("seed"),
      "Returns (graph, positions, long_range) for a dual radio network.");
  m.def("ring_lattice", &ring_lattice, py::arg("n"), py::arg("k"));
  m.def("expected_graph", &expected_graph, py::arg("model"));

  m.def("cut_capacity",
        [](const Graph& g, const RoleAssignment& roles, NodeId t, std::vector<NodeId> cut,
           CapacityMode mode) { return cut_capacity(g, roles, t, {std::move(cut)}, mode); },
        py::arg("graph"), py::arg("roles"), py::arg("t"), py::arg("cut"),
        py::arg("mode") = CapacityMode::Paper);
  m.def("st_capacity", &st_capacity, py::arg("graph"), py::arg("roles"), py::arg("t"),
        py::arg("mode") = CapacityMode::Paper);
  m.def("sT_capacity", &sT_capacity, py::arg("graph"), py::arg("roles"),
        py::arg("mode") = CapacityMode::Paper);
  m.def("brute_force_capacity", &brute_force_capacity, py::arg("graph"), py::arg("roles"),
        py::arg("t"), py::arg("limit") = kDefaultEnumerationLimit);
  m.def("global_min_cut", &global_min_cut, py::arg("weighted_graph"));

  m.def("lambda_of", &lambda_of, py::arg("weighted_graph"));
  m.def("epsilon_of", &epsilon_of, py::arg("d"), py::arg("lam"), py::arg("n"));
  m.def(
      "d_range",
      [](double lambda, std::size_t n) {
        const DRange r = d_range(lambda, n);
        return py::make_tuple(r.lower, r.upper);
      },
      py::arg("lam"), py::arg("n"), "Open interval (1, upper); empty when upper <= 1.");
  m.def("hoeffding_cut_bound", &hoeffding_cut_bound, py::arg("relay_count"), py::arg("x"),
        py::arg("epsilon"), py::arg("lam"));
  m.def("union_bound", &union_bound, py::arg("relay_count"), py::arg("epsilon"), py::arg("lam"));
  m.def("cmin_sws", &cmin_sws, py::arg("n"), py::arg("k"), py::arg("p"));
  m.def("cmin_swr", &cmin_swr, py::arg("k"));
  m.def("mu_drn", &mu_drn, py::arg("p"), py::arg("rs"), py::arg("rl"));
  m.def("cmin_drn", &cmin_drn, py::arg("n"), py::arg("mu"));
  m.def(
      "theorem_report",
      [](const ModelParams& model, std::size_t alpha, std::optional<double> d) {
        return to_python(to_json(theorem_report(model, alpha, d)));
      },
      py::arg("model"), py::arg("alpha") = 1, py::arg("d") = py::none(),
      "Bound report as a dict.");
  m.def(
      "swr_epsilon_regime",
      [](std::size_t n, std::size_t k, double p, const std::string& growth) {
        const RegimeClassification c = swr_epsilon_regime(n, k, p, parse_k_growth(growth));
        return py::make_tuple(to_string(c.regime), c.condition);
      },
      py::arg("n"), py::arg("k"), py::arg("p"), py::arg("growth") = "constant");

  m.def(
      "run_concentration",
      [](const ModelParams& model, std::size_t trials, std::uint64_t seed, std::size_t alpha,
         std::optional<double> d, CapacityMode mode, std::optional<py::object> terminals,
         std::size_t workers, std::uint64_t budget) {
        ExperimentConfig cfg;
        cfg.model = model;
        cfg.trials = trials;
        cfg.master_seed = seed;
        cfg.alpha = alpha;
        cfg.d = d;
        cfg.mode = mode;
        if (terminals && !terminals->is_none()) cfg.terminal_policy = policy_from(*terminals);
        cfg.workers = workers;
        cfg.work_budget = budget;
        ExperimentResult result;
        {
          py::gil_scoped_release release;
          result = run_concentration(cfg);
        }
        return to_python(to_json(result));
      },
      py::arg("model"), py::arg("trials"), py::arg("seed"), py::arg("alpha") = 1,
      py::arg("d") = py::none(), py::arg("mode") = CapacityMode::Paper,
      py::arg("terminals") = py::none(), py::arg("workers") = 1,
      py::arg("budget") = kDefaultWorkBudget, "Concentration experiment; returns a dict.");
  m.def(
      "run_independence_test",
      [](const DrnParams& model, std::size_t trials, std::uint64_t seed,
         std::optional<std::size_t> cut_size, std::size_t max_pairs, double significance,
         std::size_t workers) {
        IndependenceConfig cfg{model, trials, seed, cut_size, max_pairs, significance, workers};
        IndependenceTestResult result;
        {
          py::gil_scoped_release release;
          result = run_independence_test(cfg);
        }
        return to_python(to_json(result));
      },
      py::arg("model"), py::arg("trials") = 10'000, py::arg("seed") = 0,
      py::arg("cut_size") = py::none(), py::arg("max_pairs") = 2000,
      py::arg("significance") = 0.01, py::arg("workers") = 1);
}
