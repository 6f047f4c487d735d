#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "indtree/combinatorics.hpp"
#include "indtree/experiment.hpp"
#include "indtree/graph.hpp"
#include "indtree/special.hpp"
#include "indtree/threshold.hpp"
#include "indtree/tree_search.hpp"

namespace py = pybind11;
using namespace indtree;

namespace {

py::int_ to_py_int(const BigInt& v) {
  return py::cast<py::int_>(py::module_::import("builtins").attr("int")(v.str()));
}

VertexSet set_from_list(const Graph& g, const std::vector<int>& members) {
  VertexSet s(g.vertex_count());
  for (int v : members) {
    if (v < 0 || v >= g.vertex_count()) throw std::domain_error("vertex out of range");
    s.set(v);
  }
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "induced trees of G(n,p): exact counters, thresholds and solvers";

  py::register_exception<BudgetExceeded>(m, "BudgetExceededError");

  py::class_<LogReal>(m, "LogReal")
      .def_static("zero", &LogReal::zero)
      .def_static("one", &LogReal::one)
      .def_static("from_value", &LogReal::from_value, py::arg("value"))
      .def_static("from_log", &LogReal::from_log, py::arg("log_abs"), py::arg("sign") = 1)
      .def_property_readonly("sign", &LogReal::sign)
      .def_property_readonly("log_abs", &LogReal::log_abs)
      .def_property_readonly("cancelled", &LogReal::cancelled)
      .def("value", &LogReal::value)
      .def("pow", &LogReal::pow, py::arg("exponent"))
      .def("__mul__", &LogReal::operator*)
      .def("__truediv__", &LogReal::operator/)
      .def("__add__", &LogReal::operator+)
      .def("__sub__", &LogReal::operator-)
      .def("__neg__", &LogReal::negated)
      .def("__eq__", &LogReal::operator==)
      .def("__lt__", &LogReal::operator<)
      .def("__repr__", [](const LogReal& x) {
        std::ostringstream out;
        out << "LogReal(sign=" << x.sign() << ", log_abs=" << x.log_abs() << ")";
        return out.str();
      });

  m.def("log_gamma", &log_gamma, py::arg("x"));
  m.def("log_factorial", &log_factorial, py::arg("n"));
  m.def("log_binomial", &log_binomial, py::arg("n"), py::arg("k"));

  m.def("count_labeled_trees", [](int k) { return to_py_int(count_labeled_trees(k)); },
        py::arg("k"));
  m.def(
      "count_covering_trees",
      [](int k, const std::vector<int>& parts) {
        return to_py_int(count_covering_trees(ForestProfile{k, parts}));
      },
      py::arg("k"), py::arg("parts"));
  m.def(
      "brute_force_covering_trees",
      [](int k, const std::vector<int>& parts, const std::vector<std::pair<int, int>>& edges) {
        return to_py_int(brute_force_covering_trees(ForestProfile{k, parts}, edges));
      },
      py::arg("k"), py::arg("parts"), py::arg("forest_edges"));
  m.def("enumerate_trees", [](int k) {
    std::vector<std::vector<std::pair<int, int>>> out;
    for_each_labeled_tree(k, [&](const LabeledTree& t) { out.push_back(t.edges); });
    return out;
  }, py::arg("k"));
  m.def("composition_weight_sum", &composition_weight_sum, py::arg("ell"), py::arg("m"));
  m.def("composition_weight_bound", &composition_weight_bound, py::arg("ell"), py::arg("m"));
  m.def(
      "count_overlapping_tree_pairs",
      [](int k, int ell, int m) { return to_py_int(count_overlapping_tree_pairs(k, ell, m)); },
      py::arg("k"), py::arg("ell"), py::arg("m"));
  m.def("pair_edge_log_probability", &pair_edge_log_probability, py::arg("k"), py::arg("ell"),
        py::arg("m"), py::arg("p"));
  m.def("pair_expectation_ratio", &pair_expectation_ratio, py::arg("n"), py::arg("k"),
        py::arg("ell"), py::arg("m"), py::arg("p"));
  m.def(
      "fortified_damping_factor",
      [](int k, int ell, int m, double p) {
        const DampingFactor f = fortified_damping_factor(k, ell, m, p);
        return py::make_tuple(f.value, f.applicable);
      },
      py::arg("k"), py::arg("ell"), py::arg("m"), py::arg("p"));

  py::class_<Graph>(m, "Graph")
      .def(py::init<int>(), py::arg("n"))
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def("add_edge", &Graph::add_edge, py::arg("u"), py::arg("v"))
      .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
      .def("degree", &Graph::degree, py::arg("v"))
      .def("edge_count", &Graph::edge_count)
      .def("edges", &Graph::edges)
      .def("to_text",
           [](const Graph& g) {
             std::ostringstream out;
             write_graph_text(out, g);
             return out.str();
           })
      .def_static("from_text", [](const std::string& text) {
        std::istringstream in(text);
        return read_graph_text(in);
      });

  m.def("sample_gnp", &sample_gnp, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def(
      "is_induced_tree",
      [](const Graph& g, const std::vector<int>& members) {
        return is_induced_tree(g, set_from_list(g, members));
      },
      py::arg("graph"), py::arg("vertices"));

  py::class_<SolveResult>(m, "SolveResult")
      .def_property_readonly("size", [](const SolveResult& r) { return r.size; })
      .def_property_readonly("witness", [](const SolveResult& r) { return r.witness.members(); })
      .def_property_readonly("nodes_explored",
                             [](const SolveResult& r) { return r.nodes_explored; })
      .def_property_readonly("budget_exhausted",
                             [](const SolveResult& r) { return r.budget_exhausted; });

  m.def("max_induced_tree", &max_induced_tree, py::arg("graph"),
        py::arg("node_budget") = kDefaultNodeBudget);
  m.def("brute_force_max_induced_tree", &brute_force_max_induced_tree, py::arg("graph"));
  m.def(
      "count_induced_trees",
      [](const Graph& g, int k, std::uint64_t budget) {
        return to_py_int(count_induced_trees(g, k, budget));
      },
      py::arg("graph"), py::arg("k"), py::arg("node_budget") = kDefaultNodeBudget);
  m.def(
      "count_fortified_trees",
      [](const Graph& g, int k, std::uint64_t budget) {
        return to_py_int(count_fortified_trees(g, k, budget));
      },
      py::arg("graph"), py::arg("k"), py::arg("node_budget") = kDefaultNodeBudget);
  m.def(
      "count_maximal_trees",
      [](const Graph& g, int k, std::uint64_t budget) {
        return to_py_int(count_maximal_trees(g, k, budget));
      },
      py::arg("graph"), py::arg("k"), py::arg("node_budget") = kDefaultNodeBudget);

  m.def("log_expected_tree_count", &log_expected_tree_count, py::arg("n"), py::arg("k"),
        py::arg("p"));
  m.def("expectation_ratio", &expectation_ratio, py::arg("n"), py::arg("k"), py::arg("p"));
  m.def(
      "fortified_ratio",
      [](long long n, long long k, double p) {
        const FlaggedRatio r = fortified_ratio(n, k, p);
        return py::make_tuple(r.value, r.clamped);
      },
      py::arg("n"), py::arg("k"), py::arg("p"));
  m.def(
      "maximal_ratio",
      [](long long n, long long k, double p) {
        const FlaggedRatio r = maximal_ratio(n, k, p);
        return py::make_tuple(r.value, r.clamped);
      },
      py::arg("n"), py::arg("k"), py::arg("p"));
  m.def("markov_tail", &markov_tail, py::arg("n"), py::arg("p"), py::arg("k"));

  py::class_<ThresholdReport>(m, "ThresholdReport")
      .def_readonly("n", &ThresholdReport::n)
      .def_readonly("p", &ThresholdReport::p)
      .def_readonly("k0", &ThresholdReport::k0)
      .def_readonly("k_unit", &ThresholdReport::k_unit)
      .def_readonly("k_unit_adjacent", &ThresholdReport::k_unit_adjacent)
      .def_readonly("ln_ln_np", &ThresholdReport::ln_ln_np)
      .def_readonly("approx_k", &ThresholdReport::approx_k)
      .def_readonly("drift_cut", &ThresholdReport::drift_cut)
      .def_readonly("log_ex", &ThresholdReport::log_ex);

  m.def("compute_threshold", &compute_threshold, py::arg("n"), py::arg("p"));

  py::class_<DriftTail>(m, "DriftTail")
      .def_readonly("value", &DriftTail::value)
      .def_readonly("window_collapsed", &DriftTail::window_collapsed)
      .def_readonly("k_low", &DriftTail::k_low)
      .def_readonly("k_high", &DriftTail::k_high);

  m.def("drift_tail", &drift_tail, py::arg("n"), py::arg("p"));
}
