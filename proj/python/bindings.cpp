#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nbc/centred.hpp"
#include "nbc/complexity.hpp"
#include "nbc/expansion.hpp"
#include "nbc/suites.hpp"
#include "nbc/wcol.hpp"

namespace py = pybind11;
using namespace nbc;

namespace {

// Rationals cross the boundary as (numerator, denominator); the Python side
// turns them into fractions.Fraction.
py::tuple frac(const Rational& q) { return py::make_tuple(q.numerator(), q.denominator()); }

std::vector<Vertex> members(const VertexSet& s) { return s.members(); }

std::vector<std::vector<Vertex>> set_list(const std::vector<VertexSet>& sets) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& s : sets) out.push_back(s.members());
  return out;
}

Graph make_graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<Edge> es(edges.begin(), edges.end());
  return Graph(n, es);
}

GraphFormat format_of(const std::string& name) {
  if (name == "edge-list") return GraphFormat::edge_list;
  if (name == "dimacs") return GraphFormat::dimacs;
  throw py::value_error("unknown format " + name);
}

py::dict certificate(const EmbeddingCertificate& c) {
  py::dict d;
  d["pattern_order"] = c.pattern.order();
  d["pattern_edges"] = c.pattern.edges();
  d["phi_v"] = c.phi_v;
  d["phi_e"] = c.phi_e;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Neighbourhood complexity, generalised colouring numbers and shallow grads of small graphs";

  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<GuardExceeded>(m, "GuardExceeded", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges") = std::vector<std::pair<Vertex, Vertex>>{})
      .def_property_readonly("n", &Graph::order)
      .def_property_readonly("m", [](const Graph& g) { return g.size(); })
      .def("edges", [](const Graph& g) { return g.edges(); })
      .def("neighbours", [](const Graph& g, Vertex v) {
        auto ns = g.neighbours(v);
        return std::vector<Vertex>(ns.begin(), ns.end());
      })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.order()) + ", m=" + std::to_string(g.size()) + ")";
      });

  m.def("parse_graph", [](const std::string& text, const std::string& format) {
    return parse_graph(text, format_of(format));
  }, py::arg("text"), py::arg("format") = "edge-list");
  m.def("write_graph", [](const Graph& g, const std::string& format) {
    return write_graph(g, format_of(format));
  }, py::arg("graph"), py::arg("format") = "edge-list");

  m.def("generate", [](const std::string& family, int n, int rows, int cols, int left, int right,
                       int max_degree, double p, std::uint64_t seed) {
    auto f = family_from_name(family);
    if (!f) throw py::value_error("unknown family " + family);
    return generate(*f, {n, rows, cols, left, right, max_degree, p}, seed);
  }, py::arg("family"), py::arg("n") = 0, py::arg("rows") = 0, py::arg("cols") = 0,
     py::arg("left") = 0, py::arg("right") = 0, py::arg("max_degree") = 0, py::arg("p") = 0.0,
     py::arg("seed") = 0);
  m.def("small_graphs", [](int n, bool connected, bool unique) {
    return small_graphs(n, {connected, unique});
  }, py::arg("n"), py::arg("connected_only") = false, py::arg("unique") = false);
  m.def("degeneracy", &degeneracy);

  // centred colourings and treedepth
  m.def("is_r_centred", [](const Graph& g, const std::vector<int>& colour, int r) {
    int palette = 0;
    for (int c : colour) palette = std::max(palette, c + 1);
    auto v = is_r_centred(g, Colouring(palette, colour), r);
    std::optional<std::vector<Vertex>> w;
    if (v.witness) w = v.witness->members();
    return py::make_tuple(v.is_centred, w);
  }, py::arg("graph"), py::arg("colour"), py::arg("r"));
  m.def("chi_r_exact", [](const Graph& g, int r) {
    auto c = chi_r_exact(g, r);
    return py::make_tuple(c.value, c.witness.colour);
  }, py::arg("graph"), py::arg("r"));
  m.def("treedepth", [](const Graph& g, bool exact) {
    auto t = exact ? treedepth_exact(g) : treedepth_heuristic(g);
    return py::make_tuple(t.value, t.forest.parent);
  }, py::arg("graph"), py::arg("exact") = true);

  // weak colouring numbers
  m.def("wreach", [](const Graph& g, const std::vector<Vertex>& order, int r) {
    return set_list(wreach(g, Ordering::from_sequence(order), r).sets);
  }, py::arg("graph"), py::arg("order"), py::arg("r"));
  m.def("wcol_given_order", [](const Graph& g, const std::vector<Vertex>& order, int r) {
    return wcol_given_order(g, Ordering::from_sequence(order), r);
  }, py::arg("graph"), py::arg("order"), py::arg("r"));
  m.def("wcol_exact", [](const Graph& g, int r) {
    auto w = wcol_exact(g, r);
    return py::make_tuple(w.value, w.order.sequence());
  }, py::arg("graph"), py::arg("r"));
  m.def("wcol_heuristic", [](const Graph& g, int r, const std::string& strategy, std::uint64_t seed) {
    auto s = strategy_from_name(strategy);
    if (!s) throw py::value_error("unknown strategy " + strategy);
    auto w = wcol_heuristic(g, r, *s, {seed, -1});
    return py::make_tuple(w.value, w.order.sequence());
  }, py::arg("graph"), py::arg("r"), py::arg("strategy") = "local-search", py::arg("seed") = 0);

  // neighbourhood complexity
  m.def("trace_classes", [](const Graph& g, const std::vector<Vertex>& x, int r) {
    auto t = trace_table(g, VertexSet(x), r);
    return py::make_tuple(t.class_count(), set_list(t.traces));
  }, py::arg("graph"), py::arg("x"), py::arg("r"));
  m.def("nu_fixed", [](const Graph& g, const std::vector<Vertex>& x, int r) {
    return frac(nu_fixed(g, VertexSet(x), r));
  }, py::arg("graph"), py::arg("x"), py::arg("r"));
  m.def("nu_exact", [](const Graph& g, int r, bool induced_only) {
    NuOptions options;
    options.induced_only = induced_only;
    auto rep = nu_exact(g, r, options);
    return py::make_tuple(frac(rep.value), members(rep.witness.vertices), rep.witness.edges,
                          members(rep.witness_x));
  }, py::arg("graph"), py::arg("r"), py::arg("induced_only") = false);
  m.def("nu_lower_bound", [](const Graph& g, int r, std::uint64_t seed, long long budget) {
    auto rep = nu_lower_bound(g, r, seed, budget);
    return py::make_tuple(frac(rep.value), members(rep.witness.vertices), rep.witness.edges,
                          members(rep.witness_x));
  }, py::arg("graph"), py::arg("r"), py::arg("seed") = 0, py::arg("budget") = 2000);

  // shallow topological grads
  m.def("grad0_exact", [](const Graph& g) {
    auto rep = grad0_exact(g);
    return py::make_tuple(frac(rep.value), certificate(rep.witness));
  }, py::arg("graph"));
  m.def("gradr_bruteforce", [](const Graph& g, int twice_r) {
    auto rep = gradr_bruteforce(g, twice_r);
    return py::make_tuple(frac(rep.value), certificate(rep.witness));
  }, py::arg("graph"), py::arg("twice_r"));

  // property suites; the result comes back as JSON text
  m.def("run_suite", [](const std::string& name, int min_n, int max_n, bool connected_only, bool unique,
                        int max_m, int twice_r, std::uint64_t seed) {
    auto suite = suite_from_name(name);
    if (!suite) throw py::value_error("unknown suite " + name);
    CorpusSpec corpus{min_n, max_n, connected_only, unique, max_m, {}};
    SuiteOptions options;
    options.twice_r = twice_r;
    options.seed = seed;
    check_suite_request(*suite, corpus, options);
    return run_suite(*suite, corpus, options).to_json().dump();
  }, py::arg("suite"), py::arg("min_n") = 1, py::arg("max_n") = 5, py::arg("connected_only") = true,
     py::arg("unique") = false, py::arg("max_m") = -1, py::arg("twice_r") = 2, py::arg("seed") = 0);
}
