#include "nbc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nbc/centred.hpp"
#include "nbc/complexity.hpp"
#include "nbc/expansion.hpp"
#include "nbc/graph.hpp"
#include "nbc/suites.hpp"
#include "nbc/wcol.hpp"

namespace nbc::cli {

using nlohmann::json;

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// Failures that map directly onto an exit code.
struct Exit {
  int code;
  std::string message;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kIoError, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text) || !file.flush()) throw Exit{kIoError, "cannot write " + path};
}

GraphFormat format_from_name(const std::string& name) {
  if (name == "edge-list") return GraphFormat::edge_list;
  if (name == "dimacs") return GraphFormat::dimacs;
  throw Exit{kUsageError, "unknown format " + name};
}

int parse_r(const std::string& text, bool allow_half) {
  auto twice = parse_half(text);
  if (!twice) throw Exit{kUsageError, "--r expects k or k/2, got " + text};
  if (!allow_half && *twice % 2 != 0) throw Exit{kUsageError, "--r must be an integer here"};
  return *twice;
}

json graph_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.order()}, {"edges", edges}};
}

json tool_json() { return {{"name", "nbc"}, {"version", std::string(kVersion)}}; }

// ---------------------------------------------------------------------------
// Guards

struct GuardSpec {
  const char* parameter;
  int default_n;
  int hard_n;
};

constexpr GuardSpec kNuGuard{"nu", 9, 11};
constexpr GuardSpec kWcolGuardSpec{"wcol", kWcolGuard, kWcolGuard};
constexpr GuardSpec kChiGuardSpec{"chi", kChiGuard, 2 * kChiGuard};
constexpr GuardSpec kTdGuard{"td", kTreedepthGuard, 32};
constexpr GuardSpec kGradGuardSpec{"grad", kGradGuard, 10};
constexpr int kNuEdgeGuard = 14;
constexpr int kNuEdgeHard = 20;

std::string cost_estimate(const GuardSpec& spec, int n) {
  std::ostringstream out;
  const std::string p = spec.parameter;
  if (p == "nu") out << "up to 2^" << n << " vertex sets x 2^m edge sets x 2^" << n << " sets X";
  if (p == "wcol") out << "branch and bound over up to " << n << "! orders";
  if (p == "chi") out << "up to " << n << "^" << n << " colourings checked on 2^" << n << " sets";
  if (p == "td") out << "2^" << n << " memoised vertex subsets";
  if (p == "grad") out << "2^" << n << " branch sets with path packings";
  return out.str();
}

struct Guards {
  std::optional<int> n_override;
  std::optional<int> m_override;
  mutable std::set<std::string> noted;

  int n_for(const GuardSpec& spec, std::ostream& err) const {
    if (!n_override) return spec.default_n;
    if (*n_override > spec.hard_n) {
      throw Exit{kUsageError, std::string("--guard-n ") + std::to_string(*n_override) +
                                  " exceeds the hard limit " + std::to_string(spec.hard_n) +
                                  " for " + spec.parameter};
    }
    if (*n_override > spec.default_n && noted.insert(spec.parameter).second) {
      err << "note: raising the " << spec.parameter << " guard to n <= " << *n_override
          << " costs " << cost_estimate(spec, *n_override) << "\n";
    }
    return *n_override;
  }

  int m_for_nu() const {
    if (!m_override) return kNuEdgeGuard;
    if (*m_override > kNuEdgeHard) {
      throw Exit{kUsageError, "--guard-m exceeds the hard limit " + std::to_string(kNuEdgeHard)};
    }
    return *m_override;
  }
};

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
  std::string input;
  std::string r = "1";
  std::string grad_r = "0";
  std::string params = "nu,wcol,chi,td,grad";
  std::string format = "edge-list";
  std::string out;
  std::uint64_t seed = 0;
  long long budget = 2000;
  bool exact_all = false;
  bool heuristics = false;
  std::optional<int> guard_n;
  std::optional<int> guard_m;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  if (a.exact_all && a.heuristics) {
    throw Exit{kUsageError, "--exact-all and --heuristics are mutually exclusive"};
  }
  const int twice_r = parse_r(a.r, false);
  const int r = twice_r / 2;
  const int grad_twice = parse_r(a.grad_r, true);
  const auto params = split_list(a.params);
  for (const auto& p : params) {
    if (p != "nu" && p != "wcol" && p != "chi" && p != "td" && p != "grad") {
      throw Exit{kUsageError, "unknown parameter " + p + " (nu, wcol, chi, td, grad)"};
    }
  }
  auto wants = [&](const char* p) { return std::find(params.begin(), params.end(), p) != params.end(); };

  const std::string text = read_file(a.input);
  Graph g;
  try {
    g = parse_graph(text, format_from_name(a.format));
  } catch (const ParseError& e) {
    throw Exit{kIoError, std::string("parse error: ") + e.what()};
  }
  const int n = g.order();
  const int m = static_cast<int>(g.size());
  const Guards guards{a.guard_n, a.guard_m, {}};

  // Decide modes up front so --exact-all refuses before any work starts.
  auto exact_allowed = [&](const GuardSpec& spec, bool extra_ok) {
    if (a.heuristics) return false;
    const bool fits = n <= guards.n_for(spec, err) && extra_ok;
    if (!fits && a.exact_all) {
      throw Exit{kUsageError, std::string("--exact-all: ") + spec.parameter + " on n = " +
                                  std::to_string(n) + ", m = " + std::to_string(m) +
                                  " exceeds its guard; the exact search would need " +
                                  cost_estimate(spec, n)};
    }
    return fits;
  };
  const bool nu_exact_ok = wants("nu") && exact_allowed(kNuGuard, m <= guards.m_for_nu());
  const bool wcol_exact_ok = wants("wcol") && exact_allowed(kWcolGuardSpec, true);
  const bool chi_exact_ok = wants("chi") && exact_allowed(kChiGuardSpec, true);
  const bool td_exact_ok = wants("td") && exact_allowed(kTdGuard, true);
  const bool grad_exact_ok =
      wants("grad") && (grad_twice == 0 || exact_allowed(kGradGuardSpec, true));

  json report;
  report["tool"] = tool_json();
  report["command"] = "analyze";
  report["input"] = {{"digest", fnv1a_hex(text)}, {"n", n}, {"m", m}, {"format", a.format}};
  report["seed"] = a.seed;
  report["r"] = r;
  json parameters = json::array();
  json timing = json::object();

  std::optional<NuReport> nu;
  std::optional<ParameterInput> chi_in;
  std::optional<ParameterInput> wcol_in;

  if (wants("nu") && n > 0) {
    Stopwatch t;
    if (nu_exact_ok) {
      NuOptions opts;
      opts.guard = {guards.n_for(kNuGuard, err), guards.m_for_nu()};
      nu = nu_exact(g, r, opts);
    } else {
      nu = nu_lower_bound(g, r, a.seed, a.budget);
    }
    timing["nu"] = t.millis();
    json entry = {{"name", "nu_" + std::to_string(r)},
                  {"value", to_string(nu->value)},
                  {"mode", nu->mode == NuMode::exact ? "exact" : "lower-bound"},
                  {"witness",
                   {{"vertices", nu->witness.vertices.members()},
                    {"edges", json::array()},
                    {"x", nu->witness_x.members()}}}};
    for (auto [u, v] : nu->witness.edges) entry["witness"]["edges"].push_back({u, v});
    if (nu->mode == NuMode::lower_bound) {
      entry["search"] = {{"seed", nu->seed}, {"budget", nu->budget}};
    }
    parameters.push_back(entry);
  }

  if (wants("wcol")) {
    Stopwatch t;
    const int radius = 2 * r;
    json entry = {{"name", "wcol_" + std::to_string(radius)}};
    if (wcol_exact_ok) {
      WcolResult w = wcol_exact(g, radius, guards.n_for(kWcolGuardSpec, err));
      entry["value"] = w.value;
      entry["mode"] = "exact";
      entry["witness"] = {{"order", w.order.sequence()}};
      wcol_in = ParameterInput{w.value, true};
    } else {
      std::optional<WcolResult> best;
      std::string best_name;
      json tried = json::object();
      for (auto s : {WcolStrategy::smallest_degree_last, WcolStrategy::descending_degree,
                     WcolStrategy::local_search}) {
        WcolResult w = wcol_heuristic(g, radius, s, {a.seed, -1});
        tried[std::string(strategy_name(s))] = w.value;
        if (!best || w.value < best->value) {
          best = w;
          best_name = strategy_name(s);
        }
      }
      entry["value"] = best->value;
      entry["mode"] = "upper-bound";
      entry["strategy"] = best_name;
      entry["strategies"] = tried;
      entry["witness"] = {{"order", best->order.sequence()}};
      wcol_in = ParameterInput{best->value, false};
    }
    timing["wcol"] = t.millis();
    parameters.push_back(entry);
  }

  if (wants("chi")) {
    Stopwatch t;
    const int centred_r = 2 * r + 2;
    json entry = {{"name", "chi_" + std::to_string(centred_r)}};
    if (chi_exact_ok) {
      ChiResult c = chi_r_exact(g, centred_r, guards.n_for(kChiGuardSpec, err));
      entry["value"] = c.value;
      entry["mode"] = "exact";
      entry["witness"] = {{"colouring", c.witness.colour}};
      chi_in = ParameterInput{c.value, true};
    } else {
      TreedepthResult td = treedepth_heuristic(g);
      Colouring c = centred_colouring_from_forest(g, td.forest);
      entry["value"] = c.palette;
      entry["mode"] = "upper-bound";
      entry["witness"] = {{"colouring", c.colour}};
      chi_in = ParameterInput{c.palette, false};
    }
    timing["chi"] = t.millis();
    parameters.push_back(entry);
  }

  if (wants("td")) {
    Stopwatch t;
    TreedepthResult td = td_exact_ok ? treedepth_exact(g, guards.n_for(kTdGuard, err))
                                     : treedepth_heuristic(g);
    timing["td"] = t.millis();
    parameters.push_back({{"name", "td"},
                          {"value", td.value},
                          {"mode", td.exact ? "exact" : "upper-bound"},
                          {"witness", {{"parent", td.forest.parent}}}});
  }

  if (wants("grad")) {
    Stopwatch t;
    GradReport gr;
    std::string mode = "exact";
    if (grad_twice == 0) {
      gr = grad0_exact(g);
    } else if (grad_exact_ok) {
      gr = gradr_bruteforce(g, grad_twice, guards.n_for(kGradGuardSpec, err));
    } else {
      // Depth-0 density is a lower bound at every depth.
      gr = grad0_exact(g);
      gr.twice_r = grad_twice;
      mode = "lower-bound";
    }
    timing["grad"] = t.millis();
    json phi_e = json::array();
    for (const auto& path : gr.witness.phi_e) phi_e.push_back(path);
    parameters.push_back({{"name", "grad_" + half_to_string(grad_twice)},
                          {"value", to_string(gr.value)},
                          {"mode", mode},
                          {"witness",
                           {{"pattern", graph_json(gr.witness.pattern)},
                            {"phi_v", gr.witness.phi_v},
                            {"phi_e", phi_e}}}});
  }
  report["parameters"] = parameters;

  if (nu && (chi_in || wcol_in)) {
    BoundReport b = complexity_bounds(*nu, chi_in, wcol_in);
    json bounds = json::object();
    auto add = [&](const char* name, const std::optional<BoundComparison>& c) {
      if (!c) return;
      bounds[name] = {{"parameter", c->parameter},
                      {"parameter_exact", c->parameter_exact},
                      {"rhs", c->rhs.to_string()},
                      {"holds", c->holds},
                      {"mode", c->informational ? "informational" : "exact"}};
    };
    add("centred", b.centred);
    add("wcol", b.wcol);
    report["bounds"] = bounds;
  }
  report["timing"] = timing;
  write_text(a.out, report.dump(2) + "\n", out);
  return kPass;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite;
  std::string r = "1";
  std::optional<int> exhaustive;
  std::optional<int> exact_n;
  int min_n = 1;
  bool all_graphs = false;
  bool unique = false;
  int max_m = -1;
  int random_count = 0;
  int random_n = 8;
  double random_p = 0.3;
  std::uint64_t seed = 0;
  int orders = 20;
  int x_count = 20;
  int all_x_up_to = 5;
  int random_colourings = 0;
  std::optional<int> guard_n;
  std::string out;
  std::string counterexample;
};

int verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  auto suite = suite_from_name(a.suite);
  if (!suite) throw Exit{kUsageError, "unknown suite " + a.suite};
  CorpusSpec corpus;
  if (a.exhaustive && a.exact_n) throw Exit{kUsageError, "--exhaustive and --n are exclusive"};
  corpus.min_n = a.min_n;
  corpus.max_n = a.exhaustive.value_or(5);
  if (a.exact_n) corpus.min_n = corpus.max_n = *a.exact_n;
  if (a.random_count > 0 && !a.exhaustive && !a.exact_n) corpus.max_n = 0;
  corpus.connected_only = !a.all_graphs;
  corpus.unique = a.unique;
  corpus.max_m = a.max_m;
  for (int i = 0; i < a.random_count; ++i) {
    GeneratorParams p;
    p.n = a.random_n;
    p.p = a.random_p;
    corpus.extra.push_back(generate(Family::erdos_renyi, p, a.seed + static_cast<std::uint64_t>(i)));
  }

  SuiteOptions options;
  options.twice_r = parse_r(a.r, true);
  options.seed = a.seed;
  options.orders_per_graph = a.orders;
  options.x_per_graph = a.x_count;
  options.all_x_up_to = a.all_x_up_to;
  options.random_colourings = a.random_colourings;
  options.guard_n = a.guard_n;

  try {
    check_suite_request(*suite, corpus, options);
  } catch (const GuardExceeded& e) {
    const int n = std::max(corpus.max_n, 1);
    throw Exit{kUsageError, std::string(e.what()) + "\nexpected cost: " +
                                suite_cost_estimate(*suite, n)};
  } catch (const ContractViolation& e) {
    throw Exit{kUsageError, e.what()};
  }
  if (a.guard_n && *a.guard_n > suite_default_guard(*suite)) {
    err << "note: raised guard; " << suite_cost_estimate(*suite, *a.guard_n) << "\n";
  }

  Stopwatch t;
  SuiteResult result = run_suite(*suite, corpus, options);
  json report;
  report["tool"] = tool_json();
  report["command"] = "verify";
  report["seed"] = a.seed;
  json corpus_json = {{"min_n", corpus.min_n},
                      {"max_n", corpus.max_n},
                      {"connected_only", corpus.connected_only},
                      {"unique", corpus.unique},
                      {"max_m", corpus.max_m},
                      {"random", a.random_count}};
  if (a.random_count > 0) corpus_json["random_graph"] = {{"n", a.random_n}, {"p", a.random_p}};
  report["corpus"] = corpus_json;
  report["input"] = {{"digest", fnv1a_hex(corpus_json.dump())}};
  report["result"] = result.to_json();
  report["timing"] = {{"total", t.millis()}};
  write_text(a.out, report.dump(2) + "\n", out);
  if (!result.passed()) {
    const std::string path = a.counterexample.empty() ? "counterexample.json" : a.counterexample;
    std::ofstream file(path);
    if (!file || !(file << result.counterexample->dump(2) << "\n")) {
      throw Exit{kIoError, "cannot write counterexample to " + path};
    }
    err << result.violations << " violation(s); first counterexample written to " << path << "\n";
    return kViolation;
  }
  return kPass;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::vector<std::string> spec;
  std::uint64_t seed = 0;
  std::string format = "edge-list";
  std::string out;
  int count = 1;
};

GeneratorParams generator_params(Family family, const std::vector<std::string>& args) {
  auto need = [&](std::size_t k) {
    if (args.size() != k) {
      throw Exit{kUsageError, std::string(family_name(family)) + " expects " + std::to_string(k) +
                                  " argument(s)"};
    }
  };
  auto as_int = [](const std::string& s) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size() || v < 0) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Exit{kUsageError, "expected a non-negative integer, got " + s};
    }
  };
  GeneratorParams p;
  switch (family) {
    case Family::path:
    case Family::cycle:
    case Family::complete:
      need(1);
      p.n = as_int(args[0]);
      break;
    case Family::grid:
      need(2);
      p.rows = as_int(args[0]);
      p.cols = as_int(args[1]);
      break;
    case Family::complete_bipartite:
      need(2);
      p.left = as_int(args[0]);
      p.right = as_int(args[1]);
      break;
    case Family::random_bounded_degree:
      need(2);
      p.n = as_int(args[0]);
      p.max_degree = as_int(args[1]);
      break;
    case Family::erdos_renyi:
      need(2);
      p.n = as_int(args[0]);
      try {
        p.p = std::stod(args[1]);
      } catch (const std::exception&) {
        throw Exit{kUsageError, "expected a probability, got " + args[1]};
      }
      if (!(p.p >= 0.0 && p.p <= 1.0)) throw Exit{kUsageError, "probability outside [0, 1]"};
      break;
  }
  return p;
}

int gen(const GenArgs& a, std::ostream& out) {
  if (a.spec.empty()) throw Exit{kUsageError, "gen needs a family"};
  auto family = family_from_name(a.spec[0]);
  if (!family) throw Exit{kUsageError, "unknown family " + a.spec[0]};
  const GeneratorParams p =
      generator_params(*family, std::vector<std::string>(a.spec.begin() + 1, a.spec.end()));
  const GraphFormat format = format_from_name(a.format);
  Graph g;
  auto make = [&](std::uint64_t seed) {
    try {
      return generate(*family, p, seed);
    } catch (const ContractViolation& e) {
      throw Exit{kUsageError, e.what()};
    }
  };
  if (a.count <= 1) {
    write_text(a.out, write_graph(make(a.seed), format), out);
    return kPass;
  }
  if (a.out.empty()) throw Exit{kUsageError, "--count needs --out DIR"};
  std::error_code ec;
  std::filesystem::create_directories(a.out, ec);
  if (ec) throw Exit{kIoError, "cannot create " + a.out};
  for (int i = 0; i < a.count; ++i) {
    const std::string path =
        (std::filesystem::path(a.out) / (a.spec[0] + "-" + std::to_string(i) + ".txt")).string();
    write_text(path, write_graph(make(a.seed + static_cast<std::uint64_t>(i)), format), out);
  }
  return kPass;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string parameter;
  std::vector<std::string> inputs;
  std::string family;
  int count = 10;
  std::string r = "1";
  std::uint64_t seed = 0;
  std::string format = "edge-list";
  std::string out;
  std::optional<int> guard_n;
  int max_degree = 3;
  double p = 0.3;
};

// The i-th member of a growing sequence of instances of `family`.
Graph bench_instance(Family family, int i, const BenchArgs& a) {
  GeneratorParams p;
  switch (family) {
    case Family::grid:
      p.rows = p.cols = i + 2;
      break;
    case Family::complete_bipartite:
      p.left = i + 1;
      p.right = i + 2;
      break;
    case Family::complete:
      p.n = i + 2;
      break;
    default:
      p.n = 4 + 2 * i;
      break;
  }
  p.max_degree = a.max_degree;
  p.p = a.p;
  return generate(family, p, a.seed + static_cast<std::uint64_t>(i));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const std::string& param = a.parameter;
  if (param != "nu" && param != "wcol" && param != "chi" && param != "td" && param != "grad") {
    throw Exit{kUsageError, "unknown parameter " + param + " (nu, wcol, chi, td, grad)"};
  }
  const bool half_ok = param == "grad";
  const int twice_r = parse_r(a.r, half_ok);
  const int r = twice_r / 2;
  const Guards guards{a.guard_n, std::nullopt, {}};

  std::vector<std::pair<std::string, Graph>> corpus;
  for (const auto& path : a.inputs) {
    try {
      corpus.emplace_back(path, parse_graph(read_file(path), format_from_name(a.format)));
    } catch (const ParseError& e) {
      throw Exit{kIoError, path + ": parse error: " + e.what()};
    }
  }
  if (!a.family.empty()) {
    auto family = family_from_name(a.family);
    if (!family) throw Exit{kUsageError, "unknown family " + a.family};
    for (int i = 0; i < a.count; ++i) {
      corpus.emplace_back(a.family + "-" + std::to_string(i), bench_instance(*family, i, a));
    }
  }
  if (corpus.empty()) throw Exit{kUsageError, "bench needs input files or --family"};

  std::ostringstream csv;
  csv << "graph,n,m,parameter,mode,value,millis\n";
  auto row = [&](const std::string& id, const Graph& g, const std::string& name,
                 const std::string& mode, const std::string& value, double ms) {
    char millis[32];
    std::snprintf(millis, sizeof millis, "%.3f", ms);
    csv << csv_field(id) << ',' << g.order() << ',' << g.size() << ',' << csv_field(name) << ','
        << mode << ',' << csv_field(value) << ',' << millis << '\n';
  };

  for (const auto& [id, g] : corpus) {
    const int n = g.order();
    if (param == "wcol") {
      const std::string name = "wcol_" + std::to_string(2 * r);
      for (auto s : {WcolStrategy::smallest_degree_last, WcolStrategy::descending_degree,
                     WcolStrategy::local_search}) {
        Stopwatch t;
        WcolResult w = wcol_heuristic(g, 2 * r, s, {a.seed, -1});
        row(id, g, name + "[" + std::string(strategy_name(s)) + "]", "upper-bound",
            std::to_string(w.value), t.millis());
      }
      if (n <= guards.n_for(kWcolGuardSpec, err)) {
        Stopwatch t;
        WcolResult w = wcol_exact(g, 2 * r, guards.n_for(kWcolGuardSpec, err));
        row(id, g, name + "[exact]", "exact", std::to_string(w.value), t.millis());
      }
    } else if (param == "nu") {
      const std::string name = "nu_" + std::to_string(r);
      if (n == 0) continue;
      {
        Stopwatch t;
        NuReport rep = nu_lower_bound(g, r, a.seed, 2000);
        row(id, g, name + "[hill-climb]", "lower-bound", to_string(rep.value), t.millis());
      }
      if (n <= guards.n_for(kNuGuard, err) && static_cast<int>(g.size()) <= kNuEdgeGuard) {
        Stopwatch t;
        NuOptions opts;
        opts.guard = {guards.n_for(kNuGuard, err), kNuEdgeGuard};
        NuReport rep = nu_exact(g, r, opts);
        row(id, g, name + "[exact]", "exact", to_string(rep.value), t.millis());
      }
    } else if (param == "chi") {
      const int centred_r = 2 * r + 2;
      const std::string name = "chi_" + std::to_string(centred_r);
      {
        Stopwatch t;
        Colouring c = centred_colouring_from_forest(g, treedepth_heuristic(g).forest);
        row(id, g, name + "[forest]", "upper-bound", std::to_string(c.palette), t.millis());
      }
      if (n <= guards.n_for(kChiGuardSpec, err)) {
        Stopwatch t;
        ChiResult c = chi_r_exact(g, centred_r, guards.n_for(kChiGuardSpec, err));
        row(id, g, name + "[exact]", "exact", std::to_string(c.value), t.millis());
      }
    } else if (param == "td") {
      {
        Stopwatch t;
        TreedepthResult td = treedepth_heuristic(g);
        row(id, g, "td[heuristic]", "upper-bound", std::to_string(td.value), t.millis());
      }
      if (n <= guards.n_for(kTdGuard, err)) {
        Stopwatch t;
        TreedepthResult td = treedepth_exact(g, guards.n_for(kTdGuard, err));
        row(id, g, "td[exact]", "exact", std::to_string(td.value), t.millis());
      }
    } else {
      const std::string name = "grad_" + half_to_string(twice_r);
      {
        Stopwatch t;
        GradReport gr = grad0_exact(g);
        row(id, g, "grad_0[flow]", "exact", to_string(gr.value), t.millis());
      }
      if (twice_r > 0 && n <= guards.n_for(kGradGuardSpec, err)) {
        Stopwatch t;
        GradReport gr = gradr_bruteforce(g, twice_r, guards.n_for(kGradGuardSpec, err));
        row(id, g, name + "[brute-force]", "exact", to_string(gr.value), t.millis());
      }
    }
  }
  write_text(a.out, csv.str(), out);
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neighbourhood complexity and sparsity parameters of small graphs", "nbc"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute parameters of one graph");
  analyze_cmd->add_option("input", aa.input, "Graph file")->required();
  analyze_cmd->add_option("--r", aa.r, "Radius r (integer)");
  analyze_cmd->add_option("--grad-r", aa.grad_r, "Depth of the topological grad (k or k/2)");
  analyze_cmd->add_option("--params", aa.params, "Comma list of nu, wcol, chi, td, grad");
  analyze_cmd->add_option("--seed", aa.seed, "Seed for randomised searches");
  analyze_cmd->add_option("--budget", aa.budget, "Step budget for the nu lower-bound search");
  analyze_cmd->add_option("--guard-n", aa.guard_n, "Order guard for exact searches");
  analyze_cmd->add_option("--guard-m", aa.guard_m, "Edge guard for exact nu");
  analyze_cmd->add_flag("--exact-all", aa.exact_all, "Refuse instead of falling back to bounds");
  analyze_cmd->add_flag("--heuristics", aa.heuristics, "Use bounds only");
  analyze_cmd->add_option("--format", aa.format, "edge-list or dimacs");
  analyze_cmd->add_option("--out", aa.out, "Report file (default stdout)");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite over a graph corpus");
  verify_cmd->add_option("suite", va.suite, "Suite name")->required();
  verify_cmd->add_option("--r", va.r, "Radius (k or k/2)");
  verify_cmd->add_option("--exhaustive", va.exhaustive, "All graphs with min-n <= n <= N");
  verify_cmd->add_option("--n", va.exact_n, "All graphs with exactly N vertices");
  verify_cmd->add_option("--min-n", va.min_n, "Smallest order for --exhaustive");
  verify_cmd->add_flag("--all-graphs", va.all_graphs, "Include disconnected graphs");
  verify_cmd->add_flag("--unique", va.unique, "One graph per isomorphism class");
  verify_cmd->add_option("--max-m", va.max_m, "Skip graphs with more edges");
  verify_cmd->add_option("--random", va.random_count, "Append random graphs");
  verify_cmd->add_option("--random-n", va.random_n, "Order of the random graphs");
  verify_cmd->add_option("--random-p", va.random_p, "Edge probability of the random graphs");
  verify_cmd->add_option("--seed", va.seed, "Seed");
  verify_cmd->add_option("--orders", va.orders, "Random orders per graph");
  verify_cmd->add_option("--x-count", va.x_count, "Random sets X per graph");
  verify_cmd->add_option("--all-x-up-to", va.all_x_up_to, "Use every X when n is at most this");
  verify_cmd->add_option("--random-colourings", va.random_colourings,
                         "Random colourings per graph, kept when centred");
  verify_cmd->add_option("--guard-n", va.guard_n, "Raise or lower the order guard");
  verify_cmd->add_option("--out", va.out, "Report file (default stdout)");
  verify_cmd->add_option("--counterexample", va.counterexample,
                         "Counterexample file (default counterexample.json)");

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated graph");
  gen_cmd->add_option("spec", ga.spec, "Family and its arguments")->required();
  gen_cmd->add_option("--seed", ga.seed, "Seed for random families");
  gen_cmd->add_option("--count", ga.count, "Number of graphs (seeds seed .. seed+count-1)");
  gen_cmd->add_option("--format", ga.format, "edge-list or dimacs");
  gen_cmd->add_option("--out", ga.out, "Output file, or directory with --count");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Time parameter computations, CSV output");
  bench_cmd->add_option("parameter", ba.parameter, "nu, wcol, chi, td or grad")->required();
  bench_cmd->add_option("inputs", ba.inputs, "Graph files");
  bench_cmd->add_option("--family", ba.family, "Generated family instead of files");
  bench_cmd->add_option("--count", ba.count, "Number of generated instances");
  bench_cmd->add_option("--max-degree", ba.max_degree, "For random-bounded-degree");
  bench_cmd->add_option("--p", ba.p, "For erdos-renyi");
  bench_cmd->add_option("--r", ba.r, "Radius (k, or k/2 for grad)");
  bench_cmd->add_option("--seed", ba.seed, "Seed");
  bench_cmd->add_option("--guard-n", ba.guard_n, "Order guard for exact rows");
  bench_cmd->add_option("--format", ba.format, "edge-list or dimacs");
  bench_cmd->add_option("--out", ba.out, "CSV file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  try {
    if (analyze_cmd->parsed()) return analyze(aa, out, err);
    if (verify_cmd->parsed()) return verify(va, out, err);
    if (gen_cmd->parsed()) return gen(ga, out);
    if (bench_cmd->parsed()) return bench(ba, out, err);
  } catch (const Exit& e) {
    err << (e.code == kUsageError ? "error: " : "io error: ") << e.message << "\n";
    return e.code;
  } catch (const GuardExceeded& e) {
    err << "guard: " << e.what() << "\n";
    return kUsageError;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace nbc::cli
