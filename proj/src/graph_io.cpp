#include <cctype>
#include <charconv>
#include <sstream>

#include "nbc/graph.hpp"

namespace nbc {
namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view token, std::size_t line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(ParseError::Kind::malformed, line,
                     "expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

struct Header {
  long long n = -1;
  long long m = -1;
  std::size_t line = 0;
};

Graph finish(const Header& header, std::vector<Edge>& edges, std::size_t last_line) {
  if (header.n < 0) throw ParseError(ParseError::Kind::malformed, last_line, "missing header");
  if (static_cast<long long>(edges.size()) != header.m) {
    throw ParseError(ParseError::Kind::malformed, last_line,
                     "header declares " + std::to_string(header.m) + " edges, found " +
                         std::to_string(edges.size()));
  }
  return Graph(static_cast<int>(header.n), edges);
}

void check_header(Header& header, long long n, long long m, std::size_t line) {
  if (n < 1) throw ParseError(ParseError::Kind::malformed, line, "vertex count must be positive");
  if (m < 0) throw ParseError(ParseError::Kind::malformed, line, "negative edge count");
  if (n > (1LL << 28)) throw ParseError(ParseError::Kind::range, line, "vertex count too large");
  header = {n, m, line};
}

Edge checked_edge(long long u, long long v, long long n, std::size_t line) {
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw ParseError(ParseError::Kind::range, line,
                     "vertex id out of range for n = " + std::to_string(n));
  }
  if (u == v) throw ParseError(ParseError::Kind::self_loop, line, "self-loop");
  return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

Graph parse_edge_list(std::string_view text) {
  Header header;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok.size() != 2) {
      throw ParseError(ParseError::Kind::malformed, line_no, "expected two integers");
    }
    long long a = parse_int(tok[0], line_no);
    long long b = parse_int(tok[1], line_no);
    if (header.n < 0) {
      check_header(header, a, b, line_no);
    } else {
      edges.push_back(checked_edge(a, b, header.n, line_no));
    }
  }
  return finish(header, edges, line_no);
}

Graph parse_dimacs(std::string_view text) {
  Header header;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tok = tokens(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (header.n >= 0) throw ParseError(ParseError::Kind::malformed, line_no, "second header");
      if (tok.size() != 4 || tok[1] != "edge") {
        throw ParseError(ParseError::Kind::malformed, line_no, "expected 'p edge n m'");
      }
      check_header(header, parse_int(tok[2], line_no), parse_int(tok[3], line_no), line_no);
    } else if (tok[0] == "e") {
      if (header.n < 0) throw ParseError(ParseError::Kind::malformed, line_no, "edge before header");
      if (tok.size() != 3) throw ParseError(ParseError::Kind::malformed, line_no, "expected 'e u v'");
      long long u = parse_int(tok[1], line_no) - 1;
      long long v = parse_int(tok[2], line_no) - 1;
      edges.push_back(checked_edge(u, v, header.n, line_no));
    } else {
      throw ParseError(ParseError::Kind::malformed, line_no,
                       "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  return finish(header, edges, line_no);
}

}  // namespace

Graph parse_graph(std::string_view text, GraphFormat format) {
  return format == GraphFormat::edge_list ? parse_edge_list(text) : parse_dimacs(text);
}

std::string write_graph(const Graph& g, GraphFormat format) {
  std::ostringstream out;
  auto edges = g.edges();
  if (format == GraphFormat::edge_list) {
    out << g.order() << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
  } else {
    out << "p edge " << g.order() << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  }
  return out.str();
}

}  // namespace nbc
