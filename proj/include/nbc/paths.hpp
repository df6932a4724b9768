#pragma once

#include <vector>

#include "nbc/graph.hpp"

namespace nbc {

// Depth-first walk over the simple paths that start at `start` and have at
// most `max_vertices` vertices. `accept(prefix, w)` decides whether w may
// extend the current prefix, pruning every extension of a rejected prefix.
// `visit(path)` sees each accepted path, including the one-vertex path at
// `start`.
template <typename Accept, typename Visit>
void for_each_simple_path(const Graph& g, Vertex start, int max_vertices, Accept&& accept,
                          Visit&& visit) {
  std::vector<Vertex> path;
  if (max_vertices < 1 || !accept(static_cast<const std::vector<Vertex>&>(path), start)) return;
  path.push_back(start);
  std::vector<char> on_path(g.order(), 0);
  on_path[start] = 1;
  std::vector<std::size_t> cursor{0};
  visit(static_cast<const std::vector<Vertex>&>(path));
  while (!path.empty()) {
    const Vertex tip = path.back();
    auto nb = g.neighbours(tip);
    std::size_t& i = cursor.back();
    if (static_cast<int>(path.size()) >= max_vertices || i >= nb.size()) {
      on_path[tip] = 0;
      path.pop_back();
      cursor.pop_back();
      continue;
    }
    const Vertex w = nb[i++];
    if (on_path[w] || !accept(static_cast<const std::vector<Vertex>&>(path), w)) continue;
    path.push_back(w);
    on_path[w] = 1;
    cursor.push_back(0);
    visit(static_cast<const std::vector<Vertex>&>(path));
  }
}

}  // namespace nbc
