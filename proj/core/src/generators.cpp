#include "wllab/generators.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "wllab/errors.hpp"
#include "wllab/prng.hpp"

namespace wllab {

namespace {

// Assembles a graph from per-arc colour names; ids follow sorted name order.
Graph graph_from_names(std::uint32_t n, const std::vector<std::string>& arc_names) {
  std::set<std::string> alphabet(arc_names.begin(), arc_names.end());
  std::vector<std::string> names(alphabet.begin(), alphabet.end());
  std::map<std::string, Colour> id;
  for (Colour c = 0; c < names.size(); ++c) id[names[c]] = c;
  std::vector<Colour> colours(static_cast<std::size_t>(n) * n);
  for (std::size_t e = 0; e < colours.size(); ++e) colours[e] = id[arc_names[e]];
  return Graph::from_partition(Partition(n, 2, std::move(colours)), std::move(names));
}

}  // namespace

Graph from_edges(std::uint32_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  if (n == 0) throw std::invalid_argument("from_edges: empty vertex set");
  std::vector<std::string> arc_names(static_cast<std::size_t>(n) * n, "nonedge");
  for (Vertex v = 0; v < n; ++v) arc_names[static_cast<std::size_t>(v) * n + v] = "loop";
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("from_edges: vertex out of range");
    if (u == v) throw std::invalid_argument("from_edges: loops are not edges");
    arc_names[static_cast<std::size_t>(u) * n + v] = "edge";
    arc_names[static_cast<std::size_t>(v) * n + u] = "edge";
  }
  return graph_from_names(n, arc_names);
}

Graph path_graph(std::uint32_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return from_edges(n, edges);
}

Graph cycle_graph(std::uint32_t n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need at least 3 vertices");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return from_edges(n, edges);
}

Graph complete_graph(std::uint32_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return from_edges(n, edges);
}

Graph complete_bipartite_graph(std::uint32_t a, std::uint32_t b) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) edges.emplace_back(u, a + v);
  return from_edges(a + b, edges);
}

Graph grid_graph(std::uint32_t rows, std::uint32_t cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("grid_graph: empty grid");
  std::vector<std::pair<Vertex, Vertex>> edges;
  auto at = [cols](std::uint32_t r, std::uint32_t c) { return r * cols + c; };
  for (std::uint32_t r = 0; r < rows; ++r)
    for (std::uint32_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(at(r, c), at(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(at(r, c), at(r + 1, c));
    }
  return from_edges(rows * cols, edges);
}

Graph petersen_graph() {
  // Kneser graph on the 2-subsets of a 5-set: adjacent iff disjoint.
  std::vector<std::pair<int, int>> subsets;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) subsets.emplace_back(a, b);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (std::size_t j = i + 1; j < subsets.size(); ++j) {
      auto [a, b] = subsets[i];
      auto [c, d] = subsets[j];
      if (a != c && a != d && b != c && b != d)
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  return from_edges(10, edges);
}

Graph shrikhande_graph() {
  // Z4 x Z4, adjacent iff the difference is +-(1,0), +-(0,1) or +-(1,1).
  std::vector<std::pair<Vertex, Vertex>> edges;
  auto at = [](int x, int y) { return static_cast<Vertex>(((x % 4 + 4) % 4) * 4 + ((y % 4 + 4) % 4)); };
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      Vertex u = at(x, y);
      for (auto [dx, dy] : {std::pair{1, 0}, {0, 1}, {1, 1}}) {
        Vertex v = at(x + dx, y + dy);
        edges.emplace_back(std::min(u, v), std::max(u, v));
      }
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return from_edges(16, edges);
}

Graph rook_graph_4x4() {
  // 4x4 grid, adjacent iff same row or same column.
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < 16; ++u)
    for (Vertex v = u + 1; v < 16; ++v)
      if (u / 4 == v / 4 || u % 4 == v % 4) edges.emplace_back(u, v);
  return from_edges(16, edges);
}

std::vector<Graph> all_graphs_on_4_vertices() {
  using E = std::vector<std::pair<Vertex, Vertex>>;
  std::vector<E> classes = {
      {},                                              // empty
      {{0, 1}},                                        // one edge
      {{0, 1}, {2, 3}},                                // perfect matching
      {{0, 1}, {1, 2}},                                // 2-path plus isolated vertex
      {{0, 1}, {1, 2}, {0, 2}},                        // triangle plus isolated vertex
      {{0, 1}, {0, 2}, {0, 3}},                        // star
      {{0, 1}, {1, 2}, {2, 3}},                        // 3-path
      {{0, 1}, {1, 2}, {0, 2}, {0, 3}},                // triangle with a pendant
      {{0, 1}, {1, 2}, {2, 3}, {3, 0}},                // 4-cycle
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}},        // diamond
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}  // complete
  };
  std::vector<Graph> out;
  out.reserve(classes.size());
  for (const E& edges : classes) out.push_back(from_edges(4, edges));
  return out;
}

Graph named_graph(const std::string& name, const std::vector<std::uint32_t>& params) {
  auto want = [&](std::size_t count) {
    if (params.size() != count)
      throw std::invalid_argument("named_graph: '" + name + "' takes " + std::to_string(count) +
                                  " parameter(s)");
  };
  if (name == "path") {
    want(1);
    return path_graph(params[0]);
  }
  if (name == "cycle") {
    want(1);
    return cycle_graph(params[0]);
  }
  if (name == "complete") {
    want(1);
    return complete_graph(params[0]);
  }
  if (name == "complete_bipartite") {
    want(2);
    return complete_bipartite_graph(params[0], params[1]);
  }
  if (name == "grid") {
    want(2);
    return grid_graph(params[0], params[1]);
  }
  if (name == "petersen") {
    want(0);
    return petersen_graph();
  }
  if (name == "shrikhande") {
    want(0);
    return shrikhande_graph();
  }
  if (name == "rook44") {
    want(0);
    return rook_graph_4x4();
  }
  throw std::invalid_argument("named_graph: unknown name '" + name + "'");
}

std::vector<std::pair<Vertex, Vertex>> undirected_edges(const Graph& g) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = u + 1; v < g.n(); ++v) {
      Colour c = g.arc_colour(u, v);
      if (g.colour_names()[c] == "edge") {
        if (g.arc_colour(v, u) != c)
          throw std::invalid_argument("undirected_edges: graph is not undirected");
        edges.emplace_back(u, v);
      }
    }
  return edges;
}

namespace {

std::vector<std::vector<std::uint32_t>> incident_edges(std::uint32_t n,
                                                       const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<std::vector<std::uint32_t>> inc(n);
  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    inc[edges[e].first].push_back(e);
    inc[edges[e].second].push_back(e);
  }
  return inc;
}

bool connected(std::uint32_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  if (n == 0) return false;
  std::vector<std::vector<Vertex>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack = {0};
  seen[0] = true;
  std::uint32_t visited = 0;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    ++visited;
    for (Vertex v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
  }
  return visited == n;
}

}  // namespace

Graph cfi_graph(const Graph& base, const std::vector<std::uint32_t>& twisted_edges,
                const Caps& caps) {
  const std::uint32_t n = base.n();
  const auto edges = undirected_edges(base);
  const auto inc = incident_edges(n, edges);
  for (Vertex v = 0; v < n; ++v)
    if (inc[v].size() < 2)
      throw std::invalid_argument("cfi_graph: base must have minimum degree 2");
  if (!connected(n, edges)) throw std::invalid_argument("cfi_graph: base must be connected");
  for (std::uint32_t e : twisted_edges)
    if (e >= edges.size()) throw std::invalid_argument("cfi_graph: twisted edge out of range");

  // Gadget vertices per base vertex: one per even subset of incident edges,
  // then connector pairs (present, absent) per incident edge.
  std::uint64_t total = 0;
  std::vector<std::uint32_t> gadget_start(n), connector_start(n);
  for (Vertex v = 0; v < n; ++v) {
    gadget_start[v] = static_cast<std::uint32_t>(total);
    total += std::uint64_t{1} << (inc[v].size() - 1);
    connector_start[v] = static_cast<std::uint32_t>(total);
    total += 2 * inc[v].size();
    if (total * total > caps.max_tuples)
      throw CapExceeded("cfi_graph: gadget graph exceeds the configured cap");
  }

  // even subsets of {0..d-1}, as bitmasks in increasing order
  auto even_subsets = [](std::uint32_t d) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask)
      if (__builtin_popcount(mask) % 2 == 0) out.push_back(mask);
    return out;
  };
  // connector vertex for (v, slot s, present?) with s the position of the
  // edge in inc[v]
  auto connector = [&](Vertex v, std::uint32_t slot, bool present) {
    return connector_start[v] + 2 * slot + (present ? 0 : 1);
  };

  std::vector<std::pair<Vertex, Vertex>> out_edges;
  for (Vertex v = 0; v < n; ++v) {
    const std::uint32_t d = static_cast<std::uint32_t>(inc[v].size());
    const auto subsets = even_subsets(d);
    for (std::uint32_t si = 0; si < subsets.size(); ++si) {
      Vertex gv = gadget_start[v] + si;
      for (std::uint32_t slot = 0; slot < d; ++slot) {
        bool in_subset = (subsets[si] >> slot) & 1;
        out_edges.emplace_back(gv, connector(v, slot, in_subset));
      }
    }
  }
  std::vector<bool> twisted(edges.size(), false);
  for (std::uint32_t e : twisted_edges) twisted[e] = true;
  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    std::uint32_t su = static_cast<std::uint32_t>(
        std::find(inc[u].begin(), inc[u].end(), e) - inc[u].begin());
    std::uint32_t sv = static_cast<std::uint32_t>(
        std::find(inc[v].begin(), inc[v].end(), e) - inc[v].begin());
    if (!twisted[e]) {
      out_edges.emplace_back(connector(u, su, true), connector(v, sv, true));
      out_edges.emplace_back(connector(u, su, false), connector(v, sv, false));
    } else {
      out_edges.emplace_back(connector(u, su, true), connector(v, sv, false));
      out_edges.emplace_back(connector(u, su, false), connector(v, sv, true));
    }
  }
  return from_edges(static_cast<std::uint32_t>(total), out_edges);
}

CfiPair cfi_pair(const Graph& base, const Caps& caps) {
  CfiPair pair{cfi_graph(base, {}, caps), cfi_graph(base, {0}, caps), 0, 1};
  return pair;
}

Graph random_coloured_digraph(std::uint32_t n, std::uint32_t colour_count, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_coloured_digraph: empty vertex set");
  if (colour_count < 2)
    throw std::invalid_argument("random_coloured_digraph: need at least 2 colours");
  detail::SplitMix64 rng(seed);
  const std::uint32_t loop_palette = std::max<std::uint32_t>(1, colour_count / 3);

  std::vector<std::string> arc_names(static_cast<std::size_t>(n) * n);
  for (Vertex v = 0; v < n; ++v)
    arc_names[static_cast<std::size_t>(v) * n + v] =
        "L" + std::to_string(rng.below(loop_palette));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      std::uint64_t c = rng.below(colour_count);
      bool symmetric = rng.below(2) == 0;
      if (symmetric) {
        arc_names[static_cast<std::size_t>(u) * n + v] = "S" + std::to_string(c);
        arc_names[static_cast<std::size_t>(v) * n + u] = "S" + std::to_string(c);
      } else {
        bool forward = rng.below(2) == 0;
        arc_names[static_cast<std::size_t>(u) * n + v] =
            "D" + std::to_string(c) + (forward ? "h" : "t");
        arc_names[static_cast<std::size_t>(v) * n + u] =
            "D" + std::to_string(c) + (forward ? "t" : "h");
      }
    }
  return graph_from_names(n, arc_names);
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  const std::uint32_t n = g.n() + h.n();
  std::set<std::string> alphabet;
  for (const std::string& s : g.colour_names()) alphabet.insert(s);
  for (const std::string& s : h.colour_names()) alphabet.insert(s);
  std::string cross = "cross";
  while (alphabet.count(cross)) cross += "+";

  std::vector<std::string> arc_names(static_cast<std::size_t>(n) * n, cross);
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = 0; v < g.n(); ++v)
      arc_names[static_cast<std::size_t>(u) * n + v] = g.colour_names()[g.arc_colour(u, v)];
  for (Vertex u = 0; u < h.n(); ++u)
    for (Vertex v = 0; v < h.n(); ++v)
      arc_names[static_cast<std::size_t>(g.n() + u) * n + (g.n() + v)] =
          h.colour_names()[h.arc_colour(u, v)];
  return graph_from_names(n, arc_names);
}

}  // namespace wllab
