#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wllab/graph.hpp"

namespace wllab {

// Undirected simple graph as an arc-coloured digraph with the colour alphabet
// {edge, loop, nonedge} (only realized colours appear).
Graph from_edges(std::uint32_t n, const std::vector<std::pair<Vertex, Vertex>>& edges);

Graph path_graph(std::uint32_t n);
Graph cycle_graph(std::uint32_t n);
Graph complete_graph(std::uint32_t n);
Graph complete_bipartite_graph(std::uint32_t a, std::uint32_t b);
Graph grid_graph(std::uint32_t rows, std::uint32_t cols);
Graph petersen_graph();
// Both strongly regular with parameters (16, 6, 2, 2), yet non-isomorphic.
Graph shrikhande_graph();
Graph rook_graph_4x4();

// All 11 isomorphism classes of simple undirected graphs on 4 vertices.
std::vector<Graph> all_graphs_on_4_vertices();

// Dispatch by name: path/cycle/complete/complete_bipartite/grid take their
// size parameters; petersen/shrikhande/rook44 take none.
Graph named_graph(const std::string& name, const std::vector<std::uint32_t>& params = {});

// Edges of an undirected simple graph, as sorted (u < v) pairs.
std::vector<std::pair<Vertex, Vertex>> undirected_edges(const Graph& g);

struct CfiPair {
  Graph untwisted;
  Graph twisted;
  std::uint32_t untwisted_parity = 0;  // twist count mod 2; the certificate
  std::uint32_t twisted_parity = 1;    // that the two sides are non-isomorphic
};

// The gadget replacement over a connected base with minimum degree 2: one
// even-subset gadget per vertex, one connector pair per edge end, edge ends
// joined straight. Twisting an edge swaps one connector pair.
Graph cfi_graph(const Graph& base, const std::vector<std::uint32_t>& twisted_edges,
                const Caps& caps = {});
CfiPair cfi_pair(const Graph& base, const Caps& caps = {});

// Seeded deterministic rainbow: loop colours from their own palette, each
// unordered pair coloured symmetric or directed.
Graph random_coloured_digraph(std::uint32_t n, std::uint32_t colour_count, std::uint64_t seed);

// Vertex-disjoint union. Colour alphabets merge by name; all cross arcs get
// one fresh colour.
Graph disjoint_union(const Graph& g, const Graph& h);

}  // namespace wllab
