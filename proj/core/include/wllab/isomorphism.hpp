#pragma once

#include <optional>
#include <vector>

#include "wllab/graph.hpp"

namespace wllab {

// All colour-preserving permutations of the vertex set, by backtracking.
// Refuses vertex sets above the configured cap.
std::vector<std::vector<Vertex>> all_automorphisms(const Graph& g, const Caps& caps = {});

// A bijection matching arc colours by *name*, or nullopt when none exists
// (exhaustive backtracking, so a nullopt is a proof). The graphs may use
// different alphabets; names that only one side realizes rule an iso out.
std::optional<std::vector<Vertex>> find_colour_isomorphism(const Graph& g, const Graph& h,
                                                           const Caps& caps = {});

}  // namespace wllab
