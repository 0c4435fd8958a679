#pragma once

#include <cstdint>

namespace wllab {

// Resource limits for the n^O(k) algorithms. Defaults are sized for desk-scale
// experiments; raise them explicitly when a run needs more.
struct Caps {
  // Maximum number of entries of a dense colour table (n^k).
  std::uint64_t max_tuples = std::uint64_t{1} << 24;
  // Maximum size of the exhaustive fallback in the similarity search.
  std::uint64_t max_similarity_search = std::uint64_t{1} << 20;
  // Bounded random probing before the exhaustive fallback kicks in.
  std::uint32_t similarity_retries = 48;
  // Maximum colour count for intersection-number tables.
  std::uint32_t max_table_colours = 128;
  // Maximum colour count for the algebraic-isomorphism backtracking.
  std::uint32_t max_bijection_colours = 64;
  // Brute-force automorphism enumeration refuses larger vertex sets.
  std::uint32_t max_orbit_vertices = 8;
  // The pair-scheme lift keeps k small by default; larger k only on request.
  std::uint32_t max_pair_scheme_k = 2;
  bool allow_large_pair_scheme = false;
  // Prime fields are limited to word-sized moduli.
  std::uint64_t max_prime = std::uint64_t{1} << 31;
  // Seed for all deterministic pseudo-random probing.
  std::uint64_t seed = 0x77ab5eedULL;
};

}  // namespace wllab
