#pragma once

#include <string>
#include <vector>

#include "wllab/coherent.hpp"
#include "wllab/refine.hpp"

namespace wllab {

enum class SpasFamily { WL, C, IM, IMt, IMr, EP };

const char* to_string(SpasFamily f);

// One approximation scheme: a graded family of arc-partition maps.
struct SpasId {
  SpasFamily family = SpasFamily::WL;
  std::uint32_t r = 1;             // substitution arity for WL/C/IMr
  std::optional<FieldSpec> field;  // IM/IMt/IMr

  std::string name() const;
};

struct SpasResult {
  Partition arcs;  // canonical arc partition of V^2
  std::uint32_t iterations = 0;
};

// Level k of the scheme on a graph: level 1 is the graph itself; level k >= 2
// stabilizes the atomic types of k-tuples under the family's operator and
// projects the fixed point back to arcs.
SpasResult spas_apply_detailed(const SpasId& s, const Graph& g, std::uint32_t k,
                               const Caps& caps = {});
Partition spas_apply(const SpasId& s, const Graph& g, std::uint32_t k, const Caps& caps = {});

struct PairSchemeResult {
  CoherentConfiguration configuration;  // on V
  Partition pair_fixed_point;           // stable arc partition over the vertex set V^k
  std::uint32_t iterations = 0;
};

// The pairwise lift: pairs of k-tuples are coloured entrywise, with a marker
// on the pairs of equal constant tuples; the arity-2 operator stabilizes the
// lift over the vertex set V^k, and the result is pulled back to V along
// u -> (u,...,u).
PairSchemeResult ep_detailed(const Graph& g, std::uint32_t k, const Caps& caps = {});
CoherentConfiguration ep(const Graph& g, std::uint32_t k, const Caps& caps = {});

// Orbits of the induced action of the automorphism group on V^k. Brute force,
// for small graphs only: the exact upper reference every scheme converges to.
Partition orbit_partition(const Graph& g, std::uint32_t k, const Caps& caps = {});

// Runs the scheme at level k on the disjoint union and reports whether the
// two sides end up with different arc-colour multisets.
bool distinguishes(const SpasId& s, std::uint32_t k, const Graph& g, const Graph& h,
                   const Caps& caps = {});

struct SpasPoint {
  SpasId id;
  std::uint32_t k = 2;
};

struct DominanceEntry {
  std::string graph;
  CompareResult outcome;
};

struct DominancePairReport {
  SpasPoint left, right;
  std::vector<DominanceEntry> entries;

  bool all_equivalent() const;
  // No graph on which the left side is strictly finer or the two are
  // incomparable: consistent with "left below right".
  bool left_never_finer() const;
  bool right_never_finer() const;
};

struct DominanceReport {
  std::vector<DominancePairReport> pairs;
};

DominanceReport dominance_report(const std::vector<std::pair<std::string, Graph>>& corpus,
                                 const std::vector<std::pair<SpasPoint, SpasPoint>>& pairs,
                                 const Caps& caps = {});

struct AxiomCheckReport {
  bool chain_monotone = true;
  bool idempotent = true;
  bool reaches_orbits = true;
  std::string detail;

  bool ok() const { return chain_monotone && idempotent && reaches_orbits; }
};

// Exhaustive check of the scheme axioms on one small graph: levels 1..n form
// a monotone chain, re-running any level on a stabilized output changes
// nothing, and level n agrees with the orbit partition.
AxiomCheckReport spas_axiom_check(const SpasId& s, const Graph& g, const Caps& caps = {});

struct RankProbeOutcome {
  bool separated = false;
  std::uint32_t rounds = 0;
  std::uint32_t classes = 0;
};

// A sound one-sided stand-in for the invertible-map test over GF(2) at sizes
// where exact similarity searches are out of reach. Tuples are refined by the
// GF(2) rank and trace profiles of their indicator matrices — at depth 2 also
// by the ranks of pairwise sums — all of which are invariant under
// simultaneous conjugation, so this partition is a coarsening of the
// invertible-map fixed point: when the two sides separate here, the full test
// separates them as well. Both graphs must share one colour alphabet.
RankProbeOutcome gf2_rank_probe_distinguishes(const Graph& g, const Graph& h, std::uint32_t k,
                                              std::uint32_t depth = 1, const Caps& caps = {});

}  // namespace wllab
