#include <doctest.h>

#include <algorithm>
#include <set>

#include "wllab/errors.hpp"
#include "wllab/generators.hpp"
#include "wllab/isomorphism.hpp"
#include "wllab/spas.hpp"

using namespace wllab;

namespace {

const SpasId kWl{SpasFamily::WL, 1, std::nullopt};
const SpasId kC{SpasFamily::C, 1, std::nullopt};

}  // namespace

TEST_CASE("level 1 is the graph itself") {
  Graph g = cycle_graph(5);
  CHECK(compare(spas_apply(kWl, g, 1), g.arcs()) == CompareResult::Equivalent);
}

TEST_CASE("level 2 of wl on the 3-path") {
  Partition arcs = spas_apply(kWl, path_graph(3), 2);
  CHECK(arcs.class_count() == 5);
}

TEST_CASE("levels form a monotone chain") {
  for (const Graph& g : {path_graph(4), cycle_graph(4)}) {
    for (const SpasId& s : {kWl, kC}) {
      Partition prev = spas_apply(s, g, 1);
      for (std::uint32_t k = 2; k <= 4; ++k) {
        Partition next = spas_apply(s, g, k);
        CompareResult r = compare(prev, next);
        CHECK((r == CompareResult::Equivalent || r == CompareResult::FinerRight));
        prev = std::move(next);
      }
    }
  }
}

TEST_CASE("counting level k+1 equals wl level k on small graphs") {
  for (const Graph& g : {path_graph(3), cycle_graph(5), complete_graph(4)}) {
    for (std::uint32_t k : {2u, 3u}) {
      CHECK(compare(spas_apply(kC, g, k + 1), spas_apply(kWl, g, k)) ==
            CompareResult::Equivalent);
    }
  }
}

TEST_CASE("at level 1 the convention X_1 = G breaks the equality") {
  // Level 1 returns the graph itself, while the counting fixed point at
  // arity 2 genuinely refines irregular graphs, so only one direction holds
  // there.
  Graph p3 = path_graph(3);
  CHECK(compare(spas_apply(kC, p3, 2), spas_apply(kWl, p3, 1)) == CompareResult::FinerLeft);
  CHECK(refines(spas_apply(kWl, p3, 1), spas_apply(kC, p3, 2)));
}

TEST_CASE("orbit partition of the 4-cycle at k = 2") {
  Partition orbits = orbit_partition(cycle_graph(4), 2);
  CHECK(orbits.class_count() == 3);
  TupleCodec codec(4, 2);
  auto colour = [&](Vertex u, Vertex v) { return orbits.colour(codec.encode({u, v})); };
  CHECK(colour(0, 0) == colour(2, 2));
  CHECK(colour(0, 1) == colour(1, 2));
  CHECK(colour(0, 1) == colour(3, 2));
  CHECK(colour(0, 2) == colour(1, 3));
  CHECK(colour(0, 2) != colour(0, 1));
}

TEST_CASE("orbit partition of complete graphs") {
  CHECK(orbit_partition(complete_graph(4), 2).class_count() == 2);
  CHECK(orbit_partition(complete_graph(3), 3).class_count() == 5);
}

TEST_CASE("a rigid graph has discrete orbits") {
  // an asymmetric graph on 6 vertices
  Graph rigid = from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 5}, {1, 2}, {1, 4}, {2, 3}});
  REQUIRE(all_automorphisms(rigid).size() == 1);
  CHECK(orbit_partition(rigid, 1).class_count() == 6);
  CHECK(orbit_partition(rigid, 2).class_count() == 36);
}

TEST_CASE("schemes never refine past the orbit partition") {
  for (const Graph& g : {path_graph(4), cycle_graph(5)}) {
    for (std::uint32_t k : {2u, 3u}) {
      Partition orbit_arcs = project_partition(orbit_partition(g, k), 2);
      Partition arcs = spas_apply(kWl, g, k);
      CompareResult r = compare(arcs, orbit_arcs);
      CHECK((r == CompareResult::Equivalent || r == CompareResult::FinerRight));
    }
  }
}

TEST_CASE("the pair scheme at level 1 is the wl closure") {
  for (const Graph& g : {path_graph(3), cycle_graph(5), path_graph(4)}) {
    CoherentConfiguration lifted = ep(g, 1);
    CHECK(compare(lifted.rainbow().arcs(), spas_apply(kWl, g, 2)) == CompareResult::Equivalent);
  }
}

TEST_CASE("the constant-tuple set is a union of cells of the lifted fixed point") {
  Graph g = path_graph(3);
  PairSchemeResult r = ep_detailed(g, 2);
  const Partition& fp = r.pair_fixed_point;
  const std::uint32_t m = fp.n();  // 9 = 3^2
  TupleCodec base(3, 2);
  std::set<Colour> diag_loops, other_loops;
  for (std::uint32_t w = 0; w < m; ++w) {
    Colour loop = fp.colour(static_cast<TupleCode>(w) * m + w);
    bool constant = false;
    for (Vertex v = 0; v < 3; ++v) constant |= (w == base.constant(v));
    (constant ? diag_loops : other_loops).insert(loop);
  }
  for (Colour c : diag_loops) CHECK_FALSE(other_loops.count(c));
}

TEST_CASE("pair scheme sandwich at level 1") {
  for (const Graph& g : {path_graph(4), cycle_graph(5)}) {
    Partition low = spas_apply(kWl, g, 1);
    Partition mid = canonicalize(ep(g, 1).rainbow().arcs());
    Partition high = spas_apply(kWl, g, 3);
    CHECK(refines(low, mid));
    CHECK(refines(mid, high));
  }
}

TEST_CASE("pair scheme cap") {
  Caps caps;
  caps.max_pair_scheme_k = 2;
  CHECK_THROWS_AS(ep(path_graph(3), 3, caps), CapExceeded);
  caps.allow_large_pair_scheme = true;
  CHECK_NOTHROW(ep(path_graph(3), 3, caps));
}

TEST_CASE("distinguishes is false on equal graphs") {
  Graph g = cycle_graph(6);
  CHECK_FALSE(distinguishes(kWl, 2, g, g));
}

TEST_CASE("wl level 2 separates a 6-cycle from two triangles") {
  Graph c6 = cycle_graph(6);
  Graph cc3 = from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK(distinguishes(kWl, 2, c6, cc3));
  CHECK_FALSE(distinguishes(kWl, 1, c6, cc3));
}

TEST_CASE("wl level 2 cannot separate shrikhande from the rook graph") {
  CHECK_FALSE(distinguishes(kWl, 2, shrikhande_graph(), rook_graph_4x4()));
}

TEST_CASE("axiom check passes for wl and c on small graphs") {
  for (const Graph& g : {path_graph(3), cycle_graph(4)}) {
    for (const SpasId& s : {kWl, kC}) {
      AxiomCheckReport report = spas_axiom_check(s, g);
      CHECK(report.ok());
      if (!report.ok()) MESSAGE(report.detail);
    }
  }
}

TEST_CASE("dominance report aggregates outcomes") {
  std::vector<std::pair<std::string, Graph>> corpus = {{"p3", path_graph(3)},
                                                       {"c5", cycle_graph(5)}};
  SpasPoint c3{kC, 3};
  SpasPoint wl2{kWl, 2};
  DominanceReport report = dominance_report(corpus, {{c3, wl2}, {wl2, c3}});
  REQUIRE(report.pairs.size() == 2);
  CHECK(report.pairs[0].all_equivalent());
  CHECK(report.pairs[0].left_never_finer());
  CHECK(report.pairs[1].right_never_finer());
  CHECK(report.pairs[0].entries.size() == 2);
}

TEST_CASE("rank probe agrees with wl on an easy separation") {
  Graph c6 = cycle_graph(6);
  Graph cc3 = from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  RankProbeOutcome outcome = gf2_rank_probe_distinguishes(c6, cc3, 3);
  CHECK(outcome.separated);
  CHECK(outcome.rounds >= 1);
}

TEST_CASE("rank probe does not separate a graph from itself") {
  Graph g = cycle_graph(5);
  RankProbeOutcome outcome = gf2_rank_probe_distinguishes(g, g, 3);
  CHECK_FALSE(outcome.separated);
}
