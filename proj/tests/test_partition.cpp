#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "wllab/generators.hpp"
#include "wllab/graph.hpp"
#include "wllab/partition.hpp"
#include "wllab/prng.hpp"
#include "wllab/refine.hpp"

using namespace wllab;

namespace {

Partition random_partition(std::uint32_t n, std::uint32_t arity, std::uint32_t classes,
                           std::uint64_t seed) {
  TupleCodec codec(n, arity);
  detail::SplitMix64 rng(seed);
  std::vector<Colour> colours(codec.size());
  for (auto& c : colours) c = static_cast<Colour>(rng.below(classes));
  // densify
  detail::SignatureInterner interner;
  for (auto& c : colours) c = interner.intern({c});
  return Partition(n, arity, std::move(colours));
}

}  // namespace

TEST_CASE("construction validates density and shape") {
  CHECK_THROWS_AS(Partition(2, 2, {0, 2, 2, 2}), std::invalid_argument);  // id 1 unused
  CHECK_THROWS_AS(Partition(2, 2, {0, 1}), std::invalid_argument);        // wrong size
  Partition p(2, 1, {1, 0});
  CHECK(p.class_count() == 2);
}

TEST_CASE("canonicalize relabels by first occurrence and is idempotent") {
  Partition g(3, 1, {1, 1, 0});
  Partition c = canonicalize(g);
  CHECK(c.colours() == std::vector<Colour>{0, 0, 1});
  CHECK(canonicalize(c) == c);
  CHECK(compare(g, c) == CompareResult::Equivalent);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Partition r = random_partition(4, 2, 5, seed);
    CHECK(compare(r, canonicalize(r)) == CompareResult::Equivalent);
    CHECK(canonicalize(canonicalize(r)) == canonicalize(r));
  }
}

TEST_CASE("compare distinguishes the four outcomes") {
  Graph p3 = path_graph(3);
  Partition atoms = atomic_types(p3, 2);
  CHECK(compare(atoms, atoms) == CompareResult::Equivalent);
  CHECK(compare(atoms, Partition::discrete(3, 2)) == CompareResult::FinerRight);
  CHECK(compare(Partition::discrete(3, 2), atoms) == CompareResult::FinerLeft);

  Partition evens_odds(4, 1, {0, 1, 0, 1});
  Partition halves(4, 1, {0, 0, 1, 1});
  CHECK(compare(evens_odds, halves) == CompareResult::Incomparable);
  CHECK_THROWS_AS(compare(evens_odds, Partition::discrete(5, 1)), std::invalid_argument);
}

TEST_CASE("compare behaves like a partial order on random partitions") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Partition a = random_partition(4, 2, 3, seed);
    Partition b = random_partition(4, 2, 5, seed + 1000);
    // antisymmetry modulo equivalence
    if (compare(a, b) == CompareResult::FinerRight)
      CHECK(compare(b, a) == CompareResult::FinerLeft);
    // transitivity along a refinement chain: a, then a refined by b's classes
    detail::SignatureInterner interner;
    std::vector<Colour> joint(a.tuple_count());
    for (TupleCode t = 0; t < a.tuple_count(); ++t)
      joint[t] = interner.intern({a.colour(t), b.colour(t)});
    Partition meet(4, 2, std::move(joint));
    CHECK(refines(a, meet));
    CHECK(refines(b, meet));
    if (compare(a, meet) == CompareResult::Equivalent && compare(b, a) == CompareResult::Equivalent)
      CHECK(compare(b, meet) == CompareResult::Equivalent);
  }
}

TEST_CASE("atomic types of the 3-path split arcs into loops, edges and non-edges") {
  Graph p3 = path_graph(3);
  Partition atoms = atomic_types(p3, 2);

  // Oracle: group the 9 arcs directly from the edge list.
  std::set<std::pair<Vertex, Vertex>> edge = {{0, 1}, {1, 0}, {1, 2}, {2, 1}};
  std::map<int, std::set<TupleCode>> expected;  // 0 loop / 1 edge / 2 non-edge
  for (Vertex u = 0; u < 3; ++u)
    for (Vertex v = 0; v < 3; ++v) {
      int kind = u == v ? 0 : (edge.count({u, v}) ? 1 : 2);
      expected[kind].insert(static_cast<TupleCode>(u) * 3 + v);
    }
  CHECK(atoms.class_count() == 3);
  for (const auto& [kind, arcs] : expected) {
    std::set<Colour> colours;
    for (TupleCode t : arcs) colours.insert(atoms.colour(t));
    CHECK(colours.size() == 1);
  }
}

TEST_CASE("atomic types of complete graphs") {
  Graph k3 = complete_graph(3);
  CHECK(atomic_types(k3, 2).class_count() == 2);

  // k = 3: oracle over all 27 triples, classes follow the equality pattern
  // alone because every pair of distinct vertices is adjacent.
  Partition atoms = atomic_types(k3, 3);
  TupleCodec codec(3, 3);
  std::map<std::vector<int>, std::set<Colour>> by_pattern;
  for (TupleCode t = 0; t < codec.size(); ++t) {
    VertexTuple v = codec.decode(t);
    std::vector<int> pat;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != j) pat.push_back(v[i] == v[j] ? 1 : 0);
    by_pattern[pat].insert(atoms.colour(t));
  }
  CHECK(by_pattern.size() == 5);
  CHECK(atoms.class_count() == 5);
  for (const auto& [pat, colours] : by_pattern) CHECK(colours.size() == 1);
  CHECK(atoms.colour(codec.encode({0, 1, 2})) == atoms.colour(codec.encode({1, 2, 0})));
}

TEST_CASE("atomic types at k = 1 follow the loop colours") {
  Graph p3 = path_graph(3);
  Partition atoms = atomic_types(p3, 1);
  CHECK(atoms.class_count() == 1);  // plain graphs have one loop colour
}

TEST_CASE("projection pads with the last listed entry") {
  Graph k3 = complete_graph(3);
  Partition a3 = atomic_types(k3, 3);
  Partition a2 = atomic_types(k3, 2);
  CHECK(compare(project_partition(a3, 2), a2) == CompareResult::Equivalent);
  CHECK(compare(project_partition(a3, 3), a3) == CompareResult::Equivalent);
  CHECK(project_partition(Partition::discrete(3, 2), 1).class_count() == 3);
  CHECK_THROWS_AS(project_partition(a3, 0), std::invalid_argument);
  CHECK_THROWS_AS(project_partition(a3, 4), std::invalid_argument);
}

TEST_CASE("reshape is pure reindexing") {
  Graph p3 = path_graph(3);
  Partition g = atomic_types(p3, 2);
  Partition r = reshape(g, 1, 2);
  CHECK(r.n() == 3);
  CHECK(r.arity() == 2);
  CHECK(r.colours() == g.colours());

  // k=2, p=2 over two vertices: the pair ((0,1),(1,0)) is the flat (0,1,1,0)
  Partition d = Partition::discrete(2, 4);
  Partition rd = reshape(d, 2, 2);
  CHECK(rd.n() == 4);
  TupleCodec flat(2, 4), block(4, 2);
  CHECK(rd.colour(block.encode({1, 2})) == d.colour(flat.encode({0, 1, 1, 0})));
  CHECK(rd.colours() == d.colours());  // the table itself moves verbatim
  CHECK_THROWS_AS(reshape(d, 3, 2), std::invalid_argument);
}

TEST_CASE("invariance holds for atomic types and fails on a twisted merge") {
  for (std::uint32_t k = 1; k <= 3; ++k) CHECK(is_invariant(atomic_types(path_graph(3), k)));
  CHECK(is_invariant(Partition::discrete(3, 2)));

  // (0,1) and (2,1) merged, but their swaps land in different classes.
  std::vector<Colour> colours(9, 0);
  TupleCodec codec(3, 2);
  colours[codec.encode({0, 1})] = 1;
  colours[codec.encode({2, 1})] = 1;
  colours[codec.encode({1, 2})] = 1;
  colours[codec.encode({1, 0})] = 2;
  Partition twisted(3, 2, std::move(colours));
  CHECK_FALSE(is_invariant(twisted));
}

TEST_CASE("consistency examples") {
  CHECK(is_consistent(atomic_types(complete_graph(3), 2), 1));
  CHECK(is_consistent(Partition::discrete(3, 2), 1));
  CHECK(is_consistent(Partition::discrete(3, 2), 2));

  // (0,0) and (0,1) share a class although the loop colours of 0 and 1 differ
  Partition bad(2, 2, {0, 0, 1, 1});
  CHECK_FALSE(is_consistent(bad, 1));
}

TEST_CASE("graph-like reports name the first violated condition") {
  CHECK(is_graph_like(atomic_types(path_graph(3), 2)));
  CHECK(is_graph_like(atomic_types(path_graph(3), 3)));

  // merging a loop class with a non-loop class breaks the equality pattern
  Partition merged(2, 2, {0, 0, 1, 0});
  GraphLikeReport report = graph_like_report(merged);
  CHECK_FALSE(report.ok);
  CHECK_FALSE(report.violation.empty());
}

TEST_CASE("class-equal tuples substitute their own projections alike") {
  // On graph-like partitions, substituting a tuple's own projected entries
  // lands class-equal tuples in the same class again.
  std::vector<Partition> corpus;
  for (std::uint32_t k = 2; k <= 3; ++k) {
    corpus.push_back(atomic_types(path_graph(4), k));
    corpus.push_back(atomic_types(cycle_graph(5), k));
    corpus.push_back(fixed_point({OpFamily::WL, k, 1, std::nullopt},
                                 atomic_types(path_graph(4), k))
                         .partition);
  }
  for (const Partition& g : corpus) {
    REQUIRE(is_graph_like(g));
    const std::uint32_t k = g.arity();
    // first member of each class vs up to two later members
    std::map<Colour, std::vector<TupleCode>> classes;
    for (TupleCode t = 0; t < g.tuple_count(); ++t)
      if (classes[g.colour(t)].size() < 3) classes[g.colour(t)].push_back(t);
    for (std::uint32_t r = 1; r <= k; ++r) {
      auto ivs = injective_index_vectors(k, r);
      auto jvs = index_vectors(k, r);
      for (const auto& [colour, members] : classes) {
        for (std::size_t mi = 1; mi < members.size(); ++mi) {
          VertexTuple u = g.codec().decode(members[0]);
          VertexTuple v = g.codec().decode(members[mi]);
          for (const IndexVec& iv : ivs)
            for (const IndexVec& jv : jvs) {
              Colour cu = g.colour(substitute(u, iv, project(u, jv)));
              Colour cv = g.colour(substitute(v, iv, project(v, jv)));
              CHECK(cu == cv);
            }
        }
      }
    }
  }
}

TEST_CASE("projections of graph-like partitions stay graph-like") {
  Partition stable =
      fixed_point({OpFamily::WL, 3, 1, std::nullopt}, atomic_types(cycle_graph(4), 3)).partition;
  REQUIRE(is_graph_like(stable));
  for (std::uint32_t t = 1; t <= 3; ++t) CHECK(is_graph_like(project_partition(stable, t)));
}
