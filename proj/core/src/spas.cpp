#include "wllab/spas.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "wllab/errors.hpp"
#include "wllab/generators.hpp"
#include "wllab/isomorphism.hpp"

namespace wllab {

const char* to_string(SpasFamily f) {
  switch (f) {
    case SpasFamily::WL: return "wl";
    case SpasFamily::C: return "c";
    case SpasFamily::IM: return "im";
    case SpasFamily::IMt: return "imt";
    case SpasFamily::IMr: return "imr";
    case SpasFamily::EP: return "ep";
  }
  return "?";
}

std::string SpasId::name() const {
  std::string out = to_string(family);
  if ((family == SpasFamily::WL || family == SpasFamily::C || family == SpasFamily::IMr) && r != 1)
    out += ",r=" + std::to_string(r);
  if (field.has_value()) out += "," + field->name();
  return out;
}

namespace {

OperatorSpec operator_for(const SpasId& s, std::uint32_t k) {
  OperatorSpec op;
  op.k = k;
  op.r = s.r;
  op.field = s.field;
  switch (s.family) {
    case SpasFamily::WL: op.family = OpFamily::WL; break;
    case SpasFamily::C: op.family = OpFamily::C; break;
    case SpasFamily::IM: op.family = OpFamily::IM; break;
    case SpasFamily::IMt: op.family = OpFamily::IMt; break;
    case SpasFamily::IMr: op.family = OpFamily::IMr; break;
    case SpasFamily::EP: throw std::logic_error("operator_for: ep has no tuple operator");
  }
  return op;
}

}  // namespace

SpasResult spas_apply_detailed(const SpasId& s, const Graph& g, std::uint32_t k,
                               const Caps& caps) {
  if (k == 0) throw std::invalid_argument("spas_apply: k must be at least 1");
  if (k == 1) return {canonicalize(g.arcs()), 0};
  if (s.family == SpasFamily::EP) {
    PairSchemeResult r = ep_detailed(g, k, caps);
    return {canonicalize(r.configuration.rainbow().arcs()), r.iterations};
  }
  Partition start = atomic_types(g, k, caps);
  FixedPointResult fp = fixed_point(operator_for(s, k), start, caps);
  return {project_partition(fp.partition, 2), fp.iterations};
}

Partition spas_apply(const SpasId& s, const Graph& g, std::uint32_t k, const Caps& caps) {
  return spas_apply_detailed(s, g, k, caps).arcs;
}

PairSchemeResult ep_detailed(const Graph& g, std::uint32_t k, const Caps& caps) {
  if (k == 0) throw std::invalid_argument("ep: k must be at least 1");
  if (k > caps.max_pair_scheme_k && !caps.allow_large_pair_scheme)
    throw CapExceeded("ep: k = " + std::to_string(k) +
                      " above the default cap; enable allow_large_pair_scheme to force");
  const std::uint32_t n = g.n();
  TupleCodec base(n, k, caps);
  const std::uint64_t m = base.size();
  TupleCodec pair_codec(m > 0xffffffffULL ? throw CapExceeded("ep: vertex set too large")
                                          : static_cast<std::uint32_t>(m),
                        2, caps);

  // Entrywise colouring of pairs of k-tuples, with equal constant pairs
  // marked so the pulled-back diagonal keeps its own colours.
  detail::SignatureInterner interner;
  std::vector<Colour> colours(pair_codec.size());
  std::vector<std::uint32_t> sig(k + 1);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b) {
      for (std::uint32_t i = 0; i < k; ++i)
        sig[i] = g.arc_colour(base.digit(a, i), base.digit(b, i));
      bool marked = a == b && a == base.constant(base.digit(a, 0));
      sig[k] = marked ? 1 : 0;
      colours[a * m + b] = interner.intern(std::vector<std::uint32_t>(sig));
    }
  Partition lifted(static_cast<std::uint32_t>(m), 2, std::move(colours), caps);

  FixedPointResult fp = fixed_point(OperatorSpec{OpFamily::WL, 2, 1, std::nullopt}, lifted, caps);

  // Pull back along u -> (u,..,u).
  detail::SignatureInterner back;
  std::vector<Colour> on_v(static_cast<std::size_t>(n) * n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      Colour c = fp.partition.colour(base.constant(u) * m + base.constant(v));
      on_v[static_cast<std::size_t>(u) * n + v] = back.intern({c});
    }
  Graph pulled = Graph::from_partition(Partition(n, 2, std::move(on_v)));
  CoherenceResult cc = intersection_numbers(pulled, caps);
  if (!std::holds_alternative<CoherentConfiguration>(cc))
    throw Error("ep: pulled-back partition is not coherent");
  return {std::get<CoherentConfiguration>(std::move(cc)), std::move(fp.partition),
          fp.iterations};
}

CoherentConfiguration ep(const Graph& g, std::uint32_t k, const Caps& caps) {
  return ep_detailed(g, k, caps).configuration;
}

Partition orbit_partition(const Graph& g, std::uint32_t k, const Caps& caps) {
  const std::uint32_t n = g.n();
  TupleCodec codec(n, k, caps);
  const auto autos = all_automorphisms(g, caps);

  // Orbits are the components of the generator action on tuple codes.
  std::vector<std::uint64_t> parent(codec.size());
  for (std::uint64_t i = 0; i < codec.size(); ++i) parent[i] = i;
  std::vector<std::uint64_t> stack;
  auto find = [&](std::uint64_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& pi : autos) {
    for (std::uint64_t code = 0; code < codec.size(); ++code) {
      std::uint64_t image = 0;
      for (std::uint32_t pos = 0; pos < k; ++pos)
        image += static_cast<std::uint64_t>(pi[codec.digit(code, pos)]) * codec.weight(pos);
      std::uint64_t a = find(code), b = find(image);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  detail::SignatureInterner interner;
  std::vector<Colour> colours(codec.size());
  for (std::uint64_t code = 0; code < codec.size(); ++code)
    colours[code] = interner.intern({static_cast<std::uint32_t>(find(code))});
  return Partition(n, k, std::move(colours), caps);
}

bool distinguishes(const SpasId& s, std::uint32_t k, const Graph& g, const Graph& h,
                   const Caps& caps) {
  Graph u = disjoint_union(g, h);
  Partition arcs = spas_apply(s, u, k, caps);
  const std::uint32_t n = u.n();
  std::vector<Colour> left, right;
  for (Vertex a = 0; a < g.n(); ++a)
    for (Vertex b = 0; b < g.n(); ++b)
      left.push_back(arcs.colour(static_cast<TupleCode>(a) * n + b));
  for (Vertex a = g.n(); a < n; ++a)
    for (Vertex b = g.n(); b < n; ++b)
      right.push_back(arcs.colour(static_cast<TupleCode>(a) * n + b));
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  return left != right;
}

bool DominancePairReport::all_equivalent() const {
  return std::all_of(entries.begin(), entries.end(), [](const DominanceEntry& e) {
    return e.outcome == CompareResult::Equivalent;
  });
}

bool DominancePairReport::left_never_finer() const {
  return std::all_of(entries.begin(), entries.end(), [](const DominanceEntry& e) {
    return e.outcome == CompareResult::Equivalent || e.outcome == CompareResult::FinerRight;
  });
}

bool DominancePairReport::right_never_finer() const {
  return std::all_of(entries.begin(), entries.end(), [](const DominanceEntry& e) {
    return e.outcome == CompareResult::Equivalent || e.outcome == CompareResult::FinerLeft;
  });
}

DominanceReport dominance_report(const std::vector<std::pair<std::string, Graph>>& corpus,
                                 const std::vector<std::pair<SpasPoint, SpasPoint>>& pairs,
                                 const Caps& caps) {
  DominanceReport report;
  for (const auto& [left, right] : pairs) {
    DominancePairReport pr{left, right, {}};
    for (const auto& [name, graph] : corpus) {
      Partition a = spas_apply(left.id, graph, left.k, caps);
      Partition b = spas_apply(right.id, graph, right.k, caps);
      pr.entries.push_back({name, compare(a, b)});
    }
    report.pairs.push_back(std::move(pr));
  }
  return report;
}

AxiomCheckReport spas_axiom_check(const SpasId& s, const Graph& g, const Caps& caps) {
  AxiomCheckReport report;
  const std::uint32_t n = g.n();
  std::vector<Partition> levels;
  levels.reserve(n);
  for (std::uint32_t k = 1; k <= n; ++k) levels.push_back(spas_apply(s, g, k, caps));

  for (std::uint32_t k = 0; k + 1 < n; ++k) {
    CompareResult c = compare(levels[k], levels[k + 1]);
    if (c != CompareResult::Equivalent && c != CompareResult::FinerRight) {
      report.chain_monotone = false;
      report.detail += "level " + std::to_string(k + 2) + " does not refine level " +
                       std::to_string(k + 1) + "; ";
      break;
    }
  }

  for (std::uint32_t m = 1; m <= n && report.idempotent; ++m) {
    Graph stabilized = Graph::from_partition(levels[m - 1]);
    for (std::uint32_t l = 1; l <= m; ++l) {
      Partition again = spas_apply(s, stabilized, l, caps);
      if (compare(again, levels[m - 1]) != CompareResult::Equivalent) {
        report.idempotent = false;
        report.detail += "level " + std::to_string(l) + " refines the stabilized level " +
                         std::to_string(m) + "; ";
        break;
      }
    }
  }

  Partition orbits = orbit_partition(g, 2, caps);
  if (compare(levels[n - 1], orbits) != CompareResult::Equivalent) {
    report.reaches_orbits = false;
    report.detail += "level " + std::to_string(n) + " differs from the orbit partition; ";
  }
  return report;
}

namespace {

// Packed gf(2) matrix rank with a pattern-keyed cache.
struct Gf2RankCache {
  std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, detail::VecHash64> ranks;

  std::uint32_t rank(const std::vector<std::uint64_t>& pattern, std::uint32_t dim) {
    auto it = ranks.find(pattern);
    if (it != ranks.end()) return it->second;
    const std::uint32_t words = (dim + 63) / 64;
    std::vector<std::uint64_t> rows(pattern.size());
    rows = pattern;
    std::uint32_t r = 0;
    for (std::uint32_t col = 0; col < dim && r < dim; ++col) {
      std::uint32_t pivot = dim;
      for (std::uint32_t row = r; row < dim; ++row)
        if (rows[row * words + col / 64] >> (col % 64) & 1) {
          pivot = row;
          break;
        }
      if (pivot == dim) continue;
      for (std::uint32_t w = 0; w < words; ++w)
        std::swap(rows[pivot * words + w], rows[r * words + w]);
      for (std::uint32_t row = 0; row < dim; ++row) {
        if (row == r) continue;
        if (rows[row * words + col / 64] >> (col % 64) & 1)
          for (std::uint32_t w = 0; w < words; ++w) rows[row * words + w] ^= rows[r * words + w];
      }
      ++r;
    }
    if (ranks.size() < (std::size_t{1} << 20)) ranks.emplace(pattern, r);
    return r;
  }
};

}  // namespace

RankProbeOutcome gf2_rank_probe_distinguishes(const Graph& g, const Graph& h, std::uint32_t k,
                                              std::uint32_t depth, const Caps& caps) {
  if (g.colour_names() != h.colour_names())
    throw std::invalid_argument("gf2_rank_probe: graphs must share one colour alphabet");
  if (k < 3) throw std::invalid_argument("gf2_rank_probe: k must be at least 3");
  if (depth < 1 || depth > 2) throw std::invalid_argument("gf2_rank_probe: depth is 1 or 2");

  struct Side {
    const Graph& graph;
    TupleCodec codec;
    std::vector<Colour> colours;
    std::vector<IndexVec> ivecs;
  };
  auto make_side = [&](const Graph& gr) {
    TupleCodec codec(gr.n(), k, caps);
    return Side{gr, codec, std::vector<Colour>(codec.size(), 0),
                injective_index_vectors(k, 2)};
  };
  Side sides[2] = {make_side(g), make_side(h)};

  // Joint atomic types: signatures live in the shared colour alphabet.
  {
    detail::SignatureInterner interner;
    const auto pair_list = injective_index_vectors(k, 2);
    for (Side& side : sides) {
      std::vector<std::uint32_t> sig(pair_list.size());
      for (std::uint64_t code = 0; code < side.codec.size(); ++code) {
        for (std::size_t i = 0; i < pair_list.size(); ++i)
          sig[i] = side.graph.arc_colour(side.codec.digit(code, pair_list[i][0]),
                                         side.codec.digit(code, pair_list[i][1]));
        side.colours[code] = interner.intern(std::vector<std::uint32_t>(sig));
      }
    }
  }

  Gf2RankCache cache;
  RankProbeOutcome outcome;
  std::uint32_t classes = 0;
  {
    Colour top = 0;
    for (const Side& side : sides)
      for (Colour c : side.colours) top = std::max(top, c);
    classes = top + 1;
  }

  while (true) {
    detail::SignatureInterner interner;
    std::vector<std::vector<Colour>> next(2);
    for (int si = 0; si < 2; ++si) {
      Side& side = sides[si];
      const std::uint32_t n = side.graph.n();
      const std::uint32_t words = (n + 63) / 64;
      // per index vector: realized colour -> packed matrix
      std::vector<std::uint32_t> slot(classes, 0xffffffffu);
      std::vector<Colour> realized;
      std::vector<std::vector<std::uint64_t>> patterns;
      std::vector<std::uint32_t> traces;
      next[si].resize(side.codec.size());
      for (std::uint64_t t = 0; t < side.codec.size(); ++t) {
        std::vector<std::uint32_t> sig;
        sig.push_back(side.colours[t]);
        for (const IndexVec& iv : side.ivecs) {
          realized.clear();
          patterns.clear();
          traces.clear();
          std::uint64_t base = t;
          for (std::uint32_t pos : iv)
            base -= static_cast<std::uint64_t>(side.codec.digit(t, pos)) * side.codec.weight(pos);
          for (Vertex x = 0; x < n; ++x) {
            const std::uint64_t bx = base + static_cast<std::uint64_t>(x) * side.codec.weight(iv[0]);
            for (Vertex y = 0; y < n; ++y) {
              Colour c = side.colours[bx + static_cast<std::uint64_t>(y) * side.codec.weight(iv[1])];
              std::uint32_t s = slot[c];
              if (s == 0xffffffffu) {
                s = static_cast<std::uint32_t>(realized.size());
                slot[c] = s;
                realized.push_back(c);
                patterns.emplace_back(static_cast<std::size_t>(n) * words, 0);
                traces.push_back(0);
              }
              patterns[s][static_cast<std::size_t>(x) * words + y / 64] |= std::uint64_t{1}
                                                                           << (y % 64);
              if (x == y) traces[s] ^= 1;
            }
          }
          // sorted by colour id so signatures are canonical
          std::vector<std::uint32_t> order(realized.size());
          for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
          std::sort(order.begin(), order.end(),
                    [&](std::uint32_t a, std::uint32_t b) { return realized[a] < realized[b]; });
          for (std::uint32_t i : order) {
            sig.push_back(realized[i]);
            sig.push_back(cache.rank(patterns[i], n));
            sig.push_back(traces[i]);
          }
          if (depth >= 2) {
            // ranks of pairwise sums; conjugation distributes over addition,
            // so these are invariants of the whole family. Capped to the 16
            // lowest colour ids, which is itself a canonical choice.
            const std::size_t limit = std::min<std::size_t>(order.size(), 16);
            std::vector<std::uint64_t> sum;
            for (std::size_t a = 0; a < limit; ++a)
              for (std::size_t b = a + 1; b < limit; ++b) {
                sum = patterns[order[a]];
                const auto& other = patterns[order[b]];
                for (std::size_t w = 0; w < sum.size(); ++w) sum[w] ^= other[w];
                sig.push_back(cache.rank(sum, n));
              }
          }
          sig.push_back(0xffffffffu);
          for (Colour c : realized) slot[c] = 0xffffffffu;
        }
        next[si][t] = interner.intern(std::move(sig));
      }
    }
    ++outcome.rounds;
    if (interner.count() == classes) break;
    classes = interner.count();
    sides[0].colours = std::move(next[0]);
    sides[1].colours = std::move(next[1]);
  }
  outcome.classes = classes;

  // Arc-level multisets on each side, padded as in the 2-projection.
  std::vector<Colour> left, right;
  for (int si = 0; si < 2; ++si) {
    Side& side = sides[si];
    const std::uint32_t n = side.graph.n();
    auto& out = (si == 0 ? left : right);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v) {
        std::uint64_t code = static_cast<std::uint64_t>(u) * side.codec.weight(0);
        for (std::uint32_t pos = 1; pos < k; ++pos)
          code += static_cast<std::uint64_t>(v) * side.codec.weight(pos);
        out.push_back(side.colours[code]);
      }
  }
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  outcome.separated = left != right;
  return outcome;
}

}  // namespace wllab
