#include "wllab/coherent.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "wllab/errors.hpp"

namespace wllab {

struct CoherentBuilder {
  static CoherentConfiguration make(Graph rho, std::vector<std::uint64_t> table,
                                    std::vector<std::vector<Vertex>> cells) {
    return CoherentConfiguration(std::move(rho), std::move(table), std::move(cells));
  }
};

namespace {

std::vector<std::vector<Vertex>> cell_decomposition(const Graph& g) {
  // Cells are the loop-colour classes, ordered by loop colour id.
  std::map<Colour, std::vector<Vertex>> by_loop;
  for (Vertex v = 0; v < g.n(); ++v) by_loop[g.arc_colour(v, v)].push_back(v);
  std::vector<std::vector<Vertex>> cells;
  cells.reserve(by_loop.size());
  for (auto& [colour, members] : by_loop) cells.push_back(std::move(members));
  return cells;
}

}  // namespace

CoherenceResult intersection_numbers(const Graph& g, const Caps& caps, bool verify_all) {
  const std::uint32_t n = g.n();
  const std::uint32_t c = g.colour_count();
  if (c > caps.max_table_colours)
    throw CapExceeded("intersection-number table with " + std::to_string(c) +
                      " colours exceeds the configured cap");

  std::vector<std::array<Vertex, 2>> rep(c, {0, 0});
  std::vector<bool> seen(c, false);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      Colour k = g.arc_colour(u, v);
      if (!seen[k]) {
        seen[k] = true;
        rep[k] = {u, v};
      }
    }

  std::vector<std::uint64_t> table(static_cast<std::size_t>(c) * c * c, 0);
  auto slot = [c](Colour s, Colour t, Colour k) {
    return (static_cast<std::size_t>(s) * c + t) * c + k;
  };
  for (Colour k = 0; k < c; ++k) {
    auto [u, v] = rep[k];
    for (Vertex x = 0; x < n; ++x) ++table[slot(g.arc_colour(u, x), g.arc_colour(x, v), k)];
  }

  if (verify_all) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(c) * c);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v) {
        Colour k = g.arc_colour(u, v);
        if (u == rep[k][0] && v == rep[k][1]) continue;
        std::fill(counts.begin(), counts.end(), 0);
        for (Vertex x = 0; x < n; ++x)
          ++counts[static_cast<std::size_t>(g.arc_colour(u, x)) * c + g.arc_colour(x, v)];
        for (Colour s = 0; s < c; ++s)
          for (Colour t = 0; t < c; ++t) {
            std::uint64_t expected = table[slot(s, t, k)];
            std::uint64_t got = counts[static_cast<std::size_t>(s) * c + t];
            if (expected != got)
              return NotCoherentWitness{k, s, t, rep[k], {u, v}, expected, got};
          }
      }
  }
  return CoherentBuilder::make(g, std::move(table), cell_decomposition(g));
}

bool is_coherent(const Graph& g, const Caps& caps) {
  return std::holds_alternative<CoherentConfiguration>(intersection_numbers(g, caps));
}

CoherentConfiguration require_coherent(const Graph& g, const Caps& caps) {
  CoherenceResult r = intersection_numbers(g, caps);
  if (auto* cc = std::get_if<CoherentConfiguration>(&r)) return std::move(*cc);
  throw Error("graph is not a coherent configuration");
}

CoherentConfiguration restrict_configuration(const CoherentConfiguration& c,
                                             const std::vector<Vertex>& vertices,
                                             const Caps& caps) {
  if (vertices.empty())
    throw std::invalid_argument("restrict_configuration: empty vertex set");
  std::vector<Vertex> xs = vertices;
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
    throw std::invalid_argument("restrict_configuration: duplicate vertices");
  if (xs.back() >= c.n()) throw std::invalid_argument("restrict_configuration: vertex out of range");

  std::vector<bool> in(c.n(), false);
  for (Vertex v : xs) in[v] = true;
  for (const auto& cell : c.cells()) {
    std::size_t hit = 0;
    for (Vertex v : cell) hit += in[v];
    if (hit != 0 && hit != cell.size())
      throw std::invalid_argument("restrict_configuration: not a union of cells");
  }

  const Graph& g = c.rainbow();
  const std::uint32_t m = static_cast<std::uint32_t>(xs.size());
  detail::SignatureInterner interner;
  std::vector<Colour> colours(static_cast<std::size_t>(m) * m);
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) {
      Colour old = g.arc_colour(xs[i], xs[j]);
      Colour fresh = interner.intern({old});
      colours[static_cast<std::size_t>(i) * m + j] = fresh;
      if (fresh == names.size()) names.push_back(g.colour_names()[old]);
    }
  Graph restricted = Graph::from_partition(Partition(m, 2, std::move(colours)), std::move(names));
  return require_coherent(restricted, caps);
}

std::vector<FieldMatrix> adjacency_basis(const CoherentConfiguration& c, FieldSpec field) {
  const Graph& g = c.rainbow();
  std::vector<FieldMatrix> out(c.colour_count(), FieldMatrix(field, g.n(), g.n()));
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = 0; v < g.n(); ++v) out[g.arc_colour(u, v)].set(u, v, 1);
  return out;
}

StandardBasis standard_basis(const std::vector<FieldMatrix>& spanning) {
  if (spanning.empty()) throw std::invalid_argument("standard_basis: empty spanning set");
  const FieldSpec field = spanning[0].field();
  const std::size_t n = spanning[0].rows();
  for (const FieldMatrix& m : spanning)
    if (!m.is_square() || m.rows() != n || !(m.field() == field))
      throw std::invalid_argument("standard_basis: mixed shapes or fields");

  // Group arcs by their joint entry vector across the spanning set. Entries
  // are mapped to dense ids first so the keys are cheap to hash.
  std::vector<std::vector<std::uint32_t>> entry_ids(spanning.size());
  for (std::size_t mi = 0; mi < spanning.size(); ++mi) {
    entry_ids[mi].resize(n * n);
    if (field.kind() == FieldKind::Rationals) {
      std::map<mpq_class, std::uint32_t> ids;
      for (std::size_t e = 0; e < n * n; ++e) {
        mpq_class v = std::get<mpq_class>(spanning[mi].at(e / n, e % n));
        auto [it, fresh] = ids.try_emplace(v, static_cast<std::uint32_t>(ids.size()));
        entry_ids[mi][e] = it->second;
      }
    } else {
      std::map<std::uint64_t, std::uint32_t> ids;
      for (std::size_t e = 0; e < n * n; ++e) {
        std::uint64_t v = std::get<std::uint64_t>(spanning[mi].at(e / n, e % n));
        auto [it, fresh] = ids.try_emplace(v, static_cast<std::uint32_t>(ids.size()));
        entry_ids[mi][e] = it->second;
      }
    }
  }

  detail::SignatureInterner interner;
  std::vector<Colour> klass(n * n);
  for (std::size_t e = 0; e < n * n; ++e) {
    std::vector<std::uint32_t> key(spanning.size());
    for (std::size_t mi = 0; mi < spanning.size(); ++mi) key[mi] = entry_ids[mi][e];
    klass[e] = interner.intern(std::move(key));
  }
  const std::uint32_t classes = interner.count();

  // Coherence condition: no class may mix diagonal and off-diagonal arcs,
  // otherwise the identity is not a sum of indicators.
  std::vector<int> diag_kind(classes, -1);
  for (std::size_t e = 0; e < n * n; ++e) {
    int kind = (e / n == e % n) ? 1 : 0;
    if (diag_kind[klass[e]] == -1)
      diag_kind[klass[e]] = kind;
    else if (diag_kind[klass[e]] != kind)
      throw ClosureViolation("standard_basis: identity is not in the span");
  }

  // Transpose closure.
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> transposed(classes, kUnset);
  for (std::size_t e = 0; e < n * n; ++e) {
    std::size_t et = (e % n) * n + e / n;
    if (transposed[klass[e]] == kUnset)
      transposed[klass[e]] = klass[et];
    else if (transposed[klass[e]] != klass[et])
      throw ClosureViolation("standard_basis: span is not closed under transposition");
  }

  // The indicators lie in the span iff the span already has full dimension.
  {
    FieldMatrix stack(field, spanning.size(), n * n);
    for (std::size_t mi = 0; mi < spanning.size(); ++mi)
      for (std::size_t e = 0; e < n * n; ++e) {
        if (field.kind() == FieldKind::Rationals)
          stack.set(mi, e, std::get<mpq_class>(spanning[mi].at(e / n, e % n)));
        else
          stack.set(mi, e, static_cast<std::int64_t>(
                               std::get<std::uint64_t>(spanning[mi].at(e / n, e % n))));
      }
    if (stack.rank() != classes)
      throw ClosureViolation("standard_basis: indicators fall outside the span");
  }

  std::vector<FieldMatrix> basis(classes, FieldMatrix(field, n, n));
  for (std::size_t e = 0; e < n * n; ++e) basis[klass[e]].set(e / n, e % n, 1);

  // Product closure: every product must be constant on the classes.
  for (std::uint32_t i = 0; i < classes; ++i)
    for (std::uint32_t j = 0; j < classes; ++j) {
      FieldMatrix prod = basis[i] * basis[j];
      std::vector<std::optional<FieldScalar>> value(classes);
      for (std::size_t e = 0; e < n * n; ++e) {
        FieldScalar v = prod.at(e / n, e % n);
        auto& slot = value[klass[e]];
        if (!slot.has_value())
          slot = v;
        else if (!(*slot == v))
          throw ClosureViolation("standard_basis: span is not closed under matrix product");
      }
    }

  return StandardBasis{std::move(basis)};
}

namespace {

// Label-free pruning signature of one colour. Built only from data preserved
// by algebraic isomorphisms.
struct ColourSig {
  bool loop;
  bool self_transposed;
  std::uint64_t class_size;
  std::uint64_t p_diag;  // p(sigma, sigma; sigma)
  std::vector<std::uint64_t> row_multiset, col_multiset, target_multiset;

  bool operator==(const ColourSig&) const = default;
  bool operator<(const ColourSig& o) const {
    return std::tie(loop, self_transposed, class_size, p_diag, row_multiset, col_multiset,
                    target_multiset) < std::tie(o.loop, o.self_transposed, o.class_size, o.p_diag,
                                                o.row_multiset, o.col_multiset, o.target_multiset);
  }
};

ColourSig colour_signature(const CoherentConfiguration& c, Colour s) {
  const std::uint32_t m = c.colour_count();
  ColourSig sig;
  sig.loop = c.is_loop_colour(s);
  sig.self_transposed = c.transpose_colour(s) == s;
  sig.class_size = c.class_sizes()[s];
  sig.p_diag = c.intersection_number(s, s, s);
  for (Colour t = 0; t < m; ++t)
    for (Colour k = 0; k < m; ++k) {
      sig.row_multiset.push_back(c.intersection_number(s, t, k));
      sig.col_multiset.push_back(c.intersection_number(t, s, k));
      sig.target_multiset.push_back(c.intersection_number(t, k, s));
    }
  std::sort(sig.row_multiset.begin(), sig.row_multiset.end());
  std::sort(sig.col_multiset.begin(), sig.col_multiset.end());
  std::sort(sig.target_multiset.begin(), sig.target_multiset.end());
  return sig;
}

struct IsoSearch {
  const CoherentConfiguration& c1;
  const CoherentConfiguration& c2;
  std::uint32_t m;
  std::vector<Colour> phi;
  std::vector<bool> used;
  std::vector<std::vector<Colour>> candidates;
  std::vector<Colour> order;

  bool consistent(Colour s) const {
    // Check every intersection-number constraint whose colours are assigned.
    constexpr Colour kUnset = 0xffffffffu;
    for (Colour t = 0; t < m; ++t) {
      if (phi[t] == kUnset) continue;
      for (Colour k = 0; k < m; ++k) {
        if (phi[k] == kUnset) continue;
        if (c1.intersection_number(s, t, k) != c2.intersection_number(phi[s], phi[t], phi[k]))
          return false;
        if (c1.intersection_number(t, s, k) != c2.intersection_number(phi[t], phi[s], phi[k]))
          return false;
        if (c1.intersection_number(t, k, s) != c2.intersection_number(phi[t], phi[k], phi[s]))
          return false;
      }
    }
    return true;
  }

  bool assign(std::size_t depth) {
    constexpr Colour kUnset = 0xffffffffu;
    if (depth == order.size()) return true;
    Colour s = order[depth];
    if (phi[s] != kUnset) return assign(depth + 1);  // forced earlier via transpose pairing
    for (Colour target : candidates[s]) {
      if (used[target]) continue;
      Colour st = c1.transpose_colour(s);
      Colour tt = c2.transpose_colour(target);
      if ((st == s) != (tt == target)) continue;
      if (phi[st] != kUnset && phi[st] != tt) continue;
      phi[s] = target;
      used[target] = true;
      bool forced = (st != s && phi[st] == kUnset);
      bool forced_ok = true;
      if (forced) {
        if (used[tt]) {
          forced_ok = false;
        } else {
          phi[st] = tt;
          used[tt] = true;
        }
      }
      if (forced_ok && consistent(s) && (!forced || consistent(st)) && assign(depth + 1))
        return true;
      if (forced && forced_ok) {
        used[tt] = false;
        phi[st] = kUnset;
      }
      used[target] = false;
      phi[s] = kUnset;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<Colour>> algebraic_isomorphism(const CoherentConfiguration& c1,
                                                         const CoherentConfiguration& c2,
                                                         const Caps& caps) {
  const std::uint32_t m = c1.colour_count();
  if (m != c2.colour_count()) return std::nullopt;
  if (m > caps.max_bijection_colours)
    throw CapExceeded("algebraic isomorphism search over " + std::to_string(m) +
                      " colours exceeds the configured cap");

  std::vector<ColourSig> sig1(m), sig2(m);
  for (Colour s = 0; s < m; ++s) {
    sig1[s] = colour_signature(c1, s);
    sig2[s] = colour_signature(c2, s);
  }
  {
    auto a = sig1;
    auto b = sig2;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (!(a == b)) return std::nullopt;
  }

  IsoSearch search{c1, c2, m, std::vector<Colour>(m, 0xffffffffu), std::vector<bool>(m, false),
                   {}, {}};
  search.candidates.resize(m);
  for (Colour s = 0; s < m; ++s)
    for (Colour t = 0; t < m; ++t)
      if (sig1[s] == sig2[t]) search.candidates[s].push_back(t);
  search.order.resize(m);
  for (Colour s = 0; s < m; ++s) search.order[s] = s;
  std::stable_sort(search.order.begin(), search.order.end(), [&](Colour a, Colour b) {
    return search.candidates[a].size() < search.candidates[b].size();
  });

  if (!search.assign(0)) return std::nullopt;
  return search.phi;
}

std::vector<Colour> radical_support(const CoherentConfiguration& c, std::uint64_t p) {
  FieldSpec::prime(p);  // validates primality
  std::vector<Colour> out;
  std::vector<std::uint64_t> sizes = c.class_sizes();
  for (Colour s = 0; s < c.colour_count(); ++s)
    if (sizes[s] % p == 0) out.push_back(s);
  return out;
}

Semisimplicity semisimple_guaranteed(const CoherentConfiguration& c, const FieldSpec& field) {
  if (field.kind() == FieldKind::Rationals) return Semisimplicity::Guaranteed;
  if (field.characteristic() > c.n()) return Semisimplicity::Guaranteed;
  return Semisimplicity::Unknown;
}

}  // namespace wllab
