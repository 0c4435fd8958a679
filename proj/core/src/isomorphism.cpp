#include "wllab/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "wllab/errors.hpp"

namespace wllab {

namespace {

constexpr std::uint32_t kUnset = 0xffffffffu;

// Arc labels translated into a shared alphabet (by colour name).
std::vector<std::uint32_t> label_matrix(const Graph& g,
                                        const std::map<std::string, std::uint32_t>& ids) {
  const std::uint32_t n = g.n();
  std::vector<std::uint32_t> m(static_cast<std::size_t>(n) * n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      m[static_cast<std::size_t>(u) * n + v] = ids.at(g.colour_names()[g.arc_colour(u, v)]);
  return m;
}

// Joint 1-dimensional refinement of the vertex sets of both graphs. Classes
// share ids across the two sides, so unequal side multisets betray non-iso.
void refine_vertex_classes(std::uint32_t n1, const std::vector<std::uint32_t>& m1,
                           std::uint32_t n2, const std::vector<std::uint32_t>& m2,
                           std::vector<std::uint32_t>& c1, std::vector<std::uint32_t>& c2) {
  c1.assign(n1, 0);
  c2.assign(n2, 0);
  auto signature = [](std::uint32_t n, const std::vector<std::uint32_t>& m,
                      const std::vector<std::uint32_t>& cls, Vertex v) {
    std::vector<std::uint32_t> sig;
    sig.reserve(2 + 3 * n);
    sig.push_back(cls[v]);
    sig.push_back(m[static_cast<std::size_t>(v) * n + v]);
    std::vector<std::array<std::uint32_t, 3>> rows;
    rows.reserve(n - 1);
    for (Vertex w = 0; w < n; ++w) {
      if (w == v) continue;
      rows.push_back({m[static_cast<std::size_t>(v) * n + w],
                      m[static_cast<std::size_t>(w) * n + v], cls[w]});
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& r : rows) sig.insert(sig.end(), r.begin(), r.end());
    return sig;
  };
  while (true) {
    detail::SignatureInterner interner;
    std::vector<std::uint32_t> n1c(n1), n2c(n2);
    for (Vertex v = 0; v < n1; ++v) n1c[v] = interner.intern(signature(n1, m1, c1, v));
    for (Vertex v = 0; v < n2; ++v) n2c[v] = interner.intern(signature(n2, m2, c2, v));
    std::uint32_t old_classes = *std::max_element(c1.begin(), c1.end());
    for (std::uint32_t c : c2) old_classes = std::max(old_classes, c);
    if (interner.count() == old_classes + 1) {
      c1 = std::move(n1c);
      c2 = std::move(n2c);
      return;
    }
    c1 = std::move(n1c);
    c2 = std::move(n2c);
  }
}

struct IsoSearch {
  std::uint32_t n;
  const std::vector<std::uint32_t>& gm;
  const std::vector<std::uint32_t>& hm;
  const std::vector<std::uint32_t>& gclass;
  const std::vector<std::uint32_t>& hclass;
  std::vector<Vertex> order;
  std::vector<Vertex> mapping;
  std::vector<bool> used;
  bool collect_all = false;
  std::vector<std::vector<Vertex>> solutions;

  bool compatible(Vertex gu, Vertex hu, std::size_t depth) const {
    if (gclass[gu] != hclass[hu]) return false;
    for (std::size_t i = 0; i < depth; ++i) {
      Vertex gv = order[i];
      Vertex hv = mapping[gv];
      if (gm[static_cast<std::size_t>(gu) * n + gv] != hm[static_cast<std::size_t>(hu) * n + hv])
        return false;
      if (gm[static_cast<std::size_t>(gv) * n + gu] != hm[static_cast<std::size_t>(hv) * n + hu])
        return false;
    }
    return gm[static_cast<std::size_t>(gu) * n + gu] == hm[static_cast<std::size_t>(hu) * n + hu];
  }

  bool search(std::size_t depth) {
    if (depth == n) {
      solutions.push_back(mapping);
      return !collect_all;
    }
    Vertex gu = order[depth];
    for (Vertex hu = 0; hu < n; ++hu) {
      if (used[hu] || !compatible(gu, hu, depth)) continue;
      mapping[gu] = hu;
      used[hu] = true;
      if (search(depth + 1)) return true;
      used[hu] = false;
      mapping[gu] = kUnset;
    }
    return false;
  }
};

// Mapping order: greedily maximize arcs into the already-ordered prefix, so
// contradictions surface early.
std::vector<Vertex> mapping_order(std::uint32_t n, const std::vector<std::uint32_t>& classes) {
  std::vector<Vertex> order;
  std::vector<bool> placed(n, false);
  std::vector<std::uint32_t> class_size(*std::max_element(classes.begin(), classes.end()) + 1, 0);
  for (std::uint32_t c : classes) ++class_size[c];
  for (std::uint32_t step = 0; step < n; ++step) {
    Vertex best = kUnset;
    std::size_t best_links = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (placed[v]) continue;
      std::size_t links = order.size();  // complete digraph: every pair linked
      if (best == kUnset || class_size[classes[v]] < class_size[classes[best]] ||
          (class_size[classes[v]] == class_size[classes[best]] && links > best_links)) {
        best = v;
        best_links = links;
      }
    }
    placed[best] = true;
    order.push_back(best);
  }
  return order;
}

}  // namespace

std::vector<std::vector<Vertex>> all_automorphisms(const Graph& g, const Caps& caps) {
  if (g.n() > caps.max_orbit_vertices)
    throw CapExceeded("automorphism enumeration on " + std::to_string(g.n()) +
                      " vertices exceeds the configured cap");
  std::map<std::string, std::uint32_t> ids;
  for (const std::string& s : g.colour_names())
    ids.emplace(s, static_cast<std::uint32_t>(ids.size()));
  const auto m = label_matrix(g, ids);
  std::vector<std::uint32_t> c1, c2;
  refine_vertex_classes(g.n(), m, g.n(), m, c1, c2);
  IsoSearch search{g.n(), m, m, c1, c2, mapping_order(g.n(), c1),
                   std::vector<Vertex>(g.n(), kUnset), std::vector<bool>(g.n(), false), true, {}};
  search.search(0);
  return search.solutions;
}

std::optional<std::vector<Vertex>> find_colour_isomorphism(const Graph& g, const Graph& h,
                                                           const Caps&) {
  if (g.n() != h.n()) return std::nullopt;
  std::map<std::string, std::uint32_t> ids;
  for (const std::string& s : g.colour_names())
    ids.emplace(s, static_cast<std::uint32_t>(ids.size()));
  for (const std::string& s : h.colour_names())
    ids.emplace(s, static_cast<std::uint32_t>(ids.size()));
  const auto gm = label_matrix(g, ids);
  const auto hm = label_matrix(h, ids);

  std::vector<std::uint32_t> gclass, hclass;
  refine_vertex_classes(g.n(), gm, h.n(), hm, gclass, hclass);
  {
    // Per-class counts must match before any search is worthwhile.
    std::map<std::uint32_t, std::int64_t> balance;
    for (std::uint32_t c : gclass) ++balance[c];
    for (std::uint32_t c : hclass) --balance[c];
    for (auto [c, diff] : balance)
      if (diff != 0) return std::nullopt;
  }

  IsoSearch search{g.n(), gm, hm, gclass, hclass, mapping_order(g.n(), gclass),
                   std::vector<Vertex>(g.n(), kUnset), std::vector<bool>(g.n(), false), false, {}};
  if (!search.search(0)) return std::nullopt;
  return search.solutions.front();
}

}  // namespace wllab
