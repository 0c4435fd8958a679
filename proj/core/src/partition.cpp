#include "wllab/partition.hpp"

#include <algorithm>
#include <stdexcept>

#include "wllab/errors.hpp"

namespace wllab {

const char* to_string(CompareResult r) {
  switch (r) {
    case CompareResult::Equivalent: return "Equivalent";
    case CompareResult::FinerLeft: return "FinerLeft";
    case CompareResult::FinerRight: return "FinerRight";
    case CompareResult::Incomparable: return "Incomparable";
  }
  return "?";
}

namespace {

constexpr Colour kUnset = 0xffffffffu;

std::uint32_t checked_class_count(const std::vector<Colour>& colours) {
  Colour max = 0;
  for (Colour c : colours) max = std::max(max, c);
  if (static_cast<std::uint64_t>(max) + 1 > colours.size())
    throw std::invalid_argument("Partition: colour ids are not dense");
  std::vector<bool> seen(static_cast<std::size_t>(max) + 1, false);
  for (Colour c : colours) seen[c] = true;
  for (bool b : seen)
    if (!b) throw std::invalid_argument("Partition: colour ids are not dense");
  return max + 1;
}

}  // namespace

Partition::Partition(std::uint32_t n, std::uint32_t arity, std::vector<Colour> colours,
                     const Caps& caps)
    : codec_(n, arity, caps), colours_(std::move(colours)) {
  if (colours_.size() != codec_.size())
    throw std::invalid_argument("Partition: colour table has the wrong size");
  class_count_ = checked_class_count(colours_);
}

Partition Partition::uniform(std::uint32_t n, std::uint32_t arity, const Caps& caps) {
  TupleCodec codec(n, arity, caps);
  return Partition(n, arity, std::vector<Colour>(codec.size(), 0), caps);
}

Partition Partition::discrete(std::uint32_t n, std::uint32_t arity, const Caps& caps) {
  TupleCodec codec(n, arity, caps);
  std::vector<Colour> colours(codec.size());
  for (std::size_t i = 0; i < colours.size(); ++i) colours[i] = static_cast<Colour>(i);
  return Partition(n, arity, std::move(colours), caps);
}

std::vector<std::uint64_t> Partition::class_sizes() const {
  std::vector<std::uint64_t> sizes(class_count_, 0);
  for (Colour c : colours_) ++sizes[c];
  return sizes;
}

Partition canonicalize(const Partition& g) {
  std::vector<Colour> relabel(g.class_count(), kUnset);
  std::vector<Colour> out(g.tuple_count());
  Colour next = 0;
  for (std::uint64_t code = 0; code < g.tuple_count(); ++code) {
    Colour c = g.colour(code);
    if (relabel[c] == kUnset) relabel[c] = next++;
    out[code] = relabel[c];
  }
  return Partition(g.n(), g.arity(), std::move(out));
}

CompareResult compare(const Partition& g, const Partition& h) {
  if (g.n() != h.n() || g.arity() != h.arity())
    throw std::invalid_argument("compare: partitions have different shape");
  // h refines g iff the map (h colour -> g colour) is a function, and dually.
  std::vector<Colour> h_to_g(h.class_count(), kUnset);
  std::vector<Colour> g_to_h(g.class_count(), kUnset);
  bool h_refines_g = true;
  bool g_refines_h = true;
  for (std::uint64_t code = 0; code < g.tuple_count(); ++code) {
    Colour gc = g.colour(code);
    Colour hc = h.colour(code);
    if (h_to_g[hc] == kUnset)
      h_to_g[hc] = gc;
    else if (h_to_g[hc] != gc)
      h_refines_g = false;
    if (g_to_h[gc] == kUnset)
      g_to_h[gc] = hc;
    else if (g_to_h[gc] != hc)
      g_refines_h = false;
    if (!h_refines_g && !g_refines_h) return CompareResult::Incomparable;
  }
  if (h_refines_g && g_refines_h) return CompareResult::Equivalent;
  if (h_refines_g) return CompareResult::FinerRight;
  return CompareResult::FinerLeft;
}

bool refines(const Partition& g, const Partition& h) {
  CompareResult r = compare(g, h);
  return r == CompareResult::Equivalent || r == CompareResult::FinerRight;
}

Partition project_partition(const Partition& g, std::uint32_t r) {
  const std::uint32_t k = g.arity();
  if (r < 1 || r > k) throw std::invalid_argument("project_partition: r out of range");
  const std::uint32_t n = g.n();
  TupleCodec out_codec(n, r);
  // Weight of the padding block: positions r..k-1 all carry the last entry.
  std::uint64_t pad_weight = 0;
  for (std::uint32_t pos = r; pos < k; ++pos) pad_weight += g.codec().weight(pos);

  detail::SignatureInterner interner;
  std::vector<Colour> out(out_codec.size());
  for (std::uint64_t code = 0; code < out_codec.size(); ++code) {
    // The first r digits transfer with scaled weights; pad with the last one.
    std::uint64_t full = 0;
    Vertex last = 0;
    for (std::uint32_t pos = 0; pos < r; ++pos) {
      last = out_codec.digit(code, pos);
      full += static_cast<std::uint64_t>(last) * g.codec().weight(pos);
    }
    full += pad_weight * last;
    out[code] = interner.intern({g.colour(full)});
  }
  return Partition(n, r, std::move(out));
}

Partition reshape(const Partition& g, std::uint32_t k, std::uint32_t p, const Caps& caps) {
  if (k == 0 || p == 0 || g.arity() != k * p)
    throw std::invalid_argument("reshape: arity is not k*p");
  std::uint64_t block = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    block *= g.n();
    if (block > 0xffffffffULL) throw CapExceeded("reshape: n^k does not fit a vertex id");
  }
  // With the most-significant-first codec, flattening (V^k)^p -> V^(pk)
  // preserves codes, so the colour table transfers verbatim.
  return Partition(static_cast<std::uint32_t>(block), p, g.colours(), caps);
}

bool is_invariant(const Partition& g) {
  const std::uint32_t k = g.arity();
  for (std::uint32_t t = 0; t + 1 < k; ++t) {
    const std::uint64_t wt = g.codec().weight(t);
    const std::uint64_t wt1 = g.codec().weight(t + 1);
    std::vector<Colour> image(g.class_count(), kUnset);
    for (std::uint64_t code = 0; code < g.tuple_count(); ++code) {
      Vertex a = g.codec().digit(code, t);
      Vertex b = g.codec().digit(code, t + 1);
      std::uint64_t swapped = code + (static_cast<std::uint64_t>(b) - a) * wt +
                              (static_cast<std::uint64_t>(a) - b) * wt1;
      Colour c = g.colour(code);
      Colour sc = g.colour(swapped);
      if (image[c] == kUnset)
        image[c] = sc;
      else if (image[c] != sc)
        return false;
    }
  }
  return true;
}

bool is_consistent(const Partition& g, std::uint32_t r) {
  const std::uint32_t k = g.arity();
  if (r < 1 || r > k) throw std::invalid_argument("is_consistent: r out of range");
  const Partition h = project_partition(g, r);
  TupleCodec rcodec(g.n(), r);
  for (const IndexVec& iv : index_vectors(k, r)) {
    std::vector<Colour> image(g.class_count(), kUnset);
    for (std::uint64_t code = 0; code < g.tuple_count(); ++code) {
      std::uint64_t proj = 0;
      for (std::uint32_t j = 0; j < r; ++j)
        proj += static_cast<std::uint64_t>(g.codec().digit(code, iv[j])) * rcodec.weight(j);
      Colour c = g.colour(code);
      Colour pc = h.colour(proj);
      if (image[c] == kUnset)
        image[c] = pc;
      else if (image[c] != pc)
        return false;
    }
  }
  return true;
}

namespace {

// Canonical id of the equality pattern of a tuple: entry j names the first
// position holding the same vertex.
std::uint64_t equality_pattern(const TupleCodec& codec, TupleCode code, VertexTuple& scratch) {
  const std::uint32_t k = codec.arity();
  scratch.clear();
  std::uint64_t id = 0;
  for (std::uint32_t j = 0; j < k; ++j) {
    Vertex vj = codec.digit(code, j);
    std::uint32_t first = j;
    for (std::uint32_t i = 0; i < j; ++i) {
      if (scratch[i] == vj) {
        first = i;
        break;
      }
    }
    scratch.push_back(vj);
    id = id * (k + 1) + first;
  }
  return id;
}

}  // namespace

GraphLikeReport graph_like_report(const Partition& g) {
  if (!is_invariant(g)) return {false, "not invariant under coordinate permutations"};
  for (std::uint32_t r = 1; r <= g.arity(); ++r) {
    if (!is_consistent(g, r))
      return {false, "not " + std::to_string(r) + "-consistent"};
  }
  // Class-equal tuples must share their equality pattern.
  std::vector<std::uint64_t> pattern(g.class_count(), ~std::uint64_t{0});
  VertexTuple scratch;
  for (std::uint64_t code = 0; code < g.tuple_count(); ++code) {
    std::uint64_t pat = equality_pattern(g.codec(), code, scratch);
    Colour c = g.colour(code);
    if (pattern[c] == ~std::uint64_t{0})
      pattern[c] = pat;
    else if (pattern[c] != pat)
      return {false, "a class mixes tuples with different equality patterns"};
  }
  return {true, {}};
}

bool is_graph_like(const Partition& g) { return graph_like_report(g).ok; }

namespace detail {

Colour SignatureInterner::intern(std::vector<std::uint32_t>&& sig) {
  auto [it, inserted] = ids_.try_emplace(std::move(sig), next_);
  if (inserted) ++next_;
  return it->second;
}

}  // namespace detail

}  // namespace wllab
