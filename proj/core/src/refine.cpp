#include "wllab/refine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "wllab/errors.hpp"

namespace wllab {

const char* to_string(OpFamily f) {
  switch (f) {
    case OpFamily::WL: return "wl";
    case OpFamily::C: return "c";
    case OpFamily::IM: return "im";
    case OpFamily::IMt: return "imt";
    case OpFamily::IMr: return "imr";
  }
  return "?";
}

bool OperatorSpec::is_identity() const {
  switch (family) {
    case OpFamily::WL:
    case OpFamily::C:
      return k <= r;
    case OpFamily::IM:
    case OpFamily::IMt:
      return k <= 2;
    case OpFamily::IMr:
      return k <= 2 * r;
  }
  return false;
}

namespace {

constexpr Colour kUnset = 0xffffffffu;

// For an index vector iv and every code X of an r-tuple x, the substitution
// amount sum_s x_s * weight(iv[s]).
std::vector<std::uint64_t> substitution_offsets(const TupleCodec& codec, const IndexVec& iv,
                                                const TupleCodec& sub_codec) {
  std::vector<std::uint64_t> offs(sub_codec.size(), 0);
  for (std::uint64_t x = 0; x < sub_codec.size(); ++x) {
    std::uint64_t sum = 0;
    for (std::size_t s = 0; s < iv.size(); ++s)
      sum += static_cast<std::uint64_t>(sub_codec.digit(x, s)) * codec.weight(iv[s]);
    offs[x] = sum;
  }
  return offs;
}

// The part of T that substitution at iv overwrites.
inline std::uint64_t replaced_part(const TupleCodec& codec, TupleCode t, const IndexVec& iv) {
  std::uint64_t sum = 0;
  for (std::uint32_t pos : iv)
    sum += static_cast<std::uint64_t>(codec.digit(t, pos)) * codec.weight(pos);
  return sum;
}

}  // namespace

Partition wl_step(const Partition& g, std::uint32_t r) {
  if (r < 1) throw std::invalid_argument("wl_step: r must be at least 1");
  const std::uint32_t k = g.arity();
  if (k <= r) return g;
  const std::uint32_t n = g.n();
  const TupleCodec& codec = g.codec();
  TupleCodec rcodec(n, r);
  const std::uint64_t R = rcodec.size();
  const std::vector<IndexVec> ivecs = injective_index_vectors(k, r);
  const std::size_t m = ivecs.size();

  std::vector<std::vector<std::uint64_t>> offsets;
  offsets.reserve(m);
  for (const IndexVec& iv : ivecs) offsets.push_back(substitution_offsets(codec, iv, rcodec));

  detail::SignatureInterner interner;
  std::vector<Colour> out(g.tuple_count());
  std::vector<Colour> rows(R * m);
  std::vector<std::uint32_t> order(R);
  std::vector<std::uint64_t> bases(m);
  for (TupleCode t = 0; t < g.tuple_count(); ++t) {
    for (std::size_t i = 0; i < m; ++i) bases[i] = t - replaced_part(codec, t, ivecs[i]);
    for (std::uint64_t x = 0; x < R; ++x)
      for (std::size_t i = 0; i < m; ++i) rows[x * m + i] = g.colour(bases[i] + offsets[i][x]);
    // The multiset of colour vectors, encoded as sorted concatenated rows.
    for (std::uint64_t x = 0; x < R; ++x) order[x] = static_cast<std::uint32_t>(x);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return std::lexicographical_compare(rows.begin() + std::size_t{a} * m,
                                          rows.begin() + std::size_t{a + 1} * m,
                                          rows.begin() + std::size_t{b} * m,
                                          rows.begin() + std::size_t{b + 1} * m);
    });
    std::vector<std::uint32_t> sig;
    sig.reserve(1 + R * m);
    sig.push_back(g.colour(t));
    for (std::uint32_t x : order)
      sig.insert(sig.end(), rows.begin() + std::size_t{x} * m, rows.begin() + std::size_t{x + 1} * m);
    out[t] = interner.intern(std::move(sig));
  }
  return Partition(n, k, std::move(out));
}

Partition c_step(const Partition& g, std::uint32_t r) {
  if (r < 1) throw std::invalid_argument("c_step: r must be at least 1");
  const std::uint32_t k = g.arity();
  if (k <= r) return g;
  const std::uint32_t n = g.n();
  const TupleCodec& codec = g.codec();
  TupleCodec rcodec(n, r);
  const std::uint64_t R = rcodec.size();
  const std::vector<IndexVec> ivecs = injective_index_vectors(k, r);

  std::vector<std::vector<std::uint64_t>> offsets;
  offsets.reserve(ivecs.size());
  for (const IndexVec& iv : ivecs) offsets.push_back(substitution_offsets(codec, iv, rcodec));

  detail::SignatureInterner interner;
  std::vector<Colour> out(g.tuple_count());
  std::vector<Colour> buf(R);
  for (TupleCode t = 0; t < g.tuple_count(); ++t) {
    std::vector<std::uint32_t> sig;
    sig.reserve(1 + ivecs.size() * 8);
    sig.push_back(g.colour(t));
    for (std::size_t i = 0; i < ivecs.size(); ++i) {
      const std::uint64_t base = t - replaced_part(codec, t, ivecs[i]);
      for (std::uint64_t x = 0; x < R; ++x) buf[x] = g.colour(base + offsets[i][x]);
      std::sort(buf.begin(), buf.end());
      // run-length encoding: one (colour, count) pair per distinct colour
      for (std::uint64_t x = 0; x < R;) {
        std::uint64_t y = x;
        while (y < R && buf[y] == buf[x]) ++y;
        sig.push_back(buf[x]);
        sig.push_back(static_cast<std::uint32_t>(y - x));
        x = y;
      }
      sig.push_back(kUnset);  // group separator
    }
    out[t] = interner.intern(std::move(sig));
  }
  return Partition(n, k, std::move(out));
}

namespace {

// One tuple's indicator matrices for one substitution slot (or, for the joint
// variant, for all slots at once). Matrices are kept bit-packed; exact field
// matrices and conjugation-invariant profiles materialize on demand.
struct IndicatorFamily {
  std::size_t dim = 0;
  FieldSpec field = FieldSpec::rationals();
  std::vector<std::vector<Colour>> keys;         // sorted
  std::vector<std::vector<std::uint64_t>> bits;  // aligned with keys

  mutable std::vector<FieldMatrix> mats;
  mutable std::vector<std::pair<std::uint32_t, std::uint64_t>> profile;  // (rank, trace)
  mutable bool mats_built = false;
  mutable bool profile_built = false;

  void ensure_mats() const {
    if (mats_built) return;
    mats.reserve(bits.size());
    for (const auto& b : bits) {
      FieldMatrix m(field, dim, dim);
      for (std::size_t e = 0; e < dim * dim; ++e)
        if (b[e >> 6] >> (e & 63) & 1) m.set(e / dim, e % dim, 1);
      mats.push_back(std::move(m));
    }
    mats_built = true;
  }

  void ensure_profile() const {
    if (profile_built) return;
    ensure_mats();
    profile.reserve(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      std::uint64_t trace = 0;
      for (std::size_t d = 0; d < dim; ++d) {
        std::size_t e = d * dim + d;
        if (bits[i][e >> 6] >> (e & 63) & 1) ++trace;
      }
      if (field.kind() == FieldKind::PrimeField) trace %= field.characteristic();
      profile.emplace_back(static_cast<std::uint32_t>(mats[i].rank()), trace);
    }
    profile_built = true;
  }
};

IndicatorFamily single_slot_family(const Partition& g, TupleCode t, const IndexVec& iv,
                                   const std::vector<std::uint64_t>& offsets, std::size_t dim,
                                   const FieldSpec& field) {
  const std::uint64_t base = t - replaced_part(g.codec(), t, iv);
  const std::size_t words = (dim * dim + 63) / 64;
  std::map<Colour, std::vector<std::uint64_t>> buckets;
  for (std::uint64_t e = 0; e < dim * dim; ++e) {
    Colour c = g.colour(base + offsets[e]);
    auto it = buckets.try_emplace(c, std::vector<std::uint64_t>(words, 0)).first;
    it->second[e >> 6] |= std::uint64_t{1} << (e & 63);
  }
  IndicatorFamily fam;
  fam.dim = dim;
  fam.field = field;
  fam.keys.reserve(buckets.size());
  fam.bits.reserve(buckets.size());
  for (auto& [colour, b] : buckets) {
    fam.keys.push_back({colour});
    fam.bits.push_back(std::move(b));
  }
  return fam;
}

IndicatorFamily joint_family(const Partition& g, TupleCode t, const std::vector<IndexVec>& ivecs,
                             const std::vector<std::vector<std::uint64_t>>& offsets,
                             std::size_t dim, const FieldSpec& field) {
  const std::size_t words = (dim * dim + 63) / 64;
  std::vector<std::uint64_t> bases(ivecs.size());
  for (std::size_t i = 0; i < ivecs.size(); ++i)
    bases[i] = t - replaced_part(g.codec(), t, ivecs[i]);
  std::map<std::vector<Colour>, std::vector<std::uint64_t>> buckets;
  std::vector<Colour> key(ivecs.size());
  for (std::uint64_t e = 0; e < dim * dim; ++e) {
    for (std::size_t i = 0; i < ivecs.size(); ++i) key[i] = g.colour(bases[i] + offsets[i][e]);
    auto it = buckets.try_emplace(key, std::vector<std::uint64_t>(words, 0)).first;
    it->second[e >> 6] |= std::uint64_t{1} << (e & 63);
  }
  IndicatorFamily fam;
  fam.dim = dim;
  fam.field = field;
  fam.keys.reserve(buckets.size());
  fam.bits.reserve(buckets.size());
  for (auto& [k, b] : buckets) {
    fam.keys.push_back(k);
    fam.bits.push_back(std::move(b));
  }
  return fam;
}

bool families_match(const IndicatorFamily& a, const IndicatorFamily& b, const Caps& caps) {
  // Realized keys must coincide: a matrix present on one side and missing on
  // the other can never be conjugate to the zero matrix.
  if (a.keys != b.keys) return false;
  if (a.bits == b.bits) return true;  // identical matrices
  a.ensure_profile();
  b.ensure_profile();
  if (a.profile != b.profile) return false;
  a.ensure_mats();
  b.ensure_mats();
  return simultaneously_similar(a.mats, b.mats, caps).has_value();
}

template <class FamilyBuilder>
Partition invertible_map_refine(const Partition& g, FamilyBuilder&& build, const Caps& caps) {
  struct Rep {
    std::vector<IndicatorFamily> fams;
    Colour colour;
  };
  std::vector<std::vector<Rep>> reps(g.class_count());
  std::vector<Colour> out(g.tuple_count());
  Colour next = 0;
  for (TupleCode t = 0; t < g.tuple_count(); ++t) {
    std::vector<IndicatorFamily> fams = build(t);
    Colour assigned = kUnset;
    for (Rep& rep : reps[g.colour(t)]) {
      bool all = true;
      for (std::size_t i = 0; i < fams.size() && all; ++i)
        all = families_match(rep.fams[i], fams[i], caps);
      if (all) {
        assigned = rep.colour;
        break;
      }
    }
    if (assigned == kUnset) {
      assigned = next++;
      reps[g.colour(t)].push_back(Rep{std::move(fams), assigned});
    }
    out[t] = assigned;
  }
  return Partition(g.n(), g.arity(), std::move(out));
}

}  // namespace

Partition im_step(const Partition& g, const FieldSpec& field, const Caps& caps) {
  if (g.arity() <= 2) return g;
  const std::uint32_t n = g.n();
  const std::vector<IndexVec> ivecs = injective_index_vectors(g.arity(), 2);
  TupleCodec sub_codec(n, 2);
  std::vector<std::vector<std::uint64_t>> offsets;
  offsets.reserve(ivecs.size());
  for (const IndexVec& iv : ivecs)
    offsets.push_back(substitution_offsets(g.codec(), iv, sub_codec));
  auto build = [&](TupleCode t) {
    std::vector<IndicatorFamily> fams;
    fams.reserve(ivecs.size());
    for (std::size_t i = 0; i < ivecs.size(); ++i)
      fams.push_back(single_slot_family(g, t, ivecs[i], offsets[i], n, field));
    return fams;
  };
  return invertible_map_refine(g, build, caps);
}

Partition imt_step(const Partition& g, const FieldSpec& field, const Caps& caps) {
  if (g.arity() <= 2) return g;
  const std::uint32_t n = g.n();
  const std::vector<IndexVec> ivecs = injective_index_vectors(g.arity(), 2);
  TupleCodec sub_codec(n, 2);
  std::vector<std::vector<std::uint64_t>> offsets;
  offsets.reserve(ivecs.size());
  for (const IndexVec& iv : ivecs)
    offsets.push_back(substitution_offsets(g.codec(), iv, sub_codec));
  auto build = [&](TupleCode t) {
    std::vector<IndicatorFamily> fams;
    fams.push_back(joint_family(g, t, ivecs, offsets, n, field));
    return fams;
  };
  return invertible_map_refine(g, build, caps);
}

Partition im_r_step(const Partition& g, const FieldSpec& field, std::uint32_t r,
                    const Caps& caps) {
  if (r < 1) throw std::invalid_argument("im_r_step: r must be at least 1");
  if (g.arity() <= 2 * r) return g;
  const std::uint32_t n = g.n();
  const std::vector<IndexVec> ivecs = injective_index_vectors(g.arity(), 2 * r);
  TupleCodec sub_codec(n, 2 * r, caps);  // enforces the n^(2r) cap
  std::uint64_t dim = 1;
  for (std::uint32_t i = 0; i < r; ++i) dim *= n;
  std::vector<std::vector<std::uint64_t>> offsets;
  offsets.reserve(ivecs.size());
  for (const IndexVec& iv : ivecs)
    offsets.push_back(substitution_offsets(g.codec(), iv, sub_codec));
  auto build = [&](TupleCode t) {
    std::vector<IndicatorFamily> fams;
    fams.reserve(ivecs.size());
    for (std::size_t i = 0; i < ivecs.size(); ++i)
      fams.push_back(single_slot_family(g, t, ivecs[i], offsets[i], dim, field));
    return fams;
  };
  return invertible_map_refine(g, build, caps);
}

namespace {

const FieldSpec& require_field(const OperatorSpec& op) {
  if (!op.field.has_value())
    throw std::invalid_argument("operator family needs a field");
  return *op.field;
}

}  // namespace

Partition apply_operator(const OperatorSpec& op, const Partition& g, const Caps& caps) {
  if (g.arity() != op.k)
    throw std::invalid_argument("apply_operator: partition arity does not match the operator");
  switch (op.family) {
    case OpFamily::WL: return wl_step(g, op.r);
    case OpFamily::C: return c_step(g, op.r);
    case OpFamily::IM: return im_step(g, require_field(op), caps);
    case OpFamily::IMt: return imt_step(g, require_field(op), caps);
    case OpFamily::IMr: return im_r_step(g, require_field(op), op.r, caps);
  }
  throw std::logic_error("apply_operator: unknown family");
}

FixedPointResult fixed_point(const OperatorSpec& op, const Partition& start, const Caps& caps) {
  if (start.arity() != op.k)
    throw std::invalid_argument("fixed_point: partition arity does not match the operator");
  FixedPointResult res{start, 0, {start.class_count()}, op.is_identity()};
  if (res.identity_operator) return res;
  while (true) {
    Partition next = apply_operator(op, res.partition, caps);
    ++res.iterations;
    res.class_history.push_back(next.class_count());
    // Every step refines, so an unchanged class count means a fixed point.
    if (next.class_count() == res.partition.class_count()) break;
    res.partition = std::move(next);
  }
  res.partition = canonicalize(res.partition);
  return res;
}

bool is_wl_stable(const Partition& g, std::uint32_t r) {
  if (g.arity() <= r) return true;
  return wl_step(g, r).class_count() == g.class_count();
}

bool is_c_stable(const Partition& g, std::uint32_t r) {
  if (g.arity() <= r) return true;
  return c_step(g, r).class_count() == g.class_count();
}

bool is_im_stable(const Partition& g, const FieldSpec& field, const Caps& caps) {
  if (g.arity() <= 2) return true;
  return im_step(g, field, caps).class_count() == g.class_count();
}

bool is_imt_stable(const Partition& g, const FieldSpec& field, const Caps& caps) {
  if (g.arity() <= 2) return true;
  return imt_step(g, field, caps).class_count() == g.class_count();
}

bool is_stable(const OperatorSpec& op, const Partition& g, const Caps& caps) {
  if (op.is_identity()) return true;
  return apply_operator(op, g, caps).class_count() == g.class_count();
}

Partition point_extension(const Partition& g, bool verify_stable, const Caps& caps) {
  GraphLikeReport report = graph_like_report(g);
  if (!report.ok) throw NotGraphLike("point_extension: " + report.violation);
  if (verify_stable && !is_wl_stable(g, 1))
    throw Error("point_extension: input is not a wl fixed point");
  const std::uint32_t k = g.arity();
  const std::uint32_t n = g.n();
  TupleCodec codec(n, k + 1, caps);

  detail::SignatureInterner interner;
  std::vector<Colour> out(codec.size());
  std::vector<std::uint32_t> sig(k + 1);
  for (TupleCode code = 0; code < codec.size(); ++code) {
    const TupleCode prefix = code / n;
    const Vertex w = static_cast<Vertex>(code % n);
    sig[0] = g.colour(prefix);
    for (std::uint32_t i = 0; i < k; ++i) {
      const Vertex d = g.codec().digit(prefix, i);
      const std::uint64_t subst =
          prefix + (static_cast<std::uint64_t>(w) - d) * g.codec().weight(i);
      sig[i + 1] = g.colour(subst);
    }
    out[code] = interner.intern(std::vector<std::uint32_t>(sig));
  }
  return Partition(n, k + 1, std::move(out), caps);
}

std::vector<std::pair<Colour, FieldMatrix>> substitution_indicators(const Partition& g,
                                                                    TupleCode base,
                                                                    const IndexVec& positions,
                                                                    const FieldSpec& field) {
  if (positions.size() != 2 || !all_distinct(positions))
    throw std::invalid_argument("substitution_indicators: need two distinct positions");
  const std::uint32_t n = g.n();
  TupleCodec sub_codec(n, 2);
  auto offsets = substitution_offsets(g.codec(), positions, sub_codec);
  IndicatorFamily fam = single_slot_family(g, base, positions, offsets, n, field);
  fam.ensure_mats();
  std::vector<std::pair<Colour, FieldMatrix>> out;
  out.reserve(fam.keys.size());
  for (std::size_t i = 0; i < fam.keys.size(); ++i)
    out.emplace_back(fam.keys[i][0], fam.mats[i]);
  return out;
}

std::vector<std::pair<std::vector<Colour>, FieldMatrix>> joint_substitution_indicators(
    const Partition& g, TupleCode base, const FieldSpec& field) {
  const std::uint32_t n = g.n();
  const std::vector<IndexVec> ivecs = injective_index_vectors(g.arity(), 2);
  TupleCodec sub_codec(n, 2);
  std::vector<std::vector<std::uint64_t>> offsets;
  offsets.reserve(ivecs.size());
  for (const IndexVec& iv : ivecs)
    offsets.push_back(substitution_offsets(g.codec(), iv, sub_codec));
  IndicatorFamily fam = joint_family(g, base, ivecs, offsets, n, field);
  fam.ensure_mats();
  std::vector<std::pair<std::vector<Colour>, FieldMatrix>> out;
  out.reserve(fam.keys.size());
  for (std::size_t i = 0; i < fam.keys.size(); ++i) out.emplace_back(fam.keys[i], fam.mats[i]);
  return out;
}

}  // namespace wllab
