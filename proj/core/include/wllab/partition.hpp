#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "wllab/caps.hpp"
#include "wllab/tuples.hpp"

namespace wllab {

// Refinement order on two partitions of the same tuple set. FinerRight means
// every class of the right partition is contained in a class of the left one
// (the right partition refines the left) and the two are not equivalent.
enum class CompareResult { Equivalent, FinerLeft, FinerRight, Incomparable };

const char* to_string(CompareResult r);

// A total colouring of V^k with dense colour ids. The colour table is stored
// flat, indexed by the mixed-radix tuple code.
class Partition {
 public:
  Partition(std::uint32_t n, std::uint32_t arity, std::vector<Colour> colours,
            const Caps& caps = {});

  static Partition uniform(std::uint32_t n, std::uint32_t arity, const Caps& caps = {});
  static Partition discrete(std::uint32_t n, std::uint32_t arity, const Caps& caps = {});

  std::uint32_t n() const { return codec_.n(); }
  std::uint32_t arity() const { return codec_.arity(); }
  std::uint64_t tuple_count() const { return codec_.size(); }
  std::uint32_t class_count() const { return class_count_; }
  const TupleCodec& codec() const { return codec_; }

  Colour colour(TupleCode code) const { return colours_[code]; }
  Colour colour(const VertexTuple& v) const { return colours_[codec_.encode(v)]; }
  const std::vector<Colour>& colours() const { return colours_; }

  std::vector<std::uint64_t> class_sizes() const;

  bool operator==(const Partition& other) const = default;

 private:
  TupleCodec codec_;
  std::vector<Colour> colours_;
  std::uint32_t class_count_;
};

// Relabels colours as 0..c-1 by first occurrence in lexicographic tuple
// order. Idempotent; the class structure is unchanged.
Partition canonicalize(const Partition& g);

// Both partitions must share n and arity.
CompareResult compare(const Partition& g, const Partition& h);

// True when h refines g (every h-class inside a g-class), equivalence included.
bool refines(const Partition& g, const Partition& h);

// Restriction to the first r coordinates: the colour of (v_1..v_r) is the
// colour of (v_1,..,v_r,v_r,..,v_r). Canonicalized.
Partition project_partition(const Partition& g, std::uint32_t r);

// Reinterprets a partition of V^(p*k) as a partition of (V^k)^p. Pure
// reindexing: the flat colour table is unchanged.
Partition reshape(const Partition& g, std::uint32_t k, std::uint32_t p, const Caps& caps = {});

// Stability of the class structure under permuting tuple coordinates.
// Checked on adjacent transpositions, which generate the full symmetric group.
bool is_invariant(const Partition& g);

// For every length-r index vector (repeats allowed), class-equal tuples have
// class-equal projections under the r-coordinate restriction of g.
bool is_consistent(const Partition& g, std::uint32_t r);

struct GraphLikeReport {
  bool ok = true;
  std::string violation;  // first failed condition, empty when ok
};

GraphLikeReport graph_like_report(const Partition& g);
bool is_graph_like(const Partition& g);

// Internal: dense relabelling helper shared by the refinement operators.
// Signatures are interned in call order, so ids follow first occurrence.
namespace detail {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t x : v) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

struct VecHash64 {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t x : v) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

class SignatureInterner {
 public:
  Colour intern(std::vector<std::uint32_t>&& sig);
  std::uint32_t count() const { return next_; }

 private:
  std::unordered_map<std::vector<std::uint32_t>, Colour, VecHash> ids_;
  Colour next_ = 0;
};

}  // namespace detail

}  // namespace wllab
