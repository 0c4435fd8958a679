#pragma once

#include <cstdint>
#include <vector>

#include "wllab/caps.hpp"

namespace wllab {

using Vertex = std::uint32_t;
using Colour = std::uint32_t;
using TupleCode = std::uint64_t;

// A tuple of vertices of some fixed arity k >= 1.
using VertexTuple = std::vector<Vertex>;

// A vector of 0-based positions into a k-tuple.
using IndexVec = std::vector<std::uint32_t>;

bool all_distinct(const IndexVec& positions);

// Replaces the entries of v at the given pairwise-distinct positions by the
// entries of u: position positions[s] receives u[s], everything else is kept.
VertexTuple substitute(const VertexTuple& v, const IndexVec& positions, const VertexTuple& u);

// Picks out the entries of v at the given positions; repeats are allowed.
VertexTuple project(const VertexTuple& v, const IndexVec& positions);

VertexTuple concat(const VertexTuple& v, const VertexTuple& w);

// All index vectors over {0..k-1} of length r, in lexicographic order.
std::vector<IndexVec> index_vectors(std::uint32_t k, std::uint32_t r);
// The subset with pairwise distinct entries, in lexicographic order.
std::vector<IndexVec> injective_index_vectors(std::uint32_t k, std::uint32_t r);

// Mixed-radix codec between k-tuples over [0, n) and integers in [0, n^k).
// The first entry is the most significant digit, so numeric order of codes is
// lexicographic order of tuples.
class TupleCodec {
 public:
  TupleCodec(std::uint32_t n, std::uint32_t arity, const Caps& caps = {});

  std::uint32_t n() const { return n_; }
  std::uint32_t arity() const { return arity_; }
  std::uint64_t size() const { return size_; }

  // n^(arity-1-pos): the contribution of one unit at the given position.
  std::uint64_t weight(std::uint32_t pos) const { return weights_[pos]; }

  TupleCode encode(const VertexTuple& v) const;
  VertexTuple decode(TupleCode code) const;
  Vertex digit(TupleCode code, std::uint32_t pos) const {
    return static_cast<Vertex>((code / weights_[pos]) % n_);
  }

  // Code of the constant tuple (v, v, ..., v).
  TupleCode constant(Vertex v) const;

  bool operator==(const TupleCodec& other) const {
    return n_ == other.n_ && arity_ == other.arity_;
  }

 private:
  std::uint32_t n_;
  std::uint32_t arity_;
  std::uint64_t size_;
  std::vector<std::uint64_t> weights_;
};

}  // namespace wllab
