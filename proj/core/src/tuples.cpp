#include "wllab/tuples.hpp"

#include <stdexcept>
#include <string>

#include "wllab/errors.hpp"

namespace wllab {

bool all_distinct(const IndexVec& positions) {
  for (std::size_t i = 0; i < positions.size(); ++i)
    for (std::size_t j = i + 1; j < positions.size(); ++j)
      if (positions[i] == positions[j]) return false;
  return true;
}

VertexTuple substitute(const VertexTuple& v, const IndexVec& positions, const VertexTuple& u) {
  if (positions.empty()) throw std::invalid_argument("substitute: empty index vector");
  if (positions.size() != u.size())
    throw std::invalid_argument("substitute: index vector and replacement tuple differ in length");
  if (positions.size() > v.size())
    throw std::invalid_argument("substitute: more positions than tuple entries");
  if (!all_distinct(positions))
    throw std::invalid_argument("substitute: positions must be pairwise distinct");
  VertexTuple out = v;
  for (std::size_t s = 0; s < positions.size(); ++s) {
    if (positions[s] >= v.size()) throw std::invalid_argument("substitute: position out of range");
    out[positions[s]] = u[s];
  }
  return out;
}

VertexTuple project(const VertexTuple& v, const IndexVec& positions) {
  if (positions.empty()) throw std::invalid_argument("project: empty index vector");
  VertexTuple out;
  out.reserve(positions.size());
  for (std::uint32_t p : positions) {
    if (p >= v.size()) throw std::invalid_argument("project: position out of range");
    out.push_back(v[p]);
  }
  return out;
}

VertexTuple concat(const VertexTuple& v, const VertexTuple& w) {
  // arity-0 tuples are not part of the model
  if (v.empty() || w.empty()) throw std::invalid_argument("concat: empty operand");
  VertexTuple out = v;
  out.insert(out.end(), w.begin(), w.end());
  return out;
}

std::vector<IndexVec> index_vectors(std::uint32_t k, std::uint32_t r) {
  std::vector<IndexVec> out;
  IndexVec cur(r, 0);
  while (true) {
    out.push_back(cur);
    std::uint32_t pos = r;
    while (pos > 0) {
      --pos;
      if (++cur[pos] < k) break;
      cur[pos] = 0;
      if (pos == 0) return out;
    }
    if (r == 0) return out;
  }
}

std::vector<IndexVec> injective_index_vectors(std::uint32_t k, std::uint32_t r) {
  std::vector<IndexVec> out;
  for (IndexVec& iv : index_vectors(k, r))
    if (all_distinct(iv)) out.push_back(std::move(iv));
  return out;
}

TupleCodec::TupleCodec(std::uint32_t n, std::uint32_t arity, const Caps& caps)
    : n_(n), arity_(arity) {
  if (n == 0) throw std::invalid_argument("TupleCodec: empty vertex set");
  if (arity == 0) throw std::invalid_argument("TupleCodec: arity must be at least 1");
  size_ = 1;
  for (std::uint32_t i = 0; i < arity; ++i) {
    if (size_ > caps.max_tuples / n)
      throw CapExceeded("tuple table of size " + std::to_string(n) + "^" +
                        std::to_string(arity) + " exceeds the configured cap");
    size_ *= n;
  }
  weights_.resize(arity);
  std::uint64_t w = 1;
  for (std::uint32_t pos = arity; pos-- > 0;) {
    weights_[pos] = w;
    w *= n;
  }
}

TupleCode TupleCodec::encode(const VertexTuple& v) const {
  if (v.size() != arity_) throw std::invalid_argument("TupleCodec::encode: arity mismatch");
  TupleCode code = 0;
  for (std::uint32_t i = 0; i < arity_; ++i) {
    if (v[i] >= n_) throw std::invalid_argument("TupleCodec::encode: vertex out of range");
    code = code * n_ + v[i];
  }
  return code;
}

VertexTuple TupleCodec::decode(TupleCode code) const {
  VertexTuple v(arity_);
  for (std::uint32_t pos = arity_; pos-- > 0;) {
    v[pos] = static_cast<Vertex>(code % n_);
    code /= n_;
  }
  return v;
}

TupleCode TupleCodec::constant(Vertex v) const {
  TupleCode code = 0;
  for (std::uint32_t i = 0; i < arity_; ++i) code = code * n_ + v;
  return code;
}

}  // namespace wllab
