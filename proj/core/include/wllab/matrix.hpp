#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wllab/caps.hpp"

namespace wllab {

enum class FieldKind { Rationals, PrimeField };

// The rationals or a prime field GF(p). Exact arithmetic only.
class FieldSpec {
 public:
  static FieldSpec rationals() { return FieldSpec(FieldKind::Rationals, 0); }
  // Checks primality; p must fit the configured word-size limit.
  static FieldSpec prime(std::uint64_t p, const Caps& caps = {});
  // Accepts "q" or "gf:<p>".
  static FieldSpec parse(const std::string& text, const Caps& caps = {});

  FieldKind kind() const { return kind_; }
  std::uint64_t characteristic() const { return p_; }  // 0 for the rationals
  std::string name() const;

  bool operator==(const FieldSpec&) const = default;

 private:
  FieldSpec(FieldKind kind, std::uint64_t p) : kind_(kind), p_(p) {}
  FieldKind kind_;
  std::uint64_t p_;
};

// A field element: an exact rational or a residue in [0, p).
using FieldScalar = std::variant<mpq_class, std::uint64_t>;

// Dense matrix over a FieldSpec. Rational entries are arbitrary-precision
// fractions in lowest terms; prime-field entries are machine-word residues.
class FieldMatrix {
 public:
  FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols);  // zeros
  static FieldMatrix identity(FieldSpec field, std::size_t n);
  static FieldMatrix all_ones(FieldSpec field, std::size_t rows, std::size_t cols);
  static FieldMatrix from_rows(FieldSpec field,
                               const std::vector<std::vector<std::int64_t>>& rows);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, std::int64_t value);
  void set(std::size_t r, std::size_t c, const mpq_class& value);
  FieldScalar at(std::size_t r, std::size_t c) const;
  bool entry_is_zero(std::size_t r, std::size_t c) const;

  FieldMatrix operator+(const FieldMatrix& other) const;
  FieldMatrix operator-(const FieldMatrix& other) const;
  FieldMatrix operator*(const FieldMatrix& other) const;
  FieldMatrix hadamard(const FieldMatrix& other) const;
  FieldMatrix transpose() const;
  FieldMatrix scaled(std::int64_t factor) const;

  bool operator==(const FieldMatrix& other) const = default;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  FieldScalar trace() const;

  std::size_t rank() const;
  // Basis of {x : A x = 0} as cols()-by-1 column vectors.
  std::vector<FieldMatrix> kernel_basis() const;
  std::optional<FieldMatrix> inverse() const;
  bool is_invertible() const;

 private:
  friend struct MatrixOps;
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::variant<std::vector<mpq_class>, std::vector<std::uint64_t>> data_;
};

// Basis of the space {T : T x_i = y_i T for all i} as n-by-n matrices. The
// tuples must have equal length, dimension and field.
std::vector<FieldMatrix> intertwiner_space(const std::vector<FieldMatrix>& xs,
                                           const std::vector<FieldMatrix>& ys);

// An invertible S with S x_i S^-1 = y_i for all i, or nullopt when provably
// none exists. All strategies are exact; when they run out before deciding,
// throws SimilarityUndecided instead of guessing.
std::optional<FieldMatrix> simultaneously_similar(const std::vector<FieldMatrix>& xs,
                                                  const std::vector<FieldMatrix>& ys,
                                                  const Caps& caps = {});

}  // namespace wllab
