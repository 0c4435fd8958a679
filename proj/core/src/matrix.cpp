#include "wllab/matrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "wllab/errors.hpp"
#include "wllab/prng.hpp"

namespace wllab {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

struct RatOps {
  using Elem = mpq_class;
  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(std::int64_t v) const { return Elem(static_cast<long>(v)); }
  Elem add(const Elem& a, const Elem& b) const { return Elem(a + b); }
  Elem sub(const Elem& a, const Elem& b) const { return Elem(a - b); }
  Elem mul(const Elem& a, const Elem& b) const { return Elem(a * b); }
  Elem neg(const Elem& a) const { return Elem(-a); }
  Elem inv(const Elem& a) const { return Elem(1 / a); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
};

struct ModOps {
  std::uint64_t p;
  using Elem = std::uint64_t;
  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  Elem from_int(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p);
    return static_cast<Elem>(m < 0 ? m + static_cast<std::int64_t>(p) : m);
  }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const {
    // extended Euclid; a must be nonzero mod p
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::swap(t -= q * new_t, new_t);
      std::swap(r -= q * new_r, new_r);
    }
    if (r != 1) throw std::domain_error("inverse of a non-unit");
    return static_cast<Elem>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
  }
  bool is_zero(Elem a) const { return a == 0; }
};

// Row reduction over an arbitrary field. Reduces data (rows x cols,
// row-major) to reduced row echelon form, returns the pivot columns.
template <class Ops>
std::vector<std::size_t> rref(const Ops& F, std::vector<typename Ops::Elem>& data,
                              std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = rows;
    for (std::size_t r = row; r < rows; ++r) {
      if (!F.is_zero(data[r * cols + col])) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != row)
      for (std::size_t c = col; c < cols; ++c)
        std::swap(data[pivot * cols + c], data[row * cols + c]);
    const auto scale = F.inv(data[row * cols + col]);
    for (std::size_t c = col; c < cols; ++c)
      data[row * cols + c] = F.mul(data[row * cols + c], scale);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row) continue;
      const auto factor = data[r * cols + col];
      if (F.is_zero(factor)) continue;
      for (std::size_t c = col; c < cols; ++c)
        data[r * cols + c] = F.sub(data[r * cols + c], F.mul(factor, data[row * cols + c]));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Kernel basis of the rows-x-cols system, one column vector per free column.
template <class Ops>
std::vector<std::vector<typename Ops::Elem>> kernel_of(const Ops& F,
                                                       std::vector<typename Ops::Elem> data,
                                                       std::size_t rows, std::size_t cols) {
  std::vector<std::size_t> pivots = rref(F, data, rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename Ops::Elem>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename Ops::Elem> vec(cols, F.zero());
    vec[free] = F.one();
    for (std::size_t i = 0; i < pivots.size(); ++i)
      vec[pivots[i]] = F.neg(data[i * cols + free]);
    basis.push_back(std::move(vec));
  }
  return basis;
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint64_t p, const Caps& caps) {
  if (p > caps.max_prime)
    throw CapExceeded("prime modulus " + std::to_string(p) + " exceeds the configured cap");
  if (!is_prime(p)) throw std::invalid_argument("FieldSpec: " + std::to_string(p) + " is not prime");
  return FieldSpec(FieldKind::PrimeField, p);
}

FieldSpec FieldSpec::parse(const std::string& text, const Caps& caps) {
  if (text == "q" || text == "Q") return rationals();
  if (text.rfind("gf:", 0) == 0) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(text.substr(3));
    } catch (const std::exception&) {
      throw std::invalid_argument("FieldSpec: cannot parse '" + text + "'");
    }
    return prime(p, caps);
  }
  throw std::invalid_argument("FieldSpec: expected 'q' or 'gf:<p>', got '" + text + "'");
}

std::string FieldSpec::name() const {
  return kind_ == FieldKind::Rationals ? "q" : "gf:" + std::to_string(p_);
}

struct MatrixOps {
  template <class Fn>
  static auto dispatch(const FieldMatrix& m, Fn&& fn) {
    if (m.field_.kind() == FieldKind::Rationals)
      return fn(RatOps{}, std::get<std::vector<mpq_class>>(m.data_));
    return fn(ModOps{m.field_.characteristic()}, std::get<std::vector<std::uint64_t>>(m.data_));
  }

  template <class Ops>
  static std::vector<typename Ops::Elem>& data(FieldMatrix& m) {
    return std::get<std::vector<typename Ops::Elem>>(m.data_);
  }
  template <class Ops>
  static const std::vector<typename Ops::Elem>& data(const FieldMatrix& m) {
    return std::get<std::vector<typename Ops::Elem>>(m.data_);
  }

  template <class Ops, class Fn>
  static FieldMatrix zip(const Ops& F, const FieldMatrix& a, const FieldMatrix& b, Fn&& fn) {
    FieldMatrix out(a.field_, a.rows_, a.cols_);
    const auto& da = data<Ops>(a);
    const auto& db = data<Ops>(b);
    auto& dout = data<Ops>(out);
    for (std::size_t i = 0; i < da.size(); ++i) dout[i] = fn(F, da[i], db[i]);
    return out;
  }

  template <class Ops>
  static FieldMatrix mul(const Ops& F, const FieldMatrix& a, const FieldMatrix& b) {
    FieldMatrix out(a.field_, a.rows_, b.cols_);
    const auto& da = data<Ops>(a);
    const auto& db = data<Ops>(b);
    auto& dout = data<Ops>(out);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& aik = da[i * a.cols_ + k];
        if (F.is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const auto& bkj = db[k * b.cols_ + j];
          if (F.is_zero(bkj)) continue;
          dout[i * b.cols_ + j] = F.add(dout[i * b.cols_ + j], F.mul(aik, bkj));
        }
      }
    return out;
  }
};

FieldMatrix::FieldMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {
  if (field.kind() == FieldKind::Rationals)
    data_ = std::vector<mpq_class>(rows * cols, mpq_class(0));
  else
    data_ = std::vector<std::uint64_t>(rows * cols, 0);
}

FieldMatrix FieldMatrix::identity(FieldSpec field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FieldMatrix FieldMatrix::all_ones(FieldSpec field, std::size_t rows, std::size_t cols) {
  FieldMatrix m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, 1);
  return m;
}

FieldMatrix FieldMatrix::from_rows(FieldSpec field,
                                   const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) throw std::invalid_argument("from_rows: no rows");
  FieldMatrix m(field, rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("FieldMatrix::set");
  if (field_.kind() == FieldKind::Rationals)
    std::get<std::vector<mpq_class>>(data_)[r * cols_ + c] = static_cast<long>(value);
  else
    std::get<std::vector<std::uint64_t>>(data_)[r * cols_ + c] =
        ModOps{field_.characteristic()}.from_int(value);
}

void FieldMatrix::set(std::size_t r, std::size_t c, const mpq_class& value) {
  if (field_.kind() != FieldKind::Rationals)
    throw std::invalid_argument("FieldMatrix::set: rational entry in a prime field");
  if (r >= rows_ || c >= cols_) throw std::out_of_range("FieldMatrix::set");
  std::get<std::vector<mpq_class>>(data_)[r * cols_ + c] = value;
}

FieldScalar FieldMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("FieldMatrix::at");
  if (field_.kind() == FieldKind::Rationals)
    return std::get<std::vector<mpq_class>>(data_)[r * cols_ + c];
  return std::get<std::vector<std::uint64_t>>(data_)[r * cols_ + c];
}

bool FieldMatrix::entry_is_zero(std::size_t r, std::size_t c) const {
  return MatrixOps::dispatch(*this, [&](auto F, const auto& d) {
    return F.is_zero(d[r * cols_ + c]);
  });
}

namespace {
void require_same_field(const FieldMatrix& a, const FieldMatrix& b, const char* what) {
  if (!(a.field() == b.field()))
    throw std::invalid_argument(std::string(what) + ": field mismatch");
}
}  // namespace

FieldMatrix FieldMatrix::operator+(const FieldMatrix& other) const {
  require_same_field(*this, other, "operator+");
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("operator+: dimension mismatch");
  if (field_.kind() == FieldKind::Rationals)
    return MatrixOps::zip(RatOps{}, *this, other,
                          [](auto F, const auto& a, const auto& b) { return F.add(a, b); });
  return MatrixOps::zip(ModOps{field_.characteristic()}, *this, other,
                        [](auto F, const auto& a, const auto& b) { return F.add(a, b); });
}

FieldMatrix FieldMatrix::operator-(const FieldMatrix& other) const {
  require_same_field(*this, other, "operator-");
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("operator-: dimension mismatch");
  if (field_.kind() == FieldKind::Rationals)
    return MatrixOps::zip(RatOps{}, *this, other,
                          [](auto F, const auto& a, const auto& b) { return F.sub(a, b); });
  return MatrixOps::zip(ModOps{field_.characteristic()}, *this, other,
                        [](auto F, const auto& a, const auto& b) { return F.sub(a, b); });
}

FieldMatrix FieldMatrix::hadamard(const FieldMatrix& other) const {
  require_same_field(*this, other, "hadamard");
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("hadamard: dimension mismatch");
  if (field_.kind() == FieldKind::Rationals)
    return MatrixOps::zip(RatOps{}, *this, other,
                          [](auto F, const auto& a, const auto& b) { return F.mul(a, b); });
  return MatrixOps::zip(ModOps{field_.characteristic()}, *this, other,
                        [](auto F, const auto& a, const auto& b) { return F.mul(a, b); });
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& other) const {
  require_same_field(*this, other, "operator*");
  if (cols_ != other.rows_) throw std::invalid_argument("operator*: dimension mismatch");
  if (field_.kind() == FieldKind::Rationals) return MatrixOps::mul(RatOps{}, *this, other);
  return MatrixOps::mul(ModOps{field_.characteristic()}, *this, other);
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix out(field_, cols_, rows_);
  MatrixOps::dispatch(*this, [&](auto F, const auto& d) {
    using Ops = decltype(F);
    auto& dout = MatrixOps::data<Ops>(out);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) dout[j * rows_ + i] = d[i * cols_ + j];
    return 0;
  });
  return out;
}

FieldMatrix FieldMatrix::scaled(std::int64_t factor) const {
  FieldMatrix out(field_, rows_, cols_);
  MatrixOps::dispatch(*this, [&](auto F, const auto& d) {
    using Ops = decltype(F);
    auto& dout = MatrixOps::data<Ops>(out);
    const auto f = F.from_int(factor);
    for (std::size_t i = 0; i < d.size(); ++i) dout[i] = F.mul(d[i], f);
    return 0;
  });
  return out;
}

bool FieldMatrix::is_zero() const {
  return MatrixOps::dispatch(*this, [&](auto F, const auto& d) {
    for (const auto& e : d)
      if (!F.is_zero(e)) return false;
    return true;
  });
}

FieldScalar FieldMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace: matrix is not square");
  if (field_.kind() == FieldKind::Rationals) {
    mpq_class t(0);
    const auto& d = std::get<std::vector<mpq_class>>(data_);
    for (std::size_t i = 0; i < rows_; ++i) t += d[i * cols_ + i];
    return t;
  }
  ModOps F{field_.characteristic()};
  std::uint64_t t = 0;
  const auto& d = std::get<std::vector<std::uint64_t>>(data_);
  for (std::size_t i = 0; i < rows_; ++i) t = F.add(t, d[i * cols_ + i]);
  return t;
}

std::size_t FieldMatrix::rank() const {
  return MatrixOps::dispatch(*this, [&](auto F, const auto& d) {
    auto copy = d;
    return rref(F, copy, rows_, cols_).size();
  });
}

std::vector<FieldMatrix> FieldMatrix::kernel_basis() const {
  std::vector<FieldMatrix> out;
  MatrixOps::dispatch(*this, [&](auto F, const auto& d) {
    using Ops = decltype(F);
    for (auto& vec : kernel_of(F, d, rows_, cols_)) {
      FieldMatrix col(field_, cols_, 1);
      MatrixOps::data<Ops>(col) = std::move(vec);
      out.push_back(std::move(col));
    }
    return 0;
  });
  return out;
}

std::optional<FieldMatrix> FieldMatrix::inverse() const {
  if (!is_square()) return std::nullopt;
  std::optional<FieldMatrix> result;
  MatrixOps::dispatch(*this, [&](auto F, const auto& d) {
    using Ops = decltype(F);
    const std::size_t n = rows_;
    // Augment with the identity and reduce.
    std::vector<typename Ops::Elem> aug(n * 2 * n, F.zero());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug[i * 2 * n + j] = d[i * n + j];
      aug[i * 2 * n + n + i] = F.one();
    }
    if (rref(F, aug, n, 2 * n).size() != n) return 0;
    bool left_is_identity = true;
    for (std::size_t i = 0; i < n && left_is_identity; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        bool want_one = (i == j);
        const auto& e = aug[i * 2 * n + j];
        if (want_one ? !(!F.is_zero(e) && F.is_zero(F.sub(e, F.one()))) : !F.is_zero(e)) {
          left_is_identity = false;
          break;
        }
      }
    if (!left_is_identity) return 0;  // rank n but pivots outside the left block
    FieldMatrix inv(field_, n, n);
    auto& dinv = MatrixOps::data<Ops>(inv);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dinv[i * n + j] = aug[i * 2 * n + n + j];
    result = std::move(inv);
    return 0;
  });
  return result;
}

bool FieldMatrix::is_invertible() const { return is_square() && rank() == rows_; }

namespace {

void check_tuple_shapes(const std::vector<FieldMatrix>& xs, const std::vector<FieldMatrix>& ys,
                        const char* what) {
  if (xs.size() != ys.size()) throw std::invalid_argument(std::string(what) + ": length mismatch");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    require_same_field(xs[i], ys[i], what);
    if (!xs[i].is_square() || xs[i].rows() != ys[i].rows() || !ys[i].is_square())
      throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    if (i > 0 && (xs[i].rows() != xs[0].rows() || !(xs[i].field() == xs[0].field())))
      throw std::invalid_argument(std::string(what) + ": mixed dimensions or fields");
  }
}

template <class Ops>
std::vector<FieldMatrix> intertwiner_impl(const Ops& F, const std::vector<FieldMatrix>& xs,
                                          const std::vector<FieldMatrix>& ys) {
  const std::size_t n = xs[0].rows();
  const FieldSpec field = xs[0].field();
  // Current basis of the solution space, as flat n*n vectors.
  std::vector<std::vector<typename Ops::Elem>> basis;
  basis.reserve(n * n);
  for (std::size_t e = 0; e < n * n; ++e) {
    std::vector<typename Ops::Elem> v(n * n, F.zero());
    v[e] = F.one();
    basis.push_back(std::move(v));
  }
  for (std::size_t idx = 0; idx < xs.size() && !basis.empty(); ++idx) {
    const auto& x = MatrixOps::data<Ops>(xs[idx]);
    const auto& y = MatrixOps::data<Ops>(ys[idx]);
    const std::size_t d = basis.size();
    // Residual of each basis element under T -> T x - y T, stacked as columns.
    std::vector<typename Ops::Elem> system(n * n * d, F.zero());
    for (std::size_t j = 0; j < d; ++j) {
      const auto& t = basis[j];
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          auto acc = F.zero();
          for (std::size_t m = 0; m < n; ++m) {
            acc = F.add(acc, F.mul(t[r * n + m], x[m * n + c]));
            acc = F.sub(acc, F.mul(y[r * n + m], t[m * n + c]));
          }
          system[(r * n + c) * d + j] = std::move(acc);
        }
    }
    auto coords = kernel_of(F, std::move(system), n * n, d);
    std::vector<std::vector<typename Ops::Elem>> next;
    next.reserve(coords.size());
    for (const auto& co : coords) {
      std::vector<typename Ops::Elem> t(n * n, F.zero());
      for (std::size_t j = 0; j < d; ++j) {
        if (F.is_zero(co[j])) continue;
        for (std::size_t e = 0; e < n * n; ++e)
          t[e] = F.add(t[e], F.mul(co[j], basis[j][e]));
      }
      next.push_back(std::move(t));
    }
    basis = std::move(next);
  }
  std::vector<FieldMatrix> out;
  out.reserve(basis.size());
  for (auto& v : basis) {
    FieldMatrix m(field, n, n);
    MatrixOps::data<Ops>(m) = std::move(v);
    out.push_back(std::move(m));
  }
  return out;
}

// Linear combination of basis matrices with small integer coefficients.
FieldMatrix combine(const std::vector<FieldMatrix>& basis, const std::vector<std::int64_t>& co) {
  FieldMatrix acc(basis[0].field(), basis[0].rows(), basis[0].cols());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (co[i] == 0) continue;
    acc = acc + basis[i].scaled(co[i]);
  }
  return acc;
}

}  // namespace

std::vector<FieldMatrix> intertwiner_space(const std::vector<FieldMatrix>& xs,
                                           const std::vector<FieldMatrix>& ys) {
  check_tuple_shapes(xs, ys, "intertwiner_space");
  if (xs.empty()) throw std::invalid_argument("intertwiner_space: empty tuples");
  if (xs[0].field().kind() == FieldKind::Rationals)
    return intertwiner_impl(RatOps{}, xs, ys);
  return intertwiner_impl(ModOps{xs[0].field().characteristic()}, xs, ys);
}

std::optional<FieldMatrix> simultaneously_similar(const std::vector<FieldMatrix>& xs,
                                                  const std::vector<FieldMatrix>& ys,
                                                  const Caps& caps) {
  check_tuple_shapes(xs, ys, "simultaneously_similar");
  if (xs.empty()) throw std::invalid_argument("simultaneously_similar: empty tuples");
  const std::size_t n = xs[0].rows();
  const FieldSpec field = xs[0].field();

  // Conjugation preserves rank and trace; cheap exact rejections first.
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].rank() != ys[i].rank()) return std::nullopt;
    if (!(xs[i].trace() == ys[i].trace())) return std::nullopt;
  }

  std::vector<FieldMatrix> basis = intertwiner_space(xs, ys);
  const std::size_t d = basis.size();
  if (d == 0) return std::nullopt;

  auto verified = [&](const FieldMatrix& s) -> std::optional<FieldMatrix> {
    if (!s.is_invertible()) return std::nullopt;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (!(s * xs[i] == ys[i] * s)) return std::nullopt;
    return s;
  };

  // Basis elements first.
  for (const FieldMatrix& b : basis)
    if (auto s = verified(b)) return s;

  // Bounded random probing; any hit is verified, so errors are one-sided.
  detail::SplitMix64 rng(caps.seed ^ (0x517cc1b727220a95ULL + d));
  std::vector<std::int64_t> co(d);
  for (std::uint32_t attempt = 0; attempt < caps.similarity_retries; ++attempt) {
    for (std::size_t i = 0; i < d; ++i) {
      if (field.kind() == FieldKind::Rationals)
        co[i] = static_cast<std::int64_t>(rng.below(std::uint64_t{1} << 20));
      else
        co[i] = static_cast<std::int64_t>(rng.below(field.characteristic()));
    }
    if (auto s = verified(combine(basis, co))) return s;
  }

  // Exhaustive fallback. Over GF(p) the whole projective space of the
  // intertwiner is enumerated; over Q the determinant of a combination is a
  // polynomial of total degree <= n, so scanning the grid {0..n}^d decides
  // whether any invertible combination exists at all.
  if (field.kind() == FieldKind::PrimeField) {
    const std::uint64_t p = field.characteristic();
    double size = 0;
    double power = 1;
    for (std::size_t i = 0; i + 1 < d; ++i) power *= static_cast<double>(p);
    // (p^d - 1)/(p - 1) <= p^(d-1) * 2 for p >= 2
    size = 2 * power;
    if (size <= static_cast<double>(caps.max_similarity_search)) {
      // vectors with first nonzero coordinate equal to 1
      for (std::size_t lead = 0; lead < d; ++lead) {
        std::vector<std::int64_t> v(d, 0);
        v[lead] = 1;
        const std::size_t tail = d - lead - 1;
        std::uint64_t total = 1;
        bool overflow = false;
        for (std::size_t i = 0; i < tail; ++i) {
          if (total > caps.max_similarity_search / p) {
            overflow = true;
            break;
          }
          total *= p;
        }
        if (overflow) throw SimilarityUndecided("similarity undecided at this scale");
        for (std::uint64_t idx = 0; idx < total; ++idx) {
          std::uint64_t rest = idx;
          for (std::size_t i = 0; i < tail; ++i) {
            v[lead + 1 + i] = static_cast<std::int64_t>(rest % p);
            rest /= p;
          }
          if (auto s = verified(combine(basis, v))) return s;
        }
      }
      return std::nullopt;  // exhaustive: no invertible element exists
    }
    throw SimilarityUndecided("similarity undecided at this scale");
  }

  // Rationals: grid scan.
  {
    double size = 1;
    for (std::size_t i = 0; i < d; ++i) size *= static_cast<double>(n + 1);
    if (size <= static_cast<double>(caps.max_similarity_search)) {
      std::vector<std::int64_t> v(d, 0);
      while (true) {
        if (auto s = verified(combine(basis, v))) return s;
        std::size_t pos = d;
        while (pos > 0) {
          --pos;
          if (++v[pos] <= static_cast<std::int64_t>(n)) break;
          v[pos] = 0;
          if (pos == 0) return std::nullopt;  // det vanishes on the whole grid
        }
      }
    }
  }
  throw SimilarityUndecided("similarity undecided at this scale");
}

}  // namespace wllab
