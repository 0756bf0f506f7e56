#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nilgcs/error.hpp"
#include "nilgcs/scalar.hpp"

namespace nilgcs {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over T. Dimensions here never exceed a few hundred
/// rows, so no sparsity or blocking is attempted.
template <typename T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Builds a matrix whose rows are the given vectors (all of length `cols`).
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_row(std::size_t r, std::span<const T> v) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = v[c];
  }
  void set_col(std::size_t c, std::span<const T> v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == T(0); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (x == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!(b(k, j) == T(0))) m(i, j) += x * b(k, j);
      }
    return m;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  std::vector<T> apply(std::span<const T> v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector dimension mismatch");
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!(v[c] == T(0)) && !((*this)(r, c) == T(0))) out[r] += (*this)(r, c) * v[c];
    return out;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using CMatrix = Matrix<Scalar>;

inline CMatrix conj(const CMatrix& m) {
  CMatrix c(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t k = 0; k < m.cols(); ++k) c(r, k) = m(r, k).conj();
  return c;
}

inline bool is_real(const CMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t k = 0; k < m.cols(); ++k)
      if (!m(r, k).is_real()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// vector helpers

inline bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); });
}

inline Vector conj(std::span<const Scalar> v) {
  Vector c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i].conj();
  return c;
}

inline Vector add(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) throw DimensionError("vector sum dimension mismatch");
  Vector v(a.begin(), a.end());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b[i];
  return v;
}

inline Vector sub(std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) throw DimensionError("vector difference dimension mismatch");
  Vector v(a.begin(), a.end());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= b[i];
  return v;
}

inline Vector scale(const Scalar& s, std::span<const Scalar> a) {
  Vector v(a.begin(), a.end());
  if (s.is_one()) return v;
  for (auto& x : v) x *= s;
  return v;
}

/// v += s * w
inline void axpy(Vector& v, const Scalar& s, std::span<const Scalar> w) {
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!w[i].is_zero()) v[i] += s * w[i];
}

inline Vector unit_vector(std::size_t dim, std::size_t k) {
  Vector v(dim);
  v.at(k) = Scalar(1);
  return v;
}

// ---------------------------------------------------------------------------
// row reduction

struct RrefResult {
  CMatrix reduced;            ///< unique reduced row echelon form, zero rows kept at the bottom
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

/// Gauss-Jordan elimination to the unique reduced row echelon form.
inline RrefResult rref(CMatrix m) {
  RrefResult out;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t p = lead_row;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != lead_row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead_row, k));
    Scalar inv = Scalar(1) / m(lead_row, c);
    for (std::size_t k = c; k < m.cols(); ++k)
      if (!m(lead_row, k).is_zero()) m(lead_row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c).is_zero()) continue;
      Scalar f = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (!m(lead_row, k).is_zero()) m(r, k) -= f * m(lead_row, k);
    }
    out.pivots.push_back(c);
    ++lead_row;
  }
  out.rank = lead_row;
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const CMatrix& m) { return rref(m).rank; }

/// Inverse of a square matrix; throws DimensionError if singular.
inline CMatrix inverse(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of non-square matrix");
  std::size_t n = m.rows();
  CMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = Scalar(1);
  }
  auto red = rref(std::move(aug));
  if (red.rank < n || red.pivots[n - 1] != n - 1) throw DimensionError("matrix is singular");
  CMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red.reduced(r, n + c);
  return inv;
}

// ---------------------------------------------------------------------------
// subspaces

/// A linear subspace of C^d stored by its canonical RREF basis, so equality of
/// subspaces is plain equality of bases. A subspace is real exactly when its
/// RREF basis is real (the RREF of a conjugation-stable space is real).
class Subspace {
public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  /// Span of the given vectors.
  static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    s.assign(rref(CMatrix::from_rows(vectors, ambient)));
    return s;
  }
  static Subspace span_rows(const CMatrix& m) {
    Subspace s(m.cols());
    if (m.rows() == 0) return s;
    s.assign(rref(m));
    return s;
  }
  static Subspace full(std::size_t ambient) {
    std::vector<Vector> e;
    for (std::size_t k = 0; k < ambient; ++k) e.push_back(unit_vector(ambient, k));
    return span(ambient, e);
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const CMatrix& basis() const noexcept { return basis_; }
  Vector basis_vector(std::size_t k) const { return basis_.row(k); }
  std::vector<Vector> basis_vectors() const {
    std::vector<Vector> v;
    for (std::size_t k = 0; k < dim(); ++k) v.push_back(basis_.row(k));
    return v;
  }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool is_real() const { return nilgcs::is_real(basis_); }

  bool contains(std::span<const Scalar> v) const {
    check(v.size());
    // reduce v against the RREF rows; v is inside iff the remainder vanishes
    Vector r(v.begin(), v.end());
    for (std::size_t k = 0; k < dim(); ++k) {
      Scalar f = r[pivots_[k]];
      if (!f.is_zero()) axpy(r, -f, basis_.row(k));
    }
    return nilgcs::is_zero(r);
  }
  bool contains(const Subspace& o) const {
    check(o.ambient_);
    for (std::size_t k = 0; k < o.dim(); ++k)
      if (!contains(o.basis_.row(k))) return false;
    return true;
  }

  /// Coordinates of v in the RREF basis; nullopt if v is not in the span.
  std::optional<Vector> coordinates(std::span<const Scalar> v) const {
    if (!contains(v)) return std::nullopt;
    Vector c(dim());
    for (std::size_t k = 0; k < dim(); ++k) c[k] = v[pivots_[k]];
    return c;
  }

  Subspace conjugate() const {
    Subspace s(ambient_);
    s.assign(rref(nilgcs::conj(basis_)));
    return s;
  }

  friend Subspace operator+(const Subspace& a, const Subspace& b) {
    a.check(b.ambient_);
    std::vector<Vector> v = a.basis_vectors();
    for (std::size_t k = 0; k < b.dim(); ++k) v.push_back(b.basis_.row(k));
    return span(a.ambient_, v);
  }

  /// Bilinear annihilator {x : sum_i b_i x_i = 0 for every basis row b}.
  Subspace annihilator() const;

  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    a.check(b.ambient_);
    return (a.annihilator() + b.annihilator()).annihilator();
  }

  /// A complement spanned by the standard unit vectors at non-pivot columns.
  Subspace standard_complement() const {
    std::vector<Vector> v;
    std::size_t p = 0;
    for (std::size_t c = 0; c < ambient_; ++c) {
      if (p < pivots_.size() && pivots_[p] == c) {
        ++p;
        continue;
      }
      v.push_back(unit_vector(ambient_, c));
    }
    return span(ambient_, v);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  /// Canonical total order on subspaces of equal ambient dimension (dimension,
  /// then lexicographic on basis entries) used for deterministic enumeration.
  friend bool canonical_less(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (std::size_t c = 0; c < a.ambient_; ++c)
        if (a.basis_(r, c) != b.basis_(r, c)) return lex_less(a.basis_(r, c), b.basis_(r, c));
    return false;
  }

private:
  void assign(RrefResult red) {
    basis_ = CMatrix(red.rank, red.reduced.cols());
    for (std::size_t r = 0; r < red.rank; ++r)
      for (std::size_t c = 0; c < basis_.cols(); ++c) basis_(r, c) = red.reduced(r, c);
    pivots_ = std::move(red.pivots);
  }
  void check(std::size_t ambient) const {
    if (ambient != ambient_) throw DimensionError("ambient dimension mismatch");
  }

  std::size_t ambient_ = 0;
  CMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Exact null space {v : m v = 0}; dimension is cols - rank.
inline Subspace kernel(const CMatrix& m) {
  auto red = rref(m);
  std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n);
    v[free] = Scalar(1);
    for (std::size_t r = 0; r < red.rank; ++r) v[red.pivots[r]] = -red.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return Subspace::span(n, basis);
}

inline Subspace Subspace::annihilator() const {
  if (dim() == 0) return full(ambient_);
  return kernel(basis_);
}

// ---------------------------------------------------------------------------
// affine systems

/// Outcome of solving A x = b exactly.
struct AffineSolution {
  bool feasible = false;
  Vector particular;             ///< one solution (free variables set to zero)
  Subspace homogeneous;          ///< kernel of A
  std::size_t system_rank = 0;     ///< rank(A)
  std::size_t augmented_rank = 0;  ///< rank([A | b]); exceeds system_rank iff infeasible
};

inline AffineSolution solve_affine(const CMatrix& a, std::span<const Scalar> b) {
  if (b.size() != a.rows()) throw DimensionError("right-hand side length mismatch");
  std::size_t n = a.cols();
  CMatrix aug(a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  auto red = rref(std::move(aug));
  AffineSolution out;
  out.augmented_rank = red.rank;
  out.system_rank = red.rank;
  if (red.rank > 0 && red.pivots.back() == n) out.system_rank = red.rank - 1;
  out.feasible = out.system_rank == out.augmented_rank;
  // the kernel of A is read off the same reduction
  std::vector<bool> is_pivot(n + 1, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<Vector> hom;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n);
    v[free] = Scalar(1);
    for (std::size_t r = 0; r < out.system_rank; ++r) v[red.pivots[r]] = -red.reduced(r, free);
    hom.push_back(std::move(v));
  }
  out.homogeneous = Subspace::span(n, hom);
  if (out.feasible) {
    out.particular.assign(n, Scalar(0));
    for (std::size_t r = 0; r < out.system_rank; ++r) out.particular[red.pivots[r]] = red.reduced(r, n);
  }
  return out;
}

}  // namespace nilgcs
