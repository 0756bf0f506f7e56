#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "nilgcs/linalg.hpp"

namespace nilgcs {

/// Bitmask of basis indices; bit i set means generator i is a wedge factor.
using Mask = std::uint32_t;
constexpr std::size_t kMaxGenerators = 32;

inline int popcount(Mask m) { return std::popcount(m); }

inline std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

/// Sign of rewriting (monomial a) ^ (monomial b) in sorted order, 0 if they share a factor.
inline int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (Mask rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    swaps += popcount(a & ~((Mask(2) << j) - 1));  // factors of a above j
  }
  return (swaps & 1) ? -1 : 1;
}

/// k-subsets of {0..d-1} in lexicographic order, with inverse lookup.
class SubsetIndex {
public:
  SubsetIndex(std::size_t d, std::size_t k) : d_(d), k_(k) {
    std::vector<int> cur;
    build(0, cur);
    for (std::size_t r = 0; r < subsets_.size(); ++r) rank_[subsets_[r]] = r;
  }
  std::size_t size() const noexcept { return subsets_.size(); }
  Mask subset(std::size_t r) const { return subsets_.at(r); }
  std::size_t rank(Mask m) const { return rank_.at(m); }
  const std::vector<Mask>& subsets() const noexcept { return subsets_; }

private:
  void build(std::size_t start, std::vector<int>& cur) {
    if (cur.size() == k_) {
      Mask m = 0;
      for (int i : cur) m |= Mask(1) << i;
      subsets_.push_back(m);
      return;
    }
    for (std::size_t i = start; i < d_; ++i) {
      cur.push_back(static_cast<int>(i));
      build(i + 1, cur);
      cur.pop_back();
    }
  }
  std::size_t d_, k_;
  std::vector<Mask> subsets_;
  std::map<Mask, std::size_t> rank_;
};

/// Element of the exterior algebra over a d-dimensional space with a fixed
/// basis, stored sparsely as monomial -> coefficient. Used both for forms on g
/// (generators e^i) and for multivectors on the eigenspace (generators l_a).
class Multivector {
public:
  Multivector() = default;
  explicit Multivector(std::size_t dim) : dim_(dim) {
    if (dim > kMaxGenerators) throw DimensionError("exterior algebra dimension exceeds 32");
  }

  static Multivector scalar(std::size_t dim, const Scalar& s) {
    Multivector m(dim);
    m.add_term(0, s);
    return m;
  }
  static Multivector generator(std::size_t dim, std::size_t i) {
    Multivector m(dim);
    m.add_term(Mask(1) << i, Scalar(1));
    return m;
  }
  /// Degree-1 element with the given coordinates.
  static Multivector from_vector(std::span<const Scalar> v) {
    Multivector m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) m.add_term(Mask(1) << i, v[i]);
    return m;
  }
  /// Homogeneous degree-k element from dense lexicographic coefficients.
  static Multivector from_dense(std::size_t dim, const SubsetIndex& idx, std::span<const Scalar> c) {
    Multivector m(dim);
    for (std::size_t r = 0; r < idx.size(); ++r) m.add_term(idx.subset(r), c[r]);
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::map<Mask, Scalar>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coefficient(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(Mask m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Degree of a nonzero homogeneous element; -1 for zero, throws for mixed.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int k = popcount(m);
      if (d >= 0 && k != d) throw PreconditionError("multivector is not homogeneous");
      d = k;
    }
    return d;
  }
  bool is_homogeneous() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      if (d >= 0 && popcount(m) != d) return false;
      d = popcount(m);
    }
    return true;
  }

  Multivector component(int k) const {
    Multivector out(dim_);
    for (const auto& [m, c] : terms_)
      if (popcount(m) == k) out.terms_.emplace(m, c);
    return out;
  }

  Vector to_dense(const SubsetIndex& idx) const {
    Vector v(idx.size());
    for (const auto& [m, c] : terms_) v[idx.rank(m)] = c;
    return v;
  }

  /// Coordinates of a degree-1 element.
  Vector to_vector() const {
    Vector v(dim_);
    for (const auto& [m, c] : terms_) {
      if (popcount(m) != 1) throw PreconditionError("expected a degree-1 element");
      v[std::countr_zero(m)] = c;
    }
    return v;
  }

  Multivector conj() const {
    Multivector out(dim_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c.conj());
    return out;
  }

  Multivector& operator+=(const Multivector& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Multivector& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) { return a *= Scalar(-1); }
  friend Multivector operator*(const Scalar& s, Multivector a) { return a *= s; }

  friend Multivector wedge(const Multivector& a, const Multivector& b) {
    a.check(b);
    Multivector out(a.dim_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        int s = wedge_sign(ma, mb);
        if (s == 0) continue;
        Scalar c = ca * cb;
        if (s < 0) c = -c;
        out.add_term(ma | mb, c);
      }
    return out;
  }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

private:
  void check(const Multivector& o) const {
    if (o.dim_ != dim_) throw DimensionError("multivector dimension mismatch");
  }
  std::size_t dim_ = 0;
  std::map<Mask, Scalar> terms_;
};

inline Multivector wedge_all(std::size_t dim, const std::vector<Multivector>& factors) {
  Multivector out = Multivector::scalar(dim, Scalar(1));
  for (const auto& f : factors) out = wedge(out, f);
  return out;
}

/// Applies the odd derivation determined by its values on generators
/// (`on_generator(i)`), extended by D(a^b) = Da^b + (-1)^|a| a^Db and D(1) = 0.
inline Multivector apply_odd_derivation(const Multivector& x,
                                        const std::function<const Multivector&(std::size_t)>& on_generator) {
  Multivector out(x.dim());
  for (const auto& [m, c] : x.terms()) {
    auto idx = mask_indices(m);
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const Multivector& img = on_generator(static_cast<std::size_t>(idx[p]));
      if (img.is_zero()) continue;
      Mask before = 0, after = 0;
      for (std::size_t q = 0; q < idx.size(); ++q) {
        if (q < p) before |= Mask(1) << idx[q];
        if (q > p) after |= Mask(1) << idx[q];
      }
      Multivector pre(x.dim()), post(x.dim());
      pre.add_term(before, (p % 2) ? -c : c);
      post.add_term(after, Scalar(1));
      out += wedge(wedge(pre, img), post);
    }
  }
  return out;
}

/// Matrix of a linear map Lambda^k -> Lambda^(k+s) in lexicographic bases.
inline CMatrix matrix_of(std::size_t dim, std::size_t k, std::size_t k_out,
                         const std::function<Multivector(const Multivector&)>& map) {
  SubsetIndex in(dim, k), out(dim, k_out);
  CMatrix m(out.size(), in.size());
  for (std::size_t c = 0; c < in.size(); ++c) {
    Multivector e(dim);
    e.add_term(in.subset(c), Scalar(1));
    Multivector img = map(e);
    for (const auto& [mask, coeff] : img.terms()) {
      if (static_cast<std::size_t>(popcount(mask)) != k_out)
        throw InvariantViolation("linear map left the expected degree");
      m(out.rank(mask), c) = coeff;
    }
  }
  return m;
}

/// Interior product of a dual-basis vector: iota_X on forms where X has
/// coordinates `x`, with the convention e^{ij}(e_i, e_j) = 1.
inline Multivector contract(std::span<const Scalar> x, const Multivector& form) {
  if (x.size() != form.dim()) throw DimensionError("contraction dimension mismatch");
  Multivector out(form.dim());
  for (const auto& [m, c] : form.terms()) {
    auto idx = mask_indices(m);
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const Scalar& xi = x[static_cast<std::size_t>(idx[p])];
      if (xi.is_zero()) continue;
      Scalar v = c * xi;
      out.add_term(m & ~(Mask(1) << idx[p]), (p % 2) ? -v : v);
    }
  }
  return out;
}

/// Structure constants of a (possibly complex) Lie bracket on a basis:
/// bracket(a, b) = sum_c table[a][b][c] v_c. Stored fully (both orders).
class BracketTable {
public:
  BracketTable() = default;
  explicit BracketTable(std::size_t dim) : dim_(dim), table_(dim * dim, Vector(dim)) {}

  std::size_t dim() const noexcept { return dim_; }
  const Vector& operator()(std::size_t a, std::size_t b) const { return table_[a * dim_ + b]; }
  /// Sets [a,b] = v and [b,a] = -v.
  void set(std::size_t a, std::size_t b, const Vector& v) {
    table_[a * dim_ + b] = v;
    table_[b * dim_ + a] = scale(Scalar(-1), v);
  }

  Vector bracket(std::span<const Scalar> x, std::span<const Scalar> y) const {
    Vector out(dim_);
    for (std::size_t a = 0; a < dim_; ++a) {
      if (x[a].is_zero()) continue;
      for (std::size_t b = 0; b < dim_; ++b) {
        if (y[b].is_zero()) continue;
        axpy(out, x[a] * y[b], (*this)(a, b));
      }
    }
    return out;
  }

  bool is_abelian() const {
    for (const auto& v : table_)
      if (!is_zero(v)) return false;
    return true;
  }

  friend bool operator==(const BracketTable& a, const BracketTable& b) {
    return a.dim_ == b.dim_ && a.table_ == b.table_;
  }

private:
  std::size_t dim_ = 0;
  std::vector<Vector> table_;
};

/// Schouten bracket on the exterior algebra of a Lie algebra, extending the
/// bracket on generators as a biderivation:
///   [a1^..^ap, b1^..^bq] = sum_{i,j} (-1)^(i+j) [ai,bj] ^ a(omit i) ^ b(omit j)
/// (1-based i, j). Degree-0 arguments bracket to zero.
inline Multivector schouten(const BracketTable& t, const Multivector& a, const Multivector& b) {
  if (a.dim() != t.dim() || b.dim() != t.dim()) throw DimensionError("schouten dimension mismatch");
  Multivector out(t.dim());
  for (const auto& [ma, ca] : a.terms()) {
    auto ia = mask_indices(ma);
    for (const auto& [mb, cb] : b.terms()) {
      auto ib = mask_indices(mb);
      Scalar cab = ca * cb;
      for (std::size_t i = 0; i < ia.size(); ++i) {
        Mask ra = ma & ~(Mask(1) << ia[i]);
        for (std::size_t j = 0; j < ib.size(); ++j) {
          const Vector& br = t(static_cast<std::size_t>(ia[i]), static_cast<std::size_t>(ib[j]));
          if (is_zero(br)) continue;
          Mask rb = mb & ~(Mask(1) << ib[j]);
          int s1 = wedge_sign(ra, rb);
          if (s1 == 0) continue;
          Scalar c = ((i + j) % 2) ? -cab : cab;
          if (s1 < 0) c = -c;
          Multivector rest(t.dim());
          rest.add_term(ra | rb, c);
          out += wedge(Multivector::from_vector(br), rest);
        }
      }
    }
  }
  return out;
}

}  // namespace nilgcs
