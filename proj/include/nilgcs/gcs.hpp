#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilgcs/courant.hpp"

namespace nilgcs {

// ---------------------------------------------------------------------------
// component conversions
//
// A 2-form B on g is stored as the antisymmetric matrix Bc(i,j) = B(e_i, e_j)
// and a bivector Π as Πc(i,j) = Π(e^i, e^j). As maps, B(X) = ι_X B and
// Π(α) = ι_α Π, i.e. the blocks of 𝒥 acting on coordinate columns are Bc^T
// and Πc^T.

inline CMatrix two_tensor_matrix(const Multivector& f) {
  std::size_t n = f.dim();
  CMatrix m(n, n);
  for (const auto& [mask, c] : f.terms()) {
    if (popcount(mask) != 2) throw PreconditionError("expected a homogeneous degree-2 element");
    auto idx = mask_indices(mask);
    auto i = static_cast<std::size_t>(idx[0]), j = static_cast<std::size_t>(idx[1]);
    m(i, j) = c;
    m(j, i) = -c;
  }
  return m;
}

inline Multivector two_tensor_from_matrix(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("component matrix must be square");
  std::size_t n = m.rows();
  Multivector f(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!m(i, i).is_zero()) throw PreconditionError("component matrix is not antisymmetric");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) != -m(j, i)) throw PreconditionError("component matrix is not antisymmetric");
      f.add_term((Mask(1) << i) | (Mask(1) << j), m(i, j));
    }
  }
  return f;
}

/// f(X, Y) for a 2-form (or bivector, with X, Y covectors).
inline Scalar evaluate2(const Multivector& f, std::span<const Scalar> x, std::span<const Scalar> y) {
  Scalar s;
  for (const auto& [mask, c] : f.terms()) {
    auto idx = mask_indices(mask);
    auto i = static_cast<std::size_t>(idx[0]), j = static_cast<std::size_t>(idx[1]);
    s += c * (x[i] * y[j] - x[j] * y[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// classical complex structures

/// A (1,0)-frame T_k = (x_k - iJx_k)/2 with its dual (1,0)-coframe ω^k,
/// ω^j(T_k) = δ_jk. Conjugates give T̄_k and ω̄^k.
struct ComplexFrame {
  std::vector<Vector> t;      ///< T_k in g_C
  std::vector<Vector> omega;  ///< ω^k in g*_C
  std::size_t m() const noexcept { return t.size(); }
};

struct AscendingBasis {
  std::vector<Vector> omega;      ///< ω^1..ω^m in g*_C
  std::vector<std::size_t> level; ///< filtration step at which ω^j entered
  bool abelian = false;           ///< every dω^j is of type (1,1)
};

/// Classical almost complex structure J on g (J(i,j) = e_i-coefficient of
/// J e_j). Integrability is a separate verdict, like for generalized ones.
class ComplexStructure {
public:
  ComplexStructure(LieAlgebra g, CMatrix j) : g_(std::move(g)), j_(std::move(j)) {
    std::size_t n = g_.dim();
    if (j_.rows() != n || j_.cols() != n) throw DimensionError("J must be n x n");
    if (!is_real(j_)) throw NotAlmostGcs("J must be real");
    if (n % 2) throw NotAlmostGcs("odd-dimensional algebras carry no almost complex structure");
    if (!(j_ * j_ == Scalar(-1) * CMatrix::identity(n))) throw NotAlmostGcs("J^2 != -1");
  }

  const LieAlgebra& algebra() const noexcept { return g_; }
  const CMatrix& matrix() const noexcept { return j_; }
  std::size_t n() const noexcept { return g_.dim(); }
  std::size_t m() const noexcept { return g_.dim() / 2; }

  Vector apply(std::span<const Scalar> x) const { return j_.apply(x); }

  /// N(X,Y) = [JX,JY] - [X,Y] - J[JX,Y] - J[X,JY]
  Vector nijenhuis(std::span<const Scalar> x, std::span<const Scalar> y) const {
    Vector jx = apply(x), jy = apply(y);
    Vector v = sub(g_.bracket(jx, jy), g_.bracket(x, y));
    v = sub(v, apply(g_.bracket(jx, y)));
    return sub(v, apply(g_.bracket(x, jy)));
  }

  std::optional<PairWitness> nijenhuis_failure() const {
    for (std::size_t a = 0; a < n(); ++a)
      for (std::size_t b = a + 1; b < n(); ++b) {
        Vector v = nijenhuis(unit_vector(n(), a), unit_vector(n(), b));
        if (!is_zero(v)) return PairWitness{a, b, std::move(v)};
      }
    return std::nullopt;
  }
  bool is_integrable() const { return !nijenhuis_failure(); }

  /// [JX,JY] = [X,Y] on all basis pairs.
  bool is_abelian() const {
    for (std::size_t a = 0; a < n(); ++a)
      for (std::size_t b = a + 1; b < n(); ++b) {
        auto x = unit_vector(n(), a), y = unit_vector(n(), b);
        if (g_.bracket(apply(x), apply(y)) != g_.bracket(x, y)) return false;
      }
    return true;
  }

  /// g^{1,0} is an abelian complex subalgebra (computed independently).
  bool holomorphic_part_is_abelian() const {
    auto b = g10().basis_vectors();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t k = i + 1; k < b.size(); ++k)
        if (!is_zero(g_.bracket(b[i], b[k]))) return false;
    return true;
  }

  Subspace g10() const { return kernel(j_ - Scalar::i() * CMatrix::identity(n())); }
  Subspace g01() const { return g10().conjugate(); }
  /// (1,0)-forms: α with α∘J = iα.
  Subspace forms10() const { return kernel(j_.transpose() - Scalar::i() * CMatrix::identity(n())); }
  Subspace forms01() const { return forms10().conjugate(); }

  /// Frame from real generators x_k; by default the greedy choice of the
  /// lowest-index basis vectors independent of the previous x, Jx.
  ComplexFrame frame(std::vector<Vector> generators = {}) const {
    std::size_t nn = n();
    if (generators.empty()) {
      Subspace acc(nn);
      for (std::size_t i = 0; i < nn && generators.size() < m(); ++i) {
        Vector e = unit_vector(nn, i);
        if (acc.contains(e)) continue;
        generators.push_back(e);
        acc = acc + Subspace::span(nn, {e, apply(e)});
      }
    }
    if (generators.size() != m()) throw PreconditionError("a frame needs n/2 generators");
    ComplexFrame f;
    Scalar half(Rational(1, 2));
    for (const auto& x : generators) f.t.push_back(scale(half, sub(x, scale(Scalar::i(), apply(x)))));
    // dual coframe inside the (1,0)-forms
    auto forms = forms10().basis_vectors();
    CMatrix pair(m(), m());  // pair(k, a) = forms[a](T_k)
    for (std::size_t k = 0; k < m(); ++k)
      for (std::size_t a = 0; a < m(); ++a) {
        Scalar s;
        for (std::size_t i = 0; i < nn; ++i) s += forms[a][i] * f.t[k][i];
        pair(k, a) = s;
      }
    CMatrix inv;
    try {
      inv = inverse(pair);
    } catch (const DimensionError&) {
      throw PreconditionError("generators do not give a frame of g^{1,0}");
    }
    for (std::size_t j = 0; j < m(); ++j) {
      Vector w(nn);
      for (std::size_t a = 0; a < m(); ++a) axpy(w, inv(a, j), forms[a]);
      f.omega.push_back(std::move(w));
    }
    return f;
  }

  /// dβ of a complex 1-form on g, rewritten in the coframe
  /// (ω^1..ω^m, ω̄^1..ω̄^m): a 2-form over 2m generators.
  Multivector in_coframe(const ComplexFrame& f, const Multivector& two_form) const {
    std::vector<Vector> dual;  // vectors dual to ω^k, ω̄^k
    for (const auto& t : f.t) dual.push_back(t);
    for (const auto& t : f.t) dual.push_back(conj(t));
    std::size_t mm = 2 * m();
    Multivector out(mm);
    for (std::size_t a = 0; a < mm; ++a)
      for (std::size_t b = a + 1; b < mm; ++b)
        out.add_term((Mask(1) << a) | (Mask(1) << b), evaluate2(two_form, dual[a], dual[b]));
    return out;
  }

  Multivector d_form(std::span<const Scalar> alpha) const { return g_.d(Multivector::from_vector(alpha)); }

  /// Greedy filtration W_0 = 0, W_{s+1} = {ω ∈ Λ^{1,0} : dω ∈ W_s∧W_s + W_s∧W̄_s};
  /// nullopt if it stalls before reaching Λ^{1,0}.
  std::optional<AscendingBasis> ascending_basis() const;

private:
  LieAlgebra g_;
  CMatrix j_;
};

inline std::optional<AscendingBasis> ComplexStructure::ascending_basis() const {
  std::size_t nn = n();
  Subspace all = forms10();
  auto basis = all.basis_vectors();
  SubsetIndex idx2(nn, 2);
  std::vector<Vector> dvec;
  for (const auto& b : basis) dvec.push_back(d_form(b).to_dense(idx2));

  AscendingBasis out;
  Subspace w(nn);
  std::size_t level = 0;
  bool abelian = true;
  while (w.dim() < m()) {
    ++level;
    // target span: W∧W + W∧W̄
    std::vector<Vector> target;
    auto wv = w.basis_vectors();
    std::vector<Vector> wide = wv;
    for (const auto& x : wv) wide.push_back(conj(x));
    for (const auto& x : wv)
      for (const auto& y : wide) {
        Multivector p = wedge(Multivector::from_vector(x), Multivector::from_vector(y));
        if (!p.is_zero()) target.push_back(p.to_dense(idx2));
      }
    // solve Σ c_a dβ_a − Σ t_b τ_b = 0 and keep c
    std::size_t na = basis.size(), nt = target.size();
    CMatrix sys(idx2.size(), na + nt);
    for (std::size_t r = 0; r < idx2.size(); ++r) {
      for (std::size_t a = 0; a < na; ++a) sys(r, a) = dvec[a][r];
      for (std::size_t b = 0; b < nt; ++b) sys(r, na + b) = -target[b][r];
    }
    std::vector<Vector> next;
    for (const auto& sol : kernel(sys).basis_vectors()) {
      Vector v(nn);
      for (std::size_t a = 0; a < na; ++a) axpy(v, sol[a], basis[a]);
      if (!is_zero(v)) next.push_back(std::move(v));
    }
    Subspace wn = Subspace::span(nn, next) + w;
    if (wn.dim() == w.dim()) return std::nullopt;
    for (const auto& v : wn.basis_vectors()) {
      if (w.contains(v)) continue;
      w = w + Subspace::span(nn, {v});
      out.omega.push_back(v);
      out.level.push_back(level);
      // type check: dω has no (2,0) part iff it vanishes on pairs of (1,0)-vectors
      Multivector dv = d_form(v);
      auto t = g10().basis_vectors();
      for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t k = i + 1; k < t.size(); ++k)
          if (!evaluate2(dv, t[i], t[k]).is_zero()) abelian = false;
      // the (0,2) part vanishes for integrable J; any leftover is recorded too
      auto tb = g01().basis_vectors();
      for (std::size_t i = 0; i < tb.size(); ++i)
        for (std::size_t k = i + 1; k < tb.size(); ++k)
          if (!evaluate2(dv, tb[i], tb[k]).is_zero()) abelian = false;
    }
  }
  out.abelian = abelian;
  return out;
}

// ---------------------------------------------------------------------------
// generalized complex structures

struct IntegrabilityReport {
  bool integrable = true;
  std::size_t a = 0, b = 0;       ///< failing pair (indices into the canonical ℓ basis)
  DoubleElement bracket;          ///< [ℓ_a, ℓ_b]
  DoubleElement lbar_component;   ///< its component in ℓ̄
};

/// Invariant (almost) generalized complex structure: a real 2n x 2n matrix 𝒥
/// on g ⊕ g* with 𝒥^2 = -1 preserving the pairing, in block form
///   [[ J, Π ], [ B, -J^T ]].
class Gcs {
public:
  Gcs() = default;

  static Gcs from_matrix(const LieAlgebra& g, const CMatrix& jm) {
    Gcs s;
    s.d_ = CourantDouble(g);
    s.m_ = jm;
    s.validate();
    return s;
  }

  /// J, plus B and Π as a 2-form and a bivector on g.
  static Gcs from_components(const LieAlgebra& g, const CMatrix& j, const Multivector& b, const Multivector& pi) {
    std::size_t n = g.dim();
    if (j.rows() != n || j.cols() != n) throw DimensionError("J must be n x n");
    if (b.dim() != n || pi.dim() != n) throw DimensionError("B and Pi must live on g");
    if (!b.is_zero() && b.degree() != 2) throw PreconditionError("B must be a 2-form");
    if (!pi.is_zero() && pi.degree() != 2) throw PreconditionError("Pi must be a bivector");
    CMatrix bm = two_tensor_matrix(b).transpose(), pm = two_tensor_matrix(pi).transpose();
    CMatrix jm(2 * n, 2 * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        jm(r, c) = j(r, c);
        jm(r, n + c) = pm(r, c);
        jm(n + r, c) = bm(r, c);
        jm(n + r, n + c) = -j(c, r);
      }
    return from_matrix(g, jm);
  }

  /// J = 0, B = Ω, Π = -B^{-1}; ℓ = {X - iΩ(X)}.
  static Gcs from_symplectic(const LieAlgebra& g, const Multivector& omega) {
    std::size_t n = g.dim();
    if (omega.dim() != n || (!omega.is_zero() && omega.degree() != 2))
      throw PreconditionError("symplectic form must be a 2-form on g");
    for (const auto& [mk, c] : omega.terms())
      if (!c.is_real()) throw PreconditionError("symplectic form must be real");
    CMatrix bm = two_tensor_matrix(omega).transpose();
    CMatrix pm;
    try {
      pm = Scalar(-1) * inverse(bm);
    } catch (const DimensionError&) {
      throw PreconditionError("form is degenerate");
    }
    return from_components(g, CMatrix(n, n), omega, two_tensor_from_matrix(pm.transpose()));
  }

  static Gcs from_complex(const ComplexStructure& j) {
    std::size_t n = j.n();
    return from_components(j.algebra(), j.matrix(), Multivector(n), Multivector(n));
  }

  /// 𝒥 with +i eigenspace `ell` (must be n-dimensional, ℓ ∩ ℓ̄ = 0, and give a
  /// real matrix).
  static Gcs from_eigenspace(const LieAlgebra& g, const Subspace& ell) {
    std::size_t n = g.dim();
    if (ell.ambient_dim() != 2 * n || ell.dim() != n) throw NotAlmostGcs("eigenspace must have dimension n");
    Subspace lb = ell.conjugate();
    if ((ell + lb).dim() != 2 * n) throw NotAlmostGcs("eigenspace meets its conjugate");
    CMatrix v(2 * n, 2 * n), dv(2 * n, 2 * n);
    for (std::size_t k = 0; k < n; ++k) {
      v.set_col(k, ell.basis_vector(k));
      v.set_col(n + k, lb.basis_vector(k));
      dv(k, k) = Scalar::i();
      dv(n + k, n + k) = -Scalar::i();
    }
    CMatrix jm = v * dv * inverse(v);
    if (!is_real(jm)) throw InvariantViolation("reconstructed structure is not real");
    return from_matrix(g, jm);
  }

  /// ℓ = g^{1,0} ⊕ {ω̄ + Λ̄ω̄ : ω̄ ∈ g^{*(0,1)}} for a (2,0)-bivector Λ on g_C.
  static Gcs from_holomorphic_poisson(const ComplexStructure& j, const Multivector& lambda) {
    std::size_t n = j.n();
    if (lambda.dim() != n || (!lambda.is_zero() && lambda.degree() != 2))
      throw PreconditionError("Lambda must be a bivector on g");
    if (!is_type_20(j, lambda)) throw PreconditionError("Lambda is not of type (2,0)");
    Multivector lb = lambda.conj();
    std::vector<Vector> gens;
    for (const auto& t : j.g10().basis_vectors()) {
      Vector v(2 * n);
      std::copy(t.begin(), t.end(), v.begin());
      gens.push_back(std::move(v));
    }
    for (const auto& w : j.forms01().basis_vectors()) {
      Vector v(2 * n);
      Multivector x = contract(w, lb);
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = x.coefficient(Mask(1) << i);
        v[n + i] = w[i];
      }
      gens.push_back(std::move(v));
    }
    return from_eigenspace(j.algebra(), Subspace::span(2 * n, gens));
  }

  /// Λ has type (2,0) iff its contraction with every (0,1)-form vanishes.
  static bool is_type_20(const ComplexStructure& j, const Multivector& lambda) {
    for (const auto& w : j.forms01().basis_vectors())
      if (!contract(w, lambda).is_zero()) return false;
    return true;
  }

  const CourantDouble& courant() const noexcept { return d_; }
  const LieAlgebra& algebra() const noexcept { return d_.algebra(); }
  std::size_t n() const noexcept { return d_.n(); }
  const CMatrix& matrix() const noexcept { return m_; }

  CMatrix block(std::size_t r0, std::size_t c0) const {
    CMatrix b(n(), n());
    for (std::size_t r = 0; r < n(); ++r)
      for (std::size_t c = 0; c < n(); ++c) b(r, c) = m_(r0 + r, c0 + c);
    return b;
  }
  CMatrix j_block() const { return block(0, 0); }
  Multivector b_form() const { return two_tensor_from_matrix(block(n(), 0).transpose()); }
  Multivector pi_bivector() const { return two_tensor_from_matrix(block(0, n()).transpose()); }

  DoubleElement apply(std::span<const Scalar> v) const { return m_.apply(v); }

  const Subspace& ell() const noexcept { return ell_; }
  const Subspace& ell_bar() const noexcept { return ell_bar_; }

  /// Splits v = x + y with x ∈ ℓ, y ∈ ℓ̄.
  std::pair<DoubleElement, DoubleElement> split(std::span<const Scalar> v) const {
    Vector c = split_.apply(v);
    std::size_t nn = n();
    DoubleElement x(2 * nn), y(2 * nn);
    for (std::size_t k = 0; k < nn; ++k) {
      axpy(x, c[k], ell_.basis_vector(k));
      axpy(y, c[nn + k], ell_bar_.basis_vector(k));
    }
    return {x, y};
  }

  IntegrabilityReport integrability() const {
    IntegrabilityReport r;
    auto b = ell_.basis_vectors();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t k = i + 1; k < b.size(); ++k) {
        DoubleElement v = d_.bracket(b[i], b[k]);
        if (ell_.contains(v)) continue;
        r.integrable = false;
        r.a = i;
        r.b = k;
        r.lbar_component = split(v).second;
        r.bracket = std::move(v);
        return r;
      }
    return r;
  }
  bool is_integrable() const { return integrability().integrable; }

  /// n − dim of the projection of ℓ onto g_C.
  std::size_t type() const {
    CMatrix p(ell_.dim(), n());
    for (std::size_t r = 0; r < ell_.dim(); ++r)
      for (std::size_t c = 0; c < n(); ++c) p(r, c) = ell_.basis()(r, c);
    return n() - rank(p);
  }

private:
  void validate() {
    std::size_t nn = d_.n(), dd = 2 * nn;
    if (m_.rows() != dd || m_.cols() != dd) throw DimensionError("structure matrix must be 2n x 2n");
    if (!is_real(m_)) throw NotAlmostGcs("structure matrix must be real");
    CMatrix sq = m_ * m_;
    for (std::size_t r = 0; r < dd; ++r)
      for (std::size_t c = 0; c < dd; ++c)
        if (sq(r, c) != (r == c ? Scalar(-1) : Scalar(0)))
          throw NotAlmostGcs("J^2 != -1 at entry (" + std::to_string(r + 1) + ", " + std::to_string(c + 1) + ")");
    CMatrix g = d_.gram();
    CMatrix pulled = m_.transpose() * g * m_;
    for (std::size_t r = 0; r < dd; ++r)
      for (std::size_t c = r; c < dd; ++c)
        if (pulled(r, c) != g(r, c)) {
          auto nm = d_.namer();
          throw NotAlmostGcs("pairing not preserved on (" + nm(r) + ", " + nm(c) + ")");
        }
    ell_ = kernel(m_ - Scalar::i() * CMatrix::identity(dd));
    ell_bar_ = ell_.conjugate();
    if (ell_.dim() != nn || !d_.is_isotropic(ell_) || (ell_ + ell_bar_).dim() != dd)
      throw InvariantViolation("eigenspace invariants fail for a validated structure");
    CMatrix v(dd, dd);
    for (std::size_t k = 0; k < nn; ++k) {
      v.set_col(k, ell_.basis_vector(k));
      v.set_col(nn + k, ell_bar_.basis_vector(k));
    }
    split_ = inverse(v);
  }

  CourantDouble d_;
  CMatrix m_;
  Subspace ell_, ell_bar_;
  CMatrix split_;  ///< coordinates along (ℓ basis, ℓ̄ basis)
};

/// Endomorphism of g given by images of basis vectors, e.g. {e1 -> e2}.
/// J(image) = -source is filled in when the image is a single basis vector
/// whose own image was not given; everything else unspecified maps to 0.
inline CMatrix endomorphism_from_images(std::size_t n, const std::vector<std::pair<std::size_t, Vector>>& images) {
  CMatrix j(n, n);
  std::vector<bool> set(n, false);
  for (const auto& [src, img] : images) {
    if (src >= n || img.size() != n) throw DimensionError("image out of range");
    j.set_col(src, img);
    set[src] = true;
  }
  for (const auto& [src, img] : images) {
    std::size_t nz = 0, at = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (!img[i].is_zero()) {
        ++nz;
        at = i;
      }
    if (nz == 1 && !set[at]) {
      Vector back(n);
      back[src] = Scalar(-1) / img[at];
      j.set_col(at, back);
      set[at] = true;
    }
  }
  return j;
}

}  // namespace nilgcs
