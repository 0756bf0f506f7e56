#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilgcs/dga.hpp"

namespace nilgcs {

// Classical complex structures inside the DGA machinery. For a frame
// T_1..T_m the eigenspace ℓ = g^{1,0} ⊕ g^{*(0,1)} gets the basis
// (T_1..T_m, ω̄^1..ω̄^m): generator k < m is T_{k+1}, generator m+k is ω̄^{k+1}.

inline std::vector<DoubleElement> classical_basis(const ComplexStructure& j, const ComplexFrame& f) {
  std::size_t n = j.n();
  std::vector<DoubleElement> b;
  for (const auto& t : f.t) {
    DoubleElement v(2 * n);
    std::copy(t.begin(), t.end(), v.begin());
    b.push_back(std::move(v));
  }
  for (const auto& w : f.omega) {
    DoubleElement v(2 * n);
    Vector wb = conj(w);
    std::copy(wb.begin(), wb.end(), v.begin() + static_cast<long>(n));
    b.push_back(std::move(v));
  }
  return b;
}

inline std::vector<std::string> classical_names(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t k = 1; k <= m; ++k) names.push_back("T" + std::to_string(k));
  for (std::size_t k = 1; k <= m; ++k) names.push_back("Wb" + std::to_string(k));
  return names;
}

inline DgaPresentation classical_presentation(const ComplexStructure& j, const ComplexFrame& f) {
  DgaPresentation p(Gcs::from_complex(j), classical_basis(j, f));
  p.set_names(classical_names(j.m()));
  return p;
}

/// Rewrites a multivector on g_C in the basis (T_1..T_m, T̄_1..T̄_m).
inline Multivector frame_expand(const ComplexFrame& f, const Multivector& x) {
  std::size_t n = x.dim(), m = f.m();
  std::vector<Multivector> img;
  for (std::size_t a = 0; a < n; ++a) {
    Multivector v(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
      v.add_term(Mask(1) << k, f.omega[k][a]);
      v.add_term(Mask(1) << (m + k), conj(f.omega[k])[a]);
    }
    img.push_back(std::move(v));
  }
  Multivector out(2 * m);
  for (const auto& [mask, c] : x.terms()) {
    std::vector<Multivector> factors;
    for (int i : mask_indices(mask)) factors.push_back(img[static_cast<std::size_t>(i)]);
    out += c * wedge_all(2 * m, factors);
  }
  return out;
}

/// Part of x (a multivector on g_C) with p holomorphic and q antiholomorphic
/// factors, in the frame basis (T first, T̄ after).
inline Multivector type_component(const ComplexFrame& f, const Multivector& x, int p, int q) {
  std::size_t m = f.m();
  Mask low = (Mask(1) << m) - 1;
  Multivector e = frame_expand(f, x), out(2 * m);
  for (const auto& [mask, c] : e.terms())
    if (popcount(mask & low) == p && popcount(mask & ~low) == q) out.add_term(mask, c);
  return out;
}

/// A (k,0)-multivector on g_C written over the classical DGA generators.
/// Throws PreconditionError if x has antiholomorphic components.
inline Multivector holomorphic_to_ell(const ComplexFrame& f, const Multivector& x) {
  std::size_t m = f.m();
  Mask low = (Mask(1) << m) - 1;
  Multivector e = frame_expand(f, x);
  for (const auto& [mask, c] : e.terms())
    if (mask & ~low) throw PreconditionError("multivector is not of holomorphic type");
  return e;
}

/// ∂̄U = Σ_k [T̄_k, U]^{1,0} ⊗ ω̄^k as the coefficient matrix c(j,k) of T_j ⊗ ω̄^k.
inline CMatrix delbar_tensor(const ComplexStructure& cs, const ComplexFrame& f, std::span<const Scalar> u) {
  std::size_t m = f.m(), n = cs.n();
  CMatrix c(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    Vector br = cs.algebra().bracket(conj(f.t[k]), u);
    for (std::size_t jj = 0; jj < m; ++jj) {
      Scalar s;
      for (std::size_t i = 0; i < n; ++i) s += f.omega[jj][i] * br[i];
      c(jj, k) = s;
    }
  }
  return c;
}

/// ∂̄ω̄ = (0,2)-part of dω̄, over the ω̄ generators m..2m-1.
inline Multivector delbar_form(const ComplexStructure& cs, const ComplexFrame& f, std::span<const Scalar> wb) {
  std::size_t m = f.m();
  Multivector dw = cs.d_form(wb), out(2 * m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = k + 1; l < m; ++l)
      out.add_term((Mask(1) << (m + k)) | (Mask(1) << (m + l)), evaluate2(dw, conj(f.t[k]), conj(f.t[l])));
  return out;
}

/// Classical ∂̄ on Λ•ℓ, computed from brackets and dω̄ without the pairing.
/// The tensor T_j ⊗ ω̄^k sits in Λ²ℓ as ω̄^k ∧ T_j.
inline Multivector classical_delbar(const ComplexStructure& cs, const ComplexFrame& f, const Multivector& x) {
  std::size_t m = f.m();
  if (x.dim() != 2 * m) throw DimensionError("multivector does not live on the classical eigenspace");
  std::vector<Multivector> gen;
  for (std::size_t a = 0; a < m; ++a) {
    CMatrix c = delbar_tensor(cs, f, f.t[a]);
    Multivector v(2 * m);
    for (std::size_t jj = 0; jj < m; ++jj)
      for (std::size_t k = 0; k < m; ++k) v.add_term((Mask(1) << jj) | (Mask(1) << (m + k)), -c(jj, k));
    gen.push_back(std::move(v));
  }
  for (std::size_t a = 0; a < m; ++a) gen.push_back(delbar_form(cs, f, conj(f.omega[a])));
  return apply_odd_derivation(x, [&gen](std::size_t a) -> const Multivector& { return gen[a]; });
}

/// First generator on which δ̄ ≠ ½∂̄, if any.
inline std::optional<std::size_t> delbar_cross_check(const ComplexStructure& cs, const ComplexFrame& f) {
  DgaPresentation p = classical_presentation(cs, f);
  Scalar half(Rational(1, 2));
  for (std::size_t a = 0; a < 2 * f.m(); ++a) {
    Multivector g = Multivector::generator(2 * f.m(), a);
    if (!(p.delta(g) == half * classical_delbar(cs, f, g))) return a;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// holomorphic Poisson structures

struct HolomorphicPoissonReport {
  bool type20 = false;
  bool delbar_zero = false;            ///< δ̄Λ = 0 in the classical DGA
  bool corollary_zero = false;         ///< (2,0)-part of ⟦T̄_k, Λ⟧ vanishes for all k
  bool schouten_zero = false;          ///< ⟦Λ,Λ⟧ = 0 on g_C
  Multivector delbar;                  ///< δ̄Λ
  Multivector self_bracket;            ///< ⟦Λ,Λ⟧ on g_C
  bool paths_agree() const noexcept { return delbar_zero == corollary_zero; }
  bool holds() const noexcept { return type20 && delbar_zero && corollary_zero && schouten_zero; }
};

/// Λ is a bivector on g_C (e-symbols).
inline HolomorphicPoissonReport holomorphic_poisson_report(const ComplexStructure& cs, const ComplexFrame& f,
                                                           const Multivector& lambda) {
  HolomorphicPoissonReport r;
  std::size_t n = cs.n();
  if (lambda.dim() != n) throw DimensionError("bivector does not live on g");
  r.type20 = Gcs::is_type_20(cs, lambda);
  if (!r.type20) return r;
  DgaPresentation p = classical_presentation(cs, f);
  r.delbar = p.delta(holomorphic_to_ell(f, lambda));
  r.delbar_zero = r.delbar.is_zero();
  r.corollary_zero = true;
  for (const auto& t : f.t)
    if (!type_component(f, schouten(cs.algebra().table(), Multivector::from_vector(conj(t)), lambda), 2, 0).is_zero())
      r.corollary_zero = false;
  r.self_bracket = schouten(cs.algebra().table(), lambda, lambda);
  r.schouten_zero = r.self_bracket.is_zero();
  return r;
}

/// ℓ_Λ in the basis (T_k, ω̄^k + ι_{ω̄^k}Λ̄), matching classical_basis.
inline DgaPresentation poisson_presentation(const ComplexStructure& cs, const ComplexFrame& f,
                                            const Multivector& lambda) {
  std::size_t n = cs.n(), m = f.m();
  Gcs g = Gcs::from_holomorphic_poisson(cs, lambda);
  auto basis = classical_basis(cs, f);
  Multivector lb = lambda.conj();
  for (std::size_t k = 0; k < m; ++k) {
    Multivector x = contract(conj(f.omega[k]), lb);
    for (std::size_t i = 0; i < n; ++i) basis[m + k][i] = x.coefficient(Mask(1) << i);
  }
  DgaPresentation p(g, basis);
  p.set_names(classical_names(m));
  return p;
}

struct LemmaCheck {
  bool lhs = false;  ///< closedness in the DGA of 𝒥_Λ
  bool rhs = false;  ///< the classical conditions
  bool agree() const noexcept { return lhs == rhs; }
};

/// U ∈ g^{1,0}: δ̄_Λ U = 0 ⟺ ∂̄U = 0 and L_U Λ = ⟦U,Λ⟧ = 0.
inline LemmaCheck poisson_vector_lemma(const ComplexStructure& cs, const ComplexFrame& f, const Multivector& lambda,
                                       std::span<const Scalar> u) {
  std::size_t n = cs.n();
  if (!cs.g10().contains(u)) throw PreconditionError("vector is not of type (1,0)");
  Gcs g = Gcs::from_holomorphic_poisson(cs, lambda);
  DgaPresentation p(g);
  DoubleElement v(2 * n);
  std::copy(u.begin(), u.end(), v.begin());
  LemmaCheck c;
  c.lhs = p.delta(p.element(v)).is_zero();
  c.rhs = delbar_tensor(cs, f, u).is_zero() &&
          schouten(cs.algebra().table(), Multivector::from_vector(u), lambda).is_zero();
  return c;
}

/// ω̄ ∈ g^{*(0,1)}: δ̄_Λ(ω̄ + Λ̄ω̄) = 0 ⟺ ⟦Λ,ω̄⟧ = 0 and ∂̄ω̄ = 0.
inline LemmaCheck poisson_form_lemma(const ComplexStructure& cs, const ComplexFrame& f, const Multivector& lambda,
                                     std::span<const Scalar> wb) {
  std::size_t n = cs.n();
  if (!cs.forms01().contains(wb)) throw PreconditionError("form is not of type (0,1)");
  Gcs g = Gcs::from_holomorphic_poisson(cs, lambda);
  DgaPresentation p(g);
  DoubleElement v(2 * n);
  Multivector x = contract(wb, lambda.conj());
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = x.coefficient(Mask(1) << i);
    v[n + i] = wb[i];
  }
  LemmaCheck c;
  c.lhs = p.delta(p.element(v)).is_zero();
  DgaPresentation cl = classical_presentation(cs, f);
  DoubleElement w(2 * n);
  std::copy(wb.begin(), wb.end(), w.begin() + static_cast<long>(n));
  Multivector we = cl.element(w);
  c.rhs = cl.bracket(holomorphic_to_ell(f, lambda), we).is_zero() && cl.delta(we).is_zero();
  return c;
}

// ---------------------------------------------------------------------------
// symplectic structures

struct SymplecticIsoReport {
  bool differential = false;  ///< Φ∘δ̄ = (i/4)·d∘Φ on every basis monomial
  bool bracket = false;       ///< Φ⟦x,y⟧ = ⟦Φx,Φy⟧_Ω on basis monomials of degree ≤ 2
  bool cohomology = false;    ///< equal Betti numbers
  std::vector<std::size_t> dga_betti, ce_betti;
  bool holds() const noexcept { return differential && bracket && cohomology; }
};

/// Φ(X − iΩX) = ΩX, extended multiplicatively to Λ•ℓ -> Λ•g*_C.
inline Multivector symplectic_phi(const DgaPresentation& p, const Multivector& x) {
  std::size_t n = p.n();
  std::vector<Multivector> img;
  for (const auto& b : p.basis()) {
    Multivector v(n);
    for (std::size_t i = 0; i < n; ++i) v.add_term(Mask(1) << i, Scalar::i() * b[n + i]);
    img.push_back(std::move(v));
  }
  Multivector out(n);
  for (const auto& [mask, c] : x.terms()) {
    std::vector<Multivector> factors;
    for (int i : mask_indices(mask)) factors.push_back(img[static_cast<std::size_t>(i)]);
    out += c * wedge_all(n, factors);
  }
  return out;
}

inline SymplecticIsoReport symplectic_dga_iso_check(const LieAlgebra& g, const Multivector& omega) {
  if (!g.d(omega).is_zero()) throw PreconditionError("form is not closed");
  Gcs s = Gcs::from_symplectic(g, omega);
  DgaPresentation p(s);
  std::size_t n = g.dim();
  SymplecticIsoReport r;
  Scalar c = Scalar::i() * Scalar(Rational(1, 4));
  r.differential = true;
  for (std::size_t k = 0; k < n && r.differential; ++k) {
    SubsetIndex idx(n, k);
    for (Mask m : idx.subsets()) {
      Multivector e(n);
      e.add_term(m, Scalar(1));
      if (!(symplectic_phi(p, p.delta(e)) == c * g.d(symplectic_phi(p, e)))) {
        r.differential = false;
        break;
      }
    }
  }
  CMatrix om = two_tensor_matrix(omega).transpose(), oinv = inverse(om);
  BracketTable tw(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      tw.set(a, b, om.apply(g.bracket(oinv.col(a), oinv.col(b))));
  r.bracket = true;
  std::vector<Multivector> mons;
  for (std::size_t k = 1; k <= std::min<std::size_t>(2, n); ++k) {
    SubsetIndex idx(n, k);
    for (Mask m : idx.subsets()) {
      Multivector e(n);
      e.add_term(m, Scalar(1));
      mons.push_back(std::move(e));
    }
  }
  for (const auto& x : mons) {
    for (const auto& y : mons)
      if (!(symplectic_phi(p, p.bracket(x, y)) == schouten(tw, symplectic_phi(p, x), symplectic_phi(p, y)))) {
        r.bracket = false;
        break;
      }
    if (!r.bracket) break;
  }
  r.dga_betti = p.betti_numbers();
  r.ce_betti = g.betti_numbers();
  r.cohomology = r.dga_betti == r.ce_betti;
  return r;
}

}  // namespace nilgcs
