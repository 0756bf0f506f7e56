#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilgcs/gcs.hpp"

namespace nilgcs {

struct SquareFailure {
  std::size_t degree = 0;  ///< δ̄∘δ̄ fails on Λ^degree
  Multivector witness;     ///< basis monomial
  Multivector value;       ///< its image under δ̄∘δ̄
};

/// The invariant differential Gerstenhaber algebra (Λ•ℓ, ∧, ⟦,⟧, δ̄) of a
/// structure, written in a chosen basis l_1..l_n of ℓ (the canonical RREF
/// basis unless one is supplied). Multivectors live over n generators.
///
/// ℓ̄ is identified with ℓ* through l(y) = 2<l, y>, with dual basis m_p, and
///   δ̄ l_a = Σ_{p<q} −<l_a, ⟦m_p, m_q⟧> l_p ∧ l_q,
/// extended to Λ•ℓ as an odd derivation. A deformation Γ ∈ Λ²ℓ adds ad_Γ,
/// which is again an odd derivation, so δ̄_Γ is stored by its generator images.
class DgaPresentation {
public:
  explicit DgaPresentation(const Gcs& g) : DgaPresentation(g, g.ell().basis_vectors()) {}

  DgaPresentation(const Gcs& g, std::vector<DoubleElement> basis) : gcs_(g), basis_(std::move(basis)) {
    std::size_t n = g.n();
    if (basis_.size() != n) throw DimensionError("an eigenspace basis needs n vectors");
    const auto& d = g.courant();
    // change of basis from the RREF coordinates of ℓ
    CMatrix r(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      auto c = g.ell().coordinates(basis_[a]);
      if (!c) throw PreconditionError("basis vector " + std::to_string(a + 1) + " is not in the eigenspace");
      r.set_col(a, *c);
    }
    try {
      to_basis_ = inverse(r);
    } catch (const DimensionError&) {
      throw PreconditionError("eigenspace basis is linearly dependent");
    }
    table_ = BracketTable(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) table_.set(a, b, coordinates(g.split(d.bracket(basis_[a], basis_[b])).first));

    CMatrix m(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < n; ++c) m(a, c) = Scalar(2) * d.pairing(basis_[a], conj(basis_[c]));
    CMatrix minv = inverse(m);
    std::vector<DoubleElement> dual;
    for (std::size_t p = 0; p < n; ++p) {
      DoubleElement v(2 * n);
      for (std::size_t c = 0; c < n; ++c) axpy(v, minv(c, p), conj(basis_[c]));
      dual.push_back(std::move(v));
    }
    delta_gen_.assign(n, Multivector(n));
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        DoubleElement br = d.bracket(dual[p], dual[q]);
        for (std::size_t a = 0; a < n; ++a)
          delta_gen_[a].add_term((Mask(1) << p) | (Mask(1) << q), -d.pairing(basis_[a], br));
      }
    gamma_ = Multivector(n);
    for (std::size_t a = 0; a < n; ++a) names_.push_back("L" + std::to_string(a + 1));
  }

  const Gcs& gcs() const noexcept { return gcs_; }
  std::size_t n() const noexcept { return basis_.size(); }
  const std::vector<DoubleElement>& basis() const noexcept { return basis_; }
  const BracketTable& table() const noexcept { return table_; }
  const Multivector& gamma() const noexcept { return gamma_; }
  /// δ̄_Γ l_a for each basis element.
  const std::vector<Multivector>& delta_generators() const noexcept { return delta_gen_; }

  void set_names(std::vector<std::string> names) {
    if (names.size() != n()) throw DimensionError("one name per basis element");
    names_ = std::move(names);
  }
  const std::vector<std::string>& names() const noexcept { return names_; }
  SymbolNamer namer() const {
    return [names = names_](std::size_t k) { return names.at(k); };
  }
  std::string format(const Multivector& x) const { return format_multivector(x, namer()); }

  /// Coordinates of an element of ℓ in the presentation basis.
  Vector coordinates(std::span<const Scalar> v) const {
    auto c = gcs_.ell().coordinates(v);
    if (!c) throw PreconditionError("element is not in the eigenspace");
    return to_basis_.apply(*c);
  }
  Multivector element(std::span<const Scalar> v) const { return Multivector::from_vector(coordinates(v)); }
  DoubleElement to_double(const Multivector& x) const {
    DoubleElement v(2 * n());
    for (const auto& [m, c] : x.terms()) {
      if (popcount(m) != 1) throw PreconditionError("expected a degree-1 element");
      axpy(v, c, basis_[static_cast<std::size_t>(std::countr_zero(m))]);
    }
    return v;
  }

  Multivector delta(const Multivector& x) const {
    check(x);
    return apply_odd_derivation(x, [this](std::size_t a) -> const Multivector& { return delta_gen_[a]; });
  }
  Multivector bracket(const Multivector& a, const Multivector& b) const {
    check(a);
    check(b);
    return schouten(table_, a, b);
  }

  /// Matrix of δ̄: Λ^k ℓ -> Λ^{k+1} ℓ; for k = n it has no rows.
  CMatrix delta_matrix(std::size_t k) const {
    if (k > n()) throw PreconditionError("degree out of range");
    if (k == n()) return CMatrix(0, 1);
    return matrix_of(n(), k, k + 1, [this](const Multivector& x) { return delta(x); });
  }

  std::optional<SquareFailure> delta_squared_failure() const {
    for (std::size_t k = 0; k + 2 <= n(); ++k) {
      SubsetIndex idx(n(), k);
      for (Mask m : idx.subsets()) {
        Multivector e(n());
        e.add_term(m, Scalar(1));
        Multivector v = delta(delta(e));
        if (!v.is_zero()) return SquareFailure{k, e, v};
      }
    }
    return std::nullopt;
  }
  bool delta_squared_zero() const { return !delta_squared_failure(); }

  /// H^k(g, 𝒥). Throws PreconditionError when δ̄² ≠ 0.
  Cohomology cohomology(std::size_t k) const {
    if (k > n()) throw PreconditionError("degree out of range");
    if (auto f = delta_squared_failure())
      throw PreconditionError("differential does not square to zero (degree " + std::to_string(f->degree) + ")");
    SubsetIndex idx(n(), k);
    CMatrix prev = k == 0 ? CMatrix(idx.size(), 0) : delta_matrix(k - 1);
    CMatrix next = k == n() ? CMatrix(0, idx.size()) : delta_matrix(k);
    return cohomology_from_matrices(k, idx.size(), n(), prev, next);
  }
  std::vector<std::size_t> betti_numbers() const {
    std::vector<std::size_t> b;
    for (std::size_t k = 0; k <= n(); ++k) b.push_back(cohomology(k).dim);
    return b;
  }

  /// Kernel of δ̄ on Λ¹ℓ as elements of the double.
  Subspace degree_one_kernel() const {
    auto k = kernel(delta_matrix(1));
    std::vector<Vector> out;
    for (const auto& v : k.basis_vectors()) out.push_back(to_double(Multivector::from_vector(v)));
    return Subspace::span(2 * n(), out);
  }

  /// δ̄Γ + ½⟦Γ,Γ⟧ with this presentation's differential.
  Multivector maurer_cartan(const Multivector& g) const {
    check(g);
    if (!g.is_zero() && g.degree() != 2) throw PreconditionError("deformation must have degree 2");
    return delta(g) + Scalar(Rational(1, 2)) * bracket(g, g);
  }

  /// Graph {m + ι_m Γ} over ℓ̄, with m running over the dual basis m_p.
  /// Closed under the Courant bracket exactly when MC(Γ) = 0.
  Subspace deformation_graph(const Multivector& g) const {
    check(g);
    const auto& d = gcs_.courant();
    auto lb = gcs_.ell_bar().basis_vectors();
    CMatrix pm(n(), n());
    for (std::size_t a = 0; a < n(); ++a)
      for (std::size_t b = 0; b < n(); ++b) pm(a, b) = Scalar(2) * d.pairing(basis_[a], lb[b]);
    CMatrix inv = inverse(pm);
    std::vector<Vector> gen;
    for (std::size_t q = 0; q < n(); ++q) {
      DoubleElement x(d.dim());
      for (std::size_t b = 0; b < n(); ++b) axpy(x, inv(b, q), lb[b]);
      for (const auto& [mask, c] : g.terms()) {
        if (!(mask >> q & 1)) continue;
        auto other = static_cast<std::size_t>(std::countr_zero(mask & ~(Mask(1) << q)));
        axpy(x, q < other ? c : -c, basis_[other]);
      }
      gen.push_back(std::move(x));
    }
    return Subspace::span(d.dim(), gen);
  }

  /// δ̄_Γ = δ̄ + ⟦Γ, ·⟧. Stacks on an already deformed presentation.
  DgaPresentation deformed(const Multivector& g) const {
    check(g);
    if (!g.is_zero() && g.degree() != 2) throw PreconditionError("deformation must have degree 2");
    DgaPresentation out = *this;
    for (std::size_t a = 0; a < n(); ++a) out.delta_gen_[a] += bracket(g, Multivector::generator(n(), a));
    out.gamma_ += g;
    return out;
  }

  /// Same bracket constants and the same δ̄ matrix in every degree.
  bool same_presentation(const DgaPresentation& o) const {
    if (n() != o.n() || !(table_ == o.table_)) return false;
    for (std::size_t k = 0; k <= n(); ++k)
      if (!(delta_matrix(k) == o.delta_matrix(k))) return false;
    return true;
  }

private:
  void check(const Multivector& x) const {
    if (x.dim() != n()) throw DimensionError("multivector does not live on the eigenspace");
  }

  Gcs gcs_;
  std::vector<DoubleElement> basis_;
  CMatrix to_basis_;
  BracketTable table_;
  std::vector<Multivector> delta_gen_;
  Multivector gamma_;
  std::vector<std::string> names_;
};

}  // namespace nilgcs
