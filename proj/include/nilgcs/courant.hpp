#pragma once

#include <optional>
#include <string>
#include <utility>

#include "nilgcs/lie_algebra.hpp"

namespace nilgcs {

/// Element of the complexified double g ⊕ g*: coordinates 0..n-1 are the
/// vector part (e_i), n..2n-1 the form part (e^i).
using DoubleElement = Vector;

/// First failing basis pair (indices into the subspace basis) for a predicate.
struct PairWitness {
  std::size_t a = 0, b = 0;
  DoubleElement value;
};

struct SubspacePredicates {
  bool isotropic = false;
  bool max_isotropic = false;
  bool subalgebra = false;
  bool ideal = false;
  bool abelian = false;
};

/// The double 𝒢 = g ⋊ g* with the invariant Courant bracket
///   [X+α, Y+β] = [X,Y] + ι_X dβ − ι_Y dα
/// and the pairing <X+α, Y+β> = (β(X) + α(Y))/2. On invariant elements the
/// bracket is a genuine Lie bracket, so it is stored as a structure table.
class CourantDouble {
public:
  CourantDouble() = default;
  explicit CourantDouble(LieAlgebra g) : g_(std::move(g)), n_(g_.dim()), table_(2 * n_) {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = a + 1; b < n_; ++b) {
        Vector v(2 * n_);
        const Vector& br = g_.table()(a, b);
        std::copy(br.begin(), br.end(), v.begin());
        table_.set(a, b, v);
      }
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t k = 0; k < n_; ++k) {
        Multivector f = contract(unit_vector(n_, a), g_.d_generator(k));
        Vector v(2 * n_);
        for (const auto& [m, c] : f.terms()) v[n_ + static_cast<std::size_t>(std::countr_zero(m))] = c;
        table_.set(a, n_ + k, v);
      }
  }

  const LieAlgebra& algebra() const noexcept { return g_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return 2 * n_; }
  const BracketTable& table() const noexcept { return table_; }

  DoubleElement vector(std::size_t i) const { return unit_vector(2 * n_, i); }
  DoubleElement form(std::size_t i) const { return unit_vector(2 * n_, n_ + i); }

  DoubleElement bracket(std::span<const Scalar> u, std::span<const Scalar> v) const {
    check(u);
    check(v);
    return table_.bracket(u, v);
  }

  Scalar pairing(std::span<const Scalar> u, std::span<const Scalar> v) const {
    check(u);
    check(v);
    Scalar s;
    for (std::size_t i = 0; i < n_; ++i) s += u[i] * v[n_ + i] + u[n_ + i] * v[i];
    return s * Scalar(Rational(1, 2));
  }

  /// Gram matrix G with <u,v> = u^T G v.
  CMatrix gram() const {
    CMatrix m(2 * n_, 2 * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      m(i, n_ + i) = Scalar(Rational(1, 2));
      m(n_ + i, i) = Scalar(Rational(1, 2));
    }
    return m;
  }

  /// S^⊥ with respect to the (bilinear) pairing.
  Subspace orthogonal(const Subspace& s) const {
    check(s);
    if (s.dim() == 0) return Subspace::full(2 * n_);
    return kernel(s.basis() * gram());
  }

  std::optional<PairWitness> isotropy_failure(const Subspace& s) const {
    check(s);
    auto b = s.basis_vectors();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i; j < b.size(); ++j) {
        Scalar p = pairing(b[i], b[j]);
        if (!p.is_zero()) return PairWitness{i, j, {p}};
      }
    return std::nullopt;
  }
  bool is_isotropic(const Subspace& s) const { return !isotropy_failure(s); }
  bool is_max_isotropic(const Subspace& s) const { return s.dim() == n_ && is_isotropic(s); }

  /// First basis pair whose bracket leaves `s`.
  std::optional<PairWitness> closure_failure(const Subspace& s) const {
    check(s);
    auto b = s.basis_vectors();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        DoubleElement v = bracket(b[i], b[j]);
        if (!s.contains(v)) return PairWitness{i, j, std::move(v)};
      }
    return std::nullopt;
  }
  bool is_subalgebra(const Subspace& s) const { return !closure_failure(s); }

  /// [𝒢, S] ⊆ S, tested on the standard basis of 𝒢 (witness a indexes 𝒢).
  std::optional<PairWitness> ideal_failure(const Subspace& s) const {
    check(s);
    auto b = s.basis_vectors();
    for (std::size_t i = 0; i < 2 * n_; ++i)
      for (std::size_t j = 0; j < b.size(); ++j) {
        DoubleElement v = bracket(unit_vector(2 * n_, i), b[j]);
        if (!s.contains(v)) return PairWitness{i, j, std::move(v)};
      }
    return std::nullopt;
  }
  bool is_ideal(const Subspace& s) const { return !ideal_failure(s); }

  std::optional<PairWitness> abelian_failure(const Subspace& s) const {
    check(s);
    auto b = s.basis_vectors();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        DoubleElement v = bracket(b[i], b[j]);
        if (!is_zero(v)) return PairWitness{i, j, std::move(v)};
      }
    return std::nullopt;
  }
  bool is_abelian(const Subspace& s) const { return !abelian_failure(s); }

  SubspacePredicates predicates(const Subspace& s) const {
    SubspacePredicates p;
    p.isotropic = is_isotropic(s);
    p.max_isotropic = p.isotropic && s.dim() == n_;
    p.subalgebra = is_subalgebra(s);
    p.ideal = is_ideal(s);
    p.abelian = is_abelian(s);
    return p;
  }

  /// Jacobi identity on basis triples of a maximally isotropic subalgebra.
  /// Throws PreconditionError when `s` is not closed or not max isotropic.
  std::optional<std::array<std::size_t, 3>> jacobi_on_isotropic(const Subspace& s) const {
    if (!is_max_isotropic(s)) throw PreconditionError("subspace is not maximally isotropic");
    if (auto f = closure_failure(s))
      throw PreconditionError("subspace is not closed: basis pair (" + std::to_string(f->a + 1) + ", " +
                              std::to_string(f->b + 1) + ")");
    auto b = s.basis_vectors();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        for (std::size_t k = j + 1; k < b.size(); ++k) {
          Vector c = bracket(b[i], bracket(b[j], b[k]));
          c = add(c, bracket(b[j], bracket(b[k], b[i])));
          c = add(c, bracket(b[k], bracket(b[i], b[j])));
          if (!is_zero(c)) return std::array<std::size_t, 3>{i, j, k};
        }
    return std::nullopt;
  }

  /// Matrix M with M(i,j) = 2<a_i, k_j>: the pairing-induced map A -> K*,
  /// in which 2<e_i, e^j> = δ. Throws if the pairing between them degenerates.
  CMatrix dual_identification(const Subspace& k, const Subspace& a) const {
    check(k);
    check(a);
    if (k.dim() != n_ || a.dim() != n_) throw PreconditionError("both subspaces must have dimension n");
    CMatrix m(n_, n_);
    auto av = a.basis_vectors(), kv = k.basis_vectors();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = Scalar(2) * pairing(av[i], kv[j]);
    if (rank(m) < n_) throw PreconditionError("pairing between the subspaces is degenerate");
    return m;
  }

  /// Parses "e1 - i*E2 + 1/2*E4" (e = vectors, E = forms) into coordinates.
  DoubleElement parse_element(std::string_view text) const {
    std::size_t n = n_;
    Multivector m = parse_expression(text, 2 * n_, [n](std::string_view p, std::size_t k) -> std::optional<std::size_t> {
      if (k == 0 || k > n) return std::nullopt;
      if (p == "e") return k - 1;
      if (p == "E") return n + k - 1;
      return std::nullopt;
    });
    if (m.is_zero()) return DoubleElement(2 * n_);
    if (m.degree() != 1) throw ParseError("expected a linear combination of basis elements", 0);
    return m.to_vector();
  }

  SymbolNamer namer() const {
    std::size_t n = n_;
    return [n](std::size_t k) { return k < n ? "e" + std::to_string(k + 1) : "E" + std::to_string(k - n + 1); };
  }

  std::string format(std::span<const Scalar> v) const {
    check(v);
    return format_multivector(Multivector::from_vector(v), namer());
  }

private:
  void check(std::span<const Scalar> v) const {
    if (v.size() != 2 * n_) throw DimensionError("element does not live in the double");
  }
  void check(const Subspace& s) const {
    if (s.ambient_dim() != 2 * n_) throw DimensionError("subspace does not live in the double");
  }

  LieAlgebra g_;
  std::size_t n_ = 0;
  BracketTable table_;
};

/// Isotropy of span{v_j(a)} for a family v_j(a) = base_j + Σ_k a_k dir[j][k]
/// with real parameters a. `affine` is false when some pairing has a genuine
/// quadratic term; otherwise `solution` solves the real and imaginary parts
/// of all pairing equations.
struct IsotropySystem {
  bool affine = true;
  CMatrix matrix;
  Vector rhs;
  AffineSolution solution;
};

inline IsotropySystem linear_isotropy_system(const CourantDouble& d, const std::vector<DoubleElement>& base,
                                             const std::vector<std::vector<DoubleElement>>& dir) {
  std::size_t p = dir.empty() ? 0 : dir.front().size();
  IsotropySystem out;
  std::vector<Vector> rows;
  Vector rhs;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j) {
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = k; l < p; ++l) {
          Scalar q = d.pairing(dir[i][k], dir[j][l]);
          if (k != l) q += d.pairing(dir[i][l], dir[j][k]);
          if (!q.is_zero()) out.affine = false;
        }
      Vector coeff(p);
      for (std::size_t k = 0; k < p; ++k) coeff[k] = d.pairing(dir[i][k], base[j]) + d.pairing(base[i], dir[j][k]);
      Scalar c = d.pairing(base[i], base[j]);
      Vector re(p), im(p);
      for (std::size_t k = 0; k < p; ++k) {
        re[k] = Scalar(coeff[k].re());
        im[k] = Scalar(coeff[k].im());
      }
      rows.push_back(re);
      rhs.push_back(Scalar(-c.re()));
      rows.push_back(im);
      rhs.push_back(Scalar(-c.im()));
    }
  out.matrix = CMatrix::from_rows(rows, p);
  out.rhs = rhs;
  out.solution = solve_affine(out.matrix, out.rhs);
  return out;
}

}  // namespace nilgcs
