#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilgcs/dga.hpp"

namespace nilgcs {

// ---------------------------------------------------------------------------
// admissible pairs

struct PredicateResult {
  bool ok = true;
  std::string failure;  ///< first failing predicate, empty when ok
  explicit operator bool() const noexcept { return ok; }
};

inline PredicateResult fail_with(std::string what) { return {false, std::move(what)}; }

/// 𝒜 a maximally isotropic subalgebra, 𝒦 a maximally isotropic abelian
/// ideal, 𝒢 = 𝒜 ⊕ 𝒦, both real.
inline PredicateResult check_admissible(const CourantDouble& d, const Subspace& a, const Subspace& k) {
  if (!a.is_real()) return fail_with("A is not real");
  if (!k.is_real()) return fail_with("K is not real");
  if (!d.is_max_isotropic(a)) return fail_with("A is not maximally isotropic");
  if (!d.is_max_isotropic(k)) return fail_with("K is not maximally isotropic");
  if ((a + k).dim() != d.dim()) return fail_with("A and K are not complementary");
  if (!d.is_subalgebra(a)) return fail_with("A is not a subalgebra");
  if (!d.is_ideal(k)) return fail_with("K is not an ideal");
  if (!d.is_abelian(k)) return fail_with("K is not abelian");
  return {};
}

inline bool is_invariant(const Gcs& g, const Subspace& s) {
  for (const auto& v : s.basis_vectors())
    if (!s.contains(g.apply(v))) return false;
  return true;
}

struct SemiAbelianCheck {
  PredicateResult result;
  Subspace a, k;  ///< ℓ ∩ 𝒜_C and ℓ ∩ 𝒦_C on success
  explicit operator bool() const noexcept { return result.ok; }
};

/// Checks 𝒥𝒜 ⊆ 𝒜, 𝒥𝒦 ⊆ 𝒦 and ⟦𝒥a,𝒥b⟧ = ⟦a,b⟧ on 𝒜. Throws
/// PreconditionError when the structure is not integrable or the pair is not
/// admissible; those are not verdicts.
inline SemiAbelianCheck check_semi_abelian(const Gcs& g, const Subspace& a, const Subspace& k) {
  const auto& d = g.courant();
  if (!g.is_integrable()) throw PreconditionError("structure is not integrable");
  if (auto adm = check_admissible(d, a, k); !adm) throw PreconditionError("pair is not admissible: " + adm.failure);
  SemiAbelianCheck out;
  if (!is_invariant(g, a)) {
    out.result = fail_with("A is not invariant");
    return out;
  }
  if (!is_invariant(g, k)) {
    out.result = fail_with("K is not invariant");
    return out;
  }
  auto b = a.basis_vectors();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (d.bracket(g.apply(b[i]), g.apply(b[j])) != d.bracket(b[i], b[j])) {
        out.result = fail_with("abelian identity fails on A (basis pair " + std::to_string(i + 1) + ", " +
                               std::to_string(j + 1) + ")");
        return out;
      }
  out.a = intersect(g.ell(), a);
  out.k = intersect(g.ell(), k);
  return out;
}

struct SemiAbelianReport {
  bool decomposition = false;          ///< ℓ = 𝔞 ⊕ 𝔨
  bool a_abelian_subalgebra = false;
  bool k_abelian_ideal = false;        ///< abelian ideal of ℓ
  bool dualities = false;              ///< 𝔞 × 𝔨̄ and 𝔨 × 𝔞̄ pair nondegenerately
  bool k_closed = false;               ///< δ̄𝔨 = 0
  bool a_image = false;                ///< δ̄𝔞 ⊆ 𝔞∧𝔨
  std::size_t h1 = 0, k_dim = 0;
  bool h1_bound() const noexcept { return h1 >= k_dim; }
  bool holds() const noexcept {
    return decomposition && a_abelian_subalgebra && k_abelian_ideal && dualities && k_closed && a_image && h1_bound();
  }
};

/// Structural consequences of a semi-abelian pair for ℓ and its DGA.
inline SemiAbelianReport semi_abelian_report(const Gcs& g, const Subspace& a, const Subspace& k) {
  auto chk = check_semi_abelian(g, a, k);
  if (!chk) throw PreconditionError("pair is not semi-abelian: " + chk.result.failure);
  const auto& d = g.courant();
  SemiAbelianReport r;
  const Subspace &sa = chk.a, &sk = chk.k;
  std::size_t n = g.n(), m = sa.dim();
  r.k_dim = sk.dim();
  r.decomposition = sa.dim() + sk.dim() == n && (sa + sk) == g.ell();
  r.a_abelian_subalgebra = d.is_abelian(sa);
  bool ideal = true;
  for (const auto& x : g.ell().basis_vectors())
    for (const auto& y : sk.basis_vectors())
      if (!sk.contains(d.bracket(x, y))) ideal = false;
  r.k_abelian_ideal = ideal && d.is_abelian(sk);
  auto nondeg = [&](const Subspace& u, const Subspace& v) {
    if (u.dim() != v.dim()) return false;
    CMatrix p(u.dim(), v.dim());
    auto ub = u.basis_vectors(), vb = v.basis_vectors();
    for (std::size_t i = 0; i < ub.size(); ++i)
      for (std::size_t j = 0; j < vb.size(); ++j) p(i, j) = d.pairing(ub[i], vb[j]);
    return rank(p) == u.dim();
  };
  r.dualities = nondeg(sa, sk.conjugate()) && nondeg(sk, sa.conjugate());
  if (!r.decomposition) return r;
  // presentation in the basis (𝔞, 𝔨): 𝔞∧𝔨 = monomials with one factor of each
  std::vector<DoubleElement> basis = sa.basis_vectors();
  for (const auto& v : sk.basis_vectors()) basis.push_back(v);
  DgaPresentation p(g, basis);
  Mask low = (Mask(1) << m) - 1;
  r.k_closed = true;
  r.a_image = true;
  for (std::size_t i = 0; i < n; ++i) {
    Multivector x = p.delta(Multivector::generator(n, i));
    if (i >= m && !x.is_zero()) r.k_closed = false;
    if (i < m)
      for (const auto& [mask, c] : x.terms())
        if (popcount(mask & low) != 1) r.a_image = false;
  }
  r.h1 = p.cohomology(1).dim;
  return r;
}

// ---------------------------------------------------------------------------
// complements of a fixed K

/// Result of deciding whether some complement of K completes an admissible,
/// invariant, abelian-on-𝒜 pair. Complements of K are exactly the graphs
/// A_S = {a + S(a) : a ∈ A0} of linear maps S: A0 -> K. Because K is an
/// abelian 𝒥-invariant ideal, ⟦Sa, Sb⟧ = 0 and all brackets with K stay in K,
/// so closure, isotropy, invariance and the abelian identity are all affine
/// in the n² real entries of S.
struct ComplementResult {
  bool feasible = false;
  CMatrix s;  ///< s(j, i): coefficient of k_j in S(a_i), for the particular solution
  Subspace a;
  CMatrix matrix;  ///< the assembled system, for replay
  Vector rhs;
  std::size_t system_rank = 0, augmented_rank = 0;
};

namespace detail {

struct GraphSetup {
  std::vector<DoubleElement> a0, k;
  CMatrix split;  ///< coordinates along (a0, k)
};

inline GraphSetup graph_setup(const Gcs& g, const Subspace& k, const Subspace& a0) {
  GraphSetup s{a0.basis_vectors(), k.basis_vectors(), {}};
  std::size_t dd = g.courant().dim();
  CMatrix v(dd, dd);
  for (std::size_t i = 0; i < s.a0.size(); ++i) v.set_col(i, s.a0[i]);
  for (std::size_t i = 0; i < s.k.size(); ++i) v.set_col(s.a0.size() + i, s.k[i]);
  s.split = inverse(v);
  return s;
}

/// S applied to an element of 𝒢, through its A0 component.
inline DoubleElement apply_graph(const GraphSetup& gs, const CMatrix& s, std::span<const Scalar> v) {
  Vector c = gs.split.apply(v);
  std::size_t n = gs.a0.size();
  DoubleElement out(v.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) axpy(out, c[i] * s(j, i), gs.k[j]);
  }
  return out;
}

/// Residual vector of all conditions on A_S; zero iff A_S qualifies.
inline Vector graph_residual(const Gcs& g, const GraphSetup& gs, const CMatrix& s) {
  const auto& d = g.courant();
  std::size_t n = gs.a0.size(), dd = d.dim();
  std::vector<DoubleElement> b;
  for (std::size_t i = 0; i < n; ++i) {
    DoubleElement v = gs.a0[i];
    for (std::size_t j = 0; j < n; ++j) axpy(v, s(j, i), gs.k[j]);
    b.push_back(std::move(v));
  }
  // x lies in A_S iff its K component equals S of its A0 component
  auto off_graph = [&](std::span<const Scalar> x) {
    Vector c = gs.split.apply(x);
    DoubleElement kpart(dd);
    for (std::size_t j = 0; j < n; ++j) axpy(kpart, c[n + j], gs.k[j]);
    return sub(kpart, apply_graph(gs, s, x));
  };
  Vector r;
  auto push = [&r](std::span<const Scalar> v) { r.insert(r.end(), v.begin(), v.end()); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) r.push_back(d.pairing(b[i], b[j]));
  for (std::size_t i = 0; i < n; ++i) push(off_graph(g.apply(b[i])));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      DoubleElement br = d.bracket(b[i], b[j]);
      push(off_graph(br));
      push(sub(d.bracket(g.apply(b[i]), g.apply(b[j])), br));
    }
  return r;
}

inline void require_complement_setting(const Gcs& g, const Subspace& k, const Subspace& a0) {
  const auto& d = g.courant();
  if (!k.is_real() || !a0.is_real()) throw PreconditionError("K and A0 must be real");
  if (!d.is_max_isotropic(k)) throw PreconditionError("K is not maximally isotropic");
  if (!d.is_ideal(k) || !d.is_abelian(k)) throw PreconditionError("K is not an abelian ideal");
  if (!is_invariant(g, k)) throw PreconditionError("K is not invariant");
  if (a0.dim() != g.n() || (a0 + k).dim() != d.dim()) throw PreconditionError("A0 is not a complement of K");
}

}  // namespace detail

/// Direct check of A_S = graph of S over A0, without any linearization.
inline bool graph_qualifies(const Gcs& g, const Subspace& k, const Subspace& a0, const CMatrix& s) {
  auto ab = a0.basis_vectors(), kb = k.basis_vectors();
  std::vector<DoubleElement> b;
  for (std::size_t i = 0; i < ab.size(); ++i) {
    DoubleElement v = ab[i];
    for (std::size_t j = 0; j < kb.size(); ++j) axpy(v, s(j, i), kb[j]);
    b.push_back(std::move(v));
  }
  Subspace a = Subspace::span(g.courant().dim(), b);
  const auto& d = g.courant();
  if (!d.is_max_isotropic(a) || !d.is_subalgebra(a) || !is_invariant(g, a)) return false;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (d.bracket(g.apply(b[i]), g.apply(b[j])) != d.bracket(b[i], b[j])) return false;
  return true;
}

inline ComplementResult complement_feasibility(const Gcs& g, const Subspace& k, const Subspace& a0) {
  detail::require_complement_setting(g, k, a0);
  auto gs = detail::graph_setup(g, k, a0);
  std::size_t n = g.n(), unknowns = n * n;
  CMatrix zero(n, n);
  Vector r0 = detail::graph_residual(g, gs, zero);
  ComplementResult out;
  out.matrix = CMatrix(r0.size(), unknowns);
  for (std::size_t u = 0; u < unknowns; ++u) {
    CMatrix e(n, n);
    e(u % n, u / n) = Scalar(1);
    Vector col = sub(detail::graph_residual(g, gs, e), r0);
    out.matrix.set_col(u, col);
  }
  out.rhs = scale(Scalar(-1), r0);
  AffineSolution sol = solve_affine(out.matrix, out.rhs);
  out.system_rank = sol.system_rank;
  out.augmented_rank = sol.augmented_rank;
  out.feasible = sol.feasible;
  if (!sol.feasible) return out;
  out.s = CMatrix(n, n);
  for (std::size_t u = 0; u < unknowns; ++u) out.s(u % n, u / n) = sol.particular[u];
  if (!is_zero(detail::graph_residual(g, gs, out.s)))
    throw InvariantViolation("affine solution does not satisfy the graph conditions");
  std::vector<DoubleElement> b;
  for (std::size_t i = 0; i < n; ++i) {
    DoubleElement v = gs.a0[i];
    for (std::size_t j = 0; j < n; ++j) axpy(v, out.s(j, i), gs.k[j]);
    b.push_back(std::move(v));
  }
  out.a = Subspace::span(g.courant().dim(), b);
  return out;
}

/// Recomputes both ranks from the stored system.
inline bool replay_certificate(const ComplementResult& r) {
  CMatrix aug(r.matrix.rows(), r.matrix.cols() + 1);
  for (std::size_t i = 0; i < r.matrix.rows(); ++i) {
    for (std::size_t j = 0; j < r.matrix.cols(); ++j) aug(i, j) = r.matrix(i, j);
    aug(i, r.matrix.cols()) = r.rhs[i];
  }
  return rank(r.matrix) == r.system_rank && rank(aug) == r.augmented_rank &&
         (r.system_rank == r.augmented_rank) == r.feasible;
}

// ---------------------------------------------------------------------------
// kernel candidates and search

/// Real/imaginary parts of the ℓ basis, the standard basis and their images.
inline std::vector<DoubleElement> default_pool(const Gcs& g) {
  std::size_t dd = g.courant().dim();
  std::vector<DoubleElement> pool;
  for (const auto& v : g.ell().basis_vectors()) {
    DoubleElement re(dd), im(dd);
    for (std::size_t i = 0; i < dd; ++i) {
      re[i] = Scalar(v[i].re());
      im[i] = Scalar(v[i].im());
    }
    pool.push_back(re);
    pool.push_back(im);
  }
  for (std::size_t i = 0; i < dd; ++i) pool.push_back(unit_vector(dd, i));
  std::size_t base = pool.size();
  for (std::size_t i = 0; i < base; ++i) pool.push_back(g.apply(pool[i]));
  return pool;
}

struct KernelCandidates {
  Subspace kernel;                ///< ker δ̄ on Λ¹ℓ
  std::size_t required_dim = 0;   ///< dim_C 𝔨 = n/2
  bool forced = false;            ///< dim ker δ̄ equals required_dim
  std::vector<Subspace> candidates;  ///< K passing invariance, isotropy and abelian-ideal filters
  std::vector<std::pair<Subspace, std::string>> rejected;  ///< forced K that failed a filter
};

inline std::optional<std::string> kernel_filter_failure(const Gcs& g, const Subspace& k) {
  const auto& d = g.courant();
  if (!k.is_real()) return "K is not real";
  if (!is_invariant(g, k)) return "K is not invariant";
  if (!d.is_max_isotropic(k)) return "K is not maximally isotropic";
  if (!d.is_ideal(k)) return "K is not an ideal";
  if (!d.is_abelian(k)) return "K is not abelian";
  return std::nullopt;
}

/// Every semi-abelian 𝔨 lies in ker δ̄ with dim n/2, and 𝒦_C = 𝔨 ⊕ 𝔨̄. When
/// the kernel has exactly that dimension K is determined; otherwise
/// candidates come from ℓ-projections (v − i𝒥v)/2 of pool vectors.
inline KernelCandidates forced_kernel_candidates(const Gcs& g, const std::vector<DoubleElement>& pool) {
  if (!g.is_integrable()) throw PreconditionError("structure is not integrable");
  std::size_t n = g.n(), dd = 2 * n;
  KernelCandidates out;
  DgaPresentation p(g);
  out.kernel = p.degree_one_kernel();
  out.required_dim = n / 2;
  auto realify = [&](const Subspace& kk) { return kk + kk.conjugate(); };
  auto consider = [&](const Subspace& kk, std::vector<Subspace>& acc) {
    Subspace k = realify(kk);
    if (auto f = kernel_filter_failure(g, k)) {
      if (out.forced) out.rejected.emplace_back(k, *f);
      return;
    }
    for (const auto& c : acc)
      if (c == k) return;
    acc.push_back(k);
  };
  if (out.kernel.dim() < out.required_dim) return out;
  if (out.kernel.dim() == out.required_dim) {
    out.forced = true;
    consider(out.kernel, out.candidates);
    return out;
  }
  // distinct lines of ℓ ∩ ker δ̄ hit by pool projections
  std::vector<Vector> lines;
  Scalar half(Rational(1, 2));
  for (const auto& v : pool) {
    Vector x = scale(half, sub(v, scale(Scalar::i(), g.apply(v))));
    if (is_zero(x) || !out.kernel.contains(x)) continue;
    Subspace line = Subspace::span(dd, {x});
    bool seen = false;
    for (const auto& l : lines)
      if (Subspace::span(dd, {l}) == line) seen = true;
    if (!seen) lines.push_back(line.basis_vector(0));
  }
  std::size_t r = out.required_dim;
  std::vector<std::size_t> pick(r);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == r) {
      std::vector<Vector> v;
      for (auto i : pick) v.push_back(lines[i]);
      Subspace kk = Subspace::span(dd, v);
      if (kk.dim() == r) consider(kk, out.candidates);
      return;
    }
    for (std::size_t i = start; i < lines.size(); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  if (r == 0)
    consider(Subspace(dd), out.candidates);
  else
    rec(0, 0);
  std::sort(out.candidates.begin(), out.candidates.end(),
            [](const Subspace& a, const Subspace& b) { return canonical_less(a, b); });
  return out;
}

enum class Verdict { SemiAbelian, NotFoundInPool, Impossible };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::SemiAbelian:
      return "SEMI_ABELIAN";
    case Verdict::NotFoundInPool:
      return "NOT_FOUND_IN_POOL";
    case Verdict::Impossible:
      return "IMPOSSIBLE";
  }
  return "?";
}

struct SemiAbelianVerdict {
  Verdict status = Verdict::NotFoundInPool;
  Subspace a_pair, k_pair;       ///< the pair (SEMI_ABELIAN), or the forced K (IMPOSSIBLE)
  Subspace a_ell, k_ell;         ///< 𝔞, 𝔨
  std::optional<ComplementResult> certificate;
  std::string reason;
  std::size_t candidates_tried = 0;
};

inline SemiAbelianVerdict search_semi_abelian(const Gcs& g, const std::vector<DoubleElement>& pool) {
  SemiAbelianVerdict v;
  auto kc = forced_kernel_candidates(g, pool);
  if (kc.kernel.dim() < kc.required_dim) {
    v.status = Verdict::Impossible;
    v.reason = "kernel of the differential on degree one is too small";
    return v;
  }
  std::optional<ComplementResult> last;
  for (const auto& k : kc.candidates) {
    ++v.candidates_tried;
    auto r = complement_feasibility(g, k, k.standard_complement());
    if (r.feasible) {
      auto chk = check_semi_abelian(g, r.a, k);
      if (!chk) throw InvariantViolation("feasible complement fails the semi-abelian check: " + chk.result.failure);
      if (!semi_abelian_report(g, r.a, k).holds()) throw InvariantViolation("semi-abelian pair violates the ℓ structure");
      v.status = Verdict::SemiAbelian;
      v.a_pair = r.a;
      v.k_pair = k;
      v.a_ell = chk.a;
      v.k_ell = chk.k;
      v.certificate = r;
      return v;
    }
    last = r;
  }
  if (kc.forced) {
    v.status = Verdict::Impossible;
    if (!kc.candidates.empty()) {
      v.k_pair = kc.candidates.front();
      v.certificate = last;
      v.reason = "forced K admits no complement";
    } else {
      v.k_pair = kc.rejected.front().first;
      v.reason = "forced K fails: " + kc.rejected.front().second;
    }
    return v;
  }
  v.status = Verdict::NotFoundInPool;
  v.reason = std::to_string(v.candidates_tried) + " candidate K from a pool of " + std::to_string(pool.size()) +
             " vectors";
  return v;
}

// ---------------------------------------------------------------------------
// symplectic structures

struct SymplecticSemiAbelian {
  Verdict status = Verdict::NotFoundInPool;
  Subspace b, h;      ///< subspaces of g
  Subspace a_pair, k_pair;
  Subspace closed;    ///< {X : d(ι_XΩ) = 0}
  std::string reason;
};

namespace detail {

inline Subspace omega_graph_pair(const Gcs& s, const Subspace& x) {
  std::size_t n = s.n();
  std::vector<Vector> v;
  for (const auto& b : x.basis_vectors()) {
    DoubleElement e(2 * n);
    std::copy(b.begin(), b.end(), e.begin());
    v.push_back(e);
    v.push_back(s.apply(e));
  }
  return Subspace::span(2 * n, v);
}

/// Complement 𝔟 of 𝔥 that is abelian and Lagrangian: graphs b + T b over a
/// fixed complement, affine in T because 𝔥 is an abelian Lagrangian ideal.
inline std::optional<Subspace> abelian_lagrangian_complement(const LieAlgebra& g, const Multivector& omega,
                                                             const Subspace& h) {
  std::size_t n = g.dim(), m = n - h.dim();
  Subspace b0 = h.standard_complement();
  auto bb = b0.basis_vectors(), hb = h.basis_vectors();
  auto residual = [&](const CMatrix& t) {
    std::vector<Vector> v;
    for (std::size_t i = 0; i < m; ++i) {
      Vector x = bb[i];
      for (std::size_t j = 0; j < hb.size(); ++j) axpy(x, t(j, i), hb[j]);
      v.push_back(std::move(x));
    }
    Vector r;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        Vector br = g.bracket(v[i], v[j]);
        r.insert(r.end(), br.begin(), br.end());
        r.push_back(evaluate2(omega, v[i], v[j]));
      }
    return r;
  };
  std::size_t unknowns = m * hb.size();
  CMatrix zero(hb.size(), m);
  Vector r0 = residual(zero);
  if (r0.empty()) return b0;
  CMatrix sys(r0.size(), unknowns);
  for (std::size_t u = 0; u < unknowns; ++u) {
    CMatrix e(hb.size(), m);
    e(u % hb.size(), u / hb.size()) = Scalar(1);
    sys.set_col(u, sub(residual(e), r0));
  }
  auto sol = solve_affine(sys, scale(Scalar(-1), r0));
  if (!sol.feasible) return std::nullopt;
  CMatrix t(hb.size(), m);
  for (std::size_t u = 0; u < unknowns; ++u) t(u % hb.size(), u / hb.size()) = sol.particular[u];
  if (!is_zero(residual(t))) throw InvariantViolation("complement solution fails its own conditions");
  std::vector<Vector> v;
  for (std::size_t i = 0; i < m; ++i) {
    Vector x = bb[i];
    for (std::size_t j = 0; j < hb.size(); ++j) axpy(x, t(j, i), hb[j]);
    v.push_back(std::move(x));
  }
  return Subspace::span(n, v);
}

inline bool is_abelian_ideal(const LieAlgebra& g, const Subspace& h) {
  std::size_t n = g.dim();
  for (const auto& y : h.basis_vectors()) {
    for (std::size_t i = 0; i < n; ++i)
      if (!h.contains(g.bracket(unit_vector(n, i), y))) return false;
    for (const auto& z : h.basis_vectors())
      if (!is_zero(g.bracket(y, z))) return false;
  }
  return true;
}

inline bool is_lagrangian(const Multivector& omega, const Subspace& h) {
  auto b = h.basis_vectors();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (!evaluate2(omega, b[i], b[j]).is_zero()) return false;
  return 2 * h.dim() == omega.dim();
}

}  // namespace detail

/// Decomposition g = 𝔟 ⋉ 𝔥 with 𝔟 an abelian subalgebra, 𝔥 an abelian ideal,
/// both Lagrangian, and d(ι_XΩ) = 0 on 𝔥; then 𝒜 = 𝔟 + Ω𝔟, 𝒦 = 𝔥 + Ω𝔥.
/// IMPOSSIBLE is returned only when 𝔥 is forced by dimension.
inline SymplecticSemiAbelian symplectic_semi_abelian(const LieAlgebra& g, const Multivector& omega,
                                                     const std::vector<Vector>& pool = {}) {
  if (!g.d(omega).is_zero()) throw PreconditionError("form is not closed");
  Gcs s = Gcs::from_symplectic(g, omega);
  std::size_t n = g.dim(), half = n / 2;
  SymplecticSemiAbelian out;
  std::vector<Vector> rows;
  {
    // X ↦ d(ι_XΩ), kernel by rank
    SubsetIndex idx(n, 2);
    CMatrix m(idx.size(), n);
    for (std::size_t i = 0; i < n; ++i) m.set_col(i, g.d(contract(unit_vector(n, i), omega)).to_dense(idx));
    out.closed = kernel(m);
  }
  auto attempt = [&](const Subspace& h) -> bool {
    if (!detail::is_abelian_ideal(g, h) || !detail::is_lagrangian(omega, h)) return false;
    auto b = detail::abelian_lagrangian_complement(g, omega, h);
    if (!b) return false;
    out.b = *b;
    out.h = h;
    out.a_pair = detail::omega_graph_pair(s, *b);
    out.k_pair = detail::omega_graph_pair(s, h);
    auto chk = check_semi_abelian(s, out.a_pair, out.k_pair);
    if (!chk) throw InvariantViolation("symplectic pair fails the semi-abelian check: " + chk.result.failure);
    out.status = Verdict::SemiAbelian;
    return true;
  };
  if (out.closed.dim() < half) {
    out.status = Verdict::Impossible;
    out.reason = "closed directions have dimension below n/2";
    return out;
  }
  if (out.closed.dim() == half) {
    if (!attempt(out.closed)) {
      out.status = Verdict::Impossible;
      out.h = out.closed;
      out.reason = "the forced ideal admits no abelian Lagrangian complement";
    }
    return out;
  }
  std::vector<Vector> lines;
  std::vector<Vector> src = pool;
  for (std::size_t i = 0; i < n; ++i) src.push_back(unit_vector(n, i));
  for (const auto& v : out.closed.basis_vectors()) src.push_back(v);
  for (const auto& v : src) {
    if (is_zero(v) || !out.closed.contains(v)) continue;
    bool seen = false;
    for (const auto& l : lines)
      if (Subspace::span(n, {l}) == Subspace::span(n, {v})) seen = true;
    if (!seen) lines.push_back(v);
  }
  std::vector<std::size_t> pick(half);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == half) {
      std::vector<Vector> v;
      for (auto i : pick) v.push_back(lines[i]);
      Subspace h = Subspace::span(n, v);
      return h.dim() == half && attempt(h);
    }
    for (std::size_t i = start; i < lines.size(); ++i) {
      pick[depth] = i;
      if (rec(i + 1, depth + 1)) return true;
    }
    return false;
  };
  if (!rec(0, 0)) out.reason = "no abelian Lagrangian ideal from the pool admits a complement";
  return out;
}

}  // namespace nilgcs
