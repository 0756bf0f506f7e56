#include <gtest/gtest.h>

#include <random>

#include "nilgcs/gcs.hpp"

using namespace nilgcs;

namespace {

const Scalar I = Scalar::i();
const Scalar HALF(Rational(1, 2));

Subspace span_of(const CourantDouble& d, std::initializer_list<const char*> elems) {
  std::vector<Vector> v;
  for (const char* e : elems) v.push_back(d.parse_element(e));
  return Subspace::span(d.dim(), v);
}

CMatrix images(std::size_t n, std::initializer_list<std::pair<int, int>> pairs) {
  std::vector<std::pair<std::size_t, Vector>> im;
  for (auto [a, b] : pairs) im.push_back({static_cast<std::size_t>(a - 1), unit_vector(n, static_cast<std::size_t>(b - 1))});
  return endomorphism_from_images(n, im);
}

Gcs heis_type_one() {
  auto g = parse_salamon("0,0,0,12");
  return Gcs::from_components(g, images(4, {{1, 2}}), parse_form("E3^E4", 4), parse_multivector_on_g("e3^e4", 4));
}

Gcs h5_type_two() {
  auto g = parse_salamon("0,0,0,0,0,12+34");
  return Gcs::from_components(g, images(6, {{1, 2}, {3, 4}}), parse_form("E5^E6", 6),
                              parse_multivector_on_g("e5^e6", 6));
}

}  // namespace

// --- courant_double --------------------------------------------------------

TEST(Courant, Pairing) {
  CourantDouble d(parse_salamon("0,0,0,12"));
  EXPECT_EQ(d.pairing(d.parse_element("e1"), d.parse_element("E1")), HALF);
  EXPECT_EQ(d.pairing(d.parse_element("e1 - i*e2"), d.parse_element("E1 + i*E2")), Scalar(1));
  EXPECT_EQ(d.pairing(d.parse_element("e4 + i*E3"), d.parse_element("e4 - i*E3")), Scalar(0));
}

TEST(Courant, BracketOnHeisenbergSum) {
  CourantDouble d(parse_salamon("0,0,0,12"));
  EXPECT_EQ(d.bracket(d.parse_element("e1"), d.parse_element("E4")), d.parse_element("E2"));
  EXPECT_EQ(d.bracket(d.parse_element("e2"), d.parse_element("E4")), d.parse_element("-E1"));
  EXPECT_EQ(d.bracket(d.parse_element("e1"), d.parse_element("e2")), d.parse_element("-e4"));
  EXPECT_TRUE(is_zero(d.bracket(d.parse_element("E1"), d.parse_element("E2"))));
  EXPECT_EQ(d.bracket(d.parse_element("e1 - i*e2"), d.parse_element("e3 - i*E4")), d.parse_element("E1 - i*E2"));
}

TEST(Courant, RestrictionsAndNondegeneracy) {
  for (const char* s : {"0,0,12,13", "0,0,0,0,0,12+34", "0,0,0,12,14+23,13+42"}) {
    CourantDouble d(parse_salamon(s));
    std::size_t n = d.n();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Vector gb = d.algebra().bracket(unit_vector(n, a), unit_vector(n, b));
        Vector db = d.bracket(d.vector(a), d.vector(b));
        EXPECT_EQ(Vector(db.begin(), db.begin() + static_cast<long>(n)), gb);
        EXPECT_TRUE(is_zero(d.bracket(d.form(a), d.form(b))));
      }
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> u(-1, 1);
    for (int t = 0; t < 10; ++t) {
      std::vector<Vector> rows;
      for (int r = 0; r < 1 + t % 5; ++r) {
        Vector v(2 * n);
        for (auto& x : v) x = Scalar(Rational(u(rng)), Rational(u(rng)));
        rows.push_back(v);
      }
      auto s2 = Subspace::span(2 * n, rows);
      EXPECT_EQ(s2.dim() + d.orthogonal(s2).dim(), 2 * n);
    }
  }
}

TEST(Courant, Predicates) {
  CourantDouble d(parse_salamon("0,0,0,12"));
  auto g = span_of(d, {"e1", "e2", "e3", "e4"});
  auto gs = span_of(d, {"E1", "E2", "E3", "E4"});
  auto pg = d.predicates(g), ps = d.predicates(gs);
  EXPECT_TRUE(pg.subalgebra && pg.max_isotropic);
  EXPECT_FALSE(pg.abelian);
  EXPECT_TRUE(ps.abelian && ps.ideal && ps.max_isotropic);
  auto k = span_of(d, {"E1", "E2", "E4", "e3"});
  auto pk = d.predicates(k);
  EXPECT_TRUE(pk.max_isotropic && pk.abelian && pk.ideal);

  CourantDouble d2(parse_salamon("0,0,12,13"));
  auto a = span_of(d2, {"E4", "e1", "e2", "e3"});
  auto f = d2.closure_failure(a);
  ASSERT_TRUE(f.has_value());
  EXPECT_FALSE(d2.is_subalgebra(a));
  EXPECT_EQ(d2.bracket(d2.parse_element("e1"), d2.parse_element("e3")), d2.parse_element("-e4"));
}

TEST(Courant, JacobiOnIsotropic) {
  CourantDouble d(parse_salamon("0,0,12,13"));
  EXPECT_FALSE(d.jacobi_on_isotropic(span_of(d, {"e1", "e2", "e3", "e4"})).has_value());
  auto g51 = heis_type_one();
  EXPECT_FALSE(g51.courant().jacobi_on_isotropic(g51.ell()).has_value());
  auto g53 = h5_type_two();
  EXPECT_FALSE(g53.courant().jacobi_on_isotropic(g53.ell()).has_value());
  EXPECT_THROW(d.jacobi_on_isotropic(span_of(d, {"E4", "e1", "e2", "e3"})), PreconditionError);
  EXPECT_THROW(d.jacobi_on_isotropic(span_of(d, {"e1"})), PreconditionError);
}

TEST(Courant, DualIdentification) {
  CourantDouble d(parse_salamon("0,0,0,12"));
  auto g = span_of(d, {"e1", "e2", "e3", "e4"});
  auto gs = span_of(d, {"E1", "E2", "E3", "E4"});
  EXPECT_EQ(d.dual_identification(gs, g), CMatrix::identity(4));
  auto a = span_of(d, {"e1", "e2", "e4", "E3"});
  auto k = span_of(d, {"E1", "E2", "E4", "e3"});
  EXPECT_EQ(rank(d.dual_identification(k, a)), 4u);
  EXPECT_THROW(d.dual_identification(k, k), PreconditionError);
}

TEST(Courant, ElementFormatting) {
  CourantDouble d(parse_salamon("0,0,0,12"));
  auto v = d.parse_element("e1 - i*e2 + 1/2*E4");
  EXPECT_EQ(d.format(v), "e1 - i*e2 + 1/2*E4");
  EXPECT_EQ(d.parse_element(d.format(v)), v);
  EXPECT_THROW(d.parse_element("e1^e2"), ParseError);
  EXPECT_THROW(d.parse_element("e5"), ParseError);
}

TEST(Courant, IsotropyFamilyOnFiliform) {
  CourantDouble d(parse_salamon("0,0,12,13"));
  // e3 - i(E4 + a31 E1 + a32 E2), e4 - i(-E3 + a41 E1 + a42 E2)
  std::vector<Vector> base{d.parse_element("e1 - i*e2"), d.parse_element("E1 - i*E2"), d.parse_element("e3 - i*E4"),
                           d.parse_element("e4 + i*E3")};
  Vector z(8);
  auto mi1 = d.parse_element("-i*E1"), mi2 = d.parse_element("-i*E2");
  std::vector<std::vector<Vector>> dir{{z, z, z, z}, {z, z, z, z}, {mi1, mi2, z, z}, {z, z, mi1, mi2}};
  auto sys = linear_isotropy_system(d, base, dir);
  EXPECT_TRUE(sys.affine);
  ASSERT_TRUE(sys.solution.feasible);
  EXPECT_TRUE(is_zero(sys.solution.particular));
  EXPECT_EQ(sys.solution.homogeneous.dim(), 0u);
}

// --- gcs_core ---------------------------------------------------------------

TEST(Gcs, TypeOneOnHeisenbergSum) {
  auto g = heis_type_one();
  const auto& d = g.courant();
  EXPECT_EQ(g.apply(d.parse_element("e3")), d.parse_element("E4"));
  EXPECT_EQ(g.apply(d.parse_element("e4")), d.parse_element("-E3"));
  EXPECT_EQ(g.ell(), span_of(d, {"e1 - i*e2", "e4 + i*E3", "E1 - i*E2", "e3 - i*E4"}));
  EXPECT_TRUE(g.is_integrable());
  EXPECT_EQ(g.type(), 1u);
  EXPECT_EQ(g.b_form(), parse_form("E3^E4", 4));
  EXPECT_EQ(g.pi_bivector(), parse_multivector_on_g("e3^e4", 4));
}

TEST(Gcs, InvalidStructuresAreRejected) {
  auto g = parse_salamon("0,0,0,12");
  EXPECT_THROW(Gcs::from_components(g, images(4, {{1, 2}}), Multivector(4), Multivector(4)), NotAlmostGcs);
  // J^2 = -1 but B is not compatible with J
  CMatrix j = images(4, {{1, 2}, {3, 4}});
  EXPECT_THROW(Gcs::from_components(g, j, parse_form("E1^E3", 4), Multivector(4)), NotAlmostGcs);
  EXPECT_THROW(Gcs::from_symplectic(parse_salamon("0,0,0,12"), parse_form("E1^E2", 4)), PreconditionError);
}

TEST(Gcs, TypeTwoOnFiveDimHeisenbergSum) {
  auto g = h5_type_two();
  const auto& d = g.courant();
  EXPECT_EQ(g.ell(), span_of(d, {"e1 - i*e2", "e3 - i*e4", "E1 - i*E2", "E3 - i*E4", "e5 - i*E6", "e6 + i*E5"}));
  EXPECT_TRUE(g.is_integrable());
  EXPECT_EQ(g.type(), 2u);
  // ι_{e4}(e^{12}+e^{34}) = -e^3
  EXPECT_EQ(d.bracket(d.parse_element("e4"), d.parse_element("E6")), d.parse_element("-E3"));
}

TEST(Gcs, Symplectic) {
  auto g = parse_salamon("0,0,0,0,12,14+25");
  auto omega = parse_form("E1^E3 + E2^E6 + E4^E5", 6);
  EXPECT_TRUE(g.d(omega).is_zero());
  auto s = Gcs::from_symplectic(g, omega);
  EXPECT_TRUE(s.is_integrable());
  EXPECT_EQ(s.type(), 0u);
  const auto& d = s.courant();
  EXPECT_EQ(s.apply(d.parse_element("e1")), d.parse_element("E3"));
  EXPECT_EQ(s.apply(d.parse_element("e5")), d.parse_element("-E4"));
  EXPECT_EQ(s.apply(d.parse_element("e6")), d.parse_element("-E2"));
  EXPECT_TRUE(s.ell().contains(d.parse_element("e1 - i*E3")));

  auto r2 = Gcs::from_symplectic(parse_salamon("0,0"), parse_form("E1^E2", 2));
  EXPECT_EQ(r2.ell(), span_of(r2.courant(), {"e1 - i*E2", "e2 + i*E1"}));
  EXPECT_EQ(r2.type(), 0u);
  EXPECT_TRUE(Gcs::from_symplectic(parse_salamon("0,0,12,13"), parse_form("E2^E3 + E1^E4", 4)).is_integrable());
}

TEST(Gcs, SymplecticIntegrabilityIffClosed) {
  auto g = parse_salamon("0,0,12,13");
  // e^{13}+e^{24} is nondegenerate but d(e^{24}) = -e^{123}... not closed
  auto bad = parse_form("E1^E3 + E2^E4", 4);
  ASSERT_FALSE(g.d(bad).is_zero());
  auto s = Gcs::from_symplectic(g, bad);
  auto rep = s.integrability();
  EXPECT_FALSE(rep.integrable);
  EXPECT_FALSE(is_zero(rep.lbar_component));
  EXPECT_TRUE(s.ell_bar().contains(rep.lbar_component));
}

TEST(Gcs, ClassicalTypeAndIntegrability) {
  auto k = ComplexStructure(parse_salamon("0,0,0,12"), images(4, {{1, 2}, {3, 4}}));
  EXPECT_TRUE(k.is_integrable());
  EXPECT_TRUE(k.is_abelian());
  EXPECT_TRUE(k.holomorphic_part_is_abelian());
  auto gk = Gcs::from_complex(k);
  EXPECT_EQ(gk.type(), 2u);
  EXPECT_TRUE(gk.is_integrable());

  auto c = ComplexStructure(parse_salamon("0,0,0,0,12,13"), images(6, {{1, 4}, {2, 3}, {5, 6}}));
  EXPECT_TRUE(c.is_integrable());
  EXPECT_FALSE(c.is_abelian());
  EXPECT_FALSE(c.holomorphic_part_is_abelian());
  EXPECT_EQ(Gcs::from_complex(c).type(), 3u);

  auto r2 = ComplexStructure(parse_salamon("0,0"), images(2, {{1, 2}}));
  EXPECT_EQ(Gcs::from_complex(r2).type(), 1u);
  EXPECT_TRUE(r2.is_abelian());

  auto bad = ComplexStructure(parse_salamon("0,0,12,13"), images(4, {{1, 2}, {3, 4}}));
  EXPECT_FALSE(bad.is_integrable());
  EXPECT_FALSE(Gcs::from_complex(bad).is_integrable());
}

TEST(Gcs, StructureEquations) {
  auto g = parse_salamon("0,0,0,-12,31+42,41-32");
  ComplexStructure j(g, images(6, {{1, 2}, {3, 4}, {5, 6}}));
  EXPECT_TRUE(j.is_integrable());
  EXPECT_TRUE(j.is_abelian());
  auto f = j.frame();
  auto d = [&](std::size_t k) { return j.in_coframe(f, j.d_form(f.omega[k])); };
  auto w = [](std::size_t a, std::size_t b) {
    Multivector m(6);
    m.add_term((Mask(1) << a) | (Mask(1) << b), Scalar(1));
    return m;
  };
  EXPECT_TRUE(d(0).is_zero());
  EXPECT_EQ(d(1), HALF * w(0, 3));
  EXPECT_EQ(d(2), w(1, 3));

  auto h = parse_salamon("0,0,0,0,12,13");
  ComplexStructure c(h, images(6, {{1, 4}, {2, 3}, {5, 6}}));
  auto fc = c.frame();
  EXPECT_EQ(fc.t[1], scale(HALF, Vector{0, 1, -I, 0, 0, 0}));
  auto dbar3 = c.in_coframe(fc, c.d_form(conj(fc.omega[2])));
  EXPECT_EQ(dbar3, HALF * w(0, 4) + HALF * w(3, 4));
}

TEST(Gcs, AscendingBasis) {
  auto g = parse_salamon("0,0,0,-12,31+42,41-32");
  ComplexStructure j(g, images(6, {{1, 2}, {3, 4}, {5, 6}}));
  auto a = j.ascending_basis();
  ASSERT_TRUE(a.has_value());
  EXPECT_TRUE(a->abelian);
  EXPECT_EQ(a->omega.size(), 3u);
  // property: dω^j lies in the ideal of earlier forms
  for (std::size_t k = 0; k < 3; ++k) {
    Multivector allowed(6);
    std::vector<Vector> wide;
    for (std::size_t l = 0; l < k; ++l) {
      wide.push_back(a->omega[l]);
      wide.push_back(conj(a->omega[l]));
    }
    std::vector<Vector> span2;
    SubsetIndex idx(6, 2);
    for (std::size_t l = 0; l < k; ++l)
      for (const auto& y : wide)
        span2.push_back(wedge(Multivector::from_vector(a->omega[l]), Multivector::from_vector(y)).to_dense(idx));
    auto target = Subspace::span(idx.size(), span2);
    EXPECT_TRUE(target.contains(j.d_form(a->omega[k]).to_dense(idx)));
  }
  auto c = ComplexStructure(parse_salamon("0,0,0,0,12,13"), images(6, {{1, 4}, {2, 3}, {5, 6}}));
  auto ac = c.ascending_basis();
  ASSERT_TRUE(ac.has_value());
  EXPECT_FALSE(ac->abelian);
  auto ab = ComplexStructure(parse_salamon("0,0,0,0"), images(4, {{1, 2}, {3, 4}})).ascending_basis();
  ASSERT_TRUE(ab.has_value());
  EXPECT_TRUE(ab->abelian);
  EXPECT_EQ(ab->level, (std::vector<std::size_t>{1, 1}));
}

TEST(Gcs, PairingPreservationAndEigenspace) {
  for (auto g : {heis_type_one(), h5_type_two()}) {
    const auto& d = g.courant();
    for (std::size_t a = 0; a < d.dim(); ++a)
      for (std::size_t b = 0; b < d.dim(); ++b)
        EXPECT_EQ(d.pairing(g.apply(unit_vector(d.dim(), a)),
                            g.apply(unit_vector(d.dim(), b))),
                  d.pairing(unit_vector(d.dim(), a), unit_vector(d.dim(), b)));
    EXPECT_TRUE(d.is_max_isotropic(g.ell()));
    EXPECT_EQ(intersect(g.ell(), g.ell_bar()).dim(), 0u);
  }
}

TEST(Gcs, HolomorphicPoissonEigenspace) {
  auto g = parse_salamon("0,0,0,0,12,13");
  ComplexStructure c(g, images(6, {{1, 4}, {2, 3}, {5, 6}}));
  auto f = c.frame();
  Multivector lambda = wedge(Multivector::from_vector(f.t[1]), Multivector::from_vector(f.t[2]));
  auto p = Gcs::from_holomorphic_poisson(c, lambda);
  EXPECT_TRUE(p.is_integrable());
  auto zero = Gcs::from_holomorphic_poisson(c, Multivector(6));
  EXPECT_EQ(zero.matrix(), Gcs::from_complex(c).matrix());
  Multivector mixed = wedge(Multivector::from_vector(f.t[1]), Multivector::from_vector(conj(f.t[2])));
  EXPECT_THROW(Gcs::from_holomorphic_poisson(c, mixed), PreconditionError);
}
