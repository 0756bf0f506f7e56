#include <gtest/gtest.h>

#include <set>

#include "nilgcs/io.hpp"
#include "nilgcs/verification.hpp"

using namespace nilgcs;

namespace {

const std::vector<CatalogEntry>& cat() {
  static const auto c = catalog();
  return c;
}

}  // namespace

TEST(Catalog, ContainsRequiredAlgebras) {
  std::set<std::string> have;
  for (const auto& e : cat()) have.insert(e.algebra().to_salamon());
  for (const char* s : {"0,0,0,0", "0,0,0,12", "0,0,12,13", "0,0,0,0,0,12", "0,0,0,0,0,12+34", "0,0,0,0,12,34",
                        "0,0,0,0,13+42,14+23", "0,0,0,0,12,14+23", "0,0,0,12,14+23,13+42", "0,0,0,0,12,14+25",
                        "0,0,0,0,12,13"})
    EXPECT_TRUE(have.count(parse_salamon(s).to_salamon())) << s;
}

TEST(Catalog, EveryEntryIsNilpotentLie) {
  for (const auto& e : cat()) {
    auto g = e.algebra();
    EXPECT_TRUE(g.satisfies_jacobi()) << e.name;
    EXPECT_TRUE(g.lower_central_series().step.has_value()) << e.name;
  }
}

TEST(Catalog, ExpectationsReproduced) {
  auto checks = verify_catalog(cat());
  EXPECT_GT(checks.size(), 30u);
  for (const auto& c : checks) EXPECT_TRUE(c.pass) << c.name << " " << c.detail;
}

TEST(Catalog, HeisenbergEntryCarriesBothStructures) {
  const auto& e = catalog_entry(cat(), "R+h3");
  EXPECT_EQ(e.structure(e.find("kodaira")).type(), 2u);
  Gcs t = e.structure(e.find("type-one"));
  EXPECT_EQ(t.type(), 1u);
  // 𝒥e3 = e^4 and 𝒥e4 = -e^3
  const auto& d = t.courant();
  EXPECT_EQ(t.apply(d.parse_element("e3")), d.parse_element("E4"));
  EXPECT_EQ(t.apply(d.parse_element("e4")), d.parse_element("-E3"));
}

TEST(Catalog, SymplecticSixEntry) {
  const auto& e = catalog_entry(cat(), "L6,3");
  const auto& s = e.find("symplectic");
  EXPECT_EQ(detail::two_tensor_from_json(s.doc["symplectic"], 6, "E"), parse_form("E1^E3 + E2^E6 + E4^E5", 6));
}

TEST(Catalog, MissingNamesThrow) {
  EXPECT_THROW(catalog_entry(cat(), "nothing"), Error);
  EXPECT_THROW(catalog_entry(cat(), "R4").find("nothing"), Error);
}

TEST(Generator, SmallCases) {
  EXPECT_EQ(heisenberg_sum_salamon(0, 1), "0,0,0,12");
  EXPECT_EQ(heisenberg_sum(0, 1).to_salamon(), parse_salamon("0,0,0,12").to_salamon());
  EXPECT_EQ(heisenberg_sum(1, 1).to_salamon(), parse_salamon("0,0,0,0,0,12").to_salamon());
  EXPECT_EQ(heisenberg_sum(0, 2).to_salamon(), parse_salamon("0,0,0,0,0,12+34").to_salamon());
  EXPECT_EQ(heisenberg_sum(2, 3).dim(), 12u);
}

TEST(Generator, ComplexStructureIsAbelian) {
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 1}, {0, 2}, {2, 1}}) {
    Gcs g = gcs_from_json(heisenberg_sum_complex(m, n), heisenberg_sum(m, n));
    EXPECT_TRUE(g.is_integrable());
    EXPECT_EQ(g.type(), g.n() / 2);
    EXPECT_TRUE(ComplexStructure(g.algebra(), g.j_block()).is_abelian());
  }
}

TEST(Rebasing, IsAnIsomorphism) {
  auto a = catalog_entry(cat(), "three-step").algebra();
  auto b = catalog_entry(cat(), "three-step-rebased").algebra();
  EXPECT_TRUE(is_isomorphism(a, b, three_step_rebasing()));
  EXPECT_FALSE(is_isomorphism(a, b, CMatrix::identity(6)));
  EXPECT_FALSE(is_isomorphism(a, a, CMatrix(6, 6)));
}

TEST(Json, StructuresRoundTrip) {
  for (const auto& e : cat())
    for (const auto& s : e.structures) {
      Gcs g = e.structure(s);
      Json j = Json::parse(gcs_to_json(g).dump());
      Gcs back = gcs_from_json(j);
      EXPECT_EQ(back.matrix(), g.matrix()) << e.name << "/" << s.name;
      EXPECT_EQ(gcs_to_json(back), gcs_to_json(g));
    }
}

TEST(Json, ScalarsAndShapes) {
  EXPECT_EQ(scalar_from_json(Json("-1/2")), Scalar(Rational(-1, 2)));
  EXPECT_EQ(scalar_from_json(Json("1 - 2 i")), Scalar(Rational(1), Rational(-2)));
  EXPECT_EQ(scalar_from_json(Json(3)), Scalar(3));
  EXPECT_EQ(scalar_from_json(scalar_to_json(Scalar(Rational(3, 4), Rational(-1, 3)))), Scalar(Rational(3, 4), Rational(-1, 3)));
  EXPECT_THROW(scalar_from_json(Json("e1")), Error);
  EXPECT_THROW(matrix_from_json(Json::parse("[[1,2],[3]]"), 2, 2), InputError);
  EXPECT_THROW(gcs_from_json(Json::parse("{\"J\": []}")), InputError);
  EXPECT_THROW(gcs_from_json(Json::parse("{\"algebra\": \"0,0\", \"J\": [[0,1],[1,0]]}")), NotAlmostGcs);
}

TEST(Json, VerdictDocument) {
  const auto& e = catalog_entry(cat(), "R+h3");
  Gcs g = e.structure(e.find("type-one"));
  auto v = search_semi_abelian(g, default_pool(g));
  Json j = verdict_to_json(g.courant(), v);
  EXPECT_EQ(j["status"], "SEMI_ABELIAN");
  for (const char* key : {"pair", "ell_decomposition", "certificate"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(subspace_from_json(g.courant(), j["pair"]["K"]), v.k_pair);
  EXPECT_EQ(subspace_from_json(g.courant(), j["ell_decomposition"]["a"]), v.a_ell);
  EXPECT_EQ(Json::parse(j.dump()), j);
}

TEST(Sweep, FamiliesAreValid) {
  auto fam = four_dim_families();
  EXPECT_EQ(fam.size(), 3u);
  for (const auto& [alg, list] : fam) {
    EXPECT_GE(list.size(), 4u) << alg;
    for (const auto& s : list) {
      EXPECT_TRUE(s.gcs.is_integrable()) << alg << " " << s.label;
      if (s.gcs.type() == 0) {
        auto w = s.gcs.b_form();
        EXPECT_TRUE(s.gcs.algebra().d(w).is_zero()) << s.label;
        EXPECT_FALSE(wedge(w, w).is_zero()) << s.label;
      }
    }
  }
}

TEST(Sweep, AlmostComplexPool) {
  auto pool = almost_complex_pool(30);
  ASSERT_EQ(pool.size(), 30u);
  std::set<std::string> distinct;
  for (const auto& j : pool) {
    EXPECT_EQ(j * j, Scalar(-1) * CMatrix::identity(4));
    distinct.insert(matrix_to_json(j).dump());
  }
  EXPECT_GT(distinct.size(), 20u);
  // every member is integrable on the abelian algebra
  auto r4 = parse_salamon("0,0,0,0");
  for (const auto& j : pool) EXPECT_TRUE(ComplexStructure(r4, j).is_integrable());
}

TEST(Grid, InstancesCoverSettings) {
  auto inst = grid_instances();
  EXPECT_GE(inst.size(), 20u);
  std::size_t planted = 0;
  for (const auto& i : inst) {
    EXPECT_EQ((i.a0 + i.k).dim(), 2 * i.gcs.n()) << i.label;
    EXPECT_FALSE(i.free.empty()) << i.label;
    if (i.planted) {
      ++planted;
      EXPECT_TRUE(graph_qualifies(i.gcs, i.k, i.a0, i.fixed)) << i.label;
    }
  }
  EXPECT_GE(planted, 5u);
}
