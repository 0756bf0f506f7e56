#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilgcs/io.hpp"

namespace nilgcs {

/// Stored outcomes for one structure. Unset fields are not asserted.
struct Expectation {
  bool integrable = true;
  std::optional<std::size_t> type;
  std::optional<Verdict> verdict;      ///< search_semi_abelian with the default pool
  std::optional<bool> abelian_complex; ///< classical structures only
};

struct CatalogStructure {
  std::string name;
  std::string note;
  Json doc;  ///< GCS document without the "algebra" key
  Expectation expect;
};

struct CatalogEntry {
  std::string name;
  std::string salamon;
  std::string note;
  std::vector<CatalogStructure> structures;

  LieAlgebra algebra() const { return parse_salamon(salamon, name); }
  Gcs structure(const CatalogStructure& s) const { return gcs_from_json(s.doc, algebra()); }
  const CatalogStructure& find(const std::string& structure_name) const {
    for (const auto& s : structures)
      if (s.name == structure_name) return s;
    throw PreconditionError("no structure '" + structure_name + "' in " + name);
  }
};

/// ℝ^{2m+1} ⊕ h_{2n+1}: the 2n Heisenberg generators first, then the abelian
/// summand, then the center.
inline std::string heisenberg_sum_salamon(std::size_t m, std::size_t n) {
  std::size_t dim = 2 * n + 2 * m + 2;
  std::string out;
  for (std::size_t k = 1; k < dim; ++k) out += "0,";
  if (n == 0) return out + "0";
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) out += "+";
    out += salamon_index(2 * k - 1) + salamon_index(2 * k);
  }
  return out;
}

inline LieAlgebra heisenberg_sum(std::size_t m, std::size_t n) {
  return parse_salamon(heisenberg_sum_salamon(m, n),
                       "R^" + std::to_string(2 * m + 1) + "+h" + std::to_string(2 * n + 1));
}

/// The abelian complex structure J e_{2k-1} = e_{2k} on ℝ^{2m+1} ⊕ h_{2n+1}.
inline Json heisenberg_sum_complex(std::size_t m, std::size_t n) {
  Json j = Json::object();
  for (std::size_t k = 1; 2 * k <= 2 * n + 2 * m + 2; ++k)
    j["e" + std::to_string(2 * k - 1)] = "e" + std::to_string(2 * k);
  return {{"complex", j}};
}

/// Whether phi (columns: images of the basis of a in the basis of b) is a
/// Lie algebra isomorphism.
inline bool is_isomorphism(const LieAlgebra& a, const LieAlgebra& b, const CMatrix& phi) {
  std::size_t n = a.dim();
  if (b.dim() != n || phi.rows() != n || phi.cols() != n || rank(phi) != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector lhs = phi.apply(a.bracket(unit_vector(n, i), unit_vector(n, j)));
      Vector rhs = b.bracket(phi.col(i), phi.col(j));
      if (lhs != rhs) return false;
    }
  return true;
}

/// e_4 ↦ −f_4, e_5 ↦ f_6, e_6 ↦ −f_5: the vector side of the dual change
/// e^4 → −e^4, e^5 → −e^6, e^6 → e^5 relating the two stored presentations
/// of the 3-step algebra.
inline CMatrix three_step_rebasing() {
  CMatrix p(6, 6);
  for (std::size_t i = 0; i < 3; ++i) p(i, i) = Scalar(1);
  p(3, 3) = Scalar(-1);
  p(5, 4) = Scalar(1);
  p(4, 5) = Scalar(-1);
  return p;
}

namespace detail {

inline CatalogStructure st(std::string name, std::string note, Json doc, Expectation e) {
  return {std::move(name), std::move(note), std::move(doc), e};
}

inline Json cx(std::initializer_list<std::pair<const char*, const char*>> images) {
  Json j = Json::object();
  for (auto [a, b] : images) j[a] = b;
  return {{"complex", j}};
}

inline Json sympl(const char* omega) { return {{"symplectic", omega}}; }

inline Json components(std::initializer_list<std::pair<const char*, const char*>> images, const char* b,
                       const char* pi) {
  Json j = Json::object();
  for (auto [x, y] : images) j[x] = y;
  return {{"J", j}, {"B", b}, {"Pi", pi}};
}

}  // namespace detail

/// The bundled corpus. Expected verdicts are data; `verify_catalog`
/// recomputes every one of them.
inline std::vector<CatalogEntry> catalog() {
  using detail::components;
  using detail::cx;
  using detail::st;
  using detail::sympl;
  const auto semi = Verdict::SemiAbelian;
  const auto impossible = Verdict::Impossible;
  std::vector<CatalogEntry> c;

  c.push_back({"R4", "0,0,0,0", "abelian", {
      st("complex", "standard complex structure", cx({{"e1", "e2"}, {"e3", "e4"}}), {true, 2, semi, true}),
      st("symplectic", "standard symplectic form", sympl("E1^E2 + E3^E4"), {true, 0, semi, {}}),
      st("type-one", "complex on e1,e2 and symplectic on e3,e4", components({{"e1", "e2"}}, "E3^E4", "e3^e4"),
         {true, 1, semi, {}}),
  }});

  c.push_back({"R+h3", "0,0,0,12", "Kodaira surface algebra", {
      st("kodaira", "primary Kodaira surface complex structure", cx({{"e1", "e2"}, {"e3", "e4"}}),
         {true, 2, semi, true}),
      st("type-one", "J on e1,e2 with B = e^34 and Pi = e_34; 𝒥e3 = e^4, 𝒥e4 = -e^3",
         components({{"e1", "e2"}}, "E3^E4", "e3^e4"), {true, 1, semi, {}}),
      st("symplectic", "symplectic form", sympl("E1^E4 + E2^E3"), {true, 0, semi, {}}),
  }});

  c.push_back({"filiform4", "0,0,12,13", "admits no semi-abelian structure", {
      st("type-one", "type-one structure whose forced K admits no complement",
         components({{"e1", "e2"}}, "E3^E4", "e3^e4"), {true, 1, impossible, {}}),
      st("symplectic", "symplectic form; the closed directions are forced", sympl("E2^E3 + E1^E4"),
         {true, 0, impossible, {}}),
      st("almost-complex", "almost complex structure with nonzero Nijenhuis tensor", cx({{"e1", "e2"}, {"e3", "e4"}}),
         {false, {}, {}, {}}),
  }});

  c.push_back({"R3+h3", "0,0,0,0,0,12", "product of a Kodaira surface algebra with R^2", {
      st("complex", "abelian complex structure", heisenberg_sum_complex(1, 1), {true, 3, semi, true}),
  }});

  c.push_back({"R+h5", "0,0,0,0,0,12+34", "", {
      st("complex", "abelian complex structure", heisenberg_sum_complex(0, 2), {true, 3, semi, true}),
      st("type-two", "J on e1..e4 with B = e^56 and Pi = e_56; 𝒥e6 = -e^5, 𝒥e5 = e^6",
         components({{"e1", "e2"}, {"e3", "e4"}}, "E5^E6", "e5^e6"), {true, 2, semi, {}}),
  }});

  c.push_back({"h3+h3", "0,0,0,0,12,34", "", {
      st("complex", "abelian complex structure", cx({{"e1", "e2"}, {"e3", "e4"}, {"e5", "e6"}}),
         {true, 3, semi, true}),
  }});

  c.push_back({"L6,2a", "0,0,0,0,13+42,14+23", "", {
      st("complex", "abelian complex structure", cx({{"e1", "e2"}, {"e4", "e3"}, {"e5", "e6"}}),
         {true, 3, semi, true}),
  }});

  c.push_back({"L6,2b", "0,0,0,0,12,14+23", "", {
      st("complex", "abelian complex structure", cx({{"e1", "e2"}, {"e4", "e3"}, {"e5", "e6"}}),
         {true, 3, semi, true}),
  }});

  c.push_back({"three-step", "0,0,0,12,14+23,13+42", "3-step algebra", {
      st("complex", "abelian complex structure transported from the rebased presentation",
         cx({{"e1", "e2"}, {"e3", "-e4"}, {"e5", "e6"}}), {true, 3, semi, true}),
  }});

  c.push_back({"three-step-rebased", "0,0,0,-12,31+42,41-32",
               "same algebra after e^4 -> -e^4, e^5 -> -e^6, e^6 -> e^5", {
      st("complex", "abelian complex structure Je1=e2, Je3=e4, Je5=e6", cx({{"e1", "e2"}, {"e3", "e4"}, {"e5", "e6"}}),
         {true, 3, semi, true}),
      st("poisson", "holomorphic Poisson bivector T2^T3 with T2 = (e3 - i e4)/2, T3 = (e5 - i e6)/2",
         Json{{"complex", {{"e1", "e2"}, {"e3", "e4"}, {"e5", "e6"}}}, {"poisson", "1/4 (e3 - i e4)^(e5 - i e6)"}},
         {true, 1, Verdict::NotFoundInPool, {}}),
  }});

  c.push_back({"L6,3", "0,0,0,0,12,14+25", "", {
      st("symplectic", "symplectic form; b = <e2,e3,e4>, h = <e1,e5,e6>", sympl("E1^E3 + E2^E6 + E4^E5"),
         {true, 0, semi, {}}),
  }});

  c.push_back({"L6,4", "0,0,0,0,12,13", "no abelian complex structure", {
      st("complex", "nilpotent complex structure Je1=e4, Je2=e3, Je5=e6", cx({{"e1", "e4"}, {"e2", "e3"}, {"e5", "e6"}}),
         {true, 3, semi, false}),
      st("poisson", "holomorphic Poisson bivector T2^T3 with T2 = (e2 - i e3)/2, T3 = (e5 - i e6)/2",
         Json{{"complex", {{"e1", "e4"}, {"e2", "e3"}, {"e5", "e6"}}}, {"poisson", "1/4 (e2 - i e3)^(e5 - i e6)"}},
         {true, 1, semi, {}}),
  }});

  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 1}, {0, 2}}) {
    auto g = heisenberg_sum(m, n);
    c.push_back({g.name(), heisenberg_sum_salamon(m, n), "generated", {
        st("complex", "abelian complex structure", heisenberg_sum_complex(m, n), {true, g.dim() / 2, semi, true}),
    }});
  }
  return c;
}

inline const CatalogEntry& catalog_entry(const std::vector<CatalogEntry>& c, const std::string& name) {
  for (const auto& e : c)
    if (e.name == name) return e;
  throw PreconditionError("no catalog entry '" + name + "'");
}

// ---------------------------------------------------------------------------
// four-dimensional sweep

struct SweepStructure {
  std::string label;
  Gcs gcs;
};

/// Structure families on the three 4-dimensional nilpotent algebras: stored
/// structures plus symplectic forms with small integer coefficients.
inline std::map<std::string, std::vector<SweepStructure>> four_dim_families() {
  std::map<std::string, std::vector<SweepStructure>> out;
  auto cat = catalog();
  for (const char* name : {"R4", "R+h3", "filiform4"}) {
    const auto& e = catalog_entry(cat, name);
    auto& fam = out[e.salamon];
    for (const auto& s : e.structures)
      if (s.expect.integrable) fam.push_back({s.name, e.structure(s)});
  }
  // closed forms: on R4 every 2-form, on 0,0,0,12 span{12,13,14,23,24},
  // on 0,0,12,13 span{12,13,14,23}
  const std::vector<std::pair<const char*, std::vector<const char*>>> forms = {
      {"0,0,0,0", {"E1^E3 + E2^E4", "E1^E4 + E2^E3 + E1^E2", "E1^E2 + E3^E4 + E1^E3 - E2^E4"}},
      {"0,0,0,12", {"E1^E3 + E2^E4", "E1^E4 - E2^E3 + E1^E2", "2 E1^E4 + E2^E3 + E1^E3 + E2^E4"}},
      {"0,0,12,13", {"E1^E4 + E2^E3 + E1^E2", "E1^E4 - E2^E3 + E1^E3", "2 E1^E4 + 3 E2^E3 - E1^E2 + E1^E3",
                     "-E1^E4 + E2^E3"}},
  };
  for (const auto& [alg, list] : forms) {
    auto g = parse_salamon(alg);
    for (const char* w : list) out[alg].push_back({std::string("symplectic ") + w, Gcs::from_symplectic(g, parse_form(w, 4))});
  }
  return out;
}

/// Conjugates P J0 P^{-1} of the standard J0 for P in a deterministic pool
/// of unimodular integer matrices.
inline std::vector<CMatrix> almost_complex_pool(std::size_t count, unsigned seed = 7) {
  CMatrix j0(4, 4);
  j0(1, 0) = Scalar(1);
  j0(0, 1) = Scalar(-1);
  j0(3, 2) = Scalar(1);
  j0(2, 3) = Scalar(-1);
  std::vector<CMatrix> out;
  std::uint64_t state = seed;
  auto next = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<int>((state >> 33) % 5) - 2;
  };
  while (out.size() < count) {
    CMatrix p = CMatrix::identity(4);
    for (int step = 0; step < 6; ++step) {
      // elementary row operations keep det = 1
      std::size_t r = static_cast<std::size_t>(next() + 2) % 4, s = static_cast<std::size_t>(next() + 2) % 4;
      if (r == s) continue;
      Scalar f(next());
      for (std::size_t c = 0; c < 4; ++c) p(r, c) += f * p(s, c);
    }
    out.push_back(p * j0 * inverse(p));
  }
  return out;
}

}  // namespace nilgcs
