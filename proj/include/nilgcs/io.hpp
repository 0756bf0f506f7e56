#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilgcs/semiabelian.hpp"

namespace nilgcs {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// scalars, matrices, elements

/// A scalar given as a JSON number or a string such as "-1/2", "3/4 i" or
/// "1 - 2 i".
inline Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Scalar(Rational(j.get<long long>()));
  if (!j.is_string()) throw InputError("expected a rational string");
  auto s = j.get<std::string>();
  Multivector m = parse_expression(s, 1, [](std::string_view, std::size_t) { return std::nullopt; });
  if (m.is_zero()) return Scalar(0);
  if (m.degree() != 0) throw InputError("expected a scalar, got '" + s + "'");
  return m.coefficient(0);
}

inline Json scalar_to_json(const Scalar& s) { return to_string(s); }

inline CMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw InputError("matrix needs " + std::to_string(rows) + " rows");
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw InputError("matrix row " + std::to_string(r + 1) + " needs " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(j[r][c]);
  }
  return m;
}

inline Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

inline Json subspace_to_json(const CourantDouble& d, const Subspace& s) {
  Json out = Json::array();
  for (const auto& v : s.basis_vectors()) out.push_back(d.format(v));
  return out;
}

inline Subspace subspace_from_json(const CourantDouble& d, const Json& j) {
  if (!j.is_array()) throw InputError("expected a list of elements");
  std::vector<Vector> v;
  for (const auto& e : j) v.push_back(d.parse_element(e.get<std::string>()));
  return Subspace::span(d.dim(), v);
}

// ---------------------------------------------------------------------------
// algebras

/// A Salamon tuple, or a path to an algebra file whose first entry is used.
inline LieAlgebra load_algebra(const std::string& text) {
  std::ifstream in(text);
  if (in) {
    auto all = parse_algebra_file(in);
    if (all.empty()) throw InputError("algebra file '" + text + "' is empty");
    return all.front();
  }
  return parse_salamon(text);
}

// ---------------------------------------------------------------------------
// structures

namespace detail {

/// J given as an n x n matrix or as images {"e1": "e2", ...}.
inline CMatrix j_from_json(const LieAlgebra& g, const Json& j) {
  std::size_t n = g.dim();
  if (j.is_array()) return matrix_from_json(j, n, n);
  if (!j.is_object()) throw InputError("J must be a matrix or a map of images");
  std::vector<std::pair<std::size_t, Vector>> im;
  for (const auto& [key, val] : j.items()) {
    Multivector src = parse_multivector_on_g(key, n);
    if (src.terms().size() != 1 || src.degree() != 1 || !src.terms().begin()->second.is_one())
      throw InputError("image keys must be basis vectors, got '" + key + "'");
    Multivector img = parse_multivector_on_g(val.get<std::string>(), n);
    if (!img.is_zero() && img.degree() != 1) throw InputError("image of " + key + " is not a vector");
    im.push_back({static_cast<std::size_t>(std::countr_zero(src.terms().begin()->first)),
                  img.is_zero() ? Vector(n) : img.to_vector()});
  }
  return endomorphism_from_images(n, im);
}

/// A 2-tensor as an antisymmetric matrix or an expression in `family`.
inline Multivector two_tensor_from_json(const Json& j, std::size_t n, const char* family) {
  if (j.is_string()) {
    Multivector m = parse_expression(j.get<std::string>(), n, single_family(family));
    if (!m.is_zero() && m.degree() != 2) throw InputError("expected a 2-tensor");
    return m;
  }
  CMatrix m = matrix_from_json(j, n, n);
  if (!(m.transpose() == Scalar(-1) * m)) throw InputError("2-tensor matrix must be antisymmetric");
  return two_tensor_from_matrix(m);
}

}  // namespace detail

/// Parses a GCS document. The algebra comes from the document unless given.
inline Gcs gcs_from_json(const Json& doc, const std::optional<LieAlgebra>& given = std::nullopt) {
  if (!doc.is_object()) throw InputError("structure document must be an object");
  std::optional<LieAlgebra> alg = given;
  if (!alg) {
    if (!doc.contains("algebra")) throw InputError("structure document lacks \"algebra\"");
    alg = parse_salamon(doc["algebra"].get<std::string>());
  }
  const LieAlgebra& g = *alg;
  std::size_t n = g.dim();
  if (doc.contains("symplectic")) return Gcs::from_symplectic(g, detail::two_tensor_from_json(doc["symplectic"], n, "E"));
  if (doc.contains("complex")) {
    const Json& c = doc["complex"];
    ComplexStructure cs(g, detail::j_from_json(g, c.is_object() && c.contains("J") ? c["J"] : c));
    if (!doc.contains("poisson")) return Gcs::from_complex(cs);
    Multivector lambda = parse_multivector_on_g(doc["poisson"].get<std::string>(), n);
    return Gcs::from_holomorphic_poisson(cs, lambda);
  }
  if (doc.contains("J") && doc["J"].is_array() && doc["J"].size() == 2 * n && !doc.contains("B"))
    return Gcs::from_matrix(g, matrix_from_json(doc["J"], 2 * n, 2 * n));
  CMatrix j = doc.contains("J") ? detail::j_from_json(g, doc["J"]) : CMatrix(n, n);
  Multivector b = doc.contains("B") ? detail::two_tensor_from_json(doc["B"], n, "E") : Multivector(n);
  Multivector pi = doc.contains("Pi") ? detail::two_tensor_from_json(doc["Pi"], n, "e") : Multivector(n);
  return Gcs::from_components(g, j, b, pi);
}

/// Canonical component form {"algebra", "J", "B", "Pi"}.
inline Json gcs_to_json(const Gcs& g) {
  Json out;
  out["algebra"] = g.algebra().to_salamon();
  out["J"] = matrix_to_json(g.j_block());
  out["B"] = matrix_to_json(two_tensor_matrix(g.b_form()));
  out["Pi"] = matrix_to_json(two_tensor_matrix(g.pi_bivector()));
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON in '") + path + "': " + e.what());
  }
}

/// Pool file: a JSON list of double elements such as ["e1 - E2", "E3"].
inline std::vector<DoubleElement> pool_from_json(const CourantDouble& d, const Json& j) {
  if (!j.is_array()) throw InputError("pool must be a list of elements");
  std::vector<DoubleElement> pool;
  for (const auto& e : j) pool.push_back(d.parse_element(e.get<std::string>()));
  return pool;
}

// ---------------------------------------------------------------------------
// reports

inline Json cohomology_to_json(const Cohomology& h, const SymbolNamer& names) {
  Json out;
  out["degree"] = h.degree;
  out["dim"] = h.dim;
  Json reps = Json::array();
  for (const auto& r : h.representatives) reps.push_back(format_multivector(r, names));
  out["representatives"] = reps;
  return out;
}

inline Json certificate_to_json(const ComplementResult& r) {
  Json c;
  c["system_rank"] = r.system_rank;
  c["augmented_rank"] = r.augmented_rank;
  return c;
}

inline Json verdict_to_json(const CourantDouble& d, const SemiAbelianVerdict& v) {
  Json out;
  out["status"] = to_string(v.status);
  if (v.status == Verdict::SemiAbelian) {
    out["pair"] = {{"A", subspace_to_json(d, v.a_pair)}, {"K", subspace_to_json(d, v.k_pair)}};
    out["ell_decomposition"] = {{"a", subspace_to_json(d, v.a_ell)}, {"k", subspace_to_json(d, v.k_ell)}};
  } else if (v.status == Verdict::Impossible && v.k_pair.ambient_dim() == d.dim()) {
    out["pair"] = {{"A", Json::array()}, {"K", subspace_to_json(d, v.k_pair)}};
  }
  if (v.certificate) out["certificate"] = certificate_to_json(*v.certificate);
  if (!v.reason.empty()) out["reason"] = v.reason;
  return out;
}

}  // namespace nilgcs
