#pragma once

#include <array>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nilgcs/expr.hpp"
#include "nilgcs/exterior.hpp"

namespace nilgcs {

/// A Jacobi-violating triple (0-based, i < j < k) with its nonzero cyclic sum.
struct JacobiViolation {
  std::size_t i, j, k;
  Vector cyclic_sum;
};

/// Chain g = g^1 ⊇ g^2 ⊇ ... ; `step` is set when the chain reaches 0.
struct CentralSeries {
  std::vector<Subspace> chain;
  std::optional<std::size_t> step;
};

/// Representatives are kernel vectors independent modulo the image.
struct Cohomology {
  std::size_t degree = 0;
  std::size_t dim = 0;
  std::vector<Multivector> representatives;
};

/// Cohomology of a finite cochain complex given by its two adjacent
/// differentials `prev`: C^{k-1} -> C^k and `next`: C^k -> C^{k+1}.
inline Cohomology cohomology_from_matrices(std::size_t degree, std::size_t space_dim, std::size_t generators,
                                           const CMatrix& prev, const CMatrix& next) {
  Cohomology h;
  h.degree = degree;
  Subspace ker = next.rows() == 0 ? Subspace::full(space_dim) : kernel(next);
  Subspace img = prev.cols() == 0 ? Subspace(space_dim) : Subspace::span_rows(prev.transpose());
  h.dim = ker.dim() - img.dim();
  SubsetIndex idx(generators, degree);
  Subspace acc = img;
  for (const auto& v : ker.basis_vectors()) {
    if (acc.contains(v)) continue;
    acc = acc + Subspace::span(space_dim, {v});
    h.representatives.push_back(Multivector::from_dense(generators, idx, v));
  }
  if (h.representatives.size() != h.dim) throw InvariantViolation("image is not contained in the kernel");
  return h;
}

/// Real nilpotent-candidate Lie algebra on basis e_1..e_n given by the
/// differentials de^k of the dual basis. The bracket is recovered from
/// dω(X,Y) = -ω([X,Y]) with e^{ij}(e_i,e_j) = 1, so de^k = e^{12} gives
/// [e_1,e_2] = -e_k.
class LieAlgebra {
public:
  LieAlgebra() = default;

  /// From the differentials of e^1..e^n (each a 2-form in n generators).
  static LieAlgebra from_differentials(std::vector<Multivector> d, std::string name = {}, bool check = true) {
    LieAlgebra g;
    g.n_ = d.size();
    g.name_ = std::move(name);
    for (const auto& f : d) {
      if (f.dim() != g.n_) throw DimensionError("differential has the wrong number of generators");
      for (const auto& [m, c] : f.terms()) {
        if (popcount(m) != 2) throw PreconditionError("differential of a 1-form must be a 2-form");
        if (!c.is_real()) throw PreconditionError("structure constants must be real");
      }
    }
    g.d_ = std::move(d);
    g.build_table();
    if (check) g.require_jacobi();
    return g;
  }

  /// From brackets of basis vectors: table(a,b) = [e_a, e_b].
  static LieAlgebra from_brackets(const BracketTable& t, std::string name = {}, bool check = true) {
    std::size_t n = t.dim();
    std::vector<Multivector> d(n, Multivector(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t k = 0; k < n; ++k)
          if (!t(a, b)[k].is_zero()) d[k].add_term((Mask(1) << a) | (Mask(1) << b), -t(a, b)[k]);
    return from_differentials(std::move(d), std::move(name), check);
  }

  std::size_t dim() const noexcept { return n_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  const BracketTable& table() const noexcept { return table_; }
  const Multivector& d_generator(std::size_t k) const { return d_.at(k); }
  const std::vector<Multivector>& differentials() const noexcept { return d_; }

  Vector bracket(std::span<const Scalar> x, std::span<const Scalar> y) const { return table_.bracket(x, y); }

  std::vector<JacobiViolation> jacobi_violations() const {
    std::vector<JacobiViolation> out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        for (std::size_t k = j + 1; k < n_; ++k) {
          auto ei = unit_vector(n_, i), ej = unit_vector(n_, j), ek = unit_vector(n_, k);
          Vector s = bracket(ei, table_(j, k));
          s = add(s, bracket(ej, table_(k, i)));
          s = add(s, bracket(ek, table_(i, j)));
          if (!is_zero(s)) out.push_back({i, j, k, s});
        }
    return out;
  }
  bool satisfies_jacobi() const { return jacobi_violations().empty(); }

  bool is_abelian() const { return table_.is_abelian(); }

  /// d on a form of any degree (odd derivation extending de^k).
  Multivector d(const Multivector& form) const {
    if (form.dim() != n_) throw DimensionError("form has the wrong number of generators");
    return apply_odd_derivation(form, [this](std::size_t k) -> const Multivector& { return d_[k]; });
  }

  /// Matrix of d: Λ^k g* -> Λ^{k+1} g* in lexicographic bases.
  CMatrix ce_differential(std::size_t k) const {
    if (k > n_) throw PreconditionError("degree out of range");
    if (k == n_) return CMatrix(0, 1);
    return matrix_of(n_, k, k + 1, [this](const Multivector& f) { return d(f); });
  }

  Cohomology ce_cohomology(std::size_t k) const {
    if (k > n_) throw PreconditionError("degree out of range");
    SubsetIndex idx(n_, k);
    CMatrix prev = k == 0 ? CMatrix(idx.size(), 0) : ce_differential(k - 1);
    CMatrix next = k == n_ ? CMatrix(0, idx.size()) : ce_differential(k);
    return cohomology_from_matrices(k, idx.size(), n_, prev, next);
  }

  std::vector<std::size_t> betti_numbers() const {
    std::vector<std::size_t> b;
    for (std::size_t k = 0; k <= n_; ++k) b.push_back(ce_cohomology(k).dim);
    return b;
  }

  CentralSeries lower_central_series() const {
    CentralSeries s;
    Subspace cur = Subspace::full(n_);
    s.chain.push_back(cur);
    for (std::size_t guard = 0; guard <= n_; ++guard) {
      if (cur.dim() == 0) {
        s.step = s.chain.size() - 1;
        return s;
      }
      std::vector<Vector> gens;
      for (std::size_t a = 0; a < n_; ++a)
        for (const auto& v : cur.basis_vectors()) {
          Vector b = bracket(unit_vector(n_, a), v);
          if (!is_zero(b)) gens.push_back(std::move(b));
        }
      Subspace next = Subspace::span(n_, gens);
      if (next == cur) return s;  // stalls at a nonzero ideal: not nilpotent
      cur = next;
      s.chain.push_back(cur);
    }
    return s;
  }

  std::string to_salamon() const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.n_ == b.n_ && a.d_ == b.d_; }

private:
  void build_table() {
    table_ = BracketTable(n_);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = a + 1; b < n_; ++b) {
        Vector v(n_);
        Mask m = (Mask(1) << a) | (Mask(1) << b);
        for (std::size_t k = 0; k < n_; ++k) v[k] = -d_[k].coefficient(m);
        table_.set(a, b, v);
      }
  }
  void require_jacobi() const {
    auto v = jacobi_violations();
    if (!v.empty()) {
      const auto& f = v.front();
      throw NotALieAlgebra("Jacobi identity fails on (e" + std::to_string(f.i + 1) + ", e" + std::to_string(f.j + 1) +
                               ", e" + std::to_string(f.k + 1) + ")",
                           static_cast<int>(f.i + 1), static_cast<int>(f.j + 1), static_cast<int>(f.k + 1));
    }
  }

  std::size_t n_ = 0;
  std::string name_;
  std::vector<Multivector> d_;
  BracketTable table_;
};

// ---------------------------------------------------------------------------
// Salamon notation
//
//   tuple := ['('] entry (',' entry)* [')']
//   entry := '0' | ['-'|'+'] term (('+'|'-') term)*
//   term  := [rational (' '|'*')] atom atom
//   atom  := digit | '[' number ']'
//
// Entry j is de^j; the term "ab" stands for e^a ∧ e^b (so "42" = -e^{24}).

namespace detail {

class SalamonParser {
public:
  explicit SalamonParser(std::string_view s) : s_(s) {}

  std::vector<std::vector<std::tuple<Rational, std::size_t, std::size_t, std::size_t>>> parse() {
    skip();
    bool paren = false;
    if (pos_ < s_.size() && s_[pos_] == '(') {
      paren = true;
      ++pos_;
    }
    std::vector<std::vector<std::tuple<Rational, std::size_t, std::size_t, std::size_t>>> entries;
    for (;;) {
      entries.push_back(entry());
      skip();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    if (paren) {
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      skip();
    }
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return entries;
  }

private:
  [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, pos_); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }

  // (coefficient, index a, index b, text position), indices 1-based
  std::vector<std::tuple<Rational, std::size_t, std::size_t, std::size_t>> entry() {
    skip();
    std::vector<std::tuple<Rational, std::size_t, std::size_t, std::size_t>> terms;
    if (pos_ < s_.size() && s_[pos_] == '0') {
      std::size_t save = pos_++;
      skip();
      if (pos_ == s_.size() || s_[pos_] == ',' || s_[pos_] == ')') return terms;
      pos_ = save;
    }
    int sign = 1;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      sign = s_[pos_] == '-' ? -1 : 1;
      ++pos_;
    }
    for (;;) {
      terms.push_back(term(sign));
      skip();
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        continue;
      }
      return terms;
    }
  }

  std::tuple<Rational, std::size_t, std::size_t, std::size_t> term(int sign) {
    skip();
    std::size_t start = pos_;
    Rational coeff(sign);
    // a coefficient is a rational followed by a blank or '*' before the atoms
    std::size_t p = pos_;
    while (p < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[p])) || s_[p] == '/')) ++p;
    std::size_t q = p;
    while (q < s_.size() && (s_[q] == ' ' || s_[q] == '*')) ++q;
    bool atoms_follow = q > p && q < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[q])) || s_[q] == '[');
    if (p > pos_ && atoms_follow) {
      try {
        coeff *= parse_rational(s_.substr(pos_, p - pos_));
      } catch (const ParseError&) {
        fail("bad coefficient");
      }
      pos_ = p;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') ++pos_;
      skip();
    }
    std::size_t a = atom(), b = atom();
    return {coeff, a, b, start};
  }

  std::size_t atom() {
    if (pos_ >= s_.size()) fail("expected an index");
    if (s_[pos_] == '[') {
      ++pos_;
      std::size_t st = pos_;
      while (at_digit()) ++pos_;
      if (st == pos_ || pos_ >= s_.size() || s_[pos_] != ']') fail("malformed bracketed index");
      std::size_t v = std::stoul(std::string(s_.substr(st, pos_ - st)));
      ++pos_;
      return v;
    }
    if (!at_digit()) fail("expected an index");
    return static_cast<std::size_t>(s_[pos_++] - '0');
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a Salamon tuple; throws ParseError on syntax errors or indices out
/// of range and NotALieAlgebra (unless `check` is false) on Jacobi failure.
inline LieAlgebra parse_salamon(std::string_view text, std::string name = {}, bool check = true) {
  auto entries = detail::SalamonParser(text).parse();
  std::size_t n = entries.size();
  if (n > kMaxGenerators) throw DimensionError("algebra dimension exceeds 32");
  std::vector<Multivector> d(n, Multivector(n));
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& [c, a, b, pos] : entries[k]) {
      if (a == 0 || b == 0 || a > n || b > n) throw ParseError("index out of range", pos);
      if (a == b) throw ParseError("repeated index in a term", pos);
      Multivector t(n);
      t.add_term((Mask(1) << (a - 1)) | (Mask(1) << (b - 1)), a < b ? Scalar(c) : Scalar(-c));
      d[k] += t;
    }
  return LieAlgebra::from_differentials(std::move(d), std::move(name), check);
}

inline std::string salamon_index(std::size_t k) {
  return k < 10 ? std::to_string(k) : "[" + std::to_string(k) + "]";
}

inline std::string LieAlgebra::to_salamon() const {
  std::string out;
  for (std::size_t k = 0; k < n_; ++k) {
    if (k) out += ",";
    if (d_[k].is_zero()) {
      out += "0";
      continue;
    }
    std::vector<std::pair<Mask, Scalar>> terms(d_[k].terms().begin(), d_[k].terms().end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return detail::index_seq_less(a.first, b.first); });
    bool first = true;
    for (const auto& [m, c] : terms) {
      auto idx = mask_indices(m);
      Rational q = c.re();
      if (q < 0) {
        out += "-";
        q = -q;
      } else if (!first) {
        out += "+";
      }
      if (q != 1) out += q.str() + " ";
      out += salamon_index(static_cast<std::size_t>(idx[0]) + 1) + salamon_index(static_cast<std::size_t>(idx[1]) + 1);
      first = false;
    }
  }
  return out;
}

/// One algebra per line, optional "name:" prefix, '#' starts a comment.
inline std::vector<LieAlgebra> parse_algebra_file(std::istream& in) {
  std::vector<LieAlgebra> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::string name;
    std::string body = line;
    if (auto c = line.find(':'); c != std::string::npos) {
      name = line.substr(0, c);
      name.erase(0, name.find_first_not_of(" \t"));
      name.erase(name.find_last_not_of(" \t") + 1);
      body = line.substr(c + 1);
    }
    try {
      out.push_back(parse_salamon(body, name));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), e.position());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// naming of basis elements of g (e1..en) and g* (E1..En)

inline SymbolNamer vector_namer() { return family_namer("e"); }
inline SymbolNamer form_namer() { return family_namer("E"); }

/// A k-form on g written with symbols E1..En, e.g. "E1^E3 + E2^E6".
inline Multivector parse_form(std::string_view text, std::size_t n) {
  return parse_expression(text, n, single_family("E"));
}
/// A multivector on g written with symbols e1..en, e.g. "e3^e4".
inline Multivector parse_multivector_on_g(std::string_view text, std::size_t n) {
  return parse_expression(text, n, single_family("e"));
}

}  // namespace nilgcs
