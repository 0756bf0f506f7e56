#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "nilgcs/exterior.hpp"

namespace nilgcs {

/// Maps a symbol such as "e3" or "E4" to the generator index it denotes, or
/// nullopt if the symbol is unknown in the current space.
using SymbolResolver = std::function<std::optional<std::size_t>(std::string_view prefix, std::size_t index)>;

/// Inverse of SymbolResolver: the printed name of generator k.
using SymbolNamer = std::function<std::string(std::size_t)>;

namespace detail {

// expr   := term (('+'|'-') term)*
// term   := factor (('*'|'^')? factor)*      juxtaposition multiplies
// factor := number | 'i' | symbol | '(' expr ')' | '-' factor
// Every product is the wedge product; scalars are degree-0 elements.
class ExprParser {
public:
  ExprParser(std::string_view text, std::size_t dim, const SymbolResolver& resolve)
      : s_(text), dim_(dim), resolve_(resolve) {}

  Multivector parse() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    Multivector v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
  }

  Multivector expr() {
    Multivector v = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        v += term();
      } else if (peek('-')) {
        ++pos_;
        v -= term();
      } else {
        return v;
      }
    }
  }

  Multivector term() {
    Multivector v = factor();
    for (;;) {
      if (peek('*') || peek('^')) {
        ++pos_;
        v = wedge(v, factor());
      } else if (starts_factor()) {
        v = wedge(v, factor());
      } else {
        return v;
      }
    }
  }

  Multivector factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (c == '+') {
      ++pos_;
      return factor();
    }
    if (c == '(') {
      ++pos_;
      Multivector v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      Rational q;
      try {
        q = parse_rational(s_.substr(start, pos_ - start));
      } catch (const ParseError& e) {
        throw ParseError(std::string("bad number '") + std::string(s_.substr(start, pos_ - start)) + "'", start);
      }
      return Multivector::scalar(dim_, Scalar(q));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string_view prefix = s_.substr(start, pos_ - start);
      std::size_t dstart = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (dstart == pos_) {
        if (prefix == "i") return Multivector::scalar(dim_, Scalar::i());
        pos_ = start;
        fail("unknown symbol '" + std::string(prefix) + "'");
      }
      std::size_t index = std::stoul(std::string(s_.substr(dstart, pos_ - dstart)));
      auto k = resolve_(prefix, index);
      if (!k) {
        pos_ = start;
        fail("unknown symbol '" + std::string(s_.substr(start, dstart - start + (pos_ - dstart))) + "'");
      }
      if (*k >= dim_) {
        pos_ = start;
        fail("symbol index out of range");
      }
      return Multivector::generator(dim_, *k);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t dim_;
  const SymbolResolver& resolve_;
};

inline bool index_seq_less(Mask a, Mask b) {
  if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
  auto ia = mask_indices(a), ib = mask_indices(b);
  return ia < ib;
}

}  // namespace detail

/// Parses an exterior-algebra expression such as "E1^E3 + 1/2*E2^E6" or
/// "e1 - i*E2" into an element over `dim` generators.
inline Multivector parse_expression(std::string_view text, std::size_t dim, const SymbolResolver& resolve) {
  return detail::ExprParser(text, dim, resolve).parse();
}

/// Resolver for a single family of symbols <prefix>1 .. <prefix>dim.
inline SymbolResolver single_family(std::string prefix) {
  return [prefix = std::move(prefix)](std::string_view p, std::size_t k) -> std::optional<std::size_t> {
    if (p != prefix || k == 0) return std::nullopt;
    return k - 1;
  };
}

inline SymbolNamer family_namer(std::string prefix) {
  return [prefix = std::move(prefix)](std::size_t k) { return prefix + std::to_string(k + 1); };
}

/// Coefficient as it must appear in front of a monomial so that the result
/// parses back: complex values with both parts get parentheses.
inline std::string coefficient_text(const Scalar& c) {
  std::string s = to_string(c);
  if (!c.re().is_zero() && !c.im().is_zero()) return "(" + s + ")";
  return s;
}

/// Renders x as a signed sum of monomials "c*X1^X2", sorted by degree and then
/// lexicographically on indices. The output re-parses to x.
inline std::string format_multivector(const Multivector& x, const SymbolNamer& name) {
  if (x.is_zero()) return "0";
  std::vector<std::pair<Mask, Scalar>> terms(x.terms().begin(), x.terms().end());
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return detail::index_seq_less(a.first, b.first); });
  std::string out;
  for (const auto& [m, c] : terms) {
    std::string mono;
    for (int k : mask_indices(m)) mono += (mono.empty() ? "" : "^") + name(static_cast<std::size_t>(k));
    bool negative = c.im().is_zero() ? c.re() < 0 : (c.re().is_zero() && c.im() < 0);
    Scalar a = negative ? -c : c;
    std::string body;
    if (mono.empty())
      body = to_string(a);
    else if (a.is_one())
      body = mono;
    else
      body = coefficient_text(a) + "*" + mono;
    if (out.empty())
      out = negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out;
}

}  // namespace nilgcs
