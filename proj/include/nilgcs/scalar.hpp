#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "nilgcs/error.hpp"

namespace nilgcs {

/// Arbitrary-precision reduced fraction; denominators are always positive.
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) { return q.str(); }

/// Parses "p", "-p" or "p/q". Whitespace is not allowed inside the literal.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw ParseError("bad rational literal '" + std::string(text) + "'", 0); };
  if (text.empty()) fail();
  std::size_t slash = text.find('/');
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (slash == std::string_view::npos) {
    if (!digits_ok(text, true)) fail();
    std::string s(text[0] == '+' ? text.substr(1) : text);
    return Rational(boost::multiprecision::cpp_int(s));
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) fail();
  boost::multiprecision::cpp_int d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", slash + 1);
  std::string n(num[0] == '+' ? num.substr(1) : num);
  return Rational(boost::multiprecision::cpp_int(n), d);
}

/// Exact complex scalar a + b i with rational parts. This is the only scalar
/// type the engine computes with; real data simply has a zero imaginary part.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (o.im_ == 0) {
      re_ *= o.re_;
      im_ *= o.re_;
      return *this;
    }
    if (im_ == 0) {
      im_ = re_ * o.im_;
      re_ *= o.re_;
      return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (o.im_ == 0) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  /// Total order (real part first) used only for canonical sorting.
  friend bool lex_less(const GaussianRational& a, const GaussianRational& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

private:
  Rational re_{0};
  Rational im_{0};
};

using Scalar = GaussianRational;

/// Renders "p/q", "r/s i", "p/q+r/s i"; "i" and "-i" for unit imaginary parts.
inline std::string to_string(const GaussianRational& z) {
  const Rational& a = z.re();
  const Rational& b = z.im();
  if (b == 0) return a.str();
  std::string im;
  if (b == 1)
    im = "i";
  else if (b == -1)
    im = "-i";
  else
    im = b.str() + " i";
  if (a == 0) return im;
  if (b > 0) return a.str() + "+" + im;
  return a.str() + im;  // im already carries its '-'
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << to_string(z); }

}  // namespace nilgcs

template <>
struct std::hash<nilgcs::GaussianRational> {
  std::size_t operator()(const nilgcs::GaussianRational& z) const {
    std::hash<std::string> h;
    return h(z.re().str()) ^ (h(z.im().str()) << 1);
  }
};
