#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <string_view>

#include "doublemat/errors.hpp"

namespace doublemat {

using cplx = std::complex<double>;

// Absolute tolerance on the idempotent components |p|, |q| below which a
// floating split scalar is treated as a zero divisor.
inline constexpr double zero_divisor_tol = 1e-12;

template <class F>
struct field_traits;

template <>
struct field_traits<double> {
  static constexpr bool is_complex = false;
  static double abs(double x) { return std::abs(x); }
  static double real_part(double x) { return x; }
  // Principal square root over the reals; undefined for negative input.
  static double sqrt(double x) {
    if (x < 0.0) {
      throw error(errc::domain_error, "sqrt of negative real component; complexification needed");
    }
    return std::sqrt(x);
  }
};

template <>
struct field_traits<cplx> {
  static constexpr bool is_complex = true;
  static double abs(const cplx& x) { return std::abs(x); }
  static double real_part(const cplx& x) { return x.real(); }
  // Principal branch, with the negative real axis pinned to +i regardless
  // of the sign of a zero imaginary part.
  static cplx sqrt(const cplx& x) {
    cplx z = (x.imag() == 0.0) ? cplx(x.real(), 0.0) : x;
    return std::sqrt(z);
  }
};

// A split number a + b*j with j^2 = +1 over the base field F (double for
// the double numbers, std::complex<double> for the double-complex numbers /
// tessarines). Stored in (a, b) coordinates; the idempotent view
// p = a + b, q = a - b is a computed projection. Multiplication is
// componentwise in the idempotent basis e = (1+j)/2, e* = (1-j)/2.
template <class F>
struct split {
  F a{};  // coefficient of 1
  F b{};  // coefficient of j

  constexpr split() = default;
  constexpr split(F a_, F b_) : a(a_), b(b_) {}
  constexpr explicit split(F a_) : a(a_), b{} {}

  static constexpr split j() { return {F(0), F(1)}; }
  static constexpr split one() { return {F(1), F(0)}; }

  F p() const { return a + b; }
  F q() const { return a - b; }

  static split from_idempotent(F p, F q) {
    return {(p + q) / F(2), (p - q) / F(2)};
  }

  // (a + bj)^* = a - bj; swaps the idempotent components.
  split conj() const { return {a, -b}; }

  bool operator==(const split&) const = default;

  split operator-() const { return {-a, -b}; }
  split operator+(const split& o) const { return {a + o.a, b + o.b}; }
  split operator-(const split& o) const { return {a - o.a, b - o.b}; }
  split operator*(const split& o) const {
    return {a * o.a + b * o.b, a * o.b + b * o.a};
  }
  split& operator+=(const split& o) { a += o.a; b += o.b; return *this; }
  split& operator-=(const split& o) { a -= o.a; b -= o.b; return *this; }
  split& operator*=(const split& o) { *this = *this * o; return *this; }
};

using split_d = split<double>;
using split_c = split<cplx>;

template <class F>
bool is_zero_divisor(const split<F>& x, double tol = zero_divisor_tol) {
  return field_traits<F>::abs(x.p()) <= tol || field_traits<F>::abs(x.q()) <= tol;
}

// Componentwise inverse (1/p, 1/q); fails on zero divisors.
template <class F>
split<F> inv(const split<F>& x, double tol = zero_divisor_tol) {
  if (is_zero_divisor(x, tol)) {
    throw error(errc::zero_divisor, "split scalar is a zero divisor, cannot invert");
  }
  return split<F>::from_idempotent(F(1) / x.p(), F(1) / x.q());
}

template <class F>
split<F> operator/(const split<F>& x, const split<F>& y) {
  return x * inv(y);
}

// Split absolute value sqrt(|p|*|q|); zero exactly on zero divisors.
template <class F>
double scabs(const split<F>& x) {
  return std::sqrt(field_traits<F>::abs(x.p()) * field_traits<F>::abs(x.q()));
}

// Lifts an analytic scalar function through the idempotent decomposition:
// f(a + bj) = (f(a+b) + f(a-b))/2 + j*(f(a+b) - f(a-b))/2.
template <class F, class Fn>
split<F> apply_analytic(Fn&& f, const split<F>& x) {
  return split<F>::from_idempotent(f(x.p()), f(x.q()));
}

// Componentwise principal square root. Over the double numbers this needs
// nonnegative idempotent components; otherwise domain_error.
template <class F>
split<F> split_sqrt(const split<F>& x) {
  return apply_analytic([](const F& c) { return field_traits<F>::sqrt(c); }, x);
}

namespace detail {

inline std::string fmt_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

inline std::string fmt_component(double x) { return fmt_real(x); }

inline std::string fmt_component(const cplx& x) {
  if (x.imag() == 0.0) return fmt_real(x.real());
  std::string s = "(" + fmt_real(x.real());
  s += (x.imag() < 0.0 || std::signbit(x.imag())) ? "-" : "+";
  s += fmt_real(std::abs(x.imag()));
  s += "i)";
  return s;
}

}  // namespace detail

// Renders "a+bj" / "a-bj"; complex components are parenthesized, e.g.
// "(1+2i)+(3-4i)j". parse_split accepts the same grammar.
template <class F>
std::string format_split(const split<F>& x) {
  std::string s = detail::fmt_component(x.a);
  std::string bs = detail::fmt_component(x.b);
  if (!bs.empty() && bs[0] == '-') {
    s += "-";
    bs.erase(0, 1);
  } else if (!bs.empty() && bs[0] == '(') {
    s += "+";
  } else {
    s += "+";
  }
  s += bs + "j";
  return s;
}

namespace detail {

struct split_parser {
  std::string_view s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= s.size();
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw error(errc::invalid_param, "parse error at offset " + std::to_string(pos) + ": " + what);
  }

  double parse_number() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    size_t digits = 0;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) {
      ++pos;
      ++digits;
    }
    if (digits == 0) fail("expected number");
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
      ++pos;
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    return std::stod(std::string(s.substr(start, pos - start)));
  }

  // "(re)", "(re+imi)", "(re-imi)", "(imi)"
  cplx parse_paren() {
    if (peek() != '(') fail("expected '('");
    ++pos;
    double first = parse_number();
    skip_ws();
    if (pos < s.size() && s[pos] == 'i') {
      ++pos;
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return {0.0, first};
    }
    if (peek() == ')') {
      ++pos;
      return {first, 0.0};
    }
    char sign = peek();
    if (sign != '+' && sign != '-') fail("expected sign in complex component");
    ++pos;
    double im = parse_number();
    if (sign == '-') im = -im;
    if (peek() != 'i') fail("expected 'i'");
    ++pos;
    if (peek() != ')') fail("expected ')'");
    ++pos;
    return {first, im};
  }

  // coefficient ['j'] with an optional leading sign already consumed by caller
  void parse_term(cplx& a, cplx& b) {
    double outer_sign = 1.0;
    char c = peek();
    if (c == '+' || c == '-') {
      outer_sign = (c == '-') ? -1.0 : 1.0;
      ++pos;
      c = peek();
    }
    cplx coef;
    bool have_coef = false;
    if (c == '(') {
      coef = parse_paren();
      have_coef = true;
    } else if (c == 'j') {
      coef = 1.0;
    } else {
      coef = parse_number();
      have_coef = true;
    }
    coef *= outer_sign;
    if (peek() == 'j') {
      ++pos;
      b += coef;
    } else if (have_coef) {
      a += coef;
    } else {
      fail("dangling sign");
    }
  }
};

}  // namespace detail

// Parses the "a+bj" grammar produced by format_split into a double-complex
// split scalar; real inputs yield zero imaginary parts.
inline split_c parse_split(std::string_view text) {
  detail::split_parser p{text};
  cplx a{}, b{};
  p.parse_term(a, b);
  while (!p.eof()) p.parse_term(a, b);
  return {a, b};
}

inline split_d parse_split_real(std::string_view text) {
  split_c x = parse_split(text);
  if (x.a.imag() != 0.0 || x.b.imag() != 0.0) {
    throw error(errc::invalid_param, "complex component in real split scalar");
  }
  return {x.a.real(), x.b.real()};
}

}  // namespace doublemat
