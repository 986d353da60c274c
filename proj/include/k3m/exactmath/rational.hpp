#pragma once

#include <gmpxx.h>

#include <cctype>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "k3m/errors.hpp"

namespace k3m {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Integer& z) { return z.get_str(); }

// "p/q" in lowest terms, or "p" when q = 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline int sign(const Integer& z) { return sgn(z); }
inline int sign(const Rational& q) { return sgn(q); }

inline Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  if (i == text.size()) throw ParseError("not an integer: \"" + std::string(text) + "\"");
  for (std::size_t j = i; j < text.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(text[j])))
      throw ParseError("not an integer: \"" + std::string(text) + "\"");
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(digits, 10);
}

inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '+' || den_text[0] == '-'))
    throw ParseError("denominator must be unsigned: \"" + std::string(text) + "\"");
  Integer den = parse_integer(den_text);
  if (den == 0) throw ParseError("zero denominator: \"" + std::string(text) + "\"");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Euclidean floor division, b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Scales a rational vector to the primitive integer vector on the same ray.
// The zero vector maps to the zero vector.
inline std::vector<Integer> primitive_integer_vector(std::span<const Rational> v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, x.get_den());
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer z = x.get_num() * (den / x.get_den());
    g = gcd(g, z);
    out.push_back(std::move(z));
  }
  if (g > 1)
    for (auto& z : out) z /= g;
  return out;
}

inline bool is_squarefree(long d) {
  if (d < 2) return false;
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

}  // namespace k3m
