#pragma once

// Small builders shared by the unit and acceptance tests.

#include <random>
#include <vector>

#include "k3m/k3m.hpp"

namespace k3m::fx {

inline RealVec h2(std::initializer_list<std::pair<std::size_t, long>> entries) {
  RealVec v(kH2Rank, QuadScalar(0));
  for (const auto& [i, c] : entries) v.at(i) = QuadScalar(c);
  return v;
}

// a e_i + b f_i
inline RealVec uv(int i, long a, long b) { return h2({{u_e(i), a}, {u_f(i), b}}); }

inline RealVec zero2() { return RealVec(kH2Rank, QuadScalar(0)); }

inline IntVec to_int(const RealVec& v) {
  IntVec out;
  for (const auto& x : v) {
    if (!x.is_rational() || x.a().get_den() != 1) throw DomainError("not integral");
    out.push_back(x.a().get_num());
  }
  return out;
}

inline Rational random_rational(std::mt19937_64& rng, int num = 5, int den = 4) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  Rational q(n(rng), d(rng));
  q.canonicalize();
  return q;
}

// Real scalar, in Q(sqrt d) when d > 0.
inline QuadScalar random_scalar(std::mt19937_64& rng, FieldTag d = 0) {
  if (d == 0) return QuadScalar(random_rational(rng));
  return QuadScalar(random_rational(rng), random_rational(rng), d);
}

inline RealVec random_real(std::mt19937_64& rng, std::size_t n, FieldTag d = 0, double density = 0.4) {
  std::bernoulli_distribution keep(density);
  RealVec v(n, QuadScalar(0));
  for (auto& x : v)
    if (keep(rng)) x = random_scalar(rng, d);
  return v;
}

inline CohClass random_class(std::mt19937_64& rng, FieldTag d = 0) {
  return CohClass::from_real(random_real(rng, kMukaiRank, d), random_real(rng, kMukaiRank, d));
}

inline IntVec random_int_h2(std::mt19937_64& rng, int bound = 2, double density = 0.3) {
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> c(-bound, bound);
  IntVec v(kH2Rank, Integer(0));
  for (auto& x : v)
    if (keep(rng)) x = c(rng);
  return v;
}

// Brute-force x^T G y over the dense 24x24 Mukai Gram.
inline Complex dense_pairing(const CohClass& x, const CohClass& y) {
  const IntMatrix& g = mukai_lattice().gram();
  Complex s(0);
  for (std::size_t i = 0; i < kMukaiRank; ++i)
    for (std::size_t j = 0; j < kMukaiRank; ++j)
      if (g(i, j) != 0) s += x[i] * Complex(QuadScalar(Rational(g(i, j)))) * y[j];
  return s;
}

inline IntMatrix gauss_gram(const Sublattice& s) { return gauss_reduce2(s.as_lattice()).gram(); }

}  // namespace k3m::fx

namespace k3m {
inline void PrintTo(const QuadScalar& x, std::ostream* os) { *os << x.to_string(); }
inline void PrintTo(const Complex& x, std::ostream* os) { *os << x.to_string(); }
template <class T>
void PrintTo(const Matrix<T>& m, std::ostream* os) { *os << to_string(m); }
}  // namespace k3m
