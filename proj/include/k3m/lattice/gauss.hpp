#pragma once

#include <string>
#include <utility>

#include "k3m/lattice/sublattice.hpp"

namespace k3m {

struct Reduction2 {
  IntegralLattice reduced;  // Gram [[a,b],[b,c]] with 0 <= 2b <= a <= c
  IntMatrix transform;      // columns are the new basis: transform^T * g * transform = reduced
};

/// Gauss (Lagrange) reduction of a positive definite binary form up to
/// GL2(Z). Two such lattices are isometric iff their reduced Grams agree.
inline Reduction2 gauss_reduce2_with_witness(const IntegralLattice& l) {
  if (l.rank() != 2) throw DomainError("Gauss reduction needs rank 2, got rank " + std::to_string(l.rank()));
  const IntMatrix& g = l.gram();
  Integer a = g(0, 0), b = g(0, 1), c = g(1, 1);
  if (a <= 0 || a * c - b * b <= 0) throw DomainError("Gauss reduction needs a positive definite form");

  IntMatrix u = IntMatrix::identity(2);
  auto apply = [&u](const IntMatrix& step) { u = u * step; };
  for (;;) {
    if (a > c) {
      std::swap(a, c);
      apply(IntMatrix{{0, 1}, {1, 0}});
    }
    if (2 * abs(b) <= a) break;
    // v2 <- v2 - k v1 with k the nearest integer to b / a.
    const Integer k = floor_div(2 * b + a, 2 * a);
    c = c - 2 * k * b + k * k * a;
    b = b - k * a;
    apply(IntMatrix{{1, -k}, {0, 1}});
  }
  if (a > c) {
    std::swap(a, c);
    apply(IntMatrix{{0, 1}, {1, 0}});
  }
  if (b < 0) {
    b = -b;
    apply(IntMatrix{{1, 0}, {0, -1}});
  }
  return {IntegralLattice(IntMatrix{{a, b}, {b, c}}, l.name()), u};
}

inline IntegralLattice gauss_reduce2(const IntegralLattice& l) { return gauss_reduce2_with_witness(l).reduced; }

inline bool is_gauss_reduced(const IntMatrix& g) {
  if (g.rows() != 2 || !g.is_symmetric()) return false;
  const Integer &a = g(0, 0), &b = g(0, 1), &c = g(1, 1);
  return 0 <= b && 2 * b <= a && a <= c && a > 0;
}

enum class MatchKind { Equal2, GenusInvariantsMatch, Distinguished };

struct InvariantMatch {
  MatchKind kind = MatchKind::Distinguished;
  std::string reason;  // failing invariant when Distinguished

  bool matches() const { return kind != MatchKind::Distinguished; }
};

inline std::string to_string(MatchKind k) {
  switch (k) {
    case MatchKind::Equal2: return "Equal2";
    case MatchKind::GenusInvariantsMatch: return "GenusInvariantsMatch";
    case MatchKind::Distinguished: return "Distinguished";
  }
  return "?";
}

/// Exact isometry test for rank-2 positive definite lattices; elsewhere only
/// rank, signature, parity and discriminant divisors are compared, and a
/// match is reported as GenusInvariantsMatch rather than as an isometry.
inline InvariantMatch invariants_match(const IntegralLattice& l1, const IntegralLattice& l2) {
  if (l1.rank() != l2.rank()) return {MatchKind::Distinguished, "rank"};
  const auto s1 = l1.signature();
  const auto s2 = l2.signature();
  if (!(s1 == s2)) return {MatchKind::Distinguished, "signature"};
  if (l1.rank() == 2 && s1.positive_definite()) {
    if (gauss_reduce2(l1).gram() == gauss_reduce2(l2).gram()) return {MatchKind::Equal2, ""};
    return {MatchKind::Distinguished, "reduced form"};
  }
  if (l1.is_even() != l2.is_even()) return {MatchKind::Distinguished, "parity"};
  if (s1.n_zero == 0 && !(discriminant(l1) == discriminant(l2))) return {MatchKind::Distinguished, "discriminant"};
  return {MatchKind::GenusInvariantsMatch, ""};
}

}  // namespace k3m
