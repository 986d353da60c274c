#pragma once

#include <cstddef>

#include "k3m/exactmath/matrix.hpp"

namespace k3m {

struct SymDiagResult {
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  std::size_t n_zero = 0;

  friend bool operator==(const SymDiagResult&, const SymDiagResult&) = default;
  bool positive_definite() const { return n_minus == 0 && n_zero == 0; }
  bool negative_definite() const { return n_plus == 0 && n_zero == 0; }
};

// Inertia of a symmetric matrix over an ordered field (Rational or
// QuadScalar) by symmetric Gaussian elimination. A block with zero diagonal
// but a nonzero off-diagonal entry a_ij is handled by adding row/column j to
// row/column i, which makes the new diagonal entry 2 a_ij.
template <class F>
SymDiagResult congruence_inertia(Matrix<F> a) {
  if (!a.is_symmetric()) throw DomainError("inertia of a non-symmetric matrix");
  const std::size_t n = a.rows();
  SymDiagResult out;
  auto add_into = [&](std::size_t dst, std::size_t src) {
    for (std::size_t c = 0; c < n; ++c) a(dst, c) += a(src, c);
    for (std::size_t r = 0; r < n; ++r) a(r, dst) += a(r, src);
  };
  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    a.swap_rows(i, j);
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, p) == F(0)) ++p;
    if (p == n) {
      bool found = false;
      for (std::size_t i = k; i < n && !found; ++i)
        for (std::size_t j = i + 1; j < n && !found; ++j)
          if (!(a(i, j) == F(0))) {
            add_into(i, j);
            p = i;
            found = true;
          }
      if (!found) {
        out.n_zero += n - k;
        break;
      }
    }
    swap_index(k, p);
    const F pivot = a(k, k);
    if (sign(pivot) > 0)
      ++out.n_plus;
    else
      ++out.n_minus;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == F(0)) continue;
      const F factor = a(i, k) / pivot;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      a(i, k) = F(0);
      a(k, i) = F(0);
    }
  }
  return out;
}

/// Exact inertia (n_plus, n_minus, n_zero) of a symmetric integer matrix.
inline SymDiagResult sym_signature(const IntMatrix& g) {
  if (!g.is_symmetric()) throw DomainError("signature of a non-symmetric matrix");
  return congruence_inertia(to_rational(g));
}

}  // namespace k3m
