#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "k3m/exactmath/matrix.hpp"

namespace k3m {

struct HermiteResult {
  IntMatrix h;  // row-style Hermite normal form
  IntMatrix u;  // unimodular, h = u * m
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

namespace detail {

// rows (i, j) <- (s*Ri + t*Rj, -b/g*Ri + a/g*Rj); determinant 1.
inline void combine_rows(IntMatrix& m, std::size_t i, std::size_t j, const Integer& s, const Integer& t,
                         const Integer& x, const Integer& y) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Integer ri = m(i, c);
    Integer rj = m(j, c);
    m(i, c) = s * ri + t * rj;
    m(j, c) = x * ri + y * rj;
  }
}

inline void axpy_row(IntMatrix& m, std::size_t dst, const Integer& q, std::size_t src) {
  if (q == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m(src, c) != 0) m(dst, c) -= q * m(src, c);
}

inline void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = -m(i, c);
}

}  // namespace detail

/// Row-style Hermite normal form with unimodular transform.
///
/// The result is in echelon form with zero rows at the bottom, positive
/// pivots, and entries above each pivot reduced into [0, pivot).
inline HermiteResult hnf(const IntMatrix& m) {
  HermiteResult r{m, IntMatrix::identity(m.rows()), 0, {}};
  IntMatrix& h = r.h;
  IntMatrix& u = r.u;
  std::size_t p = 0;
  for (std::size_t col = 0; col < h.cols() && p < h.rows(); ++col) {
    for (std::size_t i = p + 1; i < h.rows(); ++i) {
      if (h(i, col) == 0) continue;
      const Integer a = h(p, col);
      const Integer b = h(i, col);
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const Integer x = -b / g;
      const Integer y = a / g;
      detail::combine_rows(h, p, i, s, t, x, y);
      detail::combine_rows(u, p, i, s, t, x, y);
    }
    if (h(p, col) == 0) continue;
    if (h(p, col) < 0) {
      detail::negate_row(h, p);
      detail::negate_row(u, p);
    }
    for (std::size_t i = 0; i < p; ++i) {
      const Integer q = floor_div(h(i, col), h(p, col));
      detail::axpy_row(h, i, q, p);
      detail::axpy_row(u, i, q, p);
    }
    r.pivot_cols.push_back(col);
    ++p;
  }
  r.rank = p;
  return r;
}

// Nonzero rows of the Hermite form.
inline IntMatrix hnf_basis(const IntMatrix& m) {
  auto r = hnf(m);
  return r.h.select_rows(0, r.rank);
}

inline std::size_t rank(const IntMatrix& m) { return hnf(m).rank; }

/// Elementary divisors d1 | d2 | ... of m, min(rows, cols) entries, zeros
/// last for rank deficit.
inline std::vector<Integer> snf(const IntMatrix& m) {
  IntMatrix a = m;
  auto is_diagonal = [](const IntMatrix& x) {
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j)
        if (i != j && x(i, j) != 0) return false;
    return true;
  };
  while (!is_diagonal(a)) a = hnf(hnf(a).h.transpose()).h.transpose();
  const std::size_t k = std::min(a.rows(), a.cols());
  std::vector<Integer> d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = abs(a(i, i));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      Integer g = gcd(d[i], d[j]);
      Integer l = lcm(d[i], d[j]);
      d[i] = g;
      d[j] = l;
    }
  return d;
}

/// HNF basis of the saturated integer left kernel {x : x * m = 0}.
inline IntMatrix int_kernel(const IntMatrix& m) {
  auto r = hnf(m);
  IntMatrix k = r.u.select_rows(r.rank, m.rows());
  if (k.rows() == 0) return IntMatrix(0, m.rows());
  return hnf_basis(k);
}

/// HNF basis of span_Q(rows of m) intersected with Z^n.
inline IntMatrix saturate(const IntMatrix& m) {
  if (m.rows() == 0) return IntMatrix(0, m.cols());
  if (rank(m) != m.rows()) throw DomainError("dependent basis");
  // Vectors orthogonal (standard dot product) to the rows, then their
  // orthogonal again.
  const IntMatrix annihilator = int_kernel(m.transpose());
  if (annihilator.rows() == 0) return IntMatrix::identity(m.cols());
  return int_kernel(annihilator.transpose());
}

// Coefficients c with c * basis = v, if v lies in the integer row span.
// basis rows must be linearly independent.
inline std::optional<std::vector<Integer>> integer_coordinates(const IntMatrix& basis,
                                                               std::span<const Integer> v) {
  auto r = hnf(basis);
  std::vector<Integer> residual(v.begin(), v.end());
  std::vector<Integer> c(basis.rows(), Integer(0));
  for (std::size_t i = 0; i < r.rank; ++i) {
    const std::size_t pc = r.pivot_cols[i];
    const Integer& piv = r.h(i, pc);
    if (residual[pc] % piv != 0) return std::nullopt;
    c[i] = residual[pc] / piv;
    for (std::size_t j = 0; j < residual.size(); ++j)
      if (r.h(i, j) != 0) residual[j] -= c[i] * r.h(i, j);
  }
  for (const auto& x : residual)
    if (x != 0) return std::nullopt;
  // c * h = v with h = u * basis.
  std::vector<Integer> out(basis.rows(), Integer(0));
  for (std::size_t i = 0; i < r.rank; ++i)
    if (c[i] != 0)
      for (std::size_t j = 0; j < basis.rows(); ++j) out[j] += c[i] * r.u(i, j);
  return out;
}

// Every row of inner lies in the integer row span of outer.
inline bool row_span_contains(const IntMatrix& outer, const IntMatrix& inner) {
  for (std::size_t i = 0; i < inner.rows(); ++i)
    if (!integer_coordinates(outer, inner.row(i))) return false;
  return true;
}

// v lies in the rational row span of basis.
inline bool rational_span_contains(const IntMatrix& basis, std::span<const Rational> v) {
  auto z = primitive_integer_vector(v);
  IntMatrix stacked = basis;
  stacked.append_row(z);
  return rank(stacked) == rank(basis);
}

}  // namespace k3m
