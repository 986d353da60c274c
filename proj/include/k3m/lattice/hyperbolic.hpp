#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "k3m/lattice/sublattice.hpp"

namespace k3m {

struct HyperbolicSplit {
  std::vector<Integer> e;  // coordinates in the basis of l
  std::vector<Integer> f;
  IntMatrix n_basis;       // basis of N = span{e,f}^perp in coordinates of l
  IntegralLattice n;       // N with its induced Gram
};

struct NoSplit {
  std::string code;  // "definite", "rank", "radius"
  std::string message;
};

using SplitResult = std::variant<HyperbolicSplit, NoSplit>;

inline constexpr long kDefaultSplitRadius = 3;

namespace detail {

// Candidate isotropic vectors in a fixed canonical order: by support size,
// then support positions lexicographically, then coefficients ordered
// 1, -1, 2, -2, ..., radius, -radius. The first hit is returned, so the
// result does not depend on how the search is scheduled.
class IsotropicSearch {
 public:
  IsotropicSearch(const IntMatrix& gram, long radius) : n_(gram.rows()), radius_(radius) {
    g_.assign(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        if (!gram(i, j).fits_slong_p()) {
          overflow_ = true;
          return;
        }
        g_[i * n_ + j] = gram(i, j).get_si();
        max_entry_ = std::max<std::int64_t>(max_entry_, std::abs(g_[i * n_ + j]));
      }
    // |x^T G x| <= max_entry * (n * radius)^2 must stay far below 2^63.
    const double bound = static_cast<double>(max_entry_) * std::pow(static_cast<double>(n_ * radius_), 2);
    overflow_ = bound > 1e17;
    for (long v = 1; v <= radius_; ++v) {
      values_.push_back(v);
      values_.push_back(-v);
    }
  }

  bool usable() const { return !overflow_; }

  // Returns the first vector satisfying accept(), searching supports up to
  // max_support; stops after budget candidates.
  template <class Accept>
  std::optional<std::vector<std::int64_t>> run(std::size_t max_support, std::uint64_t budget, Accept accept) {
    for (std::size_t k = 1; k <= std::min(max_support, n_); ++k) {
      std::vector<std::size_t> pos(k);
      std::iota(pos.begin(), pos.end(), 0);
      for (;;) {
        std::vector<std::size_t> idx(k, 0);
        for (;;) {
          if (budget-- == 0) return std::nullopt;
          std::vector<std::int64_t> x(n_, 0);
          for (std::size_t t = 0; t < k; ++t) x[pos[t]] = values_[idx[t]];
          if (norm(x, pos) == 0 && accept(x)) return x;
          std::size_t t = k;
          while (t > 0 && ++idx[t - 1] == values_.size()) idx[--t] = 0;
          if (t == 0) break;
        }
        // next combination of positions
        std::size_t t = k;
        while (t > 0 && pos[t - 1] == n_ - k + t - 1) --t;
        if (t == 0) break;
        ++pos[t - 1];
        for (std::size_t s = t; s < k; ++s) pos[s] = pos[s - 1] + 1;
      }
    }
    return std::nullopt;
  }

 private:
  std::int64_t norm(const std::vector<std::int64_t>& x, const std::vector<std::size_t>& pos) const {
    std::int64_t s = 0;
    for (std::size_t i : pos)
      for (std::size_t j : pos) s += x[i] * g_[i * n_ + j] * x[j];
    return s;
  }

  std::size_t n_;
  long radius_;
  std::vector<std::int64_t> g_;
  std::int64_t max_entry_ = 0;
  bool overflow_ = false;
  std::vector<long> values_;
};

}  // namespace detail

/// Looks for a hyperbolic plane U = span{e, f} splitting off l, i.e.
/// l = N + U. Searches primitive isotropic e with coordinates bounded by
/// radius and divisibility 1, then corrects a partner f0 with <e,f0> = 1 to
/// f = f0 - (f0^2/2) e.
inline SplitResult find_hyperbolic_split(const IntegralLattice& l, long radius = kDefaultSplitRadius,
                                         std::uint64_t budget = 50'000'000) {
  if (!l.is_even()) throw DomainError("hyperbolic split needs an even lattice");
  if (radius < 1) throw DomainError("search radius must be positive");
  const auto sig = l.signature();
  if (l.rank() < 2) return NoSplit{"rank", "rank " + std::to_string(l.rank()) + " < 2 cannot contain U"};
  if (sig.n_zero == 0 && (sig.n_plus == 0 || sig.n_minus == 0))
    return NoSplit{"definite", "definite lattice has no nonzero isotropic vector"};

  const IntMatrix& g = l.gram();
  const std::size_t n = l.rank();
  auto divisibility_one = [&](const std::vector<Integer>& e) {
    Integer d = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < n; ++j) s += g(i, j) * e[j];
      d = gcd(d, s);
    }
    return d == 1;
  };
  auto to_integer = [](const std::vector<std::int64_t>& x) {
    std::vector<Integer> v;
    v.reserve(x.size());
    for (auto c : x) v.emplace_back(static_cast<long>(c));
    return v;
  };

  detail::IsotropicSearch search(g, radius);
  if (!search.usable()) throw DomainError("Gram entries too large for the isotropic search");
  auto hit = search.run(n, budget, [&](const std::vector<std::int64_t>& x) {
    std::int64_t c = 0;
    for (auto v : x) c = std::gcd(c, v);
    return c == 1 && divisibility_one(to_integer(x));
  });
  if (!hit) return NoSplit{"radius", "no isotropic vector of divisibility 1 within radius " + std::to_string(radius)};

  HyperbolicSplit out;
  out.e = to_integer(*hit);
  // Partner: a row x with x . (G e) = 1, read off the unimodular transform
  // that reduces the column G e to (1, 0, ..., 0).
  IntMatrix ge(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < n; ++j) s += g(i, j) * out.e[j];
    ge(i, 0) = s;
  }
  const auto h = hnf(ge);
  std::vector<Integer> f0 = h.u.row_vector(0);
  const Integer f0sq = l.pair(f0, f0);
  out.f = f0;
  const Integer half = f0sq / 2;
  for (std::size_t i = 0; i < n; ++i) out.f[i] -= half * out.e[i];

  IntMatrix ef(0, n);
  ef.append_row(out.e);
  ef.append_row(out.f);
  out.n_basis = ef.rows() ? int_kernel(g * ef.transpose()) : IntMatrix::identity(n);
  out.n = IntegralLattice(out.n_basis * g * out.n_basis.transpose(), "N");
  return out;
}

}  // namespace k3m
