#include <gtest/gtest.h>

#include <random>

#include "k3m/exactmath/inertia.hpp"
#include "k3m/exactmath/normal_form.hpp"
#include "k3m/exactmath/quad_scalar.hpp"
#include "k3m/lattice/lattice.hpp"
#include "oracles.hpp"

using namespace k3m;

namespace {

bool is_hnf(const IntMatrix& h) {
  std::size_t last_pivot = 0;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t p = 0;
    while (p < h.cols() && h(i, p) == 0) ++p;
    if (p == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (i > 0 && p <= last_pivot) return false;
    if (h(i, p) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, p) < 0 || h(k, p) >= h(i, p)) return false;
    last_pivot = p;
  }
  return true;
}

}  // namespace

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-4/2")), "-2");
  EXPECT_EQ(to_string(parse_rational("+7")), "7");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
  EXPECT_THROW(parse_rational("1.5"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(QuadScalar, Arithmetic) {
  const auto r2 = QuadScalar::sqrt(2);
  EXPECT_EQ(r2 * r2, QuadScalar(2));
  const QuadScalar x(Rational(1), Rational(1), 2);  // 1 + sqrt2
  EXPECT_EQ(x * x, QuadScalar(Rational(3), Rational(2), 2));
  EXPECT_EQ((x / x), QuadScalar(1));
  EXPECT_EQ(x * (QuadScalar(1) / x), QuadScalar(1));
  EXPECT_THROW(QuadScalar::sqrt(2) + QuadScalar::sqrt(3), DomainError);
  EXPECT_THROW(QuadScalar(Rational(0), Rational(1), 4), DomainError);
  EXPECT_NO_THROW(QuadScalar::sqrt(3) + QuadScalar(5));
  EXPECT_THROW(QuadScalar(1) / QuadScalar(0), DomainError);
}

TEST(QuadScalar, SignAgreesWithFloatingApproximation) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 12), field(0, 3);
  const FieldTag fields[] = {2, 3, 5, 7};
  for (int t = 0; t < 1000; ++t) {
    const FieldTag d = fields[field(rng)];
    QuadScalar x(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), d);
    const double approx = x.to_double();
    if (std::abs(approx) < 1e-9) {
      EXPECT_EQ(x.sign(), 0);
      continue;
    }
    EXPECT_EQ(x.sign(), approx > 0 ? 1 : -1) << x.to_string();
  }
  // Close to zero: 99/70 - sqrt2 > 0, 140/99 - sqrt 2 < 0.
  EXPECT_EQ((QuadScalar(Rational(99, 70)) - QuadScalar::sqrt(2)).sign(), 1);
  EXPECT_EQ((QuadScalar(Rational(140, 99)) - QuadScalar::sqrt(2)).sign(), -1);
}

TEST(Complex, DivisionAndConjugate) {
  const Complex z(QuadScalar(Rational(1), Rational(1), 2), QuadScalar(3));
  EXPECT_EQ(z * (Complex(1) / z), Complex(1));
  EXPECT_TRUE((z * z.conj()).is_real());
  EXPECT_EQ((z * z.conj()).re, z.abs2());
}

TEST(Hnf, Examples) {
  const IntMatrix m{{2, 4}, {1, 3}};
  const auto r = hnf(m);
  EXPECT_EQ(r.h, (IntMatrix{{1, 1}, {0, 2}}));
  EXPECT_EQ(r.u * m, r.h);
  EXPECT_EQ(abs(determinant(r.u)), 1);

  EXPECT_EQ(hnf(IntMatrix::identity(5)).h, IntMatrix::identity(5));
  EXPECT_EQ(hnf(IntMatrix{{0, 0}}).h, (IntMatrix{{0, 0}}));
}

TEST(Hnf, RandomAxiomsAndIdempotence) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    const IntMatrix m = oracle::random_matrix(rng, r, c, -6, 6);
    const auto res = hnf(m);
    ASSERT_TRUE(is_hnf(res.h)) << to_string(res.h);
    EXPECT_EQ(res.u * m, res.h);
    EXPECT_EQ(abs(determinant(res.u)), 1);
    EXPECT_EQ(hnf(res.h).h, res.h);
    EXPECT_EQ(static_cast<int>(res.rank), oracle::float_rank(m));
  }
}

TEST(Snf, Examples) {
  EXPECT_EQ(snf(IntMatrix{{2, 0}, {0, 2}}), (std::vector<Integer>{2, 2}));
  EXPECT_EQ(snf(IntMatrix{{0, 1}, {1, 0}}), (std::vector<Integer>{1, 1}));
  EXPECT_EQ(snf(IntMatrix{{2, 1}, {1, 2}}), (std::vector<Integer>{1, 3}));
}

TEST(Snf, MatchesDeterminantalDivisors) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 150; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const IntMatrix m = oracle::random_matrix(rng, r, c, -5, 5);
    const auto expected = oracle::determinantal_snf(oracle::to_dense(m));
    const auto got = snf(m);
    ASSERT_EQ(got.size(), expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i], long(expected[i])) << to_string(m);
    if (r == c && determinant(m) != 0) {
      Integer prod = 1;
      for (const auto& d : got) prod *= d;
      EXPECT_EQ(prod, abs(determinant(m)));
    }
  }
}

TEST(IntKernel, Examples) {
  EXPECT_EQ(int_kernel(IntMatrix{{1}, {1}}), (IntMatrix{{1, -1}}));
  EXPECT_EQ(int_kernel(IntMatrix{{2, 1}, {1, 2}}).rows(), 0u);
  EXPECT_EQ(int_kernel(IntMatrix(2, 2)), IntMatrix::identity(2));
}

TEST(IntKernel, RandomKernelsAreSaturatedAndComplete) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 150; ++t) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 4;
    IntMatrix m = oracle::random_matrix(rng, r, c, -4, 4);
    const IntMatrix k = int_kernel(m);
    EXPECT_EQ(static_cast<int>(k.rows()), static_cast<int>(r) - oracle::float_rank(m));
    if (k.rows() == 0) continue;
    EXPECT_TRUE((k * m).is_zero());
    EXPECT_EQ(saturate(k), k);
    // Every small integer kernel vector is an integer combination of k.
    std::vector<Integer> x(r);
    for (int trial = 0; trial < 200; ++trial) {
      IntMatrix comb = oracle::random_matrix(rng, 1, k.rows(), -3, 3);
      IntMatrix v = comb * k;
      EXPECT_TRUE(integer_coordinates(k, v.row(0)).has_value());
    }
  }
}

TEST(Saturate, Examples) {
  EXPECT_EQ(saturate(IntMatrix{{2, 0}, {0, 2}}), IntMatrix::identity(2));
  EXPECT_EQ(saturate(IntMatrix{{1, 0}}), (IntMatrix{{1, 0}}));
  EXPECT_EQ(saturate(IntMatrix{{2, 2}}), (IntMatrix{{1, 1}}));
  EXPECT_THROW(saturate(IntMatrix{{1, 2}, {2, 4}}), DomainError);
}

TEST(Saturate, BruteForceBoxAndIdempotence) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3;
    const std::size_t k = 1 + rng() % 2;
    IntMatrix m = oracle::random_matrix(rng, k, n, -4, 4);
    if (oracle::float_rank(m) != static_cast<int>(k)) continue;
    const IntMatrix s = saturate(m);
    EXPECT_EQ(saturate(s), s);
    // every integer vector in a box lying in span_Q(m) is in span_Z(s)
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b)
        for (int c = -3; c <= 3; ++c) {
          std::vector<Integer> v{a, b, c};
          IntMatrix st = m;
          st.append_row(v);
          const bool in_span = oracle::float_rank(st) == static_cast<int>(k);
          EXPECT_EQ(in_span, integer_coordinates(s, v).has_value());
        }
  }
}

TEST(Signature, Examples) {
  EXPECT_EQ(sym_signature(IntMatrix{{0, 1}, {1, 0}}), (SymDiagResult{1, 1, 0}));
  EXPECT_EQ(sym_signature(IntMatrix{{6}}), (SymDiagResult{1, 0, 0}));
  EXPECT_THROW(sym_signature(IntMatrix{{0, 1}, {2, 0}}), DomainError);
  EXPECT_EQ(sym_signature(IntMatrix(3, 3)), (SymDiagResult{0, 0, 3}));
}

TEST(Signature, AgreesWithEigenvaluesAndCongruence) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 6;
    IntMatrix a = oracle::random_matrix(rng, n, n, -3, 3);
    IntMatrix g = a + a.transpose();
    if (t % 4 == 0)  // exercise zero-diagonal blocks
      for (std::size_t i = 0; i < n; ++i) g(i, i) = 0;
    const auto sig = sym_signature(g);
    const auto ev = oracle::eigen_inertia(g);
    EXPECT_EQ(static_cast<int>(sig.n_plus), ev[0]) << to_string(g);
    EXPECT_EQ(static_cast<int>(sig.n_minus), ev[1]);
    EXPECT_EQ(static_cast<int>(sig.n_zero), ev[2]);
    const IntMatrix u = oracle::random_unimodular(rng, n);
    EXPECT_EQ(sym_signature(u.transpose() * g * u), sig);
  }
}

TEST(Signature, QuadraticFieldPivots) {
  // diag(1 - sqrt2, sqrt2) has inertia (1, 1, 0).
  Matrix<QuadScalar> m(2, 2);
  m(0, 0) = QuadScalar(1) - QuadScalar::sqrt(2);
  m(1, 1) = QuadScalar::sqrt(2);
  EXPECT_EQ(congruence_inertia(m), (SymDiagResult{1, 1, 0}));
}
