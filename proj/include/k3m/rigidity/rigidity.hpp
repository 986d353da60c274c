#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3m/gk3/gk3.hpp"
#include "k3m/lattice/gauss.hpp"

namespace k3m {

enum class RigidKind { ComplexRigid, KahlerRigid, NotRigid };

inline std::string to_string(RigidKind k) {
  switch (k) {
    case RigidKind::ComplexRigid: return "ComplexRigid";
    case RigidKind::KahlerRigid: return "KahlerRigid";
    case RigidKind::NotRigid: return "NotRigid";
  }
  return "?";
}

struct RigidityReport {
  RigidKind kind = RigidKind::NotRigid;
  std::string reason;               // NotRigid only
  std::optional<IntMatrix> invariant;  // Gauss-reduced Gram, rigid only
  std::size_t rank = 0;             // rank of NS (complex) or T (Kahler)
  // Complex: whether some rational B' reproduces the degree-4 part. B' itself
  // is not determined by phiB, so only the lattice invariant is returned.
  // Kahler: whether B = Re(phi_2 / phi_0) is rational.
  std::optional<bool> b_rational;
  std::optional<QuadScalar> omega_sq;  // Kahler only
};

namespace detail {

// Rows of the rational components of a real-or-complex vector, as
// primitive integer rows; zero components dropped.
inline IntMatrix component_rows(std::span<const Complex> v) {
  IntMatrix out(0, v.size());
  std::array<std::vector<Rational>, 4> comp;
  for (auto& c : comp) c.assign(v.size(), Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    comp[0][i] = v[i].re.a();
    comp[1][i] = v[i].re.b();
    comp[2][i] = v[i].im.a();
    comp[3][i] = v[i].im.b();
  }
  for (const auto& c : comp)
    if (std::any_of(c.begin(), c.end(), [](const Rational& q) { return q != 0; }))
      out.append_row(primitive_integer_vector(c));
  return out;
}

inline RigidityReport not_rigid(std::string reason, std::size_t rank = 0) {
  RigidityReport r;
  r.reason = std::move(reason);
  r.rank = rank;
  return r;
}

// Does B'.s_k = t_k (k over the rational components) have a rational
// solution B'? Consistent iff appending the right-hand side keeps the rank.
inline bool rational_b_exists(std::span<const Complex> sigma, const Complex& deg4) {
  const IntMatrix& g = k3_lattice_ptr()->gram();
  QMatrix system(0, kH2Rank + 1);
  auto add_row = [&](auto part) {
    std::vector<Rational> row(kH2Rank + 1, Rational(0));
    bool nonzero = false;
    for (std::size_t i = 0; i < kH2Rank; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < kH2Rank; ++j)
        if (g(i, j) != 0) s += Rational(g(i, j)) * part(sigma[j]);
      row[i] = s;
      nonzero = nonzero || s != 0;
    }
    row[kH2Rank] = part(deg4);
    nonzero = nonzero || row[kH2Rank] != 0;
    if (nonzero) system.append_row(row);
  };
  add_row([](const Complex& c) { return c.re.a(); });
  add_row([](const Complex& c) { return c.re.b(); });
  add_row([](const Complex& c) { return c.im.a(); });
  add_row([](const Complex& c) { return c.im.b(); });
  IntMatrix lhs(0, kH2Rank), full(0, kH2Rank + 1);
  for (std::size_t r = 0; r < system.rows(); ++r) {
    auto row = system.row_vector(r);
    auto z = primitive_integer_vector(row);
    full.append_row(z);
    lhs.append_row(std::vector<Integer>(z.begin(), z.begin() + kH2Rank));
  }
  return rank(lhs) == rank(full);
}

}  // namespace detail

/// phiB of type B with rank NS = 22; invariant is the reduced Gram of L_sigma
/// inside the K3 lattice.
inline RigidityReport is_complex_rigid(const GeneralizedK3& x) {
  if (type_of(x.phiB) != GcyType::B) return detail::not_rigid("type: phiB is of type A");
  const auto ns = ortho_complement(l_of(x.phiB));
  if (ns.rank() != 22) return detail::not_rigid("rank NS = " + std::to_string(ns.rank()), ns.rank());
  if (!is_explicit(x.phiB)) throw DomainError("invariant needs explicit phiB");
  const auto& phi = std::get<GCYClass>(x.phiB).cls();
  const IntMatrix gens = detail::component_rows(phi.deg2());
  const Sublattice ls(k3_lattice_ptr(), saturate(hnf_basis(gens)));
  const auto lat = ls.as_lattice();
  if (ls.rank() != 2 || !lat.signature().positive_definite())
    return detail::not_rigid("L_sigma is not a positive definite rank-2 lattice", ns.rank());
  RigidityReport r;
  r.kind = RigidKind::ComplexRigid;
  r.rank = ns.rank();
  r.invariant = gauss_reduce2(lat).gram();
  r.b_rational = detail::rational_b_exists(phi.deg2(), phi.deg4());
  return r;
}

/// phiA of type A with rank T = 22; invariant is the reduced Gram of L_{phiA}.
inline RigidityReport is_kahler_rigid(const GeneralizedK3& x) {
  if (type_of(x.phiA) != GcyType::A) return detail::not_rigid("type: phiA is of type B");
  const auto la = l_of(x.phiA);
  const auto t = ortho_complement(la);
  if (t.rank() != 22) return detail::not_rigid("rank T = " + std::to_string(t.rank()), t.rank());
  if (!is_explicit(x.phiA)) throw DomainError("invariant needs explicit phiA");
  const auto lat = la.as_lattice();
  if (!lat.signature().positive_definite())
    return detail::not_rigid("L_phiA is not positive definite", t.rank());
  const auto data = type_a_data(std::get<GCYClass>(x.phiA));
  RigidityReport r;
  r.kind = RigidKind::KahlerRigid;
  r.rank = t.rank();
  r.invariant = gauss_reduce2(lat).gram();
  r.b_rational = std::all_of(data.b.begin(), data.b.end(), [](const QuadScalar& q) { return q.is_rational(); });
  r.omega_sq = h2_pair<QuadScalar>(data.omega, data.omega);
  return r;
}

/// Reduced even positive definite binary forms [[a,b],[b,c]], 0 <= 2b <= a <= c,
/// with det <= max_det, in lexicographic order of (a, b, c).
inline std::vector<IntMatrix> enumerate_reduced_forms(long max_det) {
  if (max_det < 1) throw DomainError("max_det must be at least 1");
  std::vector<IntMatrix> out;
  // a <= c and 2b <= a give det >= 3a^2/4.
  for (long a = 2; 3 * a * a <= 4 * max_det; a += 2)
    for (long b = 0; 2 * b <= a; ++b)
      for (long c = a; a * c - b * b <= max_det; c += 2) out.push_back(IntMatrix{{a, b}, {b, c}});
  return out;
}

struct SurveyConfig {
  long max_det = 16;
  long denominator_bound = 4;
  std::vector<long> sqrt_d;       // fields Q(sqrt d) for kappa = sqrt d
  std::string ns_choice = "diag2";  // "diag2": H1, H2 orthogonal; "A2": H1.H2 = 1
  long coefficient_bound = 2;     // |a|, |b| in omega = kappa (a H1 + b H2)
};

struct SurveyWitness {
  RealVec b;
  RealVec omega;
};

struct SurveyReport {
  std::vector<IntMatrix> achieved;  // sorted
  std::vector<IntMatrix> missing;   // enumerated forms not achieved
  std::size_t samples = 0;
  std::map<std::vector<Integer>, SurveyWitness> per_form_witness;  // key (a,b,c)
  std::size_t violations = 0;  // rank != 2, odd or indefinite invariant
};

inline std::vector<Integer> form_key(const IntMatrix& g) { return {g(0, 0), g(0, 1), g(1, 1)}; }

inline std::pair<RealVec, RealVec> survey_ns_basis(const std::string& choice) {
  RealVec h1(kH2Rank, QuadScalar(0)), h2(kH2Rank, QuadScalar(0));
  h1[u_e(1)] = 1;
  h1[u_f(1)] = 1;
  h2[u_e(2)] = 1;
  h2[u_f(2)] = 1;
  if (choice == "A2")
    h2[u_e(1)] = 1;
  else if (choice != "diag2")
    throw DomainError("unknown NS choice '" + choice + "' (expected diag2 or A2)");
  return {h1, h2};
}

/// Samples e^{B + i omega} with omega = kappa (a H1 + b H2), kappa in {1} or
/// sqrt d, and B = (b1 H1 + b2 H2) / den, and collects the reduced Grams of
/// L_{e^{B + i omega}}. Reports what was reached; claims nothing about
/// completeness.
inline SurveyReport kahler_rigid_survey(const SurveyConfig& cfg) {
  if (cfg.max_det < 1 || cfg.denominator_bound < 1 || cfg.coefficient_bound < 1)
    throw DomainError("survey bounds must be positive");
  for (long d : cfg.sqrt_d)
    if (d < 2 || !is_squarefree(d)) throw DomainError("sqrt_d entry " + std::to_string(d) + " is not squarefree >= 2");
  const auto [h1, h2] = survey_ns_basis(cfg.ns_choice);

  std::vector<QuadScalar> kappas{QuadScalar(1)};
  for (long d : cfg.sqrt_d) kappas.push_back(QuadScalar::sqrt(d));

  struct Chunk {
    std::vector<std::pair<IntMatrix, SurveyWitness>> hits;
    std::size_t samples = 0;
    std::size_t violations = 0;
  };
  // One task per (kappa, a); merged in task order.
  auto work = [&, h1 = h1, h2 = h2](const QuadScalar& kappa, long a) {
    Chunk c;
    for (long bc = -cfg.coefficient_bound; bc <= cfg.coefficient_bound; ++bc) {
      const RealVec omega = scale(kappa, add(scale(QuadScalar(a), h1), scale(QuadScalar(bc), h2)));
      if (h2_pair<QuadScalar>(omega, omega).sign() <= 0) continue;
      for (long den = 1; den <= cfg.denominator_bound; ++den)
        for (long b1 = 0; b1 < den; ++b1)
          for (long b2 = 0; b2 < den; ++b2) {
            if (gcd(gcd(Integer(b1), Integer(b2)), Integer(den)) != 1) continue;
            const RealVec b = add(scale(QuadScalar(Rational(b1, den)), h1), scale(QuadScalar(Rational(b2, den)), h2));
            const auto l = l_psi(check_gcy(exp_class(b, omega)));
            ++c.samples;
            const auto lat = l.as_lattice();
            if (l.rank() != 2 || !lat.is_even() || !lat.signature().positive_definite()) {
              ++c.violations;
              continue;
            }
            c.hits.emplace_back(gauss_reduce2(lat).gram(), SurveyWitness{b, omega});
          }
    }
    return c;
  };

  std::vector<std::future<Chunk>> tasks;
  for (const auto& kappa : kappas)
    for (long a = -cfg.coefficient_bound; a <= cfg.coefficient_bound; ++a)
      tasks.push_back(std::async(std::launch::async, work, kappa, a));

  SurveyReport rep;
  for (auto& t : tasks) {
    auto c = t.get();
    rep.samples += c.samples;
    rep.violations += c.violations;
    for (auto& [g, w] : c.hits) rep.per_form_witness.try_emplace(form_key(g), std::move(w));
  }
  for (const auto& [key, w] : rep.per_form_witness)
    rep.achieved.push_back(IntMatrix{{key[0], key[1]}, {key[1], key[2]}});
  for (const auto& f : enumerate_reduced_forms(cfg.max_det))
    if (!rep.per_form_witness.contains(form_key(f))) rep.missing.push_back(f);
  return rep;
}

}  // namespace k3m
