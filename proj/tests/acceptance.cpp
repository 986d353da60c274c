// Acceptance run: one PASS/FAIL line per criterion. A criterion passes only
// if every exact check holds and the wall time stays under its limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace k3m;
using namespace k3m::fx;
namespace L = k3m::lattices;

namespace {

// Collects failed checks; the first few are printed.
struct Check {
  std::vector<std::string> failures;
  std::size_t count = 0;

  void operator()(bool ok, const std::string& what) {
    ++count;
    if (!ok) failures.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<std::string(Check&)> body;  // returns a short detail line
};

IntMatrix diag2(long a, long b) { return IntMatrix{{a, 0}, {0, b}}; }

bool same(const Sublattice& a, const Sublattice& b) { return a.basis() == b.basis(); }

// A hyperKahler pair (lambda e^{B + i omega}, lambda e^B sigma) with B
// rational, omega = kappa (a e1 + b f1 + w) / den, w in the E8 part,
// omega^2 > 0 rational, and sigma = (p e2 + f2) + i (p e3 + f3) with
// 2p = omega^2 so both norms equal 2 omega^2 |lambda|^2.
struct HkSample {
  GeneralizedK3 x;
  QuadScalar kappa;
  RealVec b;
  RealVec omega;
};

HkSample random_hk(std::mt19937_64& rng, bool use_sqrt2) {
  std::uniform_int_distribution<int> pos(1, 4), small(-1, 1), den(1, 4);
  const QuadScalar kappa = use_sqrt2 ? QuadScalar::sqrt(2) : QuadScalar(1);
  RealVec omega;
  QuadScalar sq;
  do {
    RealVec base = uv(1, pos(rng), pos(rng));
    for (std::size_t i = 6; i < kH2Rank; ++i)
      if (small(rng) != 0 && i % 3 == 0) base[i] = QuadScalar(small(rng));
    omega = scale(kappa * QuadScalar(Rational(1, den(rng))), base);
    sq = h2_pair<QuadScalar>(omega, omega);
  } while (sq.sign() <= 0);
  const Rational p = sq.a() / 2;  // omega^2 is rational
  RealVec re = uv(2, 0, 1), im = uv(3, 0, 1);
  re[u_e(2)] = QuadScalar(p);
  im[u_e(3)] = QuadScalar(p);
  const RealVec b = random_real(rng, kH2Rank);
  Rational lr = random_rational(rng), li = random_rational(rng);
  if (lr == 0 && li == 0) lr = 1;
  const Complex lambda{QuadScalar(lr), QuadScalar(li)};
  const CohClass phiA = lambda * exp_class(b, omega);
  const CohClass phiB = lambda * bfield_transform(b, sigma_class(re, im));
  return {validate_gk3(check_gcy(phiA), check_gcy(phiB)), kappa, b, omega};
}

IntMatrix random_sublattice_rows(std::mt19937_64& rng, std::size_t cols) {
  std::uniform_int_distribution<int> r(1, 5);
  for (;;) {
    IntMatrix m = oracle::random_matrix(rng, r(rng), cols, -2, 2);
    if (rank(m) == m.rows()) return m;
  }
}

std::string c1(Check& ok) {
  const auto& m = mukai_lattice();
  ok(m.rank() == 24, "rank 24");
  ok(m.signature() == SymDiagResult{4, 20, 0}, "signature (4,20,0)");
  ok(abs(m.det()) == 1, "|det| = 1");
  ok(m.is_even(), "even");
  ok(L::K3().signature() == SymDiagResult{3, 19, 0}, "K3 signature (3,19,0)");
  return "signature (4,20,0), det " + m.det().get_str() + ", even";
}

std::string c2(Check& ok) {
  std::mt19937_64 rng(1001);
  const int cases = 1000;
  for (int t = 0; t < cases; ++t) {
    const CohClass x = random_class(rng), y = random_class(rng);
    const RealVec b = random_real(rng, kH2Rank), b2 = random_real(rng, kH2Rank);
    const CohClass bx = bfield_transform(b, x);
    ok(mukai_pairing(bx, bfield_transform(b, y)) == mukai_pairing(x, y), "pairing preserved #" + std::to_string(t));
    ok(bfield_transform(b, bfield_transform(b2, x)) == bfield_transform(add(b, b2), x),
       "e^B e^B' = e^{B+B'} #" + std::to_string(t));
    ok(bx.deg0() == x.deg0(), "deg0 fixed #" + std::to_string(t));
  }
  return std::to_string(cases) + " random rational (x, y, B, B')";
}

std::string c3(Check& ok) {
  const QuadScalar eps = QuadScalar(1) + QuadScalar::sqrt(2);
  for (long n = 1; n <= 10; ++n) {
    const RealVec h = uv(1, 1, n);
    const auto l = l_psi(exp_i(h));
    ok(l.rank() == 2, "rank 2 at n=" + std::to_string(n));
    ok(l.rank() == 2 && gauss_gram(l) == diag2(2 * n, 2 * n), "diag(2n,2n) at n=" + std::to_string(n));

    // e^{i eps H} = (1,0,0) - eps^2 (0,0,n) + i eps (0,H,0) with eps^2 irrational.
    const CohClass psi = exp_i(scale(eps, h));
    const auto l3 = l_psi(psi);
    IntMatrix expect(0, kMukaiRank);
    expect.append_row(mukai_vector(1, IntVec(kH2Rank, 0), 0));
    expect.append_row(mukai_vector(0, IntVec(kH2Rank, 0), n));
    expect.append_row(lift_h2<Integer>(to_int(h)));
    ok(l3.rank() == 3, "rank 3 at n=" + std::to_string(n));
    ok(l3.basis() == saturate(hnf_basis(expect)), "span of the three components at n=" + std::to_string(n));
    ok(in_complex_span(l3.basis(), psi), "psi in L_C at n=" + std::to_string(n));
  }
  return "n = 1..10: rank 2 diag(2n,2n); eps = 1+sqrt2 gives rank 3";
}

std::string c4(Check& ok) {
  for (long n = 1; n <= 10; ++n) {
    const std::string at = " at n=" + std::to_string(n);
    const auto [f1, f2] = build_si_mirror(n);
    const auto a = ns_t_tilde(f1.member), b = ns_t_tilde(f2.member);
    const auto ns = summarize(a.ns);
    ok(ns.rank == 22, "NS rank 22" + at);
    ok(ns.signature == SymDiagResult{2, 20, 0}, "NS signature (2,20)" + at);
    ok(ns.discriminant && ns.discriminant->divisors == std::vector<Integer>{2 * n, 2 * n}, "NS disc" + at);
    ok(gauss_gram(a.t) == diag2(2 * n, 2 * n), "T reduced" + at);
    ok(gauss_gram(b.ns) == diag2(2 * n, 2 * n), "dual NS reduced" + at);
    const auto bt = summarize(b.t);
    ok(bt.rank == 22 && bt.signature == SymDiagResult{2, 20, 0}, "dual T rank/signature" + at);
    ok(bt.discriminant && bt.discriminant->divisors == std::vector<Integer>{2 * n, 2 * n}, "dual T disc" + at);
    ok(check_polarization(f1.pol, f1.member).ok() && check_polarization(f2.pol, f2.member).ok(), "polarized" + at);
    const auto m = mirror_check(f1, f2);
    ok(m.verified(), "mirror_check" + at);
    ok(m.dims1.dim_a == 20 && m.dims1.dim_b == 0, "dims (20,0)" + at);
    ok(m.dims2.dim_a == 0 && m.dims2.dim_b == 20, "dims (0,20)" + at);
  }
  return "n = 1..10, NS/T swap, dims (20,0)/(0,20)";
}

std::string c5(Check& ok) {
  const auto e8 = L::direct_sum({L::E8minus(), L::E8minus()});
  for (long n = 1; n <= 10; ++n) {
    const std::string at = " at n=" + std::to_string(n);
    IntMatrix kp(0, kH2Rank);
    kp.append_row(to_int(uv(1, 1, n)));
    const auto res = dolgachev_mirror(Sublattice(k3_lattice_ptr(), kp));
    ok(std::holds_alternative<DolgachevSplit>(res), "split found" + at);
    if (const auto* s = std::get_if<DolgachevSplit>(&res)) {
      ok(invariants_match(s->n, L::direct_sum({L::diag({Integer(-2 * n)}), L::U(), e8})).matches(), "N invariants" + at);
      ok(s->split_check.matches() && s->mirror_check.matches(), "re-embedding checks" + at);
    }
  }
  // Kp = complement of <2>^2 in the K3 lattice: signature (1,19), complement definite.
  IntMatrix t(0, kH2Rank);
  t.append_row(to_int(uv(2, 1, 1)));
  t.append_row(to_int(uv(3, 1, 1)));
  const auto kp = ortho_complement(Sublattice(k3_lattice_ptr(), t));
  const auto start = std::chrono::steady_clock::now();
  const auto res = dolgachev_mirror(kp);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto* f = std::get_if<DolgachevFailure>(&res);
  ok(f && f->reason == "definite", "definite complement fails with reason definite");
  std::ostringstream d;
  d << "Kp = <2n>, n = 1..10 split; definite case refused in " << dt << " s";
  return d.str();
}

std::string c6(Check& ok) {
  std::mt19937_64 rng(606);
  std::size_t root2 = 0;
  std::set<std::vector<Integer>> forms;
  for (int t = 0; t < 200; ++t) {
    const bool s2 = t % 2 == 1;
    root2 += s2;
    const auto hk = random_hk(rng, s2);
    ok(h2_pair<QuadScalar>(hk.omega, hk.omega).is_rational(), "omega^2 rational #" + std::to_string(t));
    const auto r = is_kahler_rigid(hk.x);
    ok(r.kind == RigidKind::KahlerRigid, "Kahler rigid #" + std::to_string(t));
    ok(l_of(hk.x.phiA).rank() == 2, "L rank 2 #" + std::to_string(t));
    ok(r.rank == 22, "rank T = 22 #" + std::to_string(t));
    if (r.invariant) {
      const IntegralLattice inv(*r.invariant);
      ok(inv.rank() == 2 && inv.is_even() && inv.signature().positive_definite(),
         "invariant even positive definite #" + std::to_string(t));
      forms.insert(form_key(*r.invariant));
    } else {
      ok(false, "invariant missing #" + std::to_string(t));
    }
  }
  return "200 samples (" + std::to_string(root2) + " with kappa = sqrt2), " + std::to_string(forms.size()) +
         " distinct invariants";
}

std::string c7(Check& ok) {
  SurveyConfig cfg;
  cfg.max_det = 16;
  cfg.denominator_bound = 4;
  cfg.sqrt_d = {2};
  const auto a = kahler_rigid_survey(cfg);
  const auto b = kahler_rigid_survey(cfg);
  ok(a.per_form_witness.contains({2, 0, 2}), "achieves [[2,0],[0,2]]");
  ok(a.per_form_witness.contains({2, 0, 4}), "achieves [[2,0],[0,4]]");
  for (const auto& f : a.achieved) {
    ok(gauss_reduce2(IntegralLattice(f)).gram() == f, "fixed point " + to_string(f));
    ok(IntegralLattice(f).is_even() && IntegralLattice(f).signature().positive_definite(), "even definite " + to_string(f));
  }
  ok(a.violations == 0, "no invalid samples");
  ok(a.achieved == b.achieved && a.missing == b.missing && a.samples == b.samples, "deterministic lists");
  bool witnesses_same = a.per_form_witness.size() == b.per_form_witness.size();
  for (const auto& [k, w] : a.per_form_witness)
    witnesses_same = witnesses_same && b.per_form_witness.contains(k) && b.per_form_witness.at(k).b == w.b &&
                     b.per_form_witness.at(k).omega == w.omega;
  ok(witnesses_same, "deterministic witnesses");
  return std::to_string(a.samples) + " samples, " + std::to_string(a.achieved.size()) + " forms achieved, " +
         std::to_string(a.missing.size()) + " listed forms not reached (reported only)";
}

std::string c8(Check& ok) {
  const RealVec re = uv(2, 1, 1), im = uv(3, 1, 1);
  const CohClass sigma = sigma_class(re, im);
  for (const Rational& t : {Rational(1), Rational(-1), Rational(1, 2), Rational(-5, 3), Rational(3, 7), Rational(100)}) {
    std::vector<Complex> c(sigma.coords().begin(), sigma.coords().end());
    c[kDeg0] = Complex(QuadScalar(t), QuadScalar(0));
    const auto g = check_gcy(CohClass(c));
    ok(g.type() == GcyType::A, "type A at t=" + t.get_str());
    ok(g.norm() == QuadScalar(4), "norm 4 at t=" + t.get_str());
  }
  ok(check_gcy(sigma).type() == GcyType::B, "type B at t=0");
  return "t in {1,-1,1/2,-5/3,3/7,100} type A; t = 0 type B";
}

std::string c9(Check& ok) {
  std::mt19937_64 rng(909);
  const int n = 100;
  for (int t = 0; t < n; ++t) {
    const std::string at = " #" + std::to_string(t);
    const auto& amb = t % 2 ? mukai_lattice_ptr() : k3_lattice_ptr();
    const Sublattice s(amb, random_sublattice_rows(rng, amb->rank()));
    const auto sat = saturation(s);
    ok(same(ortho_complement(ortho_complement(s)), sat), "complement involution" + at);
    ok(same(saturation(sat), sat) && sat.contains(s), "saturation idempotent" + at);

    std::uniform_int_distribution<int> dim(2, 7);
    const std::size_t k = dim(rng);
    IntMatrix g = oracle::random_matrix(rng, k, k, -4, 4);
    g = g + g.transpose();
    const IntMatrix u = oracle::random_unimodular(rng, k);
    ok(sym_signature(u.transpose() * g * u) == sym_signature(g), "signature congruence-invariant" + at);

    const auto hk = random_hk(rng, t % 3 == 0);
    const auto fwd = ns_t_tilde(hk.x);
    const auto swp = ns_t_tilde(validate_gk3(hk.x.phiB, hk.x.phiA));
    ok(same(fwd.ns, swp.t) && same(fwd.t, swp.ns), "swap duality" + at);

    const IntVec bint = random_int_h2(rng);
    const auto moved = ns_t_tilde(bfield_transport(bint, hk.x));
    ok(moved.ns.basis() == hnf_basis(bfield_rows(bint, fwd.ns.basis())), "NS B-field equivariance" + at);
    ok(moved.t.basis() == hnf_basis(bfield_rows(bint, fwd.t.basis())), "T B-field equivariance" + at);
  }
  return "5 properties x " + std::to_string(n) + " instances";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Mukai ambient invariants", 1, c1},
      {2, "B-field action is orthogonal and additive", 10, c2},
      {3, "L_psi of e^{iH} and of e^{i eps H}", 5, c3},
      {4, "Shioda-Inose mirror families", 30, c4},
      {5, "Dolgachev mirror lattices", 10, c5},
      {6, "Kahler rigidity of rational-omega^2 samples", 30, c6},
      {7, "Kahler-rigid survey witnesses", 120, c7},
      {8, "interpolation t + sigma", 1, c8},
      {9, "property suites", 60, c9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Check ok;
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    try {
      detail = c.body(ok);
    } catch (const std::exception& e) {
      ok(false, std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = dt < c.limit_s;
    const bool pass = ok.failures.empty() && in_time;
    failed += !pass;
    std::printf("%s criterion %d: %s | %zu checks | %.3f s (limit %.0f s) | %s\n", pass ? "PASS" : "FAIL", c.id,
                c.title.c_str(), ok.count, dt, c.limit_s, detail.c_str());
    if (!in_time) std::printf("    over time limit\n");
    for (std::size_t i = 0; i < ok.failures.size() && i < 5; ++i) std::printf("    failed: %s\n", ok.failures[i].c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
