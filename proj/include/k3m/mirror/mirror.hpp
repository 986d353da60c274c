#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "k3m/gk3/gk3.hpp"
#include "k3m/lattice/gauss.hpp"
#include "k3m/lattice/hyperbolic.hpp"

namespace k3m {

/// (K, L) embedded in the Mukai lattice with type A / type B witnesses.
/// Embedded K and L are not required to be orthogonal.
struct PolarizationData {
  Sublattice k;
  Sublattice l;
  Member witness_a;
  Member witness_b;
};

struct FamilySpec {
  PolarizationData pol;
  GeneralizedK3 member;
};

struct Clause {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct PolarizationReport {
  std::vector<Clause> clauses;
  // [Mukai : saturation of K + L] over (K + L); 1 iff K + L is primitive.
  Integer joint_saturation_index = 0;
  IntMatrix kl_pairing;  // Gram block <K_i, L_j>
  bool kl_orthogonal = false;

  bool ok() const {
    for (const auto& c : clauses)
      if (!c.ok) return false;
    return true;
  }
  const Clause* failed() const {
    for (const auto& c : clauses)
      if (!c.ok) return &c;
    return nullptr;
  }
};

namespace detail {

inline std::string sig_string(const SymDiagResult& s) {
  return "(" + std::to_string(s.n_plus) + "," + std::to_string(s.n_minus) + "," + std::to_string(s.n_zero) + ")";
}

// Every real vector of the member lies in the rational span of `host`.
inline bool member_in_span(const Member& m, const Sublattice& host) {
  if (const auto* g = std::get_if<GCYClass>(&m)) return in_complex_span(host.basis(), g->cls());
  const auto& s = std::get<GenericClass>(m).support().basis();
  return host.rank() > 0 && rank(vstack(host.basis(), s)) == host.rank();
}

inline Integer index_in_saturation(const IntMatrix& basis) {
  if (basis.rows() == 0) return 1;
  // |det| of the change of basis from the saturation.
  const IntMatrix sat = saturate(basis);
  IntMatrix coords(0, basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    auto c = integer_coordinates(sat, basis.row(i));
    if (!c) throw DomainError("basis not inside its saturation");
    coords.append_row(*c);
  }
  return abs(determinant(coords));
}

}  // namespace detail

/// Checks each clause of a (K, L)-polarization of x and names the ones that
/// fail. Primitivity is checked for K and L separately; the index of K + L in
/// its saturation is reported, since for rank K + rank L = 24 a non-unimodular
/// K + L can never be primitive.
inline PolarizationReport check_polarization(const PolarizationData& p, const GeneralizedK3& x) {
  PolarizationReport r;
  auto add = [&r](std::string name, bool ok, std::string detail = {}) {
    r.clauses.push_back({std::move(name), ok, std::move(detail)});
  };
  const auto& mk = mukai_lattice();
  const bool ambient_ok = p.k.ambient() == mk && p.l.ambient() == mk;
  add("ambient", ambient_ok, ambient_ok ? "" : "K and L must be embedded in the Mukai lattice");
  if (!ambient_ok) return r;

  const std::size_t kappa = p.k.rank(), lambda = p.l.rank();
  const auto sk = p.k.as_lattice().signature();
  const auto sl = p.l.as_lattice().signature();
  add("rank sum", kappa + lambda == 24, std::to_string(kappa) + " + " + std::to_string(lambda));
  add("signature K", kappa >= 2 && sk == SymDiagResult{2, kappa - 2, 0}, detail::sig_string(sk));
  add("signature L", lambda >= 2 && sl == SymDiagResult{2, lambda - 2, 0}, detail::sig_string(sl));
  add("primitive K", is_primitive(p.k));
  add("primitive L", is_primitive(p.l));
  const IntMatrix stacked = vstack(p.k.basis(), p.l.basis());
  const bool injective = rank(stacked) == kappa + lambda;
  add("K + L injective", injective, "rank " + std::to_string(rank(stacked)));
  if (injective) r.joint_saturation_index = detail::index_in_saturation(stacked);

  const auto [ns, t] = ns_t_tilde(x);
  add("K in NS", ns.contains(p.k));
  add("L in T", t.contains(p.l));
  add("witness A type", type_of(p.witness_a) == GcyType::A, to_string(type_of(p.witness_a)));
  add("witness A in K_C", detail::member_in_span(p.witness_a, p.k));
  add("witness B type", type_of(p.witness_b) == GcyType::B, to_string(type_of(p.witness_b)));
  add("witness B in L_C", detail::member_in_span(p.witness_b, p.l));

  r.kl_pairing = p.k.basis() * mk.gram() * p.l.basis().transpose();
  r.kl_orthogonal = r.kl_pairing.is_zero();
  return r;
}

struct ModuliDims {
  long dim_a = 0;  // rank K - 2
  long dim_b = 0;  // rank L - 2
  bool total_20 = false;
};

inline ModuliDims moduli_dims(const PolarizationData& p) {
  if (p.k.rank() < 2 || p.l.rank() < 2) throw DomainError("moduli dimensions need rank K, rank L >= 2");
  ModuliDims d{static_cast<long>(p.k.rank()) - 2, static_cast<long>(p.l.rank()) - 2, false};
  d.total_20 = d.dim_a + d.dim_b == 20;
  return d;
}

struct Comparison {
  std::string name;
  InvariantMatch match;
};

struct MirrorReport {
  std::vector<Comparison> lattices;  // K1 vs L2, L1 vs K2
  std::vector<Comparison> members;   // NS(X) vs T(X'), T(X) vs NS(X')
  ModuliDims dims1, dims2;
  bool dims_swap = false;

  bool verified() const {
    for (const auto& c : lattices)
      if (!c.match.matches()) return false;
    for (const auto& c : members)
      if (!c.match.matches()) return false;
    return dims_swap;
  }
};

/// f1 is (K, L)-polarized, f2 is (L, K)-polarized: compares K1 with L2 and L1
/// with K2 (exactly in rank 2 definite, by genus invariants otherwise).
inline MirrorReport mirror_check(const FamilySpec& f1, const FamilySpec& f2) {
  MirrorReport r;
  r.lattices.push_back({"K1 vs L2", invariants_match(f1.pol.k.as_lattice(), f2.pol.l.as_lattice())});
  r.lattices.push_back({"L1 vs K2", invariants_match(f1.pol.l.as_lattice(), f2.pol.k.as_lattice())});
  const auto a = ns_t_tilde(f1.member);
  const auto b = ns_t_tilde(f2.member);
  r.members.push_back({"NS(X) vs T(X')", invariants_match(a.ns.as_lattice(), b.t.as_lattice())});
  r.members.push_back({"T(X) vs NS(X')", invariants_match(a.t.as_lattice(), b.ns.as_lattice())});
  r.dims1 = moduli_dims(f1.pol);
  r.dims2 = moduli_dims(f2.pol);
  r.dims_swap = r.dims1.dim_a == r.dims2.dim_b && r.dims1.dim_b == r.dims2.dim_a;
  return r;
}

struct DolgachevSplit {
  IntegralLattice n;          // N with Kp^perp = N + U
  Sublattice complement;      // Kp^perp in the K3 lattice
  Sublattice n_embedded;      // N inside the K3 lattice
  InvariantMatch split_check;   // N + U vs Kp^perp
  InvariantMatch mirror_check;  // N^perp vs Kp + U
};

struct DolgachevFailure {
  std::string reason;  // "definite" or "radius"
  std::string message;
};

using DolgachevResult = std::variant<DolgachevSplit, DolgachevFailure>;

/// Kp primitive of signature (1, t) in the K3 lattice; looks for N with
/// Kp^perp = N + U. A definite complement fails without any search.
inline DolgachevResult dolgachev_mirror(const Sublattice& kp, long radius = kDefaultSplitRadius) {
  if (!(kp.ambient() == lattices::K3())) throw DomainError("Kp must be a sublattice of the K3 lattice");
  if (!is_primitive(kp)) throw DomainError("Kp is not primitive");
  const auto sig = kp.as_lattice().signature();
  if (sig.n_plus != 1 || sig.n_zero != 0)
    throw DomainError("Kp must have signature (1,t), got " + detail::sig_string(sig));
  const auto comp = ortho_complement(kp);
  const auto cl = comp.as_lattice("Kp^perp");
  const auto cs = cl.signature();
  if (cs.n_zero == 0 && (cs.n_plus == 0 || cs.n_minus == 0))
    return DolgachevFailure{"definite", "Kp^perp has signature " + detail::sig_string(cs) +
                                            " and contains no isotropic vector"};
  auto split = find_hyperbolic_split(cl, radius);
  if (auto* no = std::get_if<NoSplit>(&split)) return DolgachevFailure{no->code, no->message};
  auto& hs = std::get<HyperbolicSplit>(split);
  const Sublattice n_emb(comp.ambient_ptr(), hs.n_basis * comp.basis());
  const auto nu = lattices::direct_sum({hs.n, lattices::U()});
  const auto kpu = lattices::direct_sum({kp.as_lattice(), lattices::U()});
  return DolgachevSplit{hs.n, comp, n_emb, invariants_match(nu, cl),
                        invariants_match(ortho_complement(n_emb).as_lattice(), kpu)};
}

// Integral B-field transport of a whole polarization datum.
inline PolarizationData bfield_transport(std::span<const Integer> b, const PolarizationData& p) {
  return {Sublattice(mukai_lattice_ptr(), bfield_rows(b, p.k.basis())),
          Sublattice(mukai_lattice_ptr(), bfield_rows(b, p.l.basis())), bfield_transport(b, p.witness_a),
          bfield_transport(b, p.witness_b)};
}

inline FamilySpec bfield_transport(std::span<const Integer> b, const FamilySpec& f) {
  return {bfield_transport(b, f.pol), bfield_transport(b, f.member)};
}

namespace detail {

inline IntMatrix mukai_rows(const std::vector<IntVec>& vs) {
  IntMatrix m(0, kMukaiRank);
  for (const auto& v : vs) m.append_row(v);
  return m;
}

inline IntVec h2_lift(const IntVec& v) { return lift_h2<Integer>(v); }

inline void require_polarized(const FamilySpec& f, const char* which) {
  const auto rep = check_polarization(f.pol, f.member);
  if (const auto* c = rep.failed())
    throw DomainError(std::string(which) + ": clause '" + c->name + "' fails " + c->detail);
}

}  // namespace detail

/// Shioda-Inose mirror pair for K = <-2n>^2 + U + E8^2, L = <2n>^2.
/// First family: X = (generic member of NS', sigma). Second: X' = (e^{iH},
/// generic member of the complement of L_{e^{iH}}).
inline std::pair<FamilySpec, FamilySpec> build_si_mirror(long n) {
  if (n < 1) throw DomainError("n must be positive");
  const auto mk = mukai_lattice_ptr();
  const RealVec v1 = to_real(u_vector(2, 1, n)), v2 = to_real(u_vector(3, 1, n));
  const auto sigma = check_gcy(sigma_class(v1, v2));
  const auto omega = to_real(u_vector(1, 1, n));
  const auto phi_a = check_gcy(exp_i(omega));

  const Sublattice l1(mk, detail::mukai_rows({detail::h2_lift(u_vector(2, 1, n)), detail::h2_lift(u_vector(3, 1, n))}));
  const Sublattice k1 = ortho_complement(l1);
  FamilySpec f1{{k1, l1, phi_a, sigma}, validate_gk3(GenericClass(k1, GcyType::A), sigma)};

  const Sublattice k2 = l_psi(phi_a);  // span{(1,0,-n), (0,H,0)}
  const Sublattice l2 = ortho_complement(k2);
  FamilySpec f2{{k2, l2, phi_a, sigma}, validate_gk3(phi_a, GenericClass(l2, GcyType::B))};

  detail::require_polarized(f1, "Shioda-Inose family");
  detail::require_polarized(f2, "Shioda-Inose mirror family");
  return {std::move(f1), std::move(f2)};
}

/// Classical Dolgachev pair for a degree-2n polarization: K = K' + U with
/// K' = <2n>, L = K'^perp in the K3 lattice; the mirror has K' replaced by
/// its own hyperbolic-split partner. Both members are generic.
inline std::pair<FamilySpec, FamilySpec> build_classical_mirror(long n) {
  if (n < 1) throw DomainError("n must be positive");
  const auto mk = mukai_lattice_ptr();
  const IntVec zero(kH2Rank, Integer(0));
  const IntVec h = u_vector(1, 1, n);

  const Sublattice k1(mk, detail::mukai_rows({mukai_vector(1, zero, 0), mukai_vector(0, zero, 1), detail::h2_lift(h)}));
  const Sublattice l1 = ortho_complement(k1);
  const auto wa1 = check_gcy(exp_i(to_real(h)));
  const auto wb1 = check_gcy(sigma_class(to_real(u_vector(2, 1, n)), to_real(u_vector(3, 1, n))));
  FamilySpec f1{{k1, l1, wa1, wb1},
                validate_gk3(GenericClass(k1, GcyType::A), GenericClass(l1, GcyType::B))};

  IntVec e2 = zero, f2v = zero;
  e2[u_e(2)] = 1;
  f2v[u_f(2)] = 1;
  const Sublattice l2(mk, detail::mukai_rows({detail::h2_lift(h), detail::h2_lift(e2), detail::h2_lift(f2v)}));
  const Sublattice k2 = ortho_complement(l2);
  const auto wa2 = check_gcy(exp_i(to_real(u_vector(3, 1, 1))));
  const auto wb2 = check_gcy(sigma_class(to_real(h), to_real(u_vector(2, 1, n))));
  FamilySpec f2{{k2, l2, wa2, wb2},
                validate_gk3(GenericClass(k2, GcyType::A), GenericClass(l2, GcyType::B))};

  detail::require_polarized(f1, "classical family");
  detail::require_polarized(f2, "classical mirror family");
  return {std::move(f1), std::move(f2)};
}

}  // namespace k3m
