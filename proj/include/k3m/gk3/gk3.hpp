#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "k3m/lattice/gauss.hpp"
#include "k3m/mukai/gcy.hpp"

namespace k3m {

using Member = std::variant<GCYClass, GenericClass>;

inline bool is_explicit(const Member& m) { return std::holds_alternative<GCYClass>(m); }

inline GcyType type_of(const Member& m) {
  return std::visit([](const auto& x) { return x.type(); }, m);
}

/// L_phi: computed for an explicit class, the declared support for a generic one.
inline Sublattice l_of(const Member& m) {
  if (const auto* g = std::get_if<GCYClass>(&m)) return l_psi(*g);
  return saturation(std::get<GenericClass>(m).support());
}

enum class GkStatus { Verified, FormalGeneric };

inline std::string to_string(GkStatus s) { return s == GkStatus::Verified ? "Verified" : "FormalGeneric"; }

struct PiSpace {
  std::array<RealVec, 4> vectors;  // Re phiA, Im phiA, Re phiB, Im phiB
  Matrix<QuadScalar> gram;
};

struct GeneralizedK3 {
  Member phiA;
  Member phiB;
  GkStatus status = GkStatus::FormalGeneric;
  std::optional<PiSpace> pi;  // Verified pairs only
  // Conditions that were not checked because a member is generic.
  std::vector<std::string> unchecked;
  // Generic pairs: whether the explicit plane (or the other support) is
  // orthogonal to the generic support. Informational only.
  std::optional<bool> supports_orthogonal;
};

namespace detail {

inline const char* const kPiNames[4] = {"Re phiA", "Im phiA", "Re phiB", "Im phiB"};

// Real vectors spanning the member's plane or support.
inline std::vector<RealVec> spanning_vectors(const Member& m) {
  std::vector<RealVec> out;
  if (const auto* g = std::get_if<GCYClass>(&m)) {
    out.push_back(g->cls().re());
    out.push_back(g->cls().im());
    return out;
  }
  const auto& b = std::get<GenericClass>(m).support().basis();
  for (std::size_t i = 0; i < b.rows(); ++i) out.push_back(to_real(b.row(i)));
  return out;
}

}  // namespace detail

/// Validates (phiA, phiB) as a generalized K3 pair: plane orthogonality (all
/// four cross pairings), equal norms, and a positive definite 4-space. A
/// generic member downgrades the pair to FormalGeneric without those checks.
inline GeneralizedK3 validate_gk3(Member phiA, Member phiB) {
  if (!(l_of(phiA).ambient() == mukai_lattice()) || !(l_of(phiB).ambient() == mukai_lattice()))
    throw DomainError("members must live in the Mukai lattice");
  GeneralizedK3 x{std::move(phiA), std::move(phiB)};
  if (!is_explicit(x.phiA) || !is_explicit(x.phiB)) {
    x.status = GkStatus::FormalGeneric;
    x.unchecked = {"plane orthogonality", "equal norm", "positive 4-space"};
    const auto va = detail::spanning_vectors(x.phiA);
    const auto vb = detail::spanning_vectors(x.phiB);
    bool orth = true;
    for (const auto& a : va)
      for (const auto& b : vb) orth = orth && mukai_pair<QuadScalar>(a, b).is_zero();
    x.supports_orthogonal = orth;
    return x;
  }
  const auto& a = std::get<GCYClass>(x.phiA);
  const auto& b = std::get<GCYClass>(x.phiB);
  join_fields(a.cls().field(), b.cls().field());
  PiSpace pi{{a.cls().re(), a.cls().im(), b.cls().re(), b.cls().im()}, Matrix<QuadScalar>(4, 4)};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) pi.gram(i, j) = mukai_pair<QuadScalar>(pi.vectors[i], pi.vectors[j]);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 2; j < 4; ++j)
      if (!pi.gram(i, j).is_zero())
        throw DomainError(std::string("planes not orthogonal: <") + detail::kPiNames[i] + ", " + detail::kPiNames[j] +
                          "> = " + pi.gram(i, j).to_string());
  if (!(a.norm() == b.norm()))
    throw DomainError("norm mismatch: <phiA,conj phiA> = " + a.norm().to_string() +
                      " vs <phiB,conj phiB> = " + b.norm().to_string());
  if (!congruence_inertia(pi.gram).positive_definite())
    throw DomainError("4-space Pi is not positive definite: Gram " + to_string(pi.gram));
  x.status = GkStatus::Verified;
  x.pi = std::move(pi);
  return x;
}

/// e^{B} applied to a member; B integral so generic supports stay lattices.
inline Member bfield_transport(std::span<const Integer> b, const Member& m) {
  if (const auto* g = std::get_if<GCYClass>(&m)) return check_gcy(bfield_transform(to_real(b), g->cls()));
  const auto& gen = std::get<GenericClass>(m);
  return GenericClass(Sublattice(mukai_lattice_ptr(), bfield_rows(b, gen.support().basis())), gen.type());
}

inline GeneralizedK3 bfield_transport(std::span<const Integer> b, const GeneralizedK3& x) {
  return validate_gk3(bfield_transport(b, x.phiA), bfield_transport(b, x.phiB));
}

struct NsT {
  Sublattice ns;  // L_{phiB}^perp
  Sublattice t;   // L_{phiA}^perp
};

/// Generalized Neron-Severi and transcendental lattices. T is the complement
/// of L_{phiA}, not the complement of NS.
inline NsT ns_t_tilde(const GeneralizedK3& x) {
  return {ortho_complement(l_of(x.phiB)), ortho_complement(l_of(x.phiA))};
}

struct LatticeSummary {
  std::size_t rank = 0;
  IntMatrix gram;
  SymDiagResult signature;
  std::optional<DiscriminantGroup> discriminant;  // nondegenerate only
};

inline LatticeSummary summarize(const IntegralLattice& l) {
  LatticeSummary s{l.rank(), l.gram(), l.signature(), std::nullopt};
  if (l.rank() == 0 || l.is_nondegenerate()) s.discriminant = discriminant(l);
  return s;
}
inline LatticeSummary summarize(const Sublattice& l) { return summarize(l.as_lattice()); }

struct SignatureProfile {
  LatticeSummary ns;
  LatticeSummary t;
  LatticeSummary both;  // NS ∩ T
  bool bound_holds = false;  // n_plus <= 2 for NS and T
};

inline SignatureProfile signature_profile(const GeneralizedK3& x) {
  const auto la = l_of(x.phiA);
  const auto lb = l_of(x.phiB);
  SignatureProfile p{summarize(ortho_complement(lb)), summarize(ortho_complement(la)),
                     summarize(common_complement(la, lb))};
  p.bound_holds = p.ns.signature.n_plus <= 2 && p.t.signature.n_plus <= 2;
  return p;
}

struct Identity {
  std::string name;
  bool holds = false;
  std::string value;
};

struct HkClassification {
  std::string label;    // B-with-A, A-with-A, A-with-B, B-with-B
  std::string case_id;  // "1", "2a", "2b", "none"
  std::vector<Identity> identities;

  bool all_hold() const {
    for (const auto& i : identities)
      if (!i.holds) return false;
    return true;
  }
};

// (lambda, B, omega) with phi = lambda e^{B + i omega}; phi of type A.
struct TypeAData {
  Complex lambda;
  RealVec b;
  RealVec omega;
};

inline TypeAData type_a_data(const GCYClass& x) {
  if (x.type() != GcyType::A) throw DomainError("type A decomposition of a type B class");
  TypeAData d{x.cls().deg0(), RealVec(kH2Rank), RealVec(kH2Rank)};
  for (std::size_t i = 0; i < kH2Rank; ++i) {
    const Complex q = x.cls().deg2()[i] / d.lambda;
    d.b[i] = q.re;
    d.omega[i] = q.im;
  }
  return d;
}

/// Which item of the partner classification the pair falls under, with the
/// cohomological identities checked exactly. phiA is the partner of phiB.
inline HkClassification classify_hk_pair(const GCYClass& phiA, const GCYClass& phiB) {
  HkClassification c;
  auto eq = [](std::string name, const QuadScalar& l, const QuadScalar& r) {
    return Identity{std::move(name), l == r, l.to_string() + " vs " + r.to_string()};
  };
  const bool a_is_a = phiA.type() == GcyType::A;
  const bool b_is_a = phiB.type() == GcyType::A;
  if (a_is_a && !b_is_a) {
    c.label = "B-with-A";
    c.case_id = "1";
    c.identities.push_back(eq("2|lambda|^2 omega^2 = <sigma,conj sigma>", phiA.norm(), phiB.norm()));
  } else if (!a_is_a && b_is_a) {
    c.label = "A-with-B";
    c.case_id = "2a";
    c.identities.push_back(eq("<sigma,conj sigma> = 2|lambda|^2 omega^2", phiA.norm(), phiB.norm()));
  } else if (!a_is_a && !b_is_a) {
    c.label = "B-with-B";
    c.case_id = "none";
  } else {
    c.label = "A-with-A";
    c.case_id = "2b";
    const auto base = type_a_data(phiB);
    const auto partner = type_a_data(phiA);
    // Shift by -B of phiB so that phiB = lambda e^{i omega}.
    RealVec bs = partner.b;
    for (std::size_t i = 0; i < kH2Rank; ++i) bs[i] -= base.b[i];
    const auto& w = base.omega;
    const auto& wp = partner.omega;
    auto dot = [](const RealVec& x, const RealVec& y) { return h2_pair<QuadScalar>(x, y); };
    c.identities.push_back(eq("omega.omega' = 0", dot(w, wp), QuadScalar(0)));
    c.identities.push_back(eq("omega.B' = 0", dot(w, bs), QuadScalar(0)));
    c.identities.push_back(eq("omega'.B' = 0", dot(wp, bs), QuadScalar(0)));
    c.identities.push_back(eq("B'^2 = omega^2 + omega'^2", dot(bs, bs), dot(w, w) + dot(wp, wp)));
    c.identities.push_back(eq("|lambda|^2 omega^2 = |lambda'|^2 omega'^2", base.lambda.abs2() * dot(w, w),
                              partner.lambda.abs2() * dot(wp, wp)));
  }
  return c;
}

inline HkClassification classify_hk_pair(const GeneralizedK3& x) {
  if (!is_explicit(x.phiA) || !is_explicit(x.phiB)) throw DomainError("classification needs explicit classes");
  return classify_hk_pair(std::get<GCYClass>(x.phiA), std::get<GCYClass>(x.phiB));
}

}  // namespace k3m
