#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "k3m/exactmath/inertia.hpp"
#include "k3m/exactmath/normal_form.hpp"
#include "k3m/lattice/sublattice.hpp"
#include "k3m/mukai/classes.hpp"

namespace k3m {

enum class GcyType { A, B };

inline std::string to_string(GcyType t) { return t == GcyType::A ? "A" : "B"; }

/// A class that passed both generalized CY conditions. Only check_gcy
/// constructs one.
class GCYClass {
 public:
  const CohClass& cls() const { return cls_; }
  GcyType type() const { return type_; }
  // <phi, conj(phi)>, exact and positive.
  const QuadScalar& norm() const { return norm_; }

 private:
  GCYClass(CohClass c, GcyType t, QuadScalar n) : cls_(std::move(c)), type_(t), norm_(std::move(n)) {}
  friend GCYClass check_gcy(const CohClass& x);

  CohClass cls_;
  GcyType type_ = GcyType::B;
  QuadScalar norm_;
};

/// <x,x> = 0 and <x, conj x> > 0; type A iff deg0 != 0.
inline GCYClass check_gcy(const CohClass& x) {
  const Complex self = mukai_pairing(x, x);
  if (!self.is_zero()) throw DomainError("<phi,phi> = " + self.to_string() + ", expected 0");
  const Complex herm = mukai_pairing(x, x.conj());
  // <x, conj x> = <Re,Re> + <Im,Im> is real for any x.
  if (herm.re.sign() <= 0) throw DomainError("<phi,conj(phi)> = " + herm.re.to_string() + ", expected > 0");
  return GCYClass(x, x.deg0().is_zero() ? GcyType::B : GcyType::A, herm.re);
}

/// Stand-in for a generic member of a family: L_phi is the declared support.
class GenericClass {
 public:
  GenericClass(Sublattice support, GcyType type) : support_(std::move(support)), type_(type) {
    if (support_.ambient().rank() != kMukaiRank || !(support_.ambient() == mukai_lattice()))
      throw DomainError("generic support must live in the Mukai lattice");
    const auto sig = congruence_inertia(to_rational(support_.induced_gram()));
    if (sig.n_plus < 2)
      throw DomainError("generic support has n_plus = " + std::to_string(sig.n_plus) + ", needs a positive 2-plane");
    if (type_ == GcyType::A) {
      bool meets = false;
      for (std::size_t i = 0; i < support_.rank(); ++i) meets = meets || support_.basis()(i, kDeg0) != 0;
      if (!meets) throw DomainError("type A generic support has no vector with nonzero degree-0 part");
    }
  }

  const Sublattice& support() const { return support_; }
  GcyType type() const { return type_; }

 private:
  Sublattice support_;
  GcyType type_;
};

// Rational coordinate vectors P, Q, U, V with x = (P + Q sqrt d) + i (U + V sqrt d).
inline std::array<std::vector<Rational>, 4> rational_components(const CohClass& x) {
  std::array<std::vector<Rational>, 4> out;
  for (auto& v : out) v.assign(kMukaiRank, Rational(0));
  for (std::size_t i = 0; i < kMukaiRank; ++i) {
    out[0][i] = x[i].re.a();
    out[1][i] = x[i].re.b();
    out[2][i] = x[i].im.a();
    out[3][i] = x[i].im.b();
  }
  return out;
}

/// Smallest saturated sublattice L of the Mukai lattice with x in L (x) C.
/// Rank is at most 4 since x has four rational components.
inline Sublattice l_psi(const CohClass& x) {
  IntMatrix gens(0, kMukaiRank);
  for (const auto& comp : rational_components(x)) {
    bool zero = true;
    for (const auto& c : comp) zero = zero && c == 0;
    if (!zero) gens.append_row(primitive_integer_vector(comp));
  }
  if (gens.rows() == 0) return {mukai_lattice_ptr(), IntMatrix(0, kMukaiRank)};
  return {mukai_lattice_ptr(), saturate(hnf_basis(gens))};
}

inline Sublattice l_psi(const GCYClass& x) { return l_psi(x.cls()); }

// x lies in the complex span of the rows of basis.
inline bool in_complex_span(const IntMatrix& basis, const CohClass& x) {
  for (const auto& comp : rational_components(x)) {
    bool zero = true;
    for (const auto& c : comp) zero = zero && c == 0;
    if (zero) continue;
    if (basis.rows() == 0 || !rational_span_contains(basis, comp)) return false;
  }
  return true;
}

struct PeriodPlane {
  RealVec re;
  RealVec im;
  Matrix<QuadScalar> gram;  // 2x2 Gram of (re, im)
};

/// P = R Re(x) + R Im(x) with its Gram; the Gram must be positive definite.
inline PeriodPlane period_plane(const CohClass& x) {
  PeriodPlane p{x.re(), x.im(), Matrix<QuadScalar>(2, 2)};
  const QuadScalar rr = mukai_pair<QuadScalar>(p.re, p.re);
  const QuadScalar ri = mukai_pair<QuadScalar>(p.re, p.im);
  const QuadScalar ii = mukai_pair<QuadScalar>(p.im, p.im);
  p.gram(0, 0) = rr;
  p.gram(0, 1) = p.gram(1, 0) = ri;
  p.gram(1, 1) = ii;
  const QuadScalar det = rr * ii - ri * ri;
  if (det.is_zero()) throw DomainError("degenerate period plane: Re and Im are dependent");
  if (!congruence_inertia(p.gram).positive_definite())
    throw DomainError("period plane is not positive: Gram " + to_string(p.gram));
  return p;
}

inline PeriodPlane period_plane(const GCYClass& x) { return period_plane(x.cls()); }

// e^{B + i omega} = (1, B + i omega, (B + i omega)^2 / 2), scaled by lambda.
inline CohClass exp_class(std::span<const QuadScalar> b, std::span<const QuadScalar> omega,
                          const Complex& lambda = Complex(1)) {
  if (omega.size() != kH2Rank || b.size() != kH2Rank) throw DomainError("degree-2 class must have 22 coordinates");
  std::vector<Complex> d2(kH2Rank);
  for (std::size_t i = 0; i < kH2Rank; ++i) d2[i] = Complex(b[i], omega[i]);
  const Complex sq = h2_pair<Complex>(d2, d2);
  const Complex half = sq * Complex(QuadScalar(Rational(1, 2)));
  for (auto& c : d2) c = lambda * c;
  return CohClass(lambda, d2, lambda * half);
}

inline CohClass exp_i(std::span<const QuadScalar> omega) {
  const RealVec zero(kH2Rank, QuadScalar(0));
  return exp_class(zero, omega);
}

// Type B class (0, re + i im, 0).
inline CohClass sigma_class(std::span<const QuadScalar> re, std::span<const QuadScalar> im) {
  std::vector<Complex> d2(kH2Rank);
  for (std::size_t i = 0; i < kH2Rank; ++i) d2[i] = Complex(re[i], im[i]);
  return CohClass(Complex(0), d2, Complex(0));
}

}  // namespace k3m
