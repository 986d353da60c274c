#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "k3m/lattice/lattice.hpp"

namespace k3m {

/// A lattice presented by a basis inside a fixed ambient lattice. Rows of
/// the basis are coordinates in the ambient basis.
class Sublattice {
 public:
  Sublattice() = default;
  Sublattice(IntegralLattice ambient, IntMatrix basis)
      : ambient_(std::make_shared<const IntegralLattice>(std::move(ambient))), basis_(std::move(basis)) {
    check();
  }
  Sublattice(std::shared_ptr<const IntegralLattice> ambient, IntMatrix basis)
      : ambient_(std::move(ambient)), basis_(std::move(basis)) {
    check();
  }

  const IntegralLattice& ambient() const { return *ambient_; }
  const std::shared_ptr<const IntegralLattice>& ambient_ptr() const { return ambient_; }
  const IntMatrix& basis() const { return basis_; }
  std::size_t rank() const { return basis_.rows(); }

  IntMatrix induced_gram() const { return basis_ * ambient_->gram() * basis_.transpose(); }
  IntegralLattice as_lattice(std::string name = {}) const { return IntegralLattice(induced_gram(), std::move(name)); }

  bool contains(std::span<const Integer> v) const { return integer_coordinates(basis_, v).has_value(); }
  bool contains(const Sublattice& other) const { return row_span_contains(basis_, other.basis_); }

  // Same sublattice of the same ambient, compared through HNF bases.
  friend bool same_sublattice(const Sublattice& a, const Sublattice& b) {
    return a.ambient() == b.ambient() && hnf_basis(a.basis_) == hnf_basis(b.basis_);
  }

 private:
  void check() const {
    if (basis_.rows() > 0 && basis_.cols() != ambient_->rank())
      throw DomainError("sublattice basis has " + std::to_string(basis_.cols()) +
                        " coordinates, ambient rank is " + std::to_string(ambient_->rank()));
    if (basis_.rows() > 0 && k3m::rank(basis_) != basis_.rows()) throw DomainError("dependent basis");
  }

  std::shared_ptr<const IntegralLattice> ambient_ = std::make_shared<const IntegralLattice>();
  IntMatrix basis_;
};

/// Saturated orthogonal complement {x : <x, v> = 0 for all basis rows v},
/// returned with an HNF basis.
inline Sublattice ortho_complement(const Sublattice& s) {
  const auto& amb = s.ambient();
  if (!amb.is_nondegenerate()) throw DomainError("orthogonal complement needs a nondegenerate ambient");
  if (s.rank() == 0) return {s.ambient_ptr(), IntMatrix::identity(amb.rank())};
  return {s.ambient_ptr(), int_kernel(amb.gram() * s.basis().transpose())};
}

inline Sublattice saturation(const Sublattice& s) { return {s.ambient_ptr(), saturate(s.basis())}; }

inline bool is_primitive(const Sublattice& s) {
  if (s.rank() == 0) return true;
  return saturate(s.basis()) == hnf_basis(s.basis());
}

// Intersection of the orthogonal complements of a and b (same ambient).
inline Sublattice common_complement(const Sublattice& a, const Sublattice& b) {
  const auto& amb = a.ambient();
  if (!amb.is_nondegenerate()) throw DomainError("orthogonal complement needs a nondegenerate ambient");
  IntMatrix stacked = vstack(a.basis(), b.basis());
  if (stacked.rows() == 0) return {a.ambient_ptr(), IntMatrix::identity(amb.rank())};
  return {a.ambient_ptr(), int_kernel(amb.gram() * stacked.transpose())};
}

/// Elementary divisors > 1 of the Gram matrix, i.e. the invariant factors
/// of the discriminant group L^* / L.
struct DiscriminantGroup {
  std::vector<Integer> divisors;

  Integer order() const {
    Integer o = 1;
    for (const auto& d : divisors) o *= d;
    return o;
  }
  bool trivial() const { return divisors.empty(); }
  friend bool operator==(const DiscriminantGroup&, const DiscriminantGroup&) = default;
};

inline DiscriminantGroup discriminant(const IntegralLattice& l) {
  if (!l.is_nondegenerate()) throw DomainError("discriminant group of a degenerate lattice");
  DiscriminantGroup g;
  for (auto& d : snf(l.gram()))
    if (d > 1) g.divisors.push_back(d);
  return g;
}

inline std::string to_string(const DiscriminantGroup& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < g.divisors.size(); ++i) s += (i ? "," : "") + to_string(g.divisors[i]);
  return s + "]";
}

}  // namespace k3m
