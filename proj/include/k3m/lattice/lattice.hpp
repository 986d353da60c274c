#pragma once

#include <string>
#include <utility>
#include <vector>

#include "k3m/exactmath/inertia.hpp"
#include "k3m/exactmath/matrix.hpp"
#include "k3m/exactmath/normal_form.hpp"

namespace k3m {

/// Finite-rank free Z-module with a symmetric integer Gram matrix.
///
/// Degenerate Gram matrices are allowed; operations that need a
/// nondegenerate form (discriminant, complements) reject them.
class IntegralLattice {
 public:
  IntegralLattice() = default;
  explicit IntegralLattice(IntMatrix gram, std::string name = {}) : gram_(std::move(gram)), name_(std::move(name)) {
    if (!gram_.is_symmetric()) throw DomainError("Gram matrix is not symmetric");
  }

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::string& name() const { return name_; }

  bool is_even() const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram_(i, i) % 2 != 0) return false;
    return true;
  }
  SymDiagResult signature() const { return sym_signature(gram_); }
  Integer det() const { return determinant(gram_); }
  bool is_nondegenerate() const { return det() != 0; }
  bool is_unimodular() const { return abs(det()) == 1; }

  Integer pair(std::span<const Integer> x, std::span<const Integer> y) const { return bilinear(gram_, x, y); }

  friend bool operator==(const IntegralLattice& a, const IntegralLattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  std::string name_;
};

namespace lattices {

inline IntegralLattice U() { return IntegralLattice(IntMatrix{{0, 1}, {1, 0}}, "U"); }

// Negative of the E8 Cartan matrix. Both the K3 lattice signature (3,19) and
// the Mukai signature (4,20) require the negative definite sign.
inline IntegralLattice E8minus() {
  // Bourbaki labelling: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
  static const int edges[][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
  for (const auto& e : edges) {
    g(e[0], e[1]) = 1;
    g(e[1], e[0]) = 1;
  }
  return IntegralLattice(std::move(g), "E8minus");
}

inline IntegralLattice diag(const std::vector<Integer>& ks) {
  IntMatrix g(ks.size(), ks.size());
  std::string name = "diag<";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    g(i, i) = ks[i];
    name += (i ? "," : "") + to_string(ks[i]);
  }
  return IntegralLattice(std::move(g), name + ">");
}

inline IntegralLattice direct_sum(const std::vector<IntegralLattice>& parts) {
  IntMatrix g(0, 0);
  std::string name;
  for (const auto& p : parts) {
    g = block_diagonal(g, p.gram());
    name += (name.empty() ? "" : "+") + (p.name().empty() ? std::string("?") : p.name());
  }
  return IntegralLattice(std::move(g), name);
}

// L(k): Gram multiplied by k.
inline IntegralLattice rescale(const IntegralLattice& l, const Integer& k) {
  if (k == 0) throw DomainError("rescale factor must be nonzero");
  IntMatrix g = l.gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= k;
  return IntegralLattice(std::move(g), l.name() + "(" + to_string(k) + ")");
}

// U^3 + E8minus^2, basis order U1, U2, U3, E8minus, E8minus.
inline IntegralLattice K3() {
  auto l = direct_sum({U(), U(), U(), E8minus(), E8minus()});
  return IntegralLattice(l.gram(), "K3");
}

}  // namespace lattices
}  // namespace k3m
