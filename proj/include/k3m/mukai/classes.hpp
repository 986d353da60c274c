#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "k3m/exactmath/quad_scalar.hpp"
#include "k3m/lattice/lattice.hpp"

namespace k3m {

// Fixed coordinates of the Mukai lattice H^*(M,Z): degree-0 unit, degree-4
// unit, then the 22 degree-2 basis vectors in the order U1, U2, U3, E8minus,
// E8minus. Every serialized class uses this order.
inline constexpr std::size_t kMukaiRank = 24;
inline constexpr std::size_t kH2Rank = 22;
inline constexpr std::size_t kDeg0 = 0;
inline constexpr std::size_t kDeg4 = 1;
inline constexpr std::size_t kDeg2 = 2;

using RealVec = std::vector<QuadScalar>;
using IntVec = std::vector<Integer>;

/// The rank-24 Mukai lattice: the degree-0/degree-4 pair pairs to -1, the
/// degree-2 block is the K3 lattice. Signature (4,20), even, unimodular.
inline const std::shared_ptr<const IntegralLattice>& mukai_lattice_ptr() {
  static const auto ptr = [] {
    IntMatrix g = block_diagonal(IntMatrix{{0, -1}, {-1, 0}}, lattices::K3().gram());
    return std::make_shared<const IntegralLattice>(std::move(g), "Mukai");
  }();
  return ptr;
}
inline const IntegralLattice& mukai_lattice() { return *mukai_lattice_ptr(); }

inline const std::shared_ptr<const IntegralLattice>& k3_lattice_ptr() {
  static const auto ptr = std::make_shared<const IntegralLattice>(lattices::K3());
  return ptr;
}

// Degree-2 coordinate index of the isotropic generators e_i, f_i of U_i
// (i = 1, 2, 3).
inline std::size_t u_e(int i) { return static_cast<std::size_t>(2 * (i - 1)); }
inline std::size_t u_f(int i) { return static_cast<std::size_t>(2 * (i - 1) + 1); }

namespace detail {

struct SparseGram {
  std::vector<std::vector<std::pair<std::size_t, long>>> rows;
};

inline SparseGram make_sparse(const IntMatrix& g) {
  SparseGram s;
  s.rows.resize(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (g(i, j) != 0) s.rows[i].emplace_back(j, g(i, j).get_si());
  return s;
}

inline const SparseGram& k3_sparse() {
  static const SparseGram s = make_sparse(lattices::K3().gram());
  return s;
}

inline const SparseGram& mukai_sparse() {
  static const SparseGram s = make_sparse(mukai_lattice().gram());
  return s;
}

template <class S>
S sparse_pair(const SparseGram& g, std::span<const S> x, std::span<const S> y) {
  S acc(0);
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    if (x[i] == S(0)) continue;
    S t(0);
    for (const auto& [j, v] : g.rows[i])
      if (!(y[j] == S(0))) t += S(v) * y[j];
    acc += x[i] * t;
  }
  return acc;
}

}  // namespace detail

// Pairing of degree-2 classes by the K3 lattice form.
template <class S>
S h2_pair(std::span<const S> x, std::span<const S> y) {
  if (x.size() != kH2Rank || y.size() != kH2Rank) throw DomainError("degree-2 class must have 22 coordinates");
  return detail::sparse_pair<S>(detail::k3_sparse(), x, y);
}

/// Complex cohomology class with coefficients in Q(sqrt d)[i], in Mukai
/// coordinates.
class CohClass {
 public:
  CohClass() = default;
  explicit CohClass(std::vector<Complex> coords) {
    if (coords.size() != kMukaiRank) throw DomainError("a class has 24 coordinates, got " + std::to_string(coords.size()));
    std::move(coords.begin(), coords.end(), coords_.begin());
    field();  // reject mixed field tags early
  }
  CohClass(Complex deg0, std::span<const Complex> deg2, Complex deg4) {
    if (deg2.size() != kH2Rank) throw DomainError("degree-2 part must have 22 coordinates");
    coords_[kDeg0] = std::move(deg0);
    coords_[kDeg4] = std::move(deg4);
    std::copy(deg2.begin(), deg2.end(), coords_.begin() + kDeg2);
    field();
  }

  static CohClass from_real(std::span<const QuadScalar> re, std::span<const QuadScalar> im) {
    std::vector<Complex> c(kMukaiRank);
    for (std::size_t i = 0; i < kMukaiRank; ++i) c[i] = Complex(re[i], im[i]);
    return CohClass(std::move(c));
  }

  const Complex& operator[](std::size_t i) const { return coords_[i]; }
  const Complex& deg0() const { return coords_[kDeg0]; }
  const Complex& deg4() const { return coords_[kDeg4]; }
  std::span<const Complex> deg2() const { return {coords_.data() + kDeg2, kH2Rank}; }
  std::span<const Complex> coords() const { return coords_; }

  FieldTag field() const {
    FieldTag d = 0;
    for (const auto& c : coords_) d = join_fields(d, c.field());
    return d;
  }

  RealVec re() const {
    RealVec v(kMukaiRank);
    for (std::size_t i = 0; i < kMukaiRank; ++i) v[i] = coords_[i].re;
    return v;
  }
  RealVec im() const {
    RealVec v(kMukaiRank);
    for (std::size_t i = 0; i < kMukaiRank; ++i) v[i] = coords_[i].im;
    return v;
  }
  CohClass conj() const {
    CohClass c = *this;
    for (auto& x : c.coords_) x = x.conj();
    return c;
  }

  friend CohClass operator+(CohClass a, const CohClass& b) {
    for (std::size_t i = 0; i < kMukaiRank; ++i) a.coords_[i] += b.coords_[i];
    return a;
  }
  friend CohClass operator*(const Complex& s, CohClass a) {
    for (auto& x : a.coords_) x = s * x;
    return a;
  }
  friend bool operator==(const CohClass& a, const CohClass& b) { return a.coords_ == b.coords_; }

 private:
  std::array<Complex, kMukaiRank> coords_{};
};

/// <x, y> = x2.y2 - x0 y4 - x4 y0, bilinear (no conjugation).
inline Complex mukai_pairing(const CohClass& x, const CohClass& y) {
  join_fields(x.field(), y.field());
  return detail::sparse_pair<Complex>(detail::mukai_sparse(), x.coords(), y.coords());
}

template <class S>
S mukai_pair(std::span<const S> x, std::span<const S> y) {
  if (x.size() != kMukaiRank || y.size() != kMukaiRank) throw DomainError("Mukai vectors have 24 coordinates");
  return detail::sparse_pair<S>(detail::mukai_sparse(), x, y);
}

// Degree-2 lift of a 22-vector.
template <class S>
std::vector<S> lift_h2(std::span<const S> v) {
  std::vector<S> out(kMukaiRank, S(0));
  std::copy(v.begin(), v.end(), out.begin() + kDeg2);
  return out;
}

// (deg0, deg4, deg2) as a Mukai integer vector.
inline IntVec mukai_vector(const Integer& deg0, std::span<const Integer> deg2, const Integer& deg4) {
  IntVec v = lift_h2<Integer>(deg2);
  v[kDeg0] = deg0;
  v[kDeg4] = deg4;
  return v;
}

inline IntVec h2_basis_vector(std::size_t index, long coeff = 1) {
  IntVec v(kH2Rank, Integer(0));
  v.at(index) = coeff;
  return v;
}

// a*e_i + b*f_i in degree 2.
inline IntVec u_vector(int i, long a, long b) {
  IntVec v(kH2Rank, Integer(0));
  v[u_e(i)] = a;
  v[u_f(i)] = b;
  return v;
}

inline RealVec to_real(std::span<const Integer> v) {
  RealVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(Rational(x));
  return out;
}

inline RealVec scale(const QuadScalar& s, std::span<const QuadScalar> v) {
  RealVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(s * x);
  return out;
}

inline RealVec add(std::span<const QuadScalar> a, std::span<const QuadScalar> b) {
  RealVec out(a.begin(), a.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

inline bool is_integral(std::span<const QuadScalar> v) {
  for (const auto& x : v)
    if (!x.is_rational() || x.a().get_den() != 1) return false;
  return true;
}

/// e^{B} x = (1 + B + B^2/2) x, i.e. (r, D, s) -> (r, D + rB, s + B.D + r B^2/2).
/// B must be real.
inline CohClass bfield_transform(std::span<const QuadScalar> b, const CohClass& x) {
  if (b.size() != kH2Rank) throw DomainError("B-field must have 22 coordinates");
  const Complex& r = x.deg0();
  std::vector<Complex> bc(b.begin(), b.end());
  const QuadScalar b2 = h2_pair<QuadScalar>(b, b);
  std::vector<Complex> d(x.deg2().begin(), x.deg2().end());
  const Complex bd = h2_pair<Complex>(bc, d);
  for (std::size_t i = 0; i < kH2Rank; ++i) d[i] += r * bc[i];
  Complex s = x.deg4() + bd + r * Complex(b2 / QuadScalar(2));
  return CohClass(r, d, s);
}

inline CohClass bfield_transform(std::span<const Complex> b, const CohClass& x) {
  RealVec real;
  real.reserve(b.size());
  for (const auto& c : b) {
    if (!c.is_real()) throw DomainError("B-field must be real (imaginary part " + c.im.to_string() + ")");
    real.push_back(c.re);
  }
  return bfield_transform(std::span<const QuadScalar>(real), x);
}

/// Matrix of e^{B} on column vectors in Mukai coordinates, for integral B.
/// Unimodular; maps the Mukai lattice to itself because the K3 lattice is
/// even.
inline IntMatrix bfield_matrix(std::span<const Integer> b) {
  if (b.size() != kH2Rank) throw DomainError("B-field must have 22 coordinates");
  const IntMatrix& g = k3_lattice_ptr()->gram();
  const Integer b2 = bilinear(g, b, b);
  IntMatrix m = IntMatrix::identity(kMukaiRank);
  m(kDeg4, kDeg0) = b2 / 2;
  for (std::size_t i = 0; i < kH2Rank; ++i) {
    m(kDeg2 + i, kDeg0) = b[i];
    Integer gb = 0;
    for (std::size_t j = 0; j < kH2Rank; ++j) gb += g(i, j) * b[j];
    m(kDeg4, kDeg2 + i) = gb;
  }
  return m;
}

// Image of a row basis under e^{B}: rows * M^T.
inline IntMatrix bfield_rows(std::span<const Integer> b, const IntMatrix& rows) {
  if (rows.rows() == 0) return rows;
  return rows * bfield_matrix(b).transpose();
}

inline std::string describe(const CohClass& x) {
  std::string s = "(" + x.deg0().to_string() + " | ";
  for (std::size_t i = 0; i < kH2Rank; ++i) s += (i ? "," : "") + x.deg2()[i].to_string();
  return s + " | " + x.deg4().to_string() + ")";
}

}  // namespace k3m
