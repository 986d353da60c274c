#pragma once

#include <cmath>
#include <compare>
#include <string>

#include "k3m/errors.hpp"
#include "k3m/exactmath/rational.hpp"

namespace k3m {

// Tag of the real quadratic field Q(sqrt d). Zero means "no field", i.e. the
// scalar is rational.
using FieldTag = long;

inline FieldTag join_fields(FieldTag x, FieldTag y) {
  if (x == 0) return y;
  if (y == 0 || x == y) return x;
  throw DomainError("field tag mismatch: sqrt(" + std::to_string(x) + ") vs sqrt(" +
                    std::to_string(y) + ")");
}

/// Exact element a + b*sqrt(d) of Q(sqrt d).
///
/// A scalar without a field tag is rational (b = 0). Arithmetic between a
/// tagged and an untagged scalar takes the tag; arithmetic between two
/// different tags throws.
class QuadScalar {
 public:
  QuadScalar() = default;
  QuadScalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QuadScalar(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  QuadScalar(Rational a, Rational b, FieldTag d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    a_.canonicalize();
    b_.canonicalize();
    if (d_ == 0 && b_ != 0) throw DomainError("irrational part without a field tag");
    if (d_ != 0 && !is_squarefree(d_))
      throw DomainError("field tag " + std::to_string(d_) + " is not squarefree");
  }

  static QuadScalar sqrt(FieldTag d) { return {Rational(0), Rational(1), d}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  FieldTag field() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  // Sign of a + b*sqrt(d), decided by comparing a^2 with d*b^2.
  int sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    const Rational lhs = a_ * a_;
    const Rational rhs = Rational(d_) * b_ * b_;
    return lhs > rhs ? sa : sb;
  }

  double to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_)); }

  QuadScalar conjugate() const { return {a_, -b_, d_}; }

  // a^2 - d b^2
  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

  QuadScalar operator-() const { return {-a_, -b_, d_}; }

  QuadScalar& operator+=(const QuadScalar& o) {
    d_ = join_fields(d_, o.d_);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QuadScalar& operator-=(const QuadScalar& o) {
    d_ = join_fields(d_, o.d_);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QuadScalar& operator*=(const QuadScalar& o) {
    const FieldTag d = join_fields(d_, o.d_);
    if (b_ == 0 && o.b_ == 0) {
      a_ *= o.a_;
    } else {
      Rational na = a_ * o.a_ + Rational(d) * b_ * o.b_;
      Rational nb = a_ * o.b_ + b_ * o.a_;
      a_ = std::move(na);
      b_ = std::move(nb);
    }
    d_ = d;
    return *this;
  }
  QuadScalar& operator/=(const QuadScalar& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    const FieldTag d = join_fields(d_, o.d_);
    if (o.b_ == 0) {
      a_ /= o.a_;
      b_ /= o.a_;
      d_ = d;
      return *this;
    }
    const Rational n = o.norm();
    QuadScalar inv(o.a_ / n, -o.b_ / n, o.d_);
    return *this *= inv;
  }

  friend QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
  friend QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
  friend QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
  friend QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }

  friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
    join_fields(x.d_, y.d_);
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QuadScalar& x, const QuadScalar& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_string() const {
    if (b_ == 0) return k3m::to_string(a_);
    std::string out = a_ == 0 ? "" : k3m::to_string(a_) + (b_ > 0 ? "+" : "");
    return out + k3m::to_string(b_) + "*sqrt(" + std::to_string(d_) + ")";
  }

 private:
  Rational a_{0};
  Rational b_{0};
  FieldTag d_ = 0;
};

inline int sign(const QuadScalar& x) { return x.sign(); }

/// re + i*im with re, im in Q(sqrt d).
struct Complex {
  QuadScalar re;
  QuadScalar im;

  Complex() = default;
  Complex(QuadScalar r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Complex(long r) : re(r) {}                   // NOLINT(google-explicit-constructor)
  Complex(QuadScalar r, QuadScalar i) : re(std::move(r)), im(std::move(i)) {}

  static Complex i() { return {QuadScalar(0), QuadScalar(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  FieldTag field() const { return join_fields(re.field(), im.field()); }

  Complex conj() const { return {re, -im}; }
  QuadScalar abs2() const { return re * re + im * im; }

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    if (o.im.is_zero() && im.is_zero()) {
      re *= o.re;
      return *this;
    }
    QuadScalar r = re * o.re - im * o.im;
    QuadScalar s = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(s);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    const QuadScalar n = o.abs2();
    *this *= o.conj();
    re /= n;
    im /= n;
    return *this;
  }

  friend Complex operator+(Complex x, const Complex& y) { return x += y; }
  friend Complex operator-(Complex x, const Complex& y) { return x -= y; }
  friend Complex operator*(Complex x, const Complex& y) { return x *= y; }
  friend Complex operator/(Complex x, const Complex& y) { return x /= y; }
  friend bool operator==(const Complex& x, const Complex& y) { return x.re == y.re && x.im == y.im; }

  std::string to_string() const {
    if (im.is_zero()) return re.to_string();
    return "(" + re.to_string() + ") + i(" + im.to_string() + ")";
  }
};

}  // namespace k3m
