#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmwork/rational.hpp"

namespace cmwork {

// An element a + b*sqrt(d) of a fixed real quadratic extension of Q.
// d is a squarefree positive integer chosen once per reflection group
// (1 for the rational groups, 2 for the B-series normalization, 3 for the
// hexagonal dihedral realization).  d == 1 is the canonical encoding of a
// plain rational: whenever b becomes zero the value is renormalized to
// d = 1, so equality is plain field-wise comparison.  Values from
// different nontrivial extensions refuse to mix (FieldMismatch) — no group
// in scope needs a biquadratic field.
class Scalar {
 public:
  Scalar() : a_(0), b_(0), d_(1) {}
  Scalar(long v) : a_(rat(v)), b_(0), d_(1) {}  // NOLINT: implicit by design
  Scalar(const Rational& v) : a_(v), b_(0), d_(1) {}  // NOLINT
  Scalar(const Rational& a, const Rational& b, long d);

  static Scalar sqrt_of(long d);  // sqrt(d) itself

  const Rational& rat_part() const { return a_; }
  const Rational& irr_part() const { return b_; }
  long radicand() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  // Value as a rational; requires is_rational().
  const Rational& as_rational() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  Scalar conj() const { return Scalar(a_, -b_, d_); }
  Scalar inverse() const;

  // Exact sign (-1, 0, +1) of the real number a + b*sqrt(d).
  int sign() const;

  double to_double() const;
  std::string str() const;

 private:
  void normalize();
  Rational a_, b_;
  long d_;
};

// Joint radicand of two values (1 is compatible with everything).
long scalar_join_radicand(const Scalar& x, const Scalar& y);

// sqrt within the same quadratic field, if it exists there.
std::optional<Scalar> scalar_sqrt(const Scalar& x);

// Like scalar_sqrt, but also tries the form t*sqrt(d) for rational inputs
// whose square root lives in Q(sqrt(d)) rather than Q.
std::optional<Scalar> scalar_sqrt_in_field(const Scalar& x, long d);

// Dot product of coordinate vectors (the standard inner product; all group
// realizations in scope are orthogonal with respect to it).
Scalar dot(const std::vector<Scalar>& x, const std::vector<Scalar>& y);

}  // namespace cmwork
