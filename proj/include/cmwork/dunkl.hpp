#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cmwork/group.hpp"
#include "cmwork/mpoly.hpp"

namespace cmwork {

// Outcome of one verification sweep, ready for JSON serialization:
// {check, group, max_degree, status, witness?}.  status is "pass" or
// "fail"; witness carries the first offending input when a sweep fails.
struct CheckReport {
  std::string check;
  std::string group;
  int max_degree = 0;
  std::string status;
  std::string witness;

  bool passed() const { return status == "pass"; }
};

// Element of the group algebra with polynomial-in-parameters coefficients,
// e.g. the value of a commutator [D_a, x]: coefficients indexed by group
// element.
struct GroupAlgebraElement {
  int nparams = 0;
  std::map<int, ParamScalar> coeff;  // element index -> coefficient

  void add(int elem, const ParamScalar& c);
  bool is_zero() const { return coeff.empty(); }
  friend bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    return a.coeff == b.coeff;
  }
  // Apply as an operator on polynomials: sum_w coeff_w * (w . f).
  MPoly apply(const ReflectionGroup& g, const MPoly& f) const;
  // Canonical text, e.g. "(1)*e + (-2*c1)*s1".
  std::string str(const ReflectionGroup& g) const;
};

// Dunkl operators for one reflection group, with one formal coupling
// parameter per conjugacy class of reflections (fully symbolic).  All
// operators act extensionally on polynomials in dim(G) variables whose
// parameter count equals num_reflection_classes().
//
//   D_a f = d/da f - sum_s c_s alpha_s(a) * (f - s.f) / alpha_s
//
// with the real normalization (alpha_s, alpha_s) = 2.
class DunklContext {
 public:
  // Degree caps for the verification sweeps; fixed so runtimes stay small
  // while still exercising every relation that could fail.
  static constexpr int kCommutativityDegreeCap = 5;
  static constexpr int kPbwOperatorDegreeCap = 3;
  // Inputs must go past 2x the operator cap: when -1 lies in the group,
  // parity combinations can annihilate every low-degree polynomial while
  // remaining independent (B2 witnesses rank 274/280 on inputs of degree
  // <= 6 but full rank 280 from degree 7 on).
  static constexpr int kPbwInputDegreeCap = 2 * kPbwOperatorDegreeCap + 1;
  static constexpr int kSl2DegreeCap = 4;

  explicit DunklContext(const ReflectionGroup& g);
  // The context keeps a reference to the group; a temporary would dangle.
  explicit DunklContext(ReflectionGroup&&) = delete;

  const ReflectionGroup& group() const { return *g_; }
  int nvars() const { return g_->dim(); }
  int nparams() const { return np_; }
  ParamScalar coupling(int cls) const;  // the parameter c_{cls+1}

  MPoly zero() const { return MPoly::zero(g_->dim(), np_); }
  MPoly var(int i) const { return MPoly::variable(i, g_->dim(), np_); }

  // D_a f for a given by coordinates; apply_dir uses a = e_i.
  MPoly apply(const std::vector<Scalar>& a, const MPoly& f) const;
  MPoly apply_dir(int i, const MPoly& f) const;

  // [D_a, D_b] f (identically zero when the operators are correct).
  MPoly commutator_defect(const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                          const MPoly& f) const;

  // [D_a, x.] as a group algebra element, x the linear form sum_i x_coeffs[i] x_i:
  //   (a, x) e  -  sum_s c_s (a, alpha_s)(x, alpha_s^v) s.
  GroupAlgebraElement x_commutator(const std::vector<Scalar>& a,
                                   const std::vector<Scalar>& x_coeffs) const;

  // Euler grading element h = sum_i x_i D_i + dim/2 - sum_s c_s s; on a
  // homogeneous f of degree m this is (lowest_weight_eigenvalue() + m) f.
  MPoly grading_apply(const MPoly& f) const;
  ParamScalar lowest_weight_eigenvalue() const;  // dim/2 - sum_s c_s

  // sl2 partners of h: raising E = -1/2 sum_i x_i^2 (multiplication),
  // lowering F = 1/2 sum_i D_i^2.
  MPoly raising_apply(const MPoly& f) const;
  MPoly lowering_apply(const MPoly& f) const;

  // Restriction of sum_i D_i^2 to invariant polynomials, both ways:
  //   first  = sum_i D_i(D_i f)   (Dunkl route)
  //   second = Laplacian f - sum_s c_s (alpha_s,alpha_s) (d/d alpha_s^v f)/alpha_s
  // Throws NotInvariant unless every generator fixes f; the two routes are
  // returned separately so callers can assert their equality.
  std::pair<MPoly, MPoly> op_restrict(const MPoly& f) const;

  // sum_{s != u} c_s c_u (alpha_s, alpha_u) / (alpha_s alpha_u) over the
  // common denominator prod_s alpha_s; identically zero for every real
  // reflection group (the cancellation behind commutativity).
  RationalFn sigma_cross_sum() const;

  // Verification sweeps.  Each checks symbolically in the couplings and
  // reports the first witness on failure.
  CheckReport commutativity_check(int max_degree = kCommutativityDegreeCap,
                                  bool parallel = true) const;
  CheckReport equivariance_check(int max_degree = kSl2DegreeCap) const;
  CheckReport sl2_check(int max_degree = kSl2DegreeCap) const;
  CheckReport restriction_check(const MPoly& invariant) const;
  CheckReport sigma_vanish_check() const;
  // Linear independence of {g . D^m . x^n : |m|+|n| <= op_degree_cap} as
  // maps on polynomials of degree <= input cap, at generic rational
  // couplings, certified by full row rank modulo p (one-sided: full rank
  // mod p implies full rank over Q).
  CheckReport pbw_spot_check(int op_degree_cap = kPbwOperatorDegreeCap,
                             int input_degree_cap = kPbwInputDegreeCap,
                             unsigned long p = 1000003) const;

  const MPoly& alpha_poly(int s) const { return alpha_poly_[size_t(s)]; }

 private:
  const ReflectionGroup* g_;
  int np_;
  std::vector<MPoly> alpha_poly_;  // alpha_s as a linear polynomial
};

}  // namespace cmwork
