#pragma once

#include <map>
#include <string>
#include <vector>

#include "cmwork/dunkl.hpp"
#include "cmwork/group.hpp"
#include "cmwork/mpoly.hpp"

namespace cmwork {

// Element of the classical (t=0) operator algebra C W |x C(x)[p]: a sum of
// terms f_w(x,p) * w.  Every coefficient is stored as a numerator over the
// common denominator P(x)^denom_power with P = product of all root forms;
// reflections permute the roots up to sign, so products stay in this shape
// and no per-term rational-function arithmetic is ever needed.
struct ClassicalOpElement {
  int denom_power = 0;
  std::map<int, MPoly> num;  // group element index -> numerator in (x, p)

  bool is_zero() const { return num.empty(); }
};

// Classical Dunkl operators: the t=0 degeneration where a momentum variable
// p_a replaces the derivative d/da.  Polynomials live in the 2m variables
// x_1..x_m, p_1..p_m and the group acts on both blocks simultaneously:
//
//   D0_a = p_a - sum_s c_s alpha_s(a) (1 - s)/alpha_s(x).
class ClassicalContext {
 public:
  explicit ClassicalContext(const ReflectionGroup& g);
  // The context keeps a reference to the group; a temporary would dangle.
  explicit ClassicalContext(ReflectionGroup&&) = delete;

  const ReflectionGroup& group() const { return *g_; }
  int nxvars() const { return m_; }
  int nvars() const { return 2 * m_; }
  int nparams() const { return np_; }
  const MPoly& root_product() const { return P_; }
  ParamScalar coupling(int cls) const { return ParamScalar::param(cls, np_); }

  // w acting on a polynomial in (x, p): f(w^-1 x, w^-1 p).
  MPoly act_xp(int e, const MPoly& f) const;

  ClassicalOpElement momentum_op(const std::vector<Scalar>& a) const;
  // Gauge twist of D0_a by the root-product multiplier:
  //   p_a + sum_s c_s alpha_s(a)/alpha_s(x) * s,
  // the form in which sum_i D0_i^2 collapses to the classical Hamiltonian.
  ClassicalOpElement twisted_momentum_op(const std::vector<Scalar>& a) const;

  ClassicalOpElement mul(const ClassicalOpElement& A, const ClassicalOpElement& B) const;
  ClassicalOpElement sub(ClassicalOpElement A, const ClassicalOpElement& B) const;
  // Forget the group part: sum of all coefficients, as a rational function.
  RationalFn symbol(const ClassicalOpElement& A) const;

  // Extensional application of D0_a to f(x, p).  Precondition: every
  // division of f - s.f by alpha_s(x) is exact (always true when f involves
  // only x variables); otherwise NotDivisible.
  MPoly dunkl_apply(const std::vector<Scalar>& a, const MPoly& f) const;

  // [D0_a, D0_b] as an algebra element; zero iff the operators commute.
  ClassicalOpElement commutator(const std::vector<Scalar>& a,
                                const std::vector<Scalar>& b) const;

  // Left side m(theta_c(sum_i D0_i^2)) and closed right side
  //   H0 = sum_i p_i^2 - sum_s c_s^2 (alpha_s, alpha_s)/alpha_s(x)^2,
  // both over the structurally identical denominator P(x)^2.
  RationalFn op_check_lhs() const;
  RationalFn op_check_rhs() const;

  CheckReport commutativity_check(bool parallel = true) const;
  CheckReport op_check() const;

 private:
  MPoly pow_P(int k) const;
  void add_num(std::map<int, MPoly>& m, int e, MPoly v) const;

  const ReflectionGroup* g_;
  int m_, np_;
  MPoly P_;                     // prod_s alpha_s(x), in 2m variables
  std::vector<MPoly> alpha_x_;  // alpha_s(x) in 2m variables
  std::vector<MPoly> q_;        // P / alpha_s
  std::vector<int> psign_;      // act_xp(w, P) = psign_[w] * P
  std::vector<std::vector<std::vector<Scalar>>> rows_;  // substitution rows per element
};

}  // namespace cmwork
