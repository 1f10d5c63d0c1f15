#pragma once

#include <cstdint>
#include <vector>

#include "cmwork/dunkl.hpp"
#include "cmwork/group.hpp"
#include "cmwork/mpoly.hpp"
#include "cmwork/params.hpp"
#include "cmwork/rational.hpp"

namespace cmwork {

// Monte Carlo estimate of a scalar expectation against the standard
// Gaussian on the realization space.
struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  long n_samples = 0;
  uint64_t seed = 0;
};

// One Gaussian-pairing cross-check: the exact bilinear-form value against
// the Monte Carlo ratio estimate of the weighted integral.
struct PairingCheck {
  double exact = 0.0;      // gamma_c(p, q) evaluated at c = -k
  double mc_ratio = 0.0;   // E[p q w] / E[w] with w = |delta|^{2k}
  double std_error = 0.0;  // std error of the per-stream ratio mean
  double z = 0.0;
  long n_samples = 0;
  uint64_t seed = 0;
};

// The product of the positive-root linear forms, delta = prod_s (alpha_s, x),
// over the reflections of g (roots normalized to (alpha, alpha) = 2).
MPoly reflection_discriminant(const ReflectionGroup& g, int nparams);

// Right side of the Gaussian group integral: prod_i Gamma(1+k d_i)/Gamma(1+k)
// over the reflection degrees, via log-Gamma.  Requires k > -1/max(d_i).
double mm_rhs(const ReflectionGroup& g, double k);

// The same product at a nonnegative integer k, exactly: prod (k d_i)! / k!.
Rational mm_rhs_exact(const ReflectionGroup& g, long k);

// E[p(X)] for X standard normal, by the double-factorial moment rule.
// Coefficients must be parameter-free.
Scalar gaussian_moment(const MPoly& p);

// Exact E[delta^{2k}] at integer k >= 0 by expanding the polynomial; the
// result must come out rational (it equals mm_rhs_exact).
Rational mm_moment_oracle(const ReflectionGroup& g, long k);

// Monte Carlo estimate of E[|delta(X)|^{2k}], X standard normal on the
// realization space.  Deterministic per (seed, n_samples): the work is
// split over kMcStreams fixed streams whether or not `parallel` is set, so
// serial and OpenMP runs return bit-identical estimates.
MCEstimate mm_mc_estimate(const ReflectionGroup& g, double k, long n_samples,
                          uint64_t seed, bool parallel = true);

// b(k) = |W| prod_i prod_{m=1}^{d_i - 1} (k d_i + m), expanded as a dense
// coefficient list in k (index = power).  All coefficients are integers.
std::vector<Rational> bk_closed(const ReflectionGroup& g);

// b via the contravariant form: beta_c(delta, delta) as a polynomial in the
// couplings.  Asserts total degree equal to the number of reflections, and
// that substituting every c_i -> -k reproduces bk_closed exactly.
// Restricted to |W| <= 48 to bound the symbolic work.
ParamScalar bk_exact_via_form(const ReflectionGroup& g);

// All rational roots of a univariate polynomial with rational coefficients,
// with multiplicity.  Throws FactorizationFailed if the polynomial does not
// split over Q.
std::vector<Rational> rational_roots(std::vector<Rational> coeffs);

// exp(F) p where F is half the Dunkl Laplacian; F lowers degree by 2, so
// the series is a finite sum (no truncation tolerance involved).
MPoly dunkl_exp_lowering(const DunklContext& ctx, const MPoly& p);

// Compares gamma_c(p, q) at c = -k (exact, via exp(F) and the contravariant
// form) with the Monte Carlo ratio E[p q |delta|^{2k}] / E[|delta|^{2k}].
// The ratio's standard error comes from batch means over the fixed streams.
PairingCheck gaussian_pairing_mc_check(const ReflectionGroup& g, const Rational& k,
                                       const MPoly& p, const MPoly& q, long n_samples,
                                       uint64_t seed, bool parallel = true);

}  // namespace cmwork
