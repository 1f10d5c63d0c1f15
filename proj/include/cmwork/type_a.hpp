#pragma once

#include <vector>

#include "cmwork/mpoly.hpp"
#include "cmwork/rational.hpp"

namespace cmwork {

// Singular-vector family f_1..f_n for the symmetric group on n coordinates
// at coupling c = r/n:
//   f_i = -(coefficient of z^-1 in [P(z)]^{r/n} / (z - x_i)),
// with P(z) = prod_j (z - x_j) expanded as a fractional-power series at
// infinity.  Each f_i is homogeneous of degree r with rational
// coefficients, sum_i f_i = 0 (asserted), and every Dunkl direction kills
// f_i at c = r/n (asserted).  Throws RDivisibleByN when n divides r.
std::vector<MPoly> typeA_singular_vectors(int n, int r);

struct TypeAQuotient {
  std::vector<long> hilbert;  // graded dimensions, degree 0 upward
  long dim = 0;
  bool frobenius_ok = false;  // palindromic series with 1-dimensional top
};

// Quotient of the translation-invariant polynomial ring by the ideal
// generated by the f_i, computed degree by degree in the difference
// coordinates u_i = x_i - x_n until the series terminates.  gcd(r, n) = 1
// is required for termination; the degree cap converts violations into
// NonTerminating.
TypeAQuotient typeA_quotient(int n, int r);

// Coefficients of ((1 - t^r)/(1 - t))^{n-1}, the expected Hilbert series.
std::vector<long> typeA_expected_hilbert(int n, int r);

// Membership of a point in the zero locus of {f_i}, decided by direct
// vanishing; and the independent criterion that prod_i (z - x_i) is an
// exact (n/d)-th power of a polynomial, d = gcd(r, n).  The two agree on
// the nose; both are exposed so tests can compare the routes.
bool typeA_support_by_vanishing(int n, int r, const std::vector<Rational>& x);
bool typeA_power_condition(int n, int r, const std::vector<Rational>& x);

}  // namespace cmwork
