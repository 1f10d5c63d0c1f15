#pragma once

#include <string>
#include <vector>

#include "cmwork/dunkl.hpp"
#include "cmwork/group.hpp"
#include "cmwork/smat.hpp"

namespace cmwork {

// Degree-d component of the polynomial module: its monomial basis in
// graded-lex order.
struct GradedPiece {
  int degree = 0;
  int nvars = 0;
  int nparams = 0;
  std::vector<MonoKey> basis;

  int dimension() const { return int(basis.size()); }
};

// Matrix of the contravariant pairing on one degree, entries polynomial in
// the couplings.  Pairings across distinct degrees vanish, so only
// same-degree blocks are ever materialized.
struct GramMatrix {
  int degree = 0;
  std::vector<MonoKey> basis;
  std::vector<std::vector<ParamScalar>> entry;

  bool symmetric() const;
  SMat eval(const std::vector<Scalar>& cvals) const;
  int rank_at(const std::vector<Scalar>& cvals) const;
};

// Equal-parameter spectrum of the rank-one cyclic module: the periodic
// sequence b_n, the products a_n = prod_{k<=n} (k - b_k), and the first
// degree r with b_r = r (the degree where the module develops a kernel),
// or r = -1 when no such degree exists up to the bound.
struct Rank1Spectrum {
  int m = 0;
  Rational c;
  std::vector<Rational> b;  // b_0 .. b_nmax, b_0 = 0, period m
  std::vector<Rational> a;  // a_0 .. a_nmax, a_0 = 1
  int r = -1;
};

// Graded character data of the polynomial module at a group element g:
//   chi * t^(lowest_exponent) / det(1 - t g),
// the denominator stored as exact coefficients in t.
struct VermaCharacter {
  ParamScalar lowest_exponent;  // symbolic in the couplings
  Scalar chi;                   // value of the lowest weight character at g
  std::vector<Scalar> den;      // det(1 - t g), degree 0..dim

  std::string str() const;
};

// The polynomial module of a rational Cherednik algebra with trivial lowest
// weight: y-generators act as Dunkl operators, x-generators by
// multiplication.  Couplings stay symbolic except where noted.
class VermaModule {
 public:
  explicit VermaModule(const ReflectionGroup& g);
  // The module keeps a reference to the group; a temporary would dangle.
  explicit VermaModule(ReflectionGroup&&) = delete;

  const ReflectionGroup& group() const { return *g_; }
  const DunklContext& dunkl() const { return ctx_; }

  GradedPiece piece(int d) const;

  // Contravariant pairing beta(p, q) = (q(D) p)(0): substitute Dunkl
  // operators for the variables of q, apply to p, take the constant term.
  // Nonzero only when deg p = deg q; normalized by beta(1, 1) = 1.
  ParamScalar pair(const MPoly& p, const MPoly& q) const;

  GramMatrix gram(int d) const;

  // Joint kernel of all Dunkl directions in degree d at numeric couplings;
  // the returned polynomials carry constant coefficients.
  std::vector<MPoly> singular_vectors(const std::vector<Scalar>& cvals, int d) const;

  // Dimension in degree d of the submodule generated by the singular
  // vectors of degree <= d (multiplying singular vectors up by monomials).
  int submodule_dimension(const std::vector<Scalar>& cvals, int d) const;

  // Graded character at the element `elem` with trivial or sign lowest
  // weight.
  VermaCharacter character(bool sign_rep, int elem) const;

 private:
  const ReflectionGroup* g_;
  DunklContext ctx_;
};

// Equal-parameter rank-one spectrum: b_n = 2c (m ceil(n/m) - n), derived
// from the cyclotomic sum over the nontrivial characters; validated against
// rank1_b_float below.
Rank1Spectrum rank1_spectrum(int m, const Rational& c, int n_max);

// Floating-point summation of the defining cyclotomic series for b_n
// (independent oracle for the closed form; also usable with unequal
// parameters, one value per nontrivial character).
double rank1_b_float(int m, const std::vector<double>& cj, int n);

// Hilbert function of the radical quotient restricted to the essential part
// of the realization (the group-fixed directions carry a nondegenerate
// factor of the pairing and split off).  Entries start at degree 0 and stop
// after the first zero — from there on the quotient vanishes — or after
// degree_cap + 1 entries, whichever comes first.  A trailing zero therefore
// certifies a finite-dimensional quotient.
std::vector<long> essential_quotient_hilbert(const VermaModule& vm,
                                             const std::vector<Scalar>& cvals, int degree_cap);

}  // namespace cmwork
