#pragma once

#include <string>
#include <vector>

#include "cmwork/group.hpp"
#include "cmwork/rational.hpp"

namespace cmwork {

// One conjugacy class of parabolic subgroups, identified by the label of its
// diagram type and carrying its invariant degrees (nontrivial, ascending).
// The trivial subgroup appears with label "1" and no degrees.
struct ParabolicClass {
  std::string label;
  std::vector<int> degrees;
  bool maximal = false;  // proper parabolic of rank exactly rank(W) - 1
};

// Divisibility-count table for one (group, coupling): one row per parabolic
// class plus a final self row.  A stratum with stabilizer class W_a lies in
// the support exactly when the divisibility counts of W and W_a agree.
struct SupportReport {
  std::string group;
  Rational c;
  unsigned long m = 1;  // denominator of |c| in lowest terms
  std::vector<int> w_degrees;

  struct Row {
    std::string stratum;
    std::vector<int> degrees;
    int count_w = 0;
    int count_wa = 0;
    bool in_support = false;
    bool maximal = false;
  };
  std::vector<Row> rows;
  bool finite_dim = false;

  // CSV lines `group,c,m,stratum,deg_count_W,deg_count_Wa,in_support`,
  // header first.
  std::vector<std::string> csv_rows() const;
};

// Number of degrees divisible by m; m = 1 counts everything (the rank).
int divisible_degree_count(const std::vector<int>& degrees, unsigned long m);

// Support criterion for one stratum from degree lists alone: integer c keeps
// every stratum; otherwise the divisibility counts at the denominator of |c|
// must agree.
bool stratum_in_support(const std::vector<int>& w_degrees,
                        const std::vector<int>& wa_degrees, const Rational& c);

// All classes of proper parabolic subgroups of a built group (including the
// trivial one), enumerated over subsets of the simple generators and
// deduplicated by diagram type; degrees come from each subgroup's Molien
// series.
std::vector<ParabolicClass> parabolic_classes(const ReflectionGroup& g);

// Maximal parabolic classes by group label: classical labels enumerate the
// built group, exceptional labels read the shipped tables.  Throws
// MissingParabolicTable when neither route is available.
std::vector<ParabolicClass> maximal_parabolic_classes(const std::string& label);

// Invariant degrees by label (built group or shipped table).
std::vector<int> group_degrees(const std::string& label);

// Finite-dimensionality of the quotient with trivial lowest weight: the
// divisibility count of W strictly exceeds that of every maximal parabolic
// at the denominator of |c|; integer c is never finite-dimensional.
bool finite_dim_criterion(const std::string& label, const Rational& c);

// All denominators m >= 2 (up to the largest degree) for which
// finite_dim_criterion holds; e.g. E7 -> {2, 6, 14, 18}.
std::vector<unsigned long> finite_denominator_table(const std::string& label);

SupportReport support_report(const std::string& label, const Rational& c);

// Length generating polynomial prod_i (1 + q + ... + q^{d_i - 1}), exact.
std::vector<BigInt> poincare_coeffs(const std::vector<int>& degrees);

// Exact divisibility of integer polynomials: num == den * q for some
// integer-coefficient q (den monic here, so division is exact or fails).
bool poly_divides(const std::vector<BigInt>& den, const std::vector<BigInt>& num);

}  // namespace cmwork
