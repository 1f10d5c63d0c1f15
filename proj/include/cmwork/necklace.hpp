#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmwork/cm.hpp"
#include "cmwork/mpoly.hpp"

namespace cmwork {

// Trace-word brackets for words over the alphabet {X, Y}, under the
// symplectic form Tr(dY /\ dX), i.e. {Y_ab, X_cd} = delta_ad delta_bc.

// Route (a): assemble the entrywise gradients d Tr(w) / dM_ab of both trace
// words and contract them against the delta convention.
Cx necklace_bracket_canonical(const std::string& u, const std::string& v, const CMat& X,
                              const CMat& Y);

// Route (b): the double sum over letter pairs (one Y in u against one X in
// v and vice versa) of traces of the glued cyclic words.
Cx necklace_bracket_theorem(const std::string& u, const std::string& v, const CMat& X,
                            const CMat& Y);

struct NecklaceReport {
  std::string u, v;
  double max_rel_err = 0.0;
  Cx worst_canonical{0.0, 0.0};  // the two route values at the worst sample
  Cx worst_theorem{0.0, 0.0};
  long n_samples = 0;
  uint64_t seed = 0;
  double tol = 0.0;
  bool pass = false;
  // True when neither route can produce a term at all (no Y-against-X
  // letter pair in either orientation), so both sides are exactly zero.
  bool structural_zero = false;
};

// Evaluates both routes at n_samples random complex matrix pairs and
// reports the largest relative discrepancy.  Word lengths <= 6, n <= 6.
// Deterministic per seed: every sample draws from its own hashed stream,
// so serial and parallel runs agree bit for bit.
NecklaceReport necklace_bracket_check(const std::string& u, const std::string& v, int n,
                                      long n_samples, uint64_t seed, double tol = 1e-9,
                                      bool parallel = true);

// Pullbacks through the xi map as exact rational functions of the 2n
// variables (x_1..x_n, p_1..p_n): a_k = Tr X^k and b_k = Tr X^k Y.
RationalFn xi_pullback_a(int n, int k);
RationalFn xi_pullback_b(int n, int k);

// Canonical bracket sum_i (df/dp_i dg/dx_i - df/dx_i dg/dp_i) on rational
// functions of (x_1..x_n, p_1..p_n).
RationalFn poisson_bracket_xp(const RationalFn& f, const RationalFn& g, int n);

struct CoordPoissonReport {
  int n = 0, m = 0, k = 0;
  bool aa_zero = false;   // {a_m, a_k} = 0
  bool ba_match = false;  // {b_m, a_k} = k a_{m+k-1}
  bool bb_match = false;  // {b_m, b_k} = (k - m) b_{m+k-1}
  long spot_checks = 0;   // random-point evaluations agreeing on both sides
  bool pass = false;
};

// Verifies the displayed bracket relations exactly (cross-multiplied
// rational-function identities), plus sampled point evaluations.  The
// variable packing allows n <= 4; exponents need m, k <= 5.
CoordPoissonReport coordinate_poisson_check(int n, int m, int k, long samples, uint64_t seed);

}  // namespace cmwork
