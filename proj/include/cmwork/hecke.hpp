#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cmwork/group.hpp"
#include "cmwork/mpoly.hpp"
#include "cmwork/rational.hpp"

namespace cmwork {

// ---------------------------------------------------------------------------
// Hecke algebra of S_n with the quadratic relation (T - 1)(T + q) = 0,
// i.e. T_s^2 = (1 - q) T_s + q, on the basis T_w indexed by group elements.
// Coefficients are exact rational functions in the single variable q.
// ---------------------------------------------------------------------------

// The symmetric group S_n realized as the reflection group A_{n-1}
// (coordinate permutations), cached per n.  Elements carry canonical
// (lexicographically minimal) reduced words used as basis labels.
const ReflectionGroup& symmetric_group(int n);

// The coefficient field: rational functions in q (variable 0, no params).
RationalFn q_var();
RationalFn q_rational(const Rational& r);

struct HeckeElement {
  int n = 0;                        // algebra H_q(S_n)
  std::map<int, RationalFn> coeff;  // element index in symmetric_group(n) -> coefficient

  bool is_zero() const;
  // Drops terms whose coefficient is zero.
  void prune();
};

HeckeElement hecke_unit(int n);                 // T_e
HeckeElement hecke_generator(int n, int i);     // T_{s_i}, 0 <= i < n-1
HeckeElement hecke_basis(int n, int elem);      // T_w for an element index
HeckeElement hecke_add(HeckeElement a, const HeckeElement& b);
HeckeElement hecke_scale(HeckeElement a, const RationalFn& c);
bool hecke_equal(const HeckeElement& a, const HeckeElement& b);

// Left multiplication by T_{s_i}: T_s T_w = T_{sw} when the length goes up,
// and (1 - q) T_w + q T_{sw} when it goes down.
HeckeElement hecke_left_gen(int n, int i, const HeckeElement& a);

// Product in H_q(S_n): a's basis words are folded letter by letter onto b.
// Requires n <= 6.
HeckeElement hecke_mul_typeA(int n, const HeckeElement& a, const HeckeElement& b);

// Evaluate every coefficient at a rational q value.
std::map<int, Rational> hecke_specialize(const HeckeElement& a, const Rational& q);

struct HeckeDimReport {
  int n = 0;
  long basis_size = 0;       // n! by construction
  Rational q;                // the sampled parameter
  bool quadratic_ok = false; // (rho_i - 1)(rho_i + q) = 0 as matrices
  bool braid_ok = false;     // rho_i rho_j rho_i = rho_j rho_i rho_j, |i-j| = 1
  bool commute_ok = false;   // distant generators commute
  bool assoc_ok = false;     // associativity on basis triples
  bool exhaustive = false;   // all n!^3 triples (n <= 3) vs. sampled
  long assoc_triples = 0;
  bool pass = false;
};

// Builds the regular representation of H_q(S_n) at a rational q (which must
// not be 0, 1, or -1: rational roots of unity and the non-invertible point),
// verifies the defining relations as exact matrix identities, and checks
// associativity on basis triples (exhaustively for n <= 3, else sampled).
// Requires n <= 5.
HeckeDimReport hecke_dim_check(int n, const Rational& q, long assoc_samples, uint64_t seed);

// ---------------------------------------------------------------------------
// Deformed braid rewriting for a finite Coxeter group W of order <= 48.
//
// The ambient algebra has generators s_i with s_i^2 = 1 and, for each pair
// i < j with m = m_ij, the deformed order relation
//     prod_{k=1}^{m} (s_i s_j - t_{ij,k}) = 0,
// over Laurent polynomials in the invertible parameters t_{ij,k}, where
// t_{ji,k} = t_{ij,-k}^{-1} and every generator conjugates the coefficient
// ring by the involution t_{ij,k} <-> t_{ji,k}.  Rewriting expresses any
// word in the generators as a left combination of the canonical reduced
// words, by quadratic moves on squares and deformed braid moves (which
// produce an invertible top coefficient plus strictly shorter terms).
// ---------------------------------------------------------------------------

// Exact Laurent polynomial in the pair parameters of one rewriting instance.
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(const Rational& c, int nvars);
  static Laurent monomial(const Rational& c, const std::vector<int>& exps);

  bool is_zero() const { return t_.empty(); }
  int nvars() const { return nv_; }
  const std::map<std::vector<int>, Rational>& terms() const { return t_; }

  Laurent operator-() const;
  friend Laurent operator+(const Laurent& a, const Laurent& b);
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  // Monomial inverse; requires a single term.
  Laurent inverse() const;
  // Evaluate at unit-modulus complex parameter values.
  std::complex<double> eval(const std::vector<std::complex<double>>& vals) const;

 private:
  int nv_ = 0;
  std::map<std::vector<int>, Rational> t_;
};

// A left combination of canonical reduced words, keyed by element index.
struct NormalForm {
  std::map<int, Laurent> coeff;
};

class Rewriter {
 public:
  // Builds the parameter ring (one block of m_ij variables per generator
  // pair with m_ij finite) and the canonical-word tables for W.
  // Requires a non-cyclic group of order <= 48 built from a simple system.
  explicit Rewriter(const ReflectionGroup& W, long move_cap = 200000);

  const ReflectionGroup& group() const { return *W_; }
  int num_params() const { return nvars_; }
  long moves_used() const { return moves_; }

  // Parameter index of t_{ij,k} for i < j adjacent pairs, k in 1..m_ij.
  int param_index(int i, int j, int k) const;
  int pair_order(int i, int j) const;  // m_ij from the group

  // Rewrites a word (generator indices) into the canonical basis.
  // Throws MoveCapExceeded if the move budget is exhausted (which would
  // indicate a bug: rewriting in finite type always terminates).
  NormalForm rewrite(const std::vector<int>& word);

  // The involution t_{ij,k} -> t_{ji,k} induced by conjugation.
  Laurent twist(const Laurent& c) const;

  // Value of a coefficient at the classical point t_{ij,k} = exp(2 pi i k/m).
  std::complex<double> classical_value(const Laurent& c) const;

 private:
  struct Move {
    // Rewrites the alternating word of length m starting with `from`:
    // one same-length word (alternating, starting with `to`) with an
    // invertible coefficient, plus strictly shorter words.
    std::vector<std::pair<std::vector<int>, Laurent>> pieces;
  };
  const Move& move_for(int from, int to);

  int eval_word(const std::vector<int>& word) const;
  const NormalForm& canonicalize(const std::vector<int>& word);
  void charge_move();

  const ReflectionGroup* W_ = nullptr;
  long move_cap_ = 0;
  long moves_ = 0;
  int nvars_ = 0;
  std::map<std::pair<int, int>, int> block_offset_;  // (i<j) -> first var
  std::map<std::pair<int, int>, int> order_;         // (i<j) -> m_ij
  std::map<std::pair<int, int>, Move> moves_cache_;  // ordered (from,to)
  std::map<std::vector<int>, NormalForm> memo_;
};

struct ClassicalCheckReport {
  std::string group;
  long pairs = 0;
  double max_err = 0.0;  // worst deviation from the group multiplication
  long moves = 0;
  bool pass = false;
};

// Exhaustive check over all ordered pairs (x, y) in W x W that rewriting the
// concatenated canonical words and specializing t_{ij,k} = exp(2 pi i k/m)
// reproduces the multiplication table of W.  Requires |W| <= 24.
ClassicalCheckReport classical_multiplication_check(const ReflectionGroup& W, double tol = 1e-9,
                                                    long move_cap = 2000000);

}  // namespace cmwork
