#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmwork/params.hpp"

namespace cmwork {

// Monomial in up to 8 variables, packed 8 bits per exponent with variable 0
// in the most significant byte.  Ordering is graded lexicographic: total
// degree first, then plain integer comparison of the packed exponents
// (which is exactly lex with x1 > x2 > ... because of the byte layout).
struct MonoKey {
  uint16_t deg = 0;
  uint64_t packed = 0;

  static constexpr int kMaxVars = 8;

  static MonoKey variable(int i);
  static MonoKey from_exponents(const std::vector<unsigned>& e);

  unsigned exp(int i) const {
    return static_cast<unsigned>((packed >> (8 * (kMaxVars - 1 - i))) & 0xffu);
  }
  MonoKey times(const MonoKey& o) const;
  bool divisible_by(const MonoKey& o) const;
  MonoKey divided_by(const MonoKey& o) const;

  auto operator<=>(const MonoKey&) const = default;
};

// All monomials of total degree exactly d in nv variables, in descending
// graded-lex order (matching leading-term-first iteration).
std::vector<MonoKey> monomials_of_degree(int nv, int d);

// Sparse multivariate polynomial in x1..x_nv over ParamScalar coefficients.
// Immutable-in-spirit: operations return fresh values; no zero coefficients
// are ever stored, so equality is structural.
class MPoly {
 public:
  MPoly() : nv_(0), np_(0) {}
  MPoly(int nv, int np);

  static MPoly zero(int nv, int np) { return MPoly(nv, np); }
  static MPoly one(int nv, int np);
  static MPoly constant(const ParamScalar& v, int nv);
  static MPoly constant(const Scalar& v, int nv, int np);
  static MPoly variable(int i, int nv, int np);
  static MPoly monomial(const MonoKey& m, const ParamScalar& coeff, int nv);
  // sum_i coeffs[i] * x_i
  static MPoly linear_form(const std::vector<Scalar>& coeffs, int np);

  int nvars() const { return nv_; }
  int nparams() const { return np_; }
  bool is_zero() const { return t_.empty(); }
  int degree() const { return t_.empty() ? -1 : t_.rbegin()->first.deg; }
  bool is_homogeneous() const;
  size_t term_count() const { return t_.size(); }

  const std::map<MonoKey, ParamScalar>& terms() const { return t_; }
  ParamScalar coefficient(const MonoKey& m) const;
  void add_term(const MonoKey& m, const ParamScalar& coeff);

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly times(const ParamScalar& c) const;
  MPoly times(const Scalar& c) const;
  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.nv_ == b.nv_ && a.t_ == b.t_;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  MPoly derivative(int var) const;
  MPoly directional_derivative(const std::vector<Scalar>& a) const;

  // f(Mx): substitutes x_i -> sum_j rows[i][j] x_j; rows may be rectangular
  // (nv rows, new_nv columns), changing the variable count.
  MPoly substitute_linear(const std::vector<std::vector<Scalar>>& rows,
                          int new_nv) const;

  // Exact division by a homogeneous linear form with Scalar coefficients.
  // Returns the quotient, or throws NotDivisible carrying the remainder text.
  MPoly divide_exact_by_linear(const MPoly& linear) const;
  // Non-throwing variant: quotient, or nullopt with *remainder_out set.
  std::optional<MPoly> try_divide_by_linear(const MPoly& linear,
                                            MPoly* remainder_out) const;

  MPoly homogeneous_component(int d) const;
  MPoly eval_params(const std::vector<Scalar>& values) const;  // -> np = 0
  Scalar eval(const std::vector<Scalar>& point,
              const std::vector<Scalar>& params) const;

  // Canonical text: graded-lex descending terms, `3/2*c1^2*x1*x2^3` style.
  std::string str(const std::string& var_base = "x",
                  const std::string& param_base = "c") const;
  std::string str_named(const std::vector<std::string>& var_names,
                        const std::string& param_base = "c") const;

 private:
  int nv_, np_;
  std::map<MonoKey, ParamScalar> t_;
};

// Unreduced quotient of polynomials.  Equality is by cross-multiplication,
// so common factors never need cancelling; addition detects structurally
// equal denominators to slow the degree growth of long sums.
class RationalFn {
 public:
  RationalFn() = default;
  RationalFn(MPoly num, MPoly den);
  static RationalFn of(const MPoly& p);  // p / 1

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFn operator-() const;
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }

  // a/b == c/d  iff  a*d == c*b; structurally equal denominators compare
  // numerators directly (keeps large common-denominator sums cheap).
  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const RationalFn& a, const RationalFn& b) { return !(a == b); }

  Scalar eval(const std::vector<Scalar>& point,
              const std::vector<Scalar>& params) const;  // throws PoleAtPoint

  std::string str(const std::string& var_base = "x",
                  const std::string& param_base = "c") const;

 private:
  MPoly num_, den_;
};

}  // namespace cmwork
