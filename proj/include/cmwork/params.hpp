#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cmwork/scalar.hpp"

namespace cmwork {

// A polynomial in the formal coupling parameters c1..cp with Scalar
// coefficients.  One parameter per conjugacy class of reflections (so p is
// 1 or 2 for every group in scope; up to 4 supported).  Exponent vectors
// are packed 16 bits per parameter into a single key, which keeps maps
// small and iteration order canonical.
class ParamScalar {
 public:
  static constexpr int kMaxParams = 4;

  ParamScalar() : np_(0) {}
  explicit ParamScalar(int nparams);

  static ParamScalar constant(const Scalar& v, int nparams);
  static ParamScalar param(int index, int nparams);  // the monomial c_{index+1}

  int nparams() const { return np_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_value() const;  // requires is_constant()
  int degree() const;             // total degree, -1 for zero

  ParamScalar operator-() const;
  ParamScalar& operator+=(const ParamScalar& o);
  ParamScalar& operator-=(const ParamScalar& o);
  friend ParamScalar operator+(ParamScalar x, const ParamScalar& y) { return x += y; }
  friend ParamScalar operator-(ParamScalar x, const ParamScalar& y) { return x -= y; }
  friend ParamScalar operator*(const ParamScalar& x, const ParamScalar& y);
  ParamScalar& operator*=(const ParamScalar& o) { return *this = *this * o; }
  ParamScalar& operator*=(const Scalar& s);
  friend ParamScalar operator*(ParamScalar x, const Scalar& s) { return x *= s; }
  friend ParamScalar operator*(const Scalar& s, ParamScalar x) { return x *= s; }
  friend bool operator==(const ParamScalar& x, const ParamScalar& y) {
    return x.np_ == y.np_ && x.terms_ == y.terms_;
  }
  friend bool operator!=(const ParamScalar& x, const ParamScalar& y) { return !(x == y); }

  // Evaluation at concrete parameter values.
  Scalar eval(const std::vector<Scalar>& values) const;

  // Image under c_i -> scale * k for every i, as a dense univariate
  // coefficient list in k (used to compare against closed forms in k).
  std::vector<Scalar> specialize_all_to(const Scalar& scale) const;

  // Canonical text, e.g. "1-2*c1" or "3/2*c1^2*c2".
  std::string str(const std::string& base_name = "c") const;

  // Internal iteration (packed exponent key -> coefficient), canonical order.
  const std::map<uint64_t, Scalar>& terms() const { return terms_; }
  void add_term(uint64_t key, const Scalar& coeff);  // merges, drops zeros

  static unsigned exponent_of(uint64_t key, int index) {
    return static_cast<unsigned>((key >> (16 * index)) & 0xffffu);
  }
  static uint64_t key_of(const std::vector<unsigned>& exps);

 private:
  int np_;
  std::map<uint64_t, Scalar> terms_;
};

}  // namespace cmwork
