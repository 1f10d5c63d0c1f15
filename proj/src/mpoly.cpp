#include "cmwork/mpoly.hpp"

#include <algorithm>

#include "cmwork/errors.hpp"

namespace cmwork {

/* ---------------------------------------------------------------- MonoKey */

MonoKey MonoKey::variable(int i) {
  if (i < 0 || i >= kMaxVars) throw ConfigError("monomial variable index out of range");
  MonoKey m;
  m.deg = 1;
  m.packed = uint64_t(1) << (8 * (kMaxVars - 1 - i));
  return m;
}

MonoKey MonoKey::from_exponents(const std::vector<unsigned>& e) {
  if (e.size() > size_t(kMaxVars)) throw ConfigError("more than 8 variables in monomial");
  MonoKey m;
  unsigned total = 0;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] > 255u) throw MathError("monomial exponent exceeds 255");
    total += e[i];
    m.packed |= uint64_t(e[i]) << (8 * (kMaxVars - 1 - int(i)));
  }
  m.deg = static_cast<uint16_t>(total);
  return m;
}

MonoKey MonoKey::times(const MonoKey& o) const {
  MonoKey m;
  for (int i = 0; i < kMaxVars; ++i) {
    unsigned s = exp(i) + o.exp(i);
    if (s > 255u) throw MathError("monomial exponent exceeds 255");
    m.packed |= uint64_t(s) << (8 * (kMaxVars - 1 - i));
  }
  m.deg = static_cast<uint16_t>(deg + o.deg);
  return m;
}

bool MonoKey::divisible_by(const MonoKey& o) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (exp(i) < o.exp(i)) return false;
  return true;
}

MonoKey MonoKey::divided_by(const MonoKey& o) const {
  if (!divisible_by(o)) throw MathError("monomial division with remainder");
  MonoKey m;
  for (int i = 0; i < kMaxVars; ++i) {
    unsigned s = exp(i) - o.exp(i);
    m.packed |= uint64_t(s) << (8 * (kMaxVars - 1 - i));
  }
  m.deg = static_cast<uint16_t>(deg - o.deg);
  return m;
}

static void enumerate_rec(int nv, int var, int remaining, std::vector<unsigned>& cur,
                          std::vector<MonoKey>& out) {
  if (var == nv - 1) {
    cur[var] = unsigned(remaining);
    out.push_back(MonoKey::from_exponents(cur));
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[var] = unsigned(e);
    enumerate_rec(nv, var + 1, remaining - e, cur, out);
  }
}

std::vector<MonoKey> monomials_of_degree(int nv, int d) {
  if (nv <= 0 || d < 0) return {};
  std::vector<unsigned> cur(size_t(nv), 0u);
  std::vector<MonoKey> out;
  enumerate_rec(nv, 0, d, cur, out);
  return out;  // descending graded-lex by construction
}

/* ------------------------------------------------------------------ MPoly */

MPoly::MPoly(int nv, int np) : nv_(nv), np_(np) {
  if (nv < 0 || nv > MonoKey::kMaxVars) throw ConfigError("variable count out of range");
}

MPoly MPoly::one(int nv, int np) {
  MPoly p(nv, np);
  p.add_term(MonoKey{}, ParamScalar::constant(Scalar(1), np));
  return p;
}

MPoly MPoly::constant(const ParamScalar& v, int nv) {
  MPoly p(nv, v.nparams());
  p.add_term(MonoKey{}, v);
  return p;
}

MPoly MPoly::constant(const Scalar& v, int nv, int np) {
  return constant(ParamScalar::constant(v, np), nv);
}

MPoly MPoly::variable(int i, int nv, int np) {
  if (i < 0 || i >= nv) throw ConfigError("variable index out of range");
  MPoly p(nv, np);
  p.add_term(MonoKey::variable(i), ParamScalar::constant(Scalar(1), np));
  return p;
}

MPoly MPoly::monomial(const MonoKey& m, const ParamScalar& coeff, int nv) {
  MPoly p(nv, coeff.nparams());
  p.add_term(m, coeff);
  return p;
}

MPoly MPoly::linear_form(const std::vector<Scalar>& coeffs, int np) {
  MPoly p(int(coeffs.size()), np);
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero())
      p.add_term(MonoKey::variable(int(i)), ParamScalar::constant(coeffs[i], np));
  return p;
}

bool MPoly::is_homogeneous() const {
  if (t_.empty()) return true;
  uint16_t d = t_.begin()->first.deg;
  for (const auto& [m, c] : t_)
    if (m.deg != d) return false;
  return true;
}

ParamScalar MPoly::coefficient(const MonoKey& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? ParamScalar::constant(Scalar(0), np_) : it->second;
}

void MPoly::add_term(const MonoKey& m, const ParamScalar& coeff) {
  if (coeff.is_zero()) return;
  np_ = std::max(np_, coeff.nparams());
  auto [it, inserted] = t_.emplace(m, coeff);
  if (!inserted) {
    it->second = it->second + coeff;
    if (it->second.is_zero()) t_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly r(nv_, np_);
  for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (nv_ != o.nv_) throw VariableSetMismatch("adding polynomials in different variable sets");
  for (const auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (nv_ != o.nv_) throw VariableSetMismatch("subtracting polynomials in different variable sets");
  for (const auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.nv_ != b.nv_) throw VariableSetMismatch("multiplying polynomials in different variable sets");
  MPoly r(a.nv_, std::max(a.np_, b.np_));
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) r.add_term(ma.times(mb), ca * cb);
  return r;
}

MPoly MPoly::times(const ParamScalar& c) const {
  MPoly r(nv_, std::max(np_, c.nparams()));
  if (c.is_zero()) return r;
  for (const auto& [m, v] : t_) r.add_term(m, v * c);
  return r;
}

MPoly MPoly::times(const Scalar& c) const {
  return times(ParamScalar::constant(c, np_));
}

MPoly MPoly::derivative(int var) const {
  if (var < 0 || var >= nv_) throw ConfigError("derivative variable out of range");
  MPoly r(nv_, np_);
  MonoKey xv = MonoKey::variable(var);
  for (const auto& [m, c] : t_) {
    unsigned e = m.exp(var);
    if (e == 0) continue;
    r.add_term(m.divided_by(xv), c * Scalar(long(e)));
  }
  return r;
}

MPoly MPoly::directional_derivative(const std::vector<Scalar>& a) const {
  if (int(a.size()) != nv_) throw VariableSetMismatch("direction has wrong length");
  MPoly r(nv_, np_);
  for (int i = 0; i < nv_; ++i)
    if (!a[i].is_zero()) r += derivative(i).times(a[i]);
  return r;
}

MPoly MPoly::substitute_linear(const std::vector<std::vector<Scalar>>& rows,
                               int new_nv) const {
  if (int(rows.size()) != nv_) throw VariableSetMismatch("substitution row count mismatch");
  // Lazily cache powers of each substituted variable image.
  std::vector<std::vector<MPoly>> pows(static_cast<size_t>(nv_));
  auto image_pow = [&](int i, unsigned e) -> const MPoly& {
    auto& cache = pows[size_t(i)];
    if (cache.empty()) {
      cache.push_back(MPoly::one(new_nv, np_));
      cache.push_back(MPoly::linear_form(rows[size_t(i)], np_));
    }
    while (cache.size() <= e) cache.push_back(cache.back() * cache[1]);
    return cache[e];
  };
  MPoly r(new_nv, np_);
  for (const auto& [m, c] : t_) {
    MPoly term = MPoly::one(new_nv, np_);
    for (int i = 0; i < nv_; ++i) {
      unsigned e = m.exp(i);
      if (e > 0) term = term * image_pow(i, e);
    }
    r += term.times(c);
  }
  return r;
}

std::optional<MPoly> MPoly::try_divide_by_linear(const MPoly& linear,
                                                 MPoly* remainder_out) const {
  if (linear.nv_ != nv_) throw VariableSetMismatch("divisor in different variable set");
  if (linear.is_zero() || linear.degree() != 1 || !linear.is_homogeneous())
    throw MathError("divisor is not a homogeneous linear form");
  for (const auto& [m, c] : linear.t_)
    if (!c.is_constant()) throw MathError("divisor coefficients must be parameter-free");
  // Pivot: the graded-lex leading term of the divisor.
  MonoKey pivot = linear.t_.rbegin()->first;
  Scalar pivot_coeff = linear.t_.rbegin()->second.constant_value();
  Scalar pivot_inv = pivot_coeff.inverse();

  MPoly r = *this;
  MPoly q(nv_, np_);
  MPoly rem(nv_, np_);
  while (!r.t_.empty()) {
    auto lead = *r.t_.rbegin();
    if (lead.first.divisible_by(pivot)) {
      MonoKey mq = lead.first.divided_by(pivot);
      ParamScalar cq = lead.second * pivot_inv;
      q.add_term(mq, cq);
      r -= MPoly::monomial(mq, cq, nv_) * linear;
    } else {
      rem.add_term(lead.first, lead.second);
      r.t_.erase(std::prev(r.t_.end()));
    }
  }
  if (remainder_out) *remainder_out = rem;
  if (!rem.is_zero()) return std::nullopt;
  return q;
}

MPoly MPoly::divide_exact_by_linear(const MPoly& linear) const {
  MPoly rem;
  auto q = try_divide_by_linear(linear, &rem);
  if (!q) throw NotDivisible("exact division failed; remainder = " + rem.str());
  return *q;
}

MPoly MPoly::homogeneous_component(int d) const {
  MPoly r(nv_, np_);
  for (const auto& [m, c] : t_)
    if (int(m.deg) == d) r.t_.emplace(m, c);
  return r;
}

MPoly MPoly::eval_params(const std::vector<Scalar>& values) const {
  MPoly r(nv_, 0);
  for (const auto& [m, c] : t_) {
    Scalar v = c.eval(values);
    if (!v.is_zero()) r.add_term(m, ParamScalar::constant(v, 0));
  }
  return r;
}

Scalar MPoly::eval(const std::vector<Scalar>& point,
                   const std::vector<Scalar>& params) const {
  if (int(point.size()) != nv_) throw VariableSetMismatch("evaluation point has wrong length");
  Scalar acc(0);
  for (const auto& [m, c] : t_) {
    Scalar term = c.eval(params);
    for (int i = 0; i < nv_; ++i)
      for (unsigned e = 0; e < m.exp(i); ++e) term = term * point[size_t(i)];
    acc = acc + term;
  }
  return acc;
}

static std::string monomial_str(const MonoKey& m,
                                const std::vector<std::string>& names) {
  std::string s;
  for (size_t i = 0; i < names.size(); ++i) {
    unsigned e = m.exp(int(i));
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string MPoly::str_named(const std::vector<std::string>& var_names,
                             const std::string& param_base) const {
  if (t_.empty()) return "0";
  std::string out;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    std::string mono = monomial_str(it->first, var_names);
    std::string coeff = it->second.str(param_base);
    // Wrap coefficients with a top-level +/- before gluing on the monomial.
    bool multi = false;
    int depth = 0;
    for (size_t k = 0; k < coeff.size(); ++k) {
      char ch = coeff[k];
      if (ch == '(') ++depth;
      else if (ch == ')') --depth;
      else if (depth == 0 && k > 0 && (ch == '+' || ch == '-')) { multi = true; break; }
    }
    if (multi && !mono.empty()) coeff = "(" + coeff + ")";
    std::string term;
    if (mono.empty()) {
      term = coeff;
    } else if (coeff == "1") {
      term = mono;
    } else if (coeff == "-1") {
      term = "-" + mono;
    } else {
      term = coeff + "*" + mono;
    }
    if (out.empty()) {
      out = term;
    } else if (!term.empty() && term[0] == '-') {
      out += term;
    } else {
      out += "+" + term;
    }
  }
  return out;
}

std::string MPoly::str(const std::string& var_base, const std::string& param_base) const {
  std::vector<std::string> names;
  names.reserve(size_t(nv_));
  for (int i = 0; i < nv_; ++i) names.push_back(var_base + std::to_string(i + 1));
  return str_named(names, param_base);
}

/* ------------------------------------------------------------- RationalFn */

RationalFn::RationalFn(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw MathError("rational function with zero denominator");
  if (num_.is_zero()) den_ = MPoly::one(den_.nvars(), den_.nparams());
}

RationalFn RationalFn::of(const MPoly& p) {
  return RationalFn(p, MPoly::one(p.nvars(), p.nparams()));
}

RationalFn RationalFn::operator-() const { return RationalFn(-num_, den_); }

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
  return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) {
  if (a.den_ == b.den_) return RationalFn(a.num_ - b.num_, a.den_);
  return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  // Cheap cross-cancellation keeps iterated products from blowing up.
  if (a.num_ == b.den_) return RationalFn(b.num_, a.den_);
  if (b.num_ == a.den_) return RationalFn(a.num_, b.den_);
  return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
  if (b.num_.is_zero()) throw MathError("division by zero rational function");
  return a * RationalFn(b.den_, b.num_);
}

Scalar RationalFn::eval(const std::vector<Scalar>& point,
                        const std::vector<Scalar>& params) const {
  Scalar d = den_.eval(point, params);
  if (d.is_zero()) throw PoleAtPoint("denominator vanishes at evaluation point");
  return num_.eval(point, params) / d;
}

std::string RationalFn::str(const std::string& var_base, const std::string& param_base) const {
  if (den_ == MPoly::one(den_.nvars(), den_.nparams())) return num_.str(var_base, param_base);
  return "(" + num_.str(var_base, param_base) + ")/(" + den_.str(var_base, param_base) + ")";
}

}  // namespace cmwork
