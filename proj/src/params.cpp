#include "cmwork/params.hpp"

#include <sstream>

#include "cmwork/errors.hpp"

namespace cmwork {

namespace {
int join_np(int a, int b) {
  // A parameter-free value is compatible with any parameter set.
  if (a == 0) return b;
  if (b == 0 || a == b) return a;
  throw VariableSetMismatch("parameter count mismatch: " + std::to_string(a) +
                            " vs " + std::to_string(b));
}
}  // namespace

ParamScalar::ParamScalar(int nparams) : np_(nparams) {
  if (nparams < 0 || nparams > kMaxParams) {
    throw ConfigError("unsupported parameter count " + std::to_string(nparams));
  }
}

ParamScalar ParamScalar::constant(const Scalar& v, int nparams) {
  ParamScalar p(nparams);
  if (!v.is_zero()) p.terms_.emplace(0, v);
  return p;
}

ParamScalar ParamScalar::param(int index, int nparams) {
  if (index < 0 || index >= nparams) throw ConfigError("parameter index out of range");
  ParamScalar p(nparams);
  p.terms_.emplace(uint64_t{1} << (16 * index), Scalar(1));
  return p;
}

bool ParamScalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

Scalar ParamScalar::constant_value() const {
  if (terms_.empty()) return Scalar(0);
  if (!is_constant()) throw MathError("ParamScalar is not constant: " + str());
  return terms_.begin()->second;
}

int ParamScalar::degree() const {
  int deg = -1;
  for (const auto& [key, coeff] : terms_) {
    int d = 0;
    for (int i = 0; i < np_; ++i) d += static_cast<int>(exponent_of(key, i));
    if (d > deg) deg = d;
  }
  return deg;
}

void ParamScalar::add_term(uint64_t key, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

uint64_t ParamScalar::key_of(const std::vector<unsigned>& exps) {
  uint64_t key = 0;
  for (size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > 0xffffu) throw MathError("parameter exponent overflow");
    key |= static_cast<uint64_t>(exps[i]) << (16 * i);
  }
  return key;
}

ParamScalar ParamScalar::operator-() const {
  ParamScalar out(np_);
  for (const auto& [key, coeff] : terms_) out.terms_.emplace(key, -coeff);
  return out;
}

ParamScalar& ParamScalar::operator+=(const ParamScalar& o) {
  np_ = join_np(np_, o.np_);
  for (const auto& [key, coeff] : o.terms_) add_term(key, coeff);
  return *this;
}

ParamScalar& ParamScalar::operator-=(const ParamScalar& o) {
  np_ = join_np(np_, o.np_);
  for (const auto& [key, coeff] : o.terms_) add_term(key, -coeff);
  return *this;
}

ParamScalar operator*(const ParamScalar& x, const ParamScalar& y) {
  ParamScalar out(join_np(x.np_, y.np_));
  for (const auto& [kx, cx] : x.terms_) {
    for (const auto& [ky, cy] : y.terms_) {
      // Packed exponents add componentwise; 16-bit lanes cannot carry at the
      // degrees reached in scope (checked in add via overflow guard below).
      out.add_term(kx + ky, cx * cy);
    }
  }
  return out;
}

ParamScalar& ParamScalar::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, coeff] : terms_) coeff *= s;
  return *this;
}

Scalar ParamScalar::eval(const std::vector<Scalar>& values) const {
  // Extra trailing values are fine (a constant ignores the parameter list).
  if (static_cast<int>(values.size()) < np_) {
    throw VariableSetMismatch("eval: expected " + std::to_string(np_) + " values");
  }
  Scalar acc;
  for (const auto& [key, coeff] : terms_) {
    Scalar term = coeff;
    for (int i = 0; i < np_; ++i) {
      const unsigned e = exponent_of(key, i);
      for (unsigned k = 0; k < e; ++k) term *= values[i];
    }
    acc += term;
  }
  return acc;
}

std::vector<Scalar> ParamScalar::specialize_all_to(const Scalar& scale) const {
  std::vector<Scalar> coeffs;
  for (const auto& [key, coeff] : terms_) {
    int deg = 0;
    for (int i = 0; i < np_; ++i) deg += static_cast<int>(exponent_of(key, i));
    if (static_cast<int>(coeffs.size()) <= deg) coeffs.resize(deg + 1, Scalar(0));
    Scalar scaled = coeff;
    for (int k = 0; k < deg; ++k) scaled *= scale;
    coeffs[deg] += scaled;
  }
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  return coeffs;
}

std::string ParamScalar::str(const std::string& base_name) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Iterate highest total degree last for a "1-2*c1" reading order: the map
  // is keyed by packed exponents, which already sorts constants first.
  for (const auto& [key, coeff] : terms_) {
    std::string cs = coeff.str();
    // An additive scalar like 1+1*sqrt(2) needs parentheses inside products.
    const bool additive = cs.find_first_of("+-", 1) != std::string::npos;
    bool negated = false;
    if (additive && key != 0) {
      cs = "(" + cs + ")";
    } else if (!first && cs.size() > 1 && cs[0] == '-' && !additive) {
      negated = true;
      cs = cs.substr(1);
    }
    if (!first) os << (negated ? "-" : "+");
    first = false;
    bool printed_coeff = false;
    if (key == 0 || cs != "1") {
      os << cs;
      printed_coeff = true;
    }
    for (int i = 0; i < np_; ++i) {
      const unsigned e = exponent_of(key, i);
      if (e == 0) continue;
      if (printed_coeff) os << "*";
      printed_coeff = true;
      os << base_name << (i + 1);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace cmwork
