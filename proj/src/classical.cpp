#include "cmwork/classical.hpp"

#include <utility>

#include "cmwork/errors.hpp"

namespace cmwork {

ClassicalContext::ClassicalContext(const ReflectionGroup& g)
    : g_(&g), m_(g.dim()), np_(g.num_reflection_classes()) {
  if (g.cyclic()) throw UnsupportedType("classical Dunkl operators need a matrix realization");
  if (2 * m_ > MonoKey::kMaxVars)
    throw ConfigError("group dimension too large for the (x, p) variable budget");
  int nv = 2 * m_;
  const std::vector<Reflection>& refl = g.reflections();
  P_ = MPoly::one(nv, np_);
  for (const Reflection& r : refl) {
    std::vector<Scalar> c(size_t(nv), Scalar(0));
    for (int i = 0; i < m_; ++i) c[size_t(i)] = r.alpha[size_t(i)];
    alpha_x_.push_back(MPoly::linear_form(c, np_));
    P_ *= alpha_x_.back();
  }
  for (size_t s = 0; s < refl.size(); ++s) {
    MPoly q = MPoly::one(nv, np_);
    for (size_t v = 0; v < refl.size(); ++v)
      if (v != s) q *= alpha_x_[v];
    q_.push_back(std::move(q));
  }
  rows_.reserve(size_t(g.order()));
  for (int e = 0; e < g.order(); ++e) {
    const SMat& minv = g.matrix(g.inverse(e));
    std::vector<std::vector<Scalar>> rows(size_t(nv),
                                          std::vector<Scalar>(size_t(nv), Scalar(0)));
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) {
        rows[size_t(i)][size_t(j)] = minv.at(i, j);
        rows[size_t(m_ + i)][size_t(m_ + j)] = minv.at(i, j);
      }
    rows_.push_back(std::move(rows));
  }
  psign_.resize(size_t(g.order()), 1);
  for (int e = 0; e < g.order(); ++e) {
    MPoly img = act_xp(e, P_);
    if (img == P_)
      psign_[size_t(e)] = 1;
    else if (img == -P_)
      psign_[size_t(e)] = -1;
    else
      throw MathError("root product is not stable up to sign under the group action");
  }
}

MPoly ClassicalContext::act_xp(int e, const MPoly& f) const {
  return f.substitute_linear(rows_[size_t(e)], 2 * m_);
}

MPoly ClassicalContext::pow_P(int k) const {
  MPoly out = MPoly::one(2 * m_, np_);
  for (int i = 0; i < k; ++i) out *= P_;
  return out;
}

void ClassicalContext::add_num(std::map<int, MPoly>& m, int e, MPoly v) const {
  if (v.is_zero()) return;
  auto it = m.find(e);
  if (it == m.end()) {
    m.emplace(e, std::move(v));
    return;
  }
  it->second += v;
  if (it->second.is_zero()) m.erase(it);
}

static MPoly momentum_form(const std::vector<Scalar>& a, int m, int np) {
  std::vector<Scalar> c(size_t(2 * m), Scalar(0));
  for (int i = 0; i < m; ++i) c[size_t(m + i)] = a[size_t(i)];
  return MPoly::linear_form(c, np);
}

ClassicalOpElement ClassicalContext::momentum_op(const std::vector<Scalar>& a) const {
  if (int(a.size()) != m_) throw VariableSetMismatch("direction has wrong dimension");
  ClassicalOpElement out;
  out.denom_power = 1;
  MPoly id = momentum_form(a, m_, np_) * P_;
  const std::vector<Reflection>& refl = g_->reflections();
  for (size_t s = 0; s < refl.size(); ++s) {
    Scalar aa = dot(refl[s].alpha, a);
    if (aa.is_zero()) continue;
    MPoly term = q_[s].times(coupling(refl[s].cls) * aa);
    id -= term;
    add_num(out.num, refl[s].elem, std::move(term));
  }
  add_num(out.num, 0, std::move(id));
  return out;
}

ClassicalOpElement ClassicalContext::twisted_momentum_op(const std::vector<Scalar>& a) const {
  if (int(a.size()) != m_) throw VariableSetMismatch("direction has wrong dimension");
  ClassicalOpElement out;
  out.denom_power = 1;
  add_num(out.num, 0, momentum_form(a, m_, np_) * P_);
  const std::vector<Reflection>& refl = g_->reflections();
  for (size_t s = 0; s < refl.size(); ++s) {
    Scalar aa = dot(refl[s].alpha, a);
    if (aa.is_zero()) continue;
    add_num(out.num, refl[s].elem, q_[s].times(coupling(refl[s].cls) * aa));
  }
  return out;
}

ClassicalOpElement ClassicalContext::mul(const ClassicalOpElement& A,
                                         const ClassicalOpElement& B) const {
  ClassicalOpElement out;
  out.denom_power = A.denom_power + B.denom_power;
  for (const auto& [v, nv] : A.num)
    for (const auto& [w, nw] : B.num) {
      // (nv/P^j) v (nw/P^k) w = nv * v(nw) / (P^j * v(P^k)) * vw, and
      // v(P^k) = psign_v^k P^k.
      MPoly t = nv * act_xp(v, nw);
      if (psign_[size_t(v)] < 0 && (B.denom_power & 1)) t = -t;
      add_num(out.num, g_->mult(v, w), std::move(t));
    }
  return out;
}

ClassicalOpElement ClassicalContext::sub(ClassicalOpElement A, const ClassicalOpElement& B) const {
  int dp = std::max(A.denom_power, B.denom_power);
  MPoly scale_a = pow_P(dp - A.denom_power);
  A.denom_power = dp;
  if (scale_a != MPoly::one(2 * m_, np_))
    for (auto& [e, v] : A.num) v *= scale_a;
  MPoly scale_b = pow_P(dp - B.denom_power);
  for (const auto& [e, v] : B.num) add_num(A.num, e, -(v * scale_b));
  return A;
}

RationalFn ClassicalContext::symbol(const ClassicalOpElement& A) const {
  MPoly num = MPoly::zero(2 * m_, np_);
  for (const auto& [e, v] : A.num) num += v;
  return RationalFn(num, pow_P(A.denom_power));
}

MPoly ClassicalContext::dunkl_apply(const std::vector<Scalar>& a, const MPoly& f) const {
  if (int(a.size()) != m_) throw VariableSetMismatch("direction has wrong dimension");
  MPoly out = momentum_form(a, m_, np_) * f;
  const std::vector<Reflection>& refl = g_->reflections();
  for (size_t s = 0; s < refl.size(); ++s) {
    Scalar aa = dot(refl[s].alpha, a);
    if (aa.is_zero()) continue;
    MPoly diff = f - act_xp(refl[s].elem, f);
    if (diff.is_zero()) continue;
    MPoly quot = diff.divide_exact_by_linear(alpha_x_[s]);
    out -= quot.times(coupling(refl[s].cls) * aa);
  }
  return out;
}

ClassicalOpElement ClassicalContext::commutator(const std::vector<Scalar>& a,
                                                const std::vector<Scalar>& b) const {
  ClassicalOpElement da = momentum_op(a), db = momentum_op(b);
  return sub(mul(da, db), mul(db, da));
}

RationalFn ClassicalContext::op_check_lhs() const {
  ClassicalOpElement total;
  total.denom_power = 2;
  for (int i = 0; i < m_; ++i) {
    std::vector<Scalar> e(size_t(m_), Scalar(0));
    e[size_t(i)] = Scalar(1);
    ClassicalOpElement t = twisted_momentum_op(e);
    ClassicalOpElement sq = mul(t, t);
    for (auto& [w, v] : sq.num) add_num(total.num, w, std::move(v));
  }
  return symbol(total);
}

RationalFn ClassicalContext::op_check_rhs() const {
  int nv = 2 * m_;
  MPoly psq = MPoly::zero(nv, np_);
  for (int i = 0; i < m_; ++i) {
    MPoly pi = MPoly::variable(m_ + i, nv, np_);
    psq += pi * pi;
  }
  MPoly num = psq * pow_P(2);
  const std::vector<Reflection>& refl = g_->reflections();
  for (size_t s = 0; s < refl.size(); ++s) {
    ParamScalar c = coupling(refl[s].cls);
    num -= (q_[s] * q_[s]).times(c * c * dot(refl[s].alpha, refl[s].alpha));
  }
  return RationalFn(num, pow_P(2));
}

CheckReport ClassicalContext::commutativity_check(bool parallel) const {
  CheckReport rep{"classical-dunkl-commutativity", g_->name(), 0, "pass", ""};
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < m_; ++i)
    for (int j = i + 1; j < m_; ++j) pairs.emplace_back(i, j);
  int bad = -1;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long k = 0; k < long(pairs.size()); ++k) {
    std::vector<Scalar> a(size_t(m_), Scalar(0)), b(size_t(m_), Scalar(0));
    a[size_t(pairs[size_t(k)].first)] = Scalar(1);
    b[size_t(pairs[size_t(k)].second)] = Scalar(1);
    if (!commutator(a, b).is_zero()) {
#pragma omp critical
      bad = int(k);
    }
  }
  if (bad >= 0) {
    rep.status = "fail";
    rep.witness = "nonzero [D0_" + std::to_string(pairs[size_t(bad)].first + 1) + ", D0_" +
                  std::to_string(pairs[size_t(bad)].second + 1) + "]";
  }
  return rep;
}

CheckReport ClassicalContext::op_check() const {
  CheckReport rep{"classical-op-identity", g_->name(), 0, "pass", ""};
  RationalFn lhs = op_check_lhs(), rhs = op_check_rhs();
  if (!(lhs == rhs)) {
    rep.status = "fail";
    rep.witness = "m(theta(sum D0^2)) != H0";
  }
  return rep;
}

}  // namespace cmwork
