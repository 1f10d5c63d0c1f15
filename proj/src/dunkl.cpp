#include "cmwork/dunkl.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "cmwork/errors.hpp"
#include "cmwork/smat.hpp"

namespace cmwork {

/* --------------------------------------------------------- group algebra */

void GroupAlgebraElement::add(int elem, const ParamScalar& c) {
  if (c.is_zero()) return;
  auto it = coeff.find(elem);
  if (it == coeff.end()) {
    coeff.emplace(elem, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeff.erase(it);
}

MPoly GroupAlgebraElement::apply(const ReflectionGroup& g, const MPoly& f) const {
  MPoly out = MPoly::zero(f.nvars(), f.nparams());
  for (const auto& [e, c] : coeff) out += g.act_poly(e, f).times(c);
  return out;
}

std::string GroupAlgebraElement::str(const ReflectionGroup& g) const {
  if (coeff.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeff) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*";
    const std::vector<int>& w = g.word(e);
    if (w.empty()) {
      os << "e";
    } else {
      for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << "*";
        os << "s" << (w[i] + 1);
      }
    }
  }
  return os.str();
}

/* ------------------------------------------------------------- context */

DunklContext::DunklContext(const ReflectionGroup& g)
    : g_(&g), np_(g.num_reflection_classes()) {
  if (g.cyclic())
    throw UnsupportedType("Dunkl operators need a matrix realization; cyclic groups are symbolic");
  alpha_poly_.reserve(g.reflections().size());
  for (const Reflection& r : g.reflections())
    alpha_poly_.push_back(MPoly::linear_form(r.alpha, np_));
}

ParamScalar DunklContext::coupling(int cls) const { return ParamScalar::param(cls, np_); }

static std::vector<Scalar> unit_vector(int n, int i) {
  std::vector<Scalar> e(size_t(n), Scalar(0));
  e[size_t(i)] = Scalar(1);
  return e;
}

MPoly DunklContext::apply(const std::vector<Scalar>& a, const MPoly& f) const {
  if (int(a.size()) != g_->dim())
    throw VariableSetMismatch("direction has wrong dimension for the group");
  MPoly out = f.directional_derivative(a);
  const std::vector<Reflection>& refl = g_->reflections();
  for (size_t s = 0; s < refl.size(); ++s) {
    Scalar aa = dot(refl[s].alpha, a);
    if (aa.is_zero()) continue;
    MPoly diff = f - g_->act_poly(refl[s].elem, f);
    if (diff.is_zero()) continue;
    MPoly quot = diff.divide_exact_by_linear(alpha_poly_[s]);
    out -= quot.times(coupling(refl[s].cls) * aa);
  }
  return out;
}

MPoly DunklContext::apply_dir(int i, const MPoly& f) const {
  return apply(unit_vector(g_->dim(), i), f);
}

MPoly DunklContext::commutator_defect(const std::vector<Scalar>& a,
                                      const std::vector<Scalar>& b,
                                      const MPoly& f) const {
  return apply(a, apply(b, f)) - apply(b, apply(a, f));
}

GroupAlgebraElement DunklContext::x_commutator(const std::vector<Scalar>& a,
                                               const std::vector<Scalar>& x_coeffs) const {
  GroupAlgebraElement out;
  out.nparams = np_;
  out.add(0, ParamScalar::constant(dot(a, x_coeffs), np_));
  for (const Reflection& r : g_->reflections()) {
    // alpha^v = alpha under the (alpha, alpha) = 2 normalization.
    Scalar v = dot(a, r.alpha) * dot(x_coeffs, r.alpha);
    if (v.is_zero()) continue;
    out.add(r.elem, -(coupling(r.cls) * v));
  }
  return out;
}

ParamScalar DunklContext::lowest_weight_eigenvalue() const {
  Rational half_dim(g_->dim());
  half_dim /= 2;
  ParamScalar out = ParamScalar::constant(Scalar(half_dim), np_);
  for (const Reflection& r : g_->reflections()) out -= coupling(r.cls);
  return out;
}

MPoly DunklContext::grading_apply(const MPoly& f) const {
  MPoly out = MPoly::zero(f.nvars(), f.nparams());
  for (int i = 0; i < g_->dim(); ++i) out += var(i) * apply_dir(i, f);
  Rational half_dim(g_->dim());
  half_dim /= 2;
  out += f.times(Scalar(half_dim));
  for (const Reflection& r : g_->reflections())
    out -= g_->act_poly(r.elem, f).times(coupling(r.cls));
  return out;
}

MPoly DunklContext::raising_apply(const MPoly& f) const {
  MPoly sumsq = zero();
  for (int i = 0; i < g_->dim(); ++i) sumsq += var(i) * var(i);
  Rational minus_half(-1);
  minus_half /= 2;
  return (sumsq * f).times(Scalar(minus_half));
}

MPoly DunklContext::lowering_apply(const MPoly& f) const {
  MPoly out = MPoly::zero(f.nvars(), f.nparams());
  for (int i = 0; i < g_->dim(); ++i) out += apply_dir(i, apply_dir(i, f));
  Rational half(1);
  half /= 2;
  return out.times(Scalar(half));
}

std::pair<MPoly, MPoly> DunklContext::op_restrict(const MPoly& f) const {
  for (int i = 0; i < g_->num_generators(); ++i)
    if (g_->act_poly(g_->generator(i), f) != f)
      throw NotInvariant("polynomial is not invariant under generator s" + std::to_string(i + 1));
  MPoly via_dunkl = MPoly::zero(f.nvars(), f.nparams());
  for (int i = 0; i < g_->dim(); ++i) via_dunkl += apply_dir(i, apply_dir(i, f));
  MPoly direct = MPoly::zero(f.nvars(), f.nparams());
  for (int i = 0; i < g_->dim(); ++i) direct += f.derivative(i).derivative(i);
  const std::vector<Reflection>& refl = g_->reflections();
  for (size_t s = 0; s < refl.size(); ++s) {
    // d/d(alpha^v) of an invariant is anti-invariant under s, hence
    // divisible by alpha_s.
    MPoly da = f.directional_derivative(refl[s].alpha);
    if (da.is_zero()) continue;
    MPoly quot = da.divide_exact_by_linear(alpha_poly_[s]);
    direct -= quot.times(coupling(refl[s].cls) * dot(refl[s].alpha, refl[s].alpha));
  }
  return {via_dunkl, direct};
}

RationalFn DunklContext::sigma_cross_sum() const {
  const std::vector<Reflection>& refl = g_->reflections();
  int nv = g_->dim();
  MPoly den = MPoly::one(nv, np_);
  for (size_t s = 0; s < refl.size(); ++s) den *= alpha_poly_[s];
  MPoly num = MPoly::zero(nv, np_);
  for (size_t s = 0; s < refl.size(); ++s)
    for (size_t u = 0; u < refl.size(); ++u) {
      if (s == u) continue;
      Scalar ip = dot(refl[s].alpha, refl[u].alpha);
      if (ip.is_zero()) continue;
      MPoly rest = MPoly::one(nv, np_);
      for (size_t v = 0; v < refl.size(); ++v)
        if (v != s && v != u) rest *= alpha_poly_[v];
      num += rest.times(coupling(refl[s].cls) * coupling(refl[u].cls) * ip);
    }
  return RationalFn(num, den);
}

/* ------------------------------------------------------------ sweeps */

static std::vector<MonoKey> all_monomials_up_to(int nv, int max_degree) {
  std::vector<MonoKey> keys;
  for (int d = 0; d <= max_degree; ++d)
    for (const MonoKey& k : monomials_of_degree(nv, d)) keys.push_back(k);
  return keys;
}

CheckReport DunklContext::commutativity_check(int max_degree, bool parallel) const {
  CheckReport rep{"dunkl-commutativity", g_->name(), max_degree, "pass", ""};
  int nv = g_->dim();
  std::vector<MonoKey> keys = all_monomials_up_to(nv, max_degree);
  long bad = std::numeric_limits<long>::max();
  // Bilinearity in both directions means coordinate pairs (e_i, e_j) verify
  // commutativity for all direction pairs.
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long idx = 0; idx < long(keys.size()); ++idx) {
    MPoly f = MPoly::monomial(keys[size_t(idx)], ParamScalar::constant(Scalar(1), np_), nv);
    bool ok = true;
    for (int i = 0; i < nv && ok; ++i)
      for (int j = i + 1; j < nv && ok; ++j)
        if (!commutator_defect(unit_vector(nv, i), unit_vector(nv, j), f).is_zero()) ok = false;
    if (!ok) {
#pragma omp critical
      bad = std::min(bad, idx);
    }
  }
  if (bad != std::numeric_limits<long>::max()) {
    MPoly f = MPoly::monomial(keys[size_t(bad)], ParamScalar::constant(Scalar(1), np_), nv);
    rep.status = "fail";
    rep.witness = "nonzero [D_i, D_j] on monomial " + f.str();
  }
  return rep;
}

CheckReport DunklContext::equivariance_check(int max_degree) const {
  CheckReport rep{"dunkl-equivariance", g_->name(), max_degree, "pass", ""};
  int nv = g_->dim();
  for (const MonoKey& k : all_monomials_up_to(nv, max_degree)) {
    MPoly f = MPoly::monomial(k, ParamScalar::constant(Scalar(1), np_), nv);
    for (int gi = 0; gi < g_->num_generators(); ++gi) {
      int w = g_->generator(gi);
      int winv = g_->inverse(w);
      for (int i = 0; i < nv; ++i) {
        std::vector<Scalar> a = unit_vector(nv, i);
        MPoly lhs = g_->act_poly(w, apply(a, g_->act_poly(winv, f)));
        MPoly rhs = apply(g_->act(w, a), f);
        if (lhs != rhs) {
          rep.status = "fail";
          rep.witness = "w D_a(w^-1 f) != D_{wa} f for f = " + f.str() + ", generator s" +
                        std::to_string(gi + 1) + ", a = e" + std::to_string(i + 1);
          return rep;
        }
      }
    }
  }
  return rep;
}

CheckReport DunklContext::sl2_check(int max_degree) const {
  CheckReport rep{"sl2-triple", g_->name(), max_degree, "pass", ""};
  int nv = g_->dim();
  auto fail = [&](const std::string& relation, const MPoly& f) {
    rep.status = "fail";
    rep.witness = relation + " violated on " + f.str();
  };
  for (const MonoKey& k : all_monomials_up_to(nv, max_degree)) {
    MPoly f = MPoly::monomial(k, ParamScalar::constant(Scalar(1), np_), nv);
    MPoly hf = grading_apply(f);
    for (int i = 0; i < nv; ++i) {
      MPoly xf = var(i) * f;
      if (grading_apply(xf) - var(i) * hf != xf) {
        fail("[h, x_i] = x_i", f);
        return rep;
      }
      MPoly df = apply_dir(i, f);
      if (grading_apply(df) - apply_dir(i, hf) != -df) {
        fail("[h, y_i] = -y_i", f);
        return rep;
      }
    }
    MPoly ef = raising_apply(f), ff = lowering_apply(f);
    if (raising_apply(ff) - lowering_apply(ef) != hf) {
      fail("[E, F] = h", f);
      return rep;
    }
    if (grading_apply(ef) - raising_apply(hf) != ef.times(Scalar(2))) {
      fail("[h, E] = 2E", f);
      return rep;
    }
    if (grading_apply(ff) - lowering_apply(hf) != ff.times(Scalar(-2))) {
      fail("[h, F] = -2F", f);
      return rep;
    }
  }
  return rep;
}

CheckReport DunklContext::restriction_check(const MPoly& invariant) const {
  CheckReport rep{"invariant-restriction", g_->name(), invariant.degree(), "pass", ""};
  std::pair<MPoly, MPoly> routes = op_restrict(invariant);
  if (routes.first != routes.second) {
    rep.status = "fail";
    rep.witness = "Dunkl route " + routes.first.str() + " vs direct route " + routes.second.str();
  }
  return rep;
}

CheckReport DunklContext::sigma_vanish_check() const {
  CheckReport rep{"sigma-cross-terms-vanish", g_->name(), 0, "pass", ""};
  RationalFn s = sigma_cross_sum();
  if (!s.is_zero()) {
    rep.status = "fail";
    rep.witness = "nonzero cross-term sum " + s.str();
  }
  return rep;
}

// Enumerate exponent vectors of length n with total <= cap, in a stable
// order.
static void exponent_vectors(int n, int cap, std::vector<unsigned>& cur,
                             std::vector<std::vector<unsigned>>& out) {
  if (int(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= cap; ++e) {
    cur.push_back(unsigned(e));
    exponent_vectors(n, cap - e, cur, out);
    cur.pop_back();
  }
}

CheckReport DunklContext::pbw_spot_check(int op_degree_cap, int input_degree_cap,
                                         unsigned long p) const {
  CheckReport rep{"pbw-spot-check", g_->name(), op_degree_cap, "pass", ""};
  int nv = g_->dim();
  std::vector<Scalar> cvals;
  for (int j = 0; j < np_; ++j) cvals.push_back(Scalar(Rational(1, 3 + 2 * j)));

  std::vector<std::vector<unsigned>> mn;
  std::vector<unsigned> cur;
  exponent_vectors(2 * nv, op_degree_cap, cur, mn);

  std::vector<MonoKey> inputs = all_monomials_up_to(nv, input_degree_cap);

  // Sparse rows keyed by (input index, output monomial); one row per
  // operator g . D^m . x^n.
  std::vector<std::map<std::pair<int, MonoKey>, Scalar>> sparse;
  long radicand = 1;
  for (const std::vector<unsigned>& e : mn) {
    std::vector<unsigned> xexp(e.begin(), e.begin() + nv);
    std::vector<unsigned> dexp(e.begin() + nv, e.end());
    MonoKey xkey = MonoKey::from_exponents(xexp);
    std::vector<MPoly> base;
    base.reserve(inputs.size());
    for (const MonoKey& k : inputs) {
      MPoly f = MPoly::monomial(k.times(xkey), ParamScalar::constant(Scalar(1), np_), nv);
      for (int i = 0; i < nv; ++i)
        for (unsigned rep_i = 0; rep_i < dexp[size_t(i)]; ++rep_i) f = apply_dir(i, f);
      base.push_back(f.eval_params(cvals));
    }
    for (int w = 0; w < g_->order(); ++w) {
      std::map<std::pair<int, MonoKey>, Scalar> row;
      for (size_t fi = 0; fi < inputs.size(); ++fi) {
        MPoly img = g_->act_poly(w, base[fi]);
        for (const auto& [mk, coef] : img.terms()) {
          Scalar v = coef.constant_value();
          if (v.radicand() != 1) radicand = v.radicand();
          row[{int(fi), mk}] = v;
        }
      }
      sparse.push_back(std::move(row));
    }
  }

  std::map<std::pair<int, MonoKey>, int> colid;
  for (const auto& row : sparse)
    for (const auto& [key, v] : row)
      if (!colid.count(key)) {
        int next = int(colid.size());
        colid[key] = next;
      }

  ModPReducer reduce(radicand, p);
  std::vector<std::vector<unsigned long>> a(
      sparse.size(), std::vector<unsigned long>(colid.size(), 0));
  for (size_t r = 0; r < sparse.size(); ++r)
    for (const auto& [key, v] : sparse[r]) a[r][size_t(colid[key])] = reduce(v);

  int rank = residue_rank_mod_p(a, p);
  if (rank != int(sparse.size())) {
    rep.status = "fail";
    rep.witness = "operator family has rank " + std::to_string(rank) + " < " +
                  std::to_string(sparse.size()) + " mod " + std::to_string(p);
  }
  return rep;
}

}  // namespace cmwork
