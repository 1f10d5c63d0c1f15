#include "cmwork/mm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cmwork/errors.hpp"
#include "cmwork/rng.hpp"
#include "cmwork/verma.hpp"

namespace cmwork {

namespace {

// A polynomial flattened to doubles for fast evaluation inside sampling
// loops: one (coefficient, exponent vector) row per term.
struct CompiledPoly {
  struct Term {
    double coeff;
    unsigned exp[MonoKey::kMaxVars];
  };
  std::vector<Term> terms;

  double eval(const double* x, int nv) const {
    double acc = 0.0;
    for (const Term& t : terms) {
      double m = t.coeff;
      for (int i = 0; i < nv; ++i)
        for (unsigned e = 0; e < t.exp[i]; ++e) m *= x[i];
      acc += m;
    }
    return acc;
  }
};

CompiledPoly compile_poly(const MPoly& p) {
  CompiledPoly out;
  for (const auto& [key, coeff] : p.terms()) {
    if (!coeff.is_constant())
      throw ConfigError("numeric evaluation needs parameter-free coefficients");
    CompiledPoly::Term t;
    t.coeff = coeff.constant_value().to_double();
    for (int i = 0; i < MonoKey::kMaxVars; ++i) t.exp[i] = key.exp(i);
    out.terms.push_back(t);
  }
  return out;
}

// Root coordinates as a dense double matrix, one row per reflection.
std::vector<double> root_matrix(const ReflectionGroup& g) {
  const std::vector<Reflection>& refl = g.reflections();
  std::vector<double> rows(refl.size() * size_t(g.dim()));
  for (size_t s = 0; s < refl.size(); ++s)
    for (int i = 0; i < g.dim(); ++i)
      rows[s * size_t(g.dim()) + size_t(i)] = refl[s].alpha[size_t(i)].to_double();
  return rows;
}

MPoly lift_params(const MPoly& p, int np) {
  if (p.nparams() == np) return p;
  if (p.nparams() != 0)
    throw VariableSetMismatch("polynomial parameter count differs from the group's");
  MPoly out(p.nvars(), np);
  for (const auto& [key, coeff] : p.terms())
    out.add_term(key, ParamScalar::constant(coeff.constant_value(), np));
  return out;
}

// E[x^e] for one standard normal coordinate: (e-1)!! for even e, else 0.
Rational gaussian_power_moment(unsigned e) {
  if (e % 2 == 1) return Rational(0);
  Rational m(1);
  for (unsigned j = 1; j < e; j += 2) m *= Rational(long(e - j));
  return m;
}

// Evaluate a dense rational-coefficient polynomial at a rational point.
Rational poly_eval(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational acc(0);
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

std::vector<long> small_divisors(const BigInt& v) {
  BigInt a = abs(v);
  if (!a.fits_slong_p() || a == 0)
    throw FactorizationFailed("coefficient too large for rational root search");
  long n = a.get_si();
  std::vector<long> out;
  for (long d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      out.push_back(n / d);
    }
  return out;
}

}  // namespace

MPoly reflection_discriminant(const ReflectionGroup& g, int nparams) {
  MPoly delta = MPoly::one(g.dim(), nparams);
  for (const Reflection& r : g.reflections())
    delta *= MPoly::linear_form(r.alpha, nparams);
  return delta;
}

double mm_rhs(const ReflectionGroup& g, double k) {
  std::vector<int> degs = g.degrees();
  int dmax = 1;
  for (int d : degs) dmax = std::max(dmax, d);
  if (!(k > -1.0 / double(dmax)))
    throw ConfigError("mm_rhs needs k > -1/d_max = -1/" + std::to_string(dmax));
  double acc = 0.0;
  for (int d : degs) acc += std::lgamma(1.0 + k * double(d)) - std::lgamma(1.0 + k);
  return std::exp(acc);
}

Rational mm_rhs_exact(const ReflectionGroup& g, long k) {
  if (k < 0) throw ConfigError("mm_rhs_exact needs integer k >= 0");
  Rational out(1);
  for (int d : g.degrees()) {
    Rational f(factorial(unsigned(k * d)));
    f /= Rational(factorial(unsigned(k)));
    out *= f;
  }
  return out;
}

Scalar gaussian_moment(const MPoly& p) {
  Scalar acc(0);
  for (const auto& [key, coeff] : p.terms()) {
    if (!coeff.is_constant())
      throw ConfigError("gaussian_moment needs parameter-free coefficients");
    Rational m(1);
    for (int i = 0; i < p.nvars() && m != 0; ++i) m *= gaussian_power_moment(key.exp(i));
    if (m != 0) acc += coeff.constant_value() * Scalar(m);
  }
  return acc;
}

Rational mm_moment_oracle(const ReflectionGroup& g, long k) {
  if (k < 0) throw ConfigError("mm_moment_oracle needs integer k >= 0");
  MPoly delta = reflection_discriminant(g, 0);
  MPoly pw = MPoly::one(g.dim(), 0);
  for (long j = 0; j < 2 * k; ++j) pw *= delta;
  Scalar m = gaussian_moment(pw);
  if (!m.is_rational())
    throw MathError("Gaussian moment of delta^{2k} did not come out rational: " + m.str());
  return m.as_rational();
}

MCEstimate mm_mc_estimate(const ReflectionGroup& g, double k, long n_samples,
                          uint64_t seed, bool parallel) {
  if (k < 0) throw ConfigError("mm_mc_estimate needs k >= 0");
  if (n_samples <= 0) throw ConfigError("sample count must be positive");
  const int dim = g.dim();
  const long nrefl = long(g.reflections().size());
  const std::vector<double> roots = root_matrix(g);

  struct Partial {
    double sum = 0.0, sumsq = 0.0;
    long n = 0;
  };
  std::vector<Partial> parts(kMcStreams);

#pragma omp parallel for schedule(static) if (parallel)
  for (int sid = 0; sid < kMcStreams; ++sid) {
    long quota = n_samples / kMcStreams + (sid < n_samples % kMcStreams ? 1 : 0);
    GaussianStream gs(stream_seed(seed, sid));
    double x[MonoKey::kMaxVars];
    Partial p;
    for (long i = 0; i < quota; ++i) {
      for (int j = 0; j < dim; ++j) x[j] = gs.gaussian();
      double d = 1.0;
      for (long s = 0; s < nrefl; ++s) {
        double a = 0.0;
        for (int j = 0; j < dim; ++j) a += roots[size_t(s * dim + j)] * x[j];
        d *= a;
      }
      double w = std::pow(d * d, k);
      p.sum += w;
      p.sumsq += w * w;
      p.n += 1;
    }
    parts[size_t(sid)] = p;
  }

  double sum = 0.0, sumsq = 0.0;
  for (const Partial& p : parts) {
    sum += p.sum;
    sumsq += p.sumsq;
  }
  MCEstimate est;
  est.n_samples = n_samples;
  est.seed = seed;
  est.mean = sum / double(n_samples);
  double var = 0.0;
  if (n_samples > 1)
    var = std::max(0.0, (sumsq - sum * sum / double(n_samples)) / double(n_samples - 1));
  est.std_error = std::sqrt(var / double(n_samples));
  return est;
}

std::vector<Rational> bk_closed(const ReflectionGroup& g) {
  std::vector<Rational> out{Rational(long(g.order()))};
  for (int d : g.degrees())
    for (int m = 1; m < d; ++m) {
      // Multiply by (d*k + m).
      std::vector<Rational> next(out.size() + 1, Rational(0));
      for (size_t i = 0; i < out.size(); ++i) {
        next[i] += out[i] * Rational(long(m));
        next[i + 1] += out[i] * Rational(long(d));
      }
      out = std::move(next);
    }
  return out;
}

ParamScalar bk_exact_via_form(const ReflectionGroup& g) {
  if (g.order() > 48)
    throw ConfigError("bk_exact_via_form is limited to groups of order <= 48");
  const int np = g.num_reflection_classes();
  MPoly delta = reflection_discriminant(g, np);
  VermaModule vm(g);
  ParamScalar b = vm.pair(delta, delta);
  const int nrefl = int(g.reflections().size());
  if (b.degree() != nrefl)
    throw MathError("b(k) has degree " + std::to_string(b.degree()) + ", expected the reflection count " +
                    std::to_string(nrefl));
  std::vector<Scalar> via_form = b.specialize_all_to(Scalar(-1));  // c -> -k
  std::vector<Rational> closed = bk_closed(g);
  size_t n = std::max(via_form.size(), closed.size());
  for (size_t i = 0; i < n; ++i) {
    Scalar lhs = i < via_form.size() ? via_form[i] : Scalar(0);
    Scalar rhs = i < closed.size() ? Scalar(closed[i]) : Scalar(0);
    if (lhs != rhs)
      throw MathError("b(k) mismatch at k^" + std::to_string(i) + ": form gives " + lhs.str() +
                      ", closed product gives " + rhs.str());
  }
  return b;
}

std::vector<Rational> rational_roots(std::vector<Rational> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.empty()) throw ConfigError("rational_roots of the zero polynomial");
  std::vector<Rational> roots;
  while (coeffs.size() > 1) {
    if (coeffs.front() == 0) {
      roots.emplace_back(0);
      coeffs.erase(coeffs.begin());
      continue;
    }
    // Clear denominators, then run the rational root theorem.
    BigInt lcm_den(1);
    for (const Rational& c : coeffs) lcm_den = lcm(lcm_den, c.get_den());
    BigInt a0 = Rational(coeffs.front() * Rational(lcm_den)).get_num();
    BigInt an = Rational(coeffs.back() * Rational(lcm_den)).get_num();
    bool found = false;
    Rational root;
    for (long p : small_divisors(a0)) {
      for (long q : small_divisors(an)) {
        for (int sgn : {1, -1}) {
          Rational cand(sgn * p, q);
          cand.canonicalize();
          if (poly_eval(coeffs, cand) == 0) {
            root = cand;
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found)
      throw FactorizationFailed("polynomial has an irrational root; degree " +
                                std::to_string(coeffs.size() - 1) + " remains");
    roots.push_back(root);
    // Synthetic division by (x - root), highest coefficient first.
    std::vector<Rational> quot(coeffs.size() - 1, Rational(0));
    Rational carry(0);
    for (size_t i = coeffs.size(); i-- > 1;) {
      carry = coeffs[i] + carry * root;
      quot[i - 1] = carry;
    }
    coeffs = std::move(quot);
  }
  return roots;
}

MPoly dunkl_exp_lowering(const DunklContext& ctx, const MPoly& p) {
  MPoly lifted = lift_params(p, ctx.nparams());
  MPoly out = lifted;
  MPoly term = lifted;
  long j = 1;
  while (!term.is_zero()) {
    term = ctx.lowering_apply(term).times(Scalar(rat(1, j)));
    out += term;
    ++j;
  }
  return out;
}

PairingCheck gaussian_pairing_mc_check(const ReflectionGroup& g, const Rational& k,
                                       const MPoly& p, const MPoly& q, long n_samples,
                                       uint64_t seed, bool parallel) {
  if (k < 0) throw ConfigError("gaussian_pairing_mc_check needs k >= 0");
  if (n_samples <= 0) throw ConfigError("sample count must be positive");
  if (p.nvars() != g.dim() || q.nvars() != g.dim())
    throw VariableSetMismatch("polynomial variable count differs from the realization dimension");

  // Exact side: gamma(p, q) = beta(exp(F) p, exp(F) q) at c = -k.
  DunklContext ctx(g);
  VermaModule vm(g);
  MPoly u = dunkl_exp_lowering(ctx, p);
  MPoly v = dunkl_exp_lowering(ctx, q);
  ParamScalar gamma = vm.pair(u, v);
  Scalar minus_k{-k};
  double exact = gamma.eval(std::vector<Scalar>(size_t(ctx.nparams()), minus_k)).to_double();

  // Monte Carlo side: per-stream ratios of E[p q w] to E[w], w = |delta|^{2k}.
  const int dim = g.dim();
  const long nrefl = long(g.reflections().size());
  const std::vector<double> roots = root_matrix(g);
  const CompiledPoly cp = compile_poly(p);
  const CompiledPoly cq = compile_poly(q);
  const double kd = k.get_d();

  std::vector<double> ratio(kMcStreams, 0.0);

#pragma omp parallel for schedule(static) if (parallel)
  for (int sid = 0; sid < kMcStreams; ++sid) {
    long quota = n_samples / kMcStreams + (sid < n_samples % kMcStreams ? 1 : 0);
    GaussianStream gs(stream_seed(seed, sid));
    double x[MonoKey::kMaxVars];
    double s_num = 0.0, s_den = 0.0;
    for (long i = 0; i < quota; ++i) {
      for (int j = 0; j < dim; ++j) x[j] = gs.gaussian();
      double d = 1.0;
      for (long s = 0; s < nrefl; ++s) {
        double a = 0.0;
        for (int j = 0; j < dim; ++j) a += roots[size_t(s * dim + j)] * x[j];
        d *= a;
      }
      double w = std::pow(d * d, kd);
      s_num += cp.eval(x, dim) * cq.eval(x, dim) * w;
      s_den += w;
    }
    if (s_den == 0.0)
      ratio[size_t(sid)] = 0.0;  // caught below: the mean cannot match then
    else
      ratio[size_t(sid)] = s_num / s_den;
  }

  double mean = 0.0;
  for (double r : ratio) mean += r;
  mean /= double(kMcStreams);
  double var = 0.0;
  for (double r : ratio) var += (r - mean) * (r - mean);
  var /= double(kMcStreams - 1);
  double se = std::sqrt(var / double(kMcStreams));

  PairingCheck out;
  out.exact = exact;
  out.mc_ratio = mean;
  out.std_error = se;
  out.n_samples = n_samples;
  out.seed = seed;
  if (se == 0.0)
    out.z = (mean == exact) ? 0.0 : std::numeric_limits<double>::infinity();
  else
    out.z = (mean - exact) / se;
  return out;
}

}  // namespace cmwork
