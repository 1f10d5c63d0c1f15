#include "cmwork/type_a.hpp"

#include <map>
#include <numeric>
#include <string>

#include "cmwork/dunkl.hpp"
#include "cmwork/errors.hpp"
#include "cmwork/group.hpp"
#include "cmwork/smat.hpp"

namespace cmwork {

// Truncated series sum_m s[m] z^{-m} with polynomial coefficients.
static std::vector<MPoly> series_mul(const std::vector<MPoly>& a, const std::vector<MPoly>& b,
                                     int order, int nv, int np) {
  std::vector<MPoly> out(size_t(order) + 1, MPoly::zero(nv, np));
  for (int s = 0; s <= order; ++s)
    for (int t = 0; s + t <= order; ++t) {
      if (s < int(a.size()) && t < int(b.size()) && !a[size_t(s)].is_zero() &&
          !b[size_t(t)].is_zero())
        out[size_t(s + t)] += a[size_t(s)] * b[size_t(t)];
    }
  return out;
}

static std::vector<MPoly> elementary_symmetric(int n, int np) {
  std::vector<MPoly> e(size_t(n) + 1, MPoly::zero(n, np));
  e[0] = MPoly::one(n, np);
  for (int i = 0; i < n; ++i) {
    MPoly xi = MPoly::variable(i, n, np);
    for (int k = std::min(i + 1, n); k >= 1; --k) e[size_t(k)] += e[size_t(k) - 1] * xi;
  }
  return e;
}

std::vector<MPoly> typeA_singular_vectors(int n, int r) {
  if (n < 2 || r < 1) throw ConfigError("need n >= 2 and r >= 1");
  if (r % n == 0) throw RDivisibleByN("r divisible by n: no singular copy in this degree");
  int np = 1;
  std::vector<MPoly> e = elementary_symmetric(n, np);

  // P(z) = z^n (1 + U), U = sum_{t>=1} (-1)^t e_t z^{-t}; expand
  // (1 + U)^{r/n} = sum_j binom(r/n, j) U^j to order z^{-r}.
  std::vector<MPoly> u(size_t(std::min(n, r)) + 1, MPoly::zero(n, np));
  for (int t = 1; t <= std::min(n, r); ++t)
    u[size_t(t)] = (t % 2 == 0) ? e[size_t(t)] : -e[size_t(t)];

  Rational expo = rat(r, n);
  std::vector<MPoly> a(size_t(r) + 1, MPoly::zero(n, np));
  a[0] = MPoly::one(n, np);
  std::vector<MPoly> upow = a;  // U^0
  for (int j = 1; j <= r; ++j) {
    upow = series_mul(upow, u, r, n, np);
    Rational bc = rat_binom(expo, unsigned(j));
    for (int m = 0; m <= r; ++m)
      if (!upow[size_t(m)].is_zero()) a[size_t(m)] += upow[size_t(m)].times(Scalar(bc));
  }

  std::vector<MPoly> f;
  MPoly total = MPoly::zero(n, np);
  for (int i = 0; i < n; ++i) {
    MPoly fi = MPoly::zero(n, np);
    for (int m = 0; m <= r; ++m) {
      if (a[size_t(m)].is_zero()) continue;
      std::vector<unsigned> pe(size_t(n), 0);
      pe[size_t(i)] = unsigned(r - m);
      fi += a[size_t(m)] * MPoly::monomial(MonoKey::from_exponents(pe),
                                           ParamScalar::constant(Scalar(1), np), n);
    }
    fi = -fi;
    if (!fi.is_homogeneous() || fi.degree() != r)
      throw MathError("residue expansion produced a non-homogeneous singular candidate");
    total += fi;
    f.push_back(std::move(fi));
  }
  if (!total.is_zero()) throw MathError("singular candidates do not sum to zero");

  // Dunkl operators at c = r/n must kill every candidate.
  ReflectionGroup g = ReflectionGroup::build("A" + std::to_string(n - 1));
  DunklContext ctx(g);
  Rational c = rat(r, n);
  for (const MPoly& fi : f)
    for (int dir = 0; dir < n; ++dir)
      if (!ctx.apply_dir(dir, fi).eval_params({Scalar(c)}).is_zero())
        throw MathError("residue candidate is not singular at c = r/n");
  return f;
}

static long monomial_count(int nvars, int d) {
  // C(d + nvars - 1, nvars - 1)
  long num = 1, den = 1;
  for (int k = 1; k < nvars; ++k) {
    num *= d + k;
    den *= k;
  }
  return num / den;
}

TypeAQuotient typeA_quotient(int n, int r) {
  std::vector<MPoly> f = typeA_singular_vectors(n, r);
  int m = n - 1;
  std::vector<std::vector<Scalar>> rows(size_t(n), std::vector<Scalar>(size_t(m), Scalar(0)));
  for (int i = 0; i < m; ++i) rows[size_t(i)][size_t(i)] = Scalar(1);
  std::vector<MPoly> fu;
  fu.reserve(f.size());
  for (const MPoly& fi : f) fu.push_back(fi.substitute_linear(rows, m));

  TypeAQuotient q;
  int cap = (r - 1) * (n - 1) + r + 4;
  for (int d = 0;; ++d) {
    if (d > cap)
      throw NonTerminating("quotient Hilbert series did not terminate; gcd(r, n) = 1 required");
    long dim_d;
    if (d < r) {
      dim_d = monomial_count(m, d);
    } else {
      std::vector<MonoKey> basis = monomials_of_degree(m, d);
      std::map<MonoKey, int> id;
      for (size_t i = 0; i < basis.size(); ++i) id[basis[i]] = int(i);
      std::vector<MonoKey> mults = monomials_of_degree(m, d - r);
      SMat mat(int(mults.size()) * int(fu.size()), int(basis.size()));
      int row = 0;
      for (const MPoly& fi : fu)
        for (const MonoKey& mk : mults) {
          for (const auto& [key, coef] : fi.terms())
            mat.at(row, id.at(key.times(mk))) = coef.constant_value();
          ++row;
        }
      dim_d = long(basis.size()) - mat.rank();
    }
    if (dim_d == 0) break;
    q.hilbert.push_back(dim_d);
    q.dim += dim_d;
  }
  bool palindromic = true;
  size_t len = q.hilbert.size();
  for (size_t k = 0; k < len; ++k)
    if (q.hilbert[k] != q.hilbert[len - 1 - k]) palindromic = false;
  q.frobenius_ok = palindromic && len > 0 && q.hilbert.back() == 1;
  return q;
}

std::vector<long> typeA_expected_hilbert(int n, int r) {
  std::vector<long> acc = {1};
  for (int rep = 0; rep < n - 1; ++rep) {
    std::vector<long> next(acc.size() + size_t(r) - 1, 0);
    for (size_t i = 0; i < acc.size(); ++i)
      for (int k = 0; k < r; ++k) next[i + size_t(k)] += acc[i];
    acc = std::move(next);
  }
  return acc;
}

bool typeA_support_by_vanishing(int n, int r, const std::vector<Rational>& x) {
  if (int(x.size()) != n) throw ConfigError("point has wrong dimension");
  std::vector<MPoly> f = typeA_singular_vectors(n, r);
  std::vector<Scalar> pt;
  pt.reserve(x.size());
  for (const Rational& v : x) pt.push_back(Scalar(v));
  for (const MPoly& fi : f)
    if (!fi.eval(pt, {Scalar(0)}).is_zero()) return false;
  return true;
}

bool typeA_power_condition(int n, int r, const std::vector<Rational>& x) {
  if (int(x.size()) != n) throw ConfigError("point has wrong dimension");
  int d = std::gcd(r, n);
  int k = n / d;
  if (k == 1) return true;

  // Monic P(z) = prod (z - x_i): p[t] = coefficient of z^{n-t}.
  std::vector<Rational> p(size_t(n) + 1, Rational(0));
  p[0] = Rational(1);
  for (int i = 0; i < n; ++i)
    for (int t = i + 1; t >= 1; --t) p[size_t(t)] -= x[size_t(i)] * p[size_t(t) - 1];

  // Candidate k-th root Q of degree d from the binomial series of
  // (1 + sum_t p_t z^{-t})^{1/k}, truncated at order d.
  Rational expo = rat(1, k);
  std::vector<Rational> b(size_t(d) + 1, Rational(0)), upow(size_t(d) + 1, Rational(0));
  b[0] = Rational(1);
  upow[0] = Rational(1);
  for (int j = 1; j <= d; ++j) {
    std::vector<Rational> next(size_t(d) + 1, Rational(0));
    for (int s = 0; s <= d; ++s)
      for (int t = 1; s + t <= d && t <= n; ++t) next[size_t(s + t)] += upow[size_t(s)] * p[size_t(t)];
    upow = std::move(next);
    Rational bc = rat_binom(expo, unsigned(j));
    for (int t = 0; t <= d; ++t) b[size_t(t)] += bc * upow[size_t(t)];
  }

  // Exact check Q^k == P.
  std::vector<Rational> qk = {Rational(1)};
  for (int rep = 0; rep < k; ++rep) {
    std::vector<Rational> next(qk.size() + size_t(d), Rational(0));
    for (size_t i = 0; i < qk.size(); ++i)
      for (int t = 0; t <= d; ++t) next[i + size_t(t)] += qk[i] * b[size_t(t)];
    qk = std::move(next);
  }
  if (qk.size() != p.size()) return false;
  for (size_t t = 0; t < p.size(); ++t)
    if (qk[t] != p[t]) return false;
  return true;
}

}  // namespace cmwork
