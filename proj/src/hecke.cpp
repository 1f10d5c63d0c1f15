#include "cmwork/hecke.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "cmwork/errors.hpp"
#include "cmwork/rng.hpp"
#include "cmwork/scalar.hpp"

namespace cmwork {

namespace {

void check_n(int n, int cap) {
  if (n < 2 || n > cap)
    throw ConfigError("symmetric group size must lie in 2.." + std::to_string(cap));
}

RationalFn rf_one() { return q_rational(Rational(1)); }

// Dense exact matrix helpers for the regular representation.
using RMat = std::vector<std::vector<Rational>>;

RMat rmat_zero(int n) { return RMat(size_t(n), std::vector<Rational>(size_t(n), Rational(0))); }

RMat rmat_identity(int n) {
  RMat m = rmat_zero(n);
  for (int i = 0; i < n; ++i) m[size_t(i)][size_t(i)] = Rational(1);
  return m;
}

RMat rmat_mul(const RMat& a, const RMat& b) {
  int n = int(a.size());
  RMat out = rmat_zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Rational& aik = a[size_t(i)][size_t(k)];
      if (aik == Rational(0)) continue;
      for (int j = 0; j < n; ++j) {
        const Rational& bkj = b[size_t(k)][size_t(j)];
        if (bkj == Rational(0)) continue;
        out[size_t(i)][size_t(j)] = out[size_t(i)][size_t(j)] + aik * bkj;
      }
    }
  return out;
}

bool rmat_equal(const RMat& a, const RMat& b) { return a == b; }

// Specialized Hecke element: basis index -> exact rational coefficient.
using SpecElem = std::map<int, Rational>;

SpecElem spec_left_gen(const ReflectionGroup& g, int i, const SpecElem& a, const Rational& q) {
  SpecElem out;
  int s = g.generator(i);
  Rational one_minus_q = Rational(1) - q;
  for (const auto& [w, c] : a) {
    int sw = g.mult(s, w);
    if (g.length(sw) > g.length(w)) {
      out[sw] = out.count(sw) ? out[sw] + c : c;
    } else {
      Rational cw = one_minus_q * c;
      Rational csw = q * c;
      out[w] = out.count(w) ? out[w] + cw : cw;
      out[sw] = out.count(sw) ? out[sw] + csw : csw;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == Rational(0) ? out.erase(it) : std::next(it);
  return out;
}

SpecElem spec_mul(const ReflectionGroup& g, int u, const SpecElem& b, const Rational& q) {
  // T_u * b with u given by its canonical reduced word.
  SpecElem acc = b;
  const std::vector<int>& word = g.word(u);
  for (size_t k = word.size(); k-- > 0;) acc = spec_left_gen(g, word[k], acc, q);
  return acc;
}

SpecElem spec_mul_elem(const ReflectionGroup& g, const SpecElem& a, const SpecElem& b,
                       const Rational& q) {
  SpecElem out;
  for (const auto& [u, cu] : a) {
    SpecElem part = spec_mul(g, u, b, q);
    for (const auto& [w, c] : part) {
      Rational add = cu * c;
      out[w] = out.count(w) ? out[w] + add : add;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == Rational(0) ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

const ReflectionGroup& symmetric_group(int n) {
  check_n(n, 6);
  static std::map<int, ReflectionGroup> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, ReflectionGroup::build("A" + std::to_string(n - 1))).first;
  return it->second;
}

RationalFn q_var() { return RationalFn::of(MPoly::variable(0, 1, 0)); }

RationalFn q_rational(const Rational& r) {
  return RationalFn::of(MPoly::constant(Scalar(r), 1, 0));
}

bool HeckeElement::is_zero() const {
  for (const auto& [w, c] : coeff)
    if (!c.is_zero()) return false;
  return true;
}

void HeckeElement::prune() {
  for (auto it = coeff.begin(); it != coeff.end();)
    it = it->second.is_zero() ? coeff.erase(it) : std::next(it);
}

HeckeElement hecke_unit(int n) {
  check_n(n, 6);
  HeckeElement e;
  e.n = n;
  e.coeff[0] = rf_one();
  return e;
}

HeckeElement hecke_generator(int n, int i) {
  const ReflectionGroup& g = symmetric_group(n);
  if (i < 0 || i >= g.num_generators()) throw ConfigError("generator index out of range");
  HeckeElement e;
  e.n = n;
  e.coeff[g.generator(i)] = rf_one();
  return e;
}

HeckeElement hecke_basis(int n, int elem) {
  const ReflectionGroup& g = symmetric_group(n);
  if (elem < 0 || elem >= g.order()) throw ConfigError("basis element index out of range");
  HeckeElement e;
  e.n = n;
  e.coeff[elem] = rf_one();
  return e;
}

HeckeElement hecke_add(HeckeElement a, const HeckeElement& b) {
  if (a.n != b.n) throw ConfigError("cannot add elements of different Hecke algebras");
  for (const auto& [w, c] : b.coeff) {
    auto it = a.coeff.find(w);
    if (it == a.coeff.end())
      a.coeff.emplace(w, c);
    else
      it->second += c;
  }
  a.prune();
  return a;
}

HeckeElement hecke_scale(HeckeElement a, const RationalFn& c) {
  for (auto& [w, v] : a.coeff) v *= c;
  a.prune();
  return a;
}

bool hecke_equal(const HeckeElement& a, const HeckeElement& b) {
  if (a.n != b.n) return false;
  HeckeElement d = hecke_add(a, hecke_scale(b, q_rational(Rational(-1))));
  return d.is_zero();
}

HeckeElement hecke_left_gen(int n, int i, const HeckeElement& a) {
  const ReflectionGroup& g = symmetric_group(n);
  if (i < 0 || i >= g.num_generators()) throw ConfigError("generator index out of range");
  int s = g.generator(i);
  RationalFn q = q_var();
  RationalFn one_minus_q = rf_one() - q;
  HeckeElement out;
  out.n = n;
  for (const auto& [w, c] : a.coeff) {
    int sw = g.mult(s, w);
    if (g.length(sw) > g.length(w)) {
      auto it = out.coeff.find(sw);
      if (it == out.coeff.end())
        out.coeff.emplace(sw, c);
      else
        it->second += c;
    } else {
      RationalFn cw = one_minus_q * c;
      RationalFn csw = q * c;
      auto itw = out.coeff.find(w);
      if (itw == out.coeff.end())
        out.coeff.emplace(w, cw);
      else
        itw->second += cw;
      auto its = out.coeff.find(sw);
      if (its == out.coeff.end())
        out.coeff.emplace(sw, csw);
      else
        its->second += csw;
    }
  }
  out.prune();
  return out;
}

HeckeElement hecke_mul_typeA(int n, const HeckeElement& a, const HeckeElement& b) {
  check_n(n, 6);
  if (a.n != n || b.n != n) throw ConfigError("operands do not live in H_q(S_n)");
  const ReflectionGroup& g = symmetric_group(n);
  HeckeElement out;
  out.n = n;
  for (const auto& [u, cu] : a.coeff) {
    // Fold the canonical reduced word of u onto b, rightmost letter first.
    HeckeElement acc = b;
    const std::vector<int>& word = g.word(u);
    for (size_t k = word.size(); k-- > 0;) acc = hecke_left_gen(n, word[k], acc);
    out = hecke_add(std::move(out), hecke_scale(std::move(acc), cu));
  }
  return out;
}

std::map<int, Rational> hecke_specialize(const HeckeElement& a, const Rational& q) {
  std::map<int, Rational> out;
  std::vector<Scalar> point{Scalar(q)};
  for (const auto& [w, c] : a.coeff) {
    Scalar v = c.eval(point, {});
    if (!v.is_rational()) throw MathError("Hecke coefficient specialized to an irrational value");
    if (!(v.as_rational() == Rational(0))) out[w] = v.as_rational();
  }
  return out;
}

HeckeDimReport hecke_dim_check(int n, const Rational& q, long assoc_samples, uint64_t seed) {
  check_n(n, 5);
  if (q == Rational(0) || q == Rational(1) || q == Rational(-1))
    throw ConfigError("q must avoid 0 and the rational roots of unity 1, -1");
  const ReflectionGroup& g = symmetric_group(n);
  const int N = g.order();

  HeckeDimReport rep;
  rep.n = n;
  rep.q = q;
  rep.basis_size = N;

  // Regular representation at the given q: column w of rho_i is T_{s_i} T_w.
  std::vector<RMat> rho;
  for (int i = 0; i < g.num_generators(); ++i) {
    RMat m = rmat_zero(N);
    int s = g.generator(i);
    for (int w = 0; w < N; ++w) {
      int sw = g.mult(s, w);
      if (g.length(sw) > g.length(w)) {
        m[size_t(sw)][size_t(w)] = Rational(1);
      } else {
        m[size_t(w)][size_t(w)] = Rational(1) - q;
        m[size_t(sw)][size_t(w)] = q;
      }
    }
    rho.push_back(std::move(m));
  }

  // Quadratic relation: rho_i^2 = (1 - q) rho_i + q I as exact matrices.
  rep.quadratic_ok = true;
  const RMat id = rmat_identity(N);
  for (int i = 0; i < g.num_generators() && rep.quadratic_ok; ++i) {
    RMat sq = rmat_mul(rho[size_t(i)], rho[size_t(i)]);
    RMat want = rmat_zero(N);
    for (int r = 0; r < N; ++r)
      for (int cidx = 0; cidx < N; ++cidx)
        want[size_t(r)][size_t(cidx)] =
            (Rational(1) - q) * rho[size_t(i)][size_t(r)][size_t(cidx)] +
            q * id[size_t(r)][size_t(cidx)];
    rep.quadratic_ok = rmat_equal(sq, want);
  }

  // Braid and commuting relations.
  rep.braid_ok = true;
  rep.commute_ok = true;
  for (int i = 0; i < g.num_generators(); ++i)
    for (int j = i + 1; j < g.num_generators(); ++j) {
      if (j == i + 1) {
        RMat lhs = rmat_mul(rmat_mul(rho[size_t(i)], rho[size_t(j)]), rho[size_t(i)]);
        RMat rhs = rmat_mul(rmat_mul(rho[size_t(j)], rho[size_t(i)]), rho[size_t(j)]);
        if (!rmat_equal(lhs, rhs)) rep.braid_ok = false;
      } else {
        RMat lhs = rmat_mul(rho[size_t(i)], rho[size_t(j)]);
        RMat rhs = rmat_mul(rho[size_t(j)], rho[size_t(i)]);
        if (!rmat_equal(lhs, rhs)) rep.commute_ok = false;
      }
    }

  // Associativity on basis triples: symbolic in q (exhaustive) for n <= 3,
  // sampled at the given rational q for larger n.
  rep.assoc_ok = true;
  if (n <= 3) {
    rep.exhaustive = true;
    rep.assoc_triples = long(N) * N * N;
    for (int a = 0; a < N && rep.assoc_ok; ++a)
      for (int b = 0; b < N && rep.assoc_ok; ++b)
        for (int c = 0; c < N && rep.assoc_ok; ++c) {
          HeckeElement ta = hecke_basis(n, a), tb = hecke_basis(n, b), tc = hecke_basis(n, c);
          HeckeElement lhs = hecke_mul_typeA(n, hecke_mul_typeA(n, ta, tb), tc);
          HeckeElement rhs = hecke_mul_typeA(n, ta, hecke_mul_typeA(n, tb, tc));
          if (!hecke_equal(lhs, rhs)) rep.assoc_ok = false;
        }
  } else {
    rep.exhaustive = false;
    if (assoc_samples < 1) throw ConfigError("need at least one associativity sample");
    rep.assoc_triples = assoc_samples;
    SplitMix64 rng{seed};
    for (long t = 0; t < assoc_samples && rep.assoc_ok; ++t) {
      int a = int(rng.next() % uint64_t(N));
      int b = int(rng.next() % uint64_t(N));
      int c = int(rng.next() % uint64_t(N));
      SpecElem ta{{a, Rational(1)}}, tb{{b, Rational(1)}}, tc{{c, Rational(1)}};
      SpecElem lhs = spec_mul_elem(g, spec_mul_elem(g, ta, tb, q), tc, q);
      SpecElem rhs = spec_mul_elem(g, ta, spec_mul_elem(g, tb, tc, q), q);
      if (lhs != rhs) rep.assoc_ok = false;
    }
  }

  rep.pass = rep.quadratic_ok && rep.braid_ok && rep.commute_ok && rep.assoc_ok;
  return rep;
}

}  // namespace cmwork
