#include "cmwork/necklace.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cmwork/errors.hpp"
#include "cmwork/rng.hpp"

namespace cmwork {

namespace {

void check_word(const std::string& w) {
  if (w.size() > 6) throw ConfigError("trace words are limited to length 6");
  for (char c : w)
    if (c != 'X' && c != 'Y')
      throw ConfigError("trace words use the alphabet {X, Y}, got '" + w + "'");
}

const CMat& letter(char c, const CMat& X, const CMat& Y) { return c == 'X' ? X : Y; }

// Product of the letters of w after position i, in cyclic order (the word
// with letter i removed, read starting at i+1).
CMat cyclic_rest(const std::string& w, size_t i, const CMat& X, const CMat& Y) {
  CMat out = CMat::Identity(X.rows(), X.cols());
  for (size_t step = 1; step < w.size(); ++step)
    out = out * letter(w[(i + step) % w.size()], X, Y);
  return out;
}

// d Tr(w) / dM_ab as a matrix indexed by (a, b).
CMat trace_gradient(const std::string& w, char M, const CMat& X, const CMat& Y) {
  CMat grad = CMat::Zero(X.rows(), X.cols());
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i] == M) grad += cyclic_rest(w, i, X, Y).transpose();
  return grad;
}

bool has_letter(const std::string& w, char c) { return w.find(c) != std::string::npos; }

RationalFn rf_derivative(const RationalFn& f, int var) {
  MPoly num = f.num().derivative(var) * f.den() - f.num() * f.den().derivative(var);
  return RationalFn(std::move(num), f.den() * f.den());
}

RationalFn rf_scale(const RationalFn& f, long c) {
  return RationalFn(f.num().times(Scalar(c)), f.den());
}

// Symbolic Y of the xi map: p_i on the diagonal, 1/(x_i - x_j) off it.
// Variables 0..n-1 are the x_i, variables n..2n-1 the p_i.
std::vector<std::vector<RationalFn>> symbolic_y(int n) {
  std::vector<std::vector<RationalFn>> Y(static_cast<size_t>(n),
                                         std::vector<RationalFn>(static_cast<size_t>(n)));
  MPoly one = MPoly::one(2 * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        Y[size_t(i)][size_t(j)] = RationalFn::of(MPoly::variable(n + i, 2 * n, 0));
      else
        Y[size_t(i)][size_t(j)] =
            RationalFn(one, MPoly::variable(i, 2 * n, 0) - MPoly::variable(j, 2 * n, 0));
    }
  return Y;
}

void check_poisson_args(int n, int k, int cap) {
  if (n < 1 || n > 4)
    throw ConfigError("coordinate checks pack x and p into 8 variables; need 1 <= n <= 4");
  if (k < 0 || k > cap)
    throw ConfigError("trace exponent out of range [0, " + std::to_string(cap) + "]");
}

}  // namespace

Cx necklace_bracket_canonical(const std::string& u, const std::string& v, const CMat& X,
                              const CMat& Y) {
  check_word(u);
  check_word(v);
  CMat uY = trace_gradient(u, 'Y', X, Y);
  CMat uX = trace_gradient(u, 'X', X, Y);
  CMat vX = trace_gradient(v, 'X', X, Y);
  CMat vY = trace_gradient(v, 'Y', X, Y);
  const long n = X.rows();
  Cx acc(0.0, 0.0);
  // {Y_ab, X_cd} = delta_ad delta_bc, and the opposite orientation picks up
  // the minus sign; the deltas collapse the sum to (c, d) = (b, a).
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c)
        for (long d = 0; d < n; ++d)
          if (a == d && b == c) acc += uY(a, b) * vX(c, d) - uX(a, b) * vY(c, d);
  return acc;
}

Cx necklace_bracket_theorem(const std::string& u, const std::string& v, const CMat& X,
                            const CMat& Y) {
  check_word(u);
  check_word(v);
  Cx acc(0.0, 0.0);
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) {
      int sign = 0;
      if (u[i] == 'Y' && v[j] == 'X') sign = 1;
      if (u[i] == 'X' && v[j] == 'Y') sign = -1;
      if (sign == 0) continue;
      CMat glued = cyclic_rest(u, i, X, Y) * cyclic_rest(v, j, X, Y);
      acc += double(sign) * glued.trace();
    }
  return acc;
}

NecklaceReport necklace_bracket_check(const std::string& u, const std::string& v, int n,
                                      long n_samples, uint64_t seed, double tol,
                                      bool parallel) {
  check_word(u);
  check_word(v);
  if (n < 1 || n > 6) throw ConfigError("matrix size must satisfy 1 <= n <= 6");
  if (n_samples < 1) throw ConfigError("sample count must be positive");

  std::vector<double> err(static_cast<size_t>(n_samples));
  std::vector<Cx> val_a(static_cast<size_t>(n_samples)),
      val_b(static_cast<size_t>(n_samples));

#pragma omp parallel for schedule(static) if (parallel)
  for (long s = 0; s < n_samples; ++s) {
    GaussianStream gs(stream_seed(seed, int(s)));
    CMat X(n, n), Y(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) X(i, j) = Cx(gs.gaussian(), gs.gaussian());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) Y(i, j) = Cx(gs.gaussian(), gs.gaussian());
    Cx a = necklace_bracket_canonical(u, v, X, Y);
    Cx b = necklace_bracket_theorem(u, v, X, Y);
    val_a[size_t(s)] = a;
    val_b[size_t(s)] = b;
    err[size_t(s)] = std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
  }

  NecklaceReport rep;
  rep.u = u;
  rep.v = v;
  rep.n_samples = n_samples;
  rep.seed = seed;
  rep.tol = tol;
  size_t worst = 0;
  for (size_t s = 0; s < size_t(n_samples); ++s)
    if (err[s] > err[worst]) worst = s;
  rep.max_rel_err = err[worst];
  rep.worst_canonical = val_a[worst];
  rep.worst_theorem = val_b[worst];
  rep.pass = rep.max_rel_err <= tol;
  bool orientation1 = has_letter(u, 'Y') && has_letter(v, 'X');
  bool orientation2 = has_letter(u, 'X') && has_letter(v, 'Y');
  rep.structural_zero = !orientation1 && !orientation2;
  return rep;
}

RationalFn xi_pullback_a(int n, int k) {
  check_poisson_args(n, k, 10);
  // Tr X^k with X = diag(x): the matrix power of the symbolic diagonal.
  RationalFn acc = RationalFn::of(MPoly::zero(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    MPoly pw = MPoly::one(2 * n, 0);
    for (int e = 0; e < k; ++e) pw *= MPoly::variable(i, 2 * n, 0);
    acc += RationalFn::of(pw);
  }
  return acc;
}

RationalFn xi_pullback_b(int n, int k) {
  check_poisson_args(n, k, 10);
  // Tr(X^k Y) with the full symbolic Y; only its diagonal survives the
  // trace against the diagonal X^k, but the product is taken honestly.
  std::vector<std::vector<RationalFn>> Y = symbolic_y(n);
  RationalFn acc = RationalFn::of(MPoly::zero(2 * n, 0));
  for (int i = 0; i < n; ++i) {
    MPoly pw = MPoly::one(2 * n, 0);
    for (int e = 0; e < k; ++e) pw *= MPoly::variable(i, 2 * n, 0);
    acc += RationalFn::of(pw) * Y[size_t(i)][size_t(i)];
  }
  return acc;
}

RationalFn poisson_bracket_xp(const RationalFn& f, const RationalFn& g, int n) {
  RationalFn acc = RationalFn::of(MPoly::zero(f.num().nvars(), 0));
  for (int i = 0; i < n; ++i) {
    acc += rf_derivative(f, n + i) * rf_derivative(g, i);
    acc -= rf_derivative(f, i) * rf_derivative(g, n + i);
  }
  return acc;
}

CoordPoissonReport coordinate_poisson_check(int n, int m, int k, long samples, uint64_t seed) {
  check_poisson_args(n, m, 5);
  check_poisson_args(n, k, 5);
  if (samples < 0) throw ConfigError("sample count must be nonnegative");

  CoordPoissonReport rep;
  rep.n = n;
  rep.m = m;
  rep.k = k;

  RationalFn am = xi_pullback_a(n, m), ak = xi_pullback_a(n, k);
  RationalFn bm = xi_pullback_b(n, m), bk = xi_pullback_b(n, k);

  RationalFn aa = poisson_bracket_xp(am, ak, n);
  rep.aa_zero = aa.is_zero();

  RationalFn zero = RationalFn::of(MPoly::zero(2 * n, 0));
  RationalFn ba = poisson_bracket_xp(bm, ak, n);
  RationalFn ba_rhs = k == 0 ? zero : rf_scale(xi_pullback_a(n, m + k - 1), k);
  rep.ba_match = (ba == ba_rhs);

  RationalFn bb = poisson_bracket_xp(bm, bk, n);
  RationalFn bb_rhs = k == m ? zero : rf_scale(xi_pullback_b(n, m + k - 1), k - m);
  rep.bb_match = (bb == bb_rhs);

  // Random-point agreement of both sides (paranoia against an identity
  // check bug: evaluation goes through different code than equality).
  SplitMix64 rng{stream_seed(seed, 0)};
  long ok = 0;
  for (long s = 0; s < samples; ++s) {
    std::vector<Scalar> pt;
    std::vector<long> xs;
    while (int(xs.size()) < n) {
      long c = long(rng.next() % 25) - 12;
      if (std::find(xs.begin(), xs.end(), c) == xs.end()) xs.push_back(c);
    }
    for (long c : xs) pt.emplace_back(c);
    for (int i = 0; i < n; ++i) pt.emplace_back(long(rng.next() % 11) - 5);
    bool good = ba.eval(pt, {}) == ba_rhs.eval(pt, {}) &&
                bb.eval(pt, {}) == bb_rhs.eval(pt, {}) && aa.eval(pt, {}) == Scalar(0);
    if (good) ++ok;
  }
  rep.spot_checks = ok;
  rep.pass = rep.aa_zero && rep.ba_match && rep.bb_match && ok == samples;
  return rep;
}

}  // namespace cmwork
