#include "cmwork/kz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "cmwork/errors.hpp"

namespace cmwork {

namespace {

constexpr double kPi = 3.14159265358979323846;
using Cx = std::complex<double>;

// One reflection term of the connection form.
struct Term {
  Cx coef;                // 2 c_s / (1 - lambda_s)
  Eigen::VectorXd alpha;  // real linear form, extended complex-linearly
  std::vector<int> perm;  // fiber basis map h -> s * h
};

// Path pieces: straight segment or circular arc around a mirror point.
struct Piece {
  int kind = 0;  // 0 line, 1 arc
  CVec a, b;     // line a + t (b - a)
  CVec ctr, rad;
  double phi0 = 0.0, dphi = 0.0;  // arc ctr + exp(i (phi0 + t dphi)) rad

  CVec at(double t) const {
    if (kind == 0) return a + t * (b - a);
    return ctr + std::exp(Cx(0.0, phi0 + t * dphi)) * rad;
  }
  CVec deriv(double t) const {
    if (kind == 0) return b - a;
    return Cx(0.0, dphi) * std::exp(Cx(0.0, phi0 + t * dphi)) * rad;
  }
  Piece reversed() const {
    Piece r = *this;
    if (kind == 0) {
      r.a = b;
      r.b = a;
    } else {
      r.phi0 = phi0 + dphi;
      r.dphi = -dphi;
    }
    return r;
  }
};

Cx form_at(const Eigen::VectorXd& alpha, const CVec& x) {
  Cx acc(0.0, 0.0);
  for (int i = 0; i < alpha.size(); ++i) acc += alpha[i] * x[i];
  return acc;
}

// G = sum_s coef_s (alpha_s(dx) / alpha_s(x)) (F - lambda(s) F).
void apply_conn(const std::vector<Term>& terms, const CVec& x, const CVec& dx, const CMatX& F,
                CMatX* out) {
  out->setZero(F.rows(), F.cols());
  for (const Term& tm : terms) {
    if (tm.coef == Cx(0.0, 0.0)) continue;
    Cx k = tm.coef * (form_at(tm.alpha, dx) / form_at(tm.alpha, x));
    for (int h = 0; h < F.rows(); ++h) {
      out->row(h) += k * F.row(h);
      out->row(tm.perm[size_t(h)]) -= k * F.row(h);
    }
  }
}

// Exact distance from the origin to the complex segment traced by a linear
// form along a line piece; sampled minimum along arcs.
void check_margin(const std::vector<Term>& terms, const Piece& pc, double margin) {
  for (const Term& tm : terms) {
    double dist = std::numeric_limits<double>::infinity();
    if (pc.kind == 0) {
      Cx za = form_at(tm.alpha, pc.a);
      Cx zb = form_at(tm.alpha, pc.b);
      Cx d = zb - za;
      double l2 = std::norm(d);
      if (l2 == 0.0) {
        dist = std::abs(za);
      } else {
        double ts = -(za.real() * d.real() + za.imag() * d.imag()) / l2;
        ts = std::clamp(ts, 0.0, 1.0);
        dist = std::abs(za + ts * d);
      }
    } else {
      for (int s = 0; s <= 128; ++s)
        dist = std::min(dist, std::abs(form_at(tm.alpha, pc.at(double(s) / 128.0))));
    }
    if (dist < margin)
      throw HyperplaneTooClose("path passes a mirror at distance " + std::to_string(dist));
  }
}

// Dormand-Prince 5(4) over one piece, t in [0, 1]; F evolves in place.
void transport_piece(const std::vector<Term>& terms, const Piece& pc, CMatX* F, double rtol,
                     double atol) {
  static const double A[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double B4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                               -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
  static const double C[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};

  const long rows = F->rows(), cols = F->cols();
  CMatX k[7], stage(rows, cols), y5(rows, cols), ed(rows, cols);
  double t = 0.0, h = 0.1;
  long iters = 0;
  while (t < 1.0) {
    if (++iters > 2000000L) throw ToleranceNotMet("transport exceeded its step budget");
    h = std::min(h, 1.0 - t);
    if (!(h > 1e-14)) throw ToleranceNotMet("transport step size collapsed");
    apply_conn(terms, pc.at(t), pc.deriv(t), *F, &k[0]);
    bool finite = true;
    for (int s = 1; s < 7 && finite; ++s) {
      stage = *F;
      for (int j = 0; j < s; ++j)
        if (A[s][j] != 0.0) stage += (h * A[s][j]) * k[j];
      apply_conn(terms, pc.at(t + C[s] * h), pc.deriv(t + C[s] * h), stage, &k[s]);
      finite = k[s].allFinite();
    }
    double err = std::numeric_limits<double>::infinity();
    if (finite) {
      // The 5th-order solution is the s = 6 stage (FSAL pair: k[6] = f(y5)).
      y5 = *F;
      for (int j = 0; j < 6; ++j)
        if (A[6][j] != 0.0) y5 += (h * A[6][j]) * k[j];
      ed.setZero();
      for (int j = 0; j < 7; ++j) {
        double w = (j < 6 ? A[6][j] : 0.0) - B4[j];
        if (w != 0.0) ed += w * k[j];
      }
      double sum = 0.0;
      for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) {
          double sc = atol + rtol * std::max(std::abs((*F)(i, j)), std::abs(y5(i, j)));
          double e = std::abs(h * ed(i, j)) / sc;
          sum += e * e;
        }
      err = std::sqrt(sum / double(rows * cols));
    }
    if (err <= 1.0) {
      t += h;
      *F = y5;
      double grow = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
      h *= std::clamp(grow, 0.2, 5.0);
    } else {
      double shrink = finite ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.1;
      h *= std::min(shrink, 0.9);
    }
  }
}

CMatX transport_chain(const std::vector<Term>& terms, const std::vector<Piece>& pieces, long n,
                      const KZOptions& o) {
  for (const Piece& pc : pieces) check_margin(terms, pc, o.margin);
  CMatX F = CMatX::Identity(n, n);
  for (const Piece& pc : pieces) transport_piece(terms, pc, &F, o.rtol, o.atol);
  return F;
}

// Forward transport plus the internal inversion check along the reversed path.
TransportResult transport_checked(const std::vector<Term>& terms,
                                  const std::vector<Piece>& pieces, long n,
                                  const KZOptions& o) {
  TransportResult res;
  res.M = transport_chain(terms, pieces, n, o);
  std::vector<Piece> back;
  back.reserve(pieces.size());
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) back.push_back(it->reversed());
  CMatX Mb = transport_chain(terms, back, n, o);
  res.reverse_error = (Mb * res.M - CMatX::Identity(n, n)).cwiseAbs().maxCoeff();
  double cap = o.reverse_tol >= 0.0 ? o.reverse_tol : std::max(1e4 * o.rtol, 1e-9);
  if (res.reverse_error > cap) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "backward transport fails to invert the forward transport (defect %.3e)",
                  res.reverse_error);
    throw ToleranceNotMet(msg);
  }
  return res;
}

std::vector<Term> real_terms(const ReflectionGroup& W, const std::vector<double>& c) {
  if (W.cyclic())
    throw ConfigError("transport needs a real reflection group; use the cyclic entry point");
  if (int(c.size()) != W.num_reflection_classes())
    throw ConfigError("need one coupling per reflection class");
  std::vector<Term> terms;
  terms.reserve(W.reflections().size());
  for (const Reflection& r : W.reflections()) {
    Term tm;
    tm.coef = Cx(c[size_t(r.cls)], 0.0);  // 2c / (1 - (-1)) = c
    tm.alpha.resize(W.dim());
    for (int i = 0; i < W.dim(); ++i) tm.alpha[i] = r.alpha[size_t(i)].to_double();
    tm.perm.resize(size_t(W.order()));
    for (int h = 0; h < W.order(); ++h) tm.perm[size_t(h)] = W.mult(r.elem, h);
    terms.push_back(std::move(tm));
  }
  return terms;
}

Eigen::MatrixXd action_matrix(const ReflectionGroup& W, int elem) {
  const SMat& m = W.matrix(elem);
  Eigen::MatrixXd out(W.dim(), W.dim());
  for (int i = 0; i < W.dim(); ++i)
    for (int j = 0; j < W.dim(); ++j) out(i, j) = m.at(i, j).to_double();
  return out;
}

// Line to the half-way point, half-circle around the mirror, line onward to
// the reflected basepoint.
std::vector<Piece> braid_pieces(const Eigen::VectorXd& x0, const Eigen::MatrixXd& s) {
  Eigen::VectorXd sx = s * x0;
  Eigen::VectorXd mid = 0.5 * (x0 + sx);
  Eigen::VectorXd rad = 0.5 * (x0 - mid);
  auto cplx = [](const Eigen::VectorXd& v) { return CVec(v.cast<Cx>()); };

  Piece line1;
  line1.kind = 0;
  line1.a = cplx(x0);
  line1.b = cplx(mid + rad);
  Piece arc;
  arc.kind = 1;
  arc.ctr = cplx(mid);
  arc.rad = cplx(rad);
  arc.phi0 = 0.0;
  arc.dphi = kPi;
  Piece line2;
  line2.kind = 0;
  line2.a = cplx(mid - rad);
  line2.b = cplx(sx);
  return {line1, arc, line2};
}

// Braid-generator monodromy: deck transformation after transport to s x0.
// Only mirrors bounding the basepoint's chamber admit the direct line-arc-
// line approach (towards a far mirror the arc sweeps across other root
// values and the loop leaves the braid-generator class), so a general
// reflection s = w s_i w^{-1} is encircled along the w-translate of the
// simple path, a conjugate loop at the same quotient basepoint.
CMatX monodromy_T(const ReflectionGroup& W, const std::vector<Term>& terms,
                  const Eigen::VectorXd& x0, int refl_elem, const KZOptions& o,
                  double* reverse_error) {
  int w = -1;
  for (int cand = 0; cand < W.order() && w < 0; ++cand)
    for (int i = 0; i < W.num_generators(); ++i)
      if (W.mult(W.mult(cand, W.generator(i)), W.inverse(cand)) == refl_elem) {
        w = cand;
        break;
      }
  if (w < 0) throw MathError("reflection is not conjugate to any simple reflection");
  Eigen::VectorXd base = action_matrix(W, w) * x0;
  std::vector<Piece> pieces = braid_pieces(base, action_matrix(W, refl_elem));
  TransportResult tr = transport_checked(terms, pieces, W.order(), o);
  if (reverse_error) *reverse_error = tr.reverse_error;
  return regular_rep(W, refl_elem) * tr.M;
}

std::vector<EigenCluster> cluster_eigs(const Eigen::VectorXcd& vals, double tol) {
  std::vector<Cx> v(vals.data(), vals.data() + vals.size());
  std::sort(v.begin(), v.end(), [](const Cx& a, const Cx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<EigenCluster> out;
  Cx sum(0.0, 0.0);
  for (const Cx& x : v) {
    if (!out.empty() && std::abs(x - out.back().value) <= tol) {
      sum += x;
      out.back().mult += 1;
      out.back().value = sum / double(out.back().mult);
    } else {
      sum = x;
      out.push_back({x, 1});
    }
  }
  return out;
}

}  // namespace

CMatX regular_rep(const ReflectionGroup& W, int elem) {
  if (elem < 0 || elem >= W.order()) throw ConfigError("element index out of range");
  CMatX M = CMatX::Zero(W.order(), W.order());
  for (int h = 0; h < W.order(); ++h) M(W.mult(elem, h), h) = Cx(1.0, 0.0);
  return M;
}

Eigen::VectorXd kz_basepoint(const ReflectionGroup& W) {
  if (W.cyclic()) throw ConfigError("basepoints are defined for real reflection groups");
  const int g = W.num_generators();
  Eigen::MatrixXd roots(W.dim(), g);
  for (int i = 0; i < g; ++i) {
    bool found = false;
    for (const Reflection& r : W.reflections())
      if (r.elem == W.generator(i)) {
        for (int d = 0; d < W.dim(); ++d) roots(d, i) = r.alpha[size_t(d)].to_double();
        found = true;
        break;
      }
    if (!found) throw MathError("generator is missing from the reflection table");
  }
  Eigen::MatrixXd gram = roots.transpose() * roots;
  Eigen::VectorXd b(g);
  for (int i = 0; i < g; ++i) b[i] = 1.0 + 0.3 * i;
  Eigen::VectorXd xi = gram.ldlt().solve(b);
  Eigen::VectorXd x0 = roots * xi;
  for (const Reflection& r : W.reflections()) {
    double v = 0.0;
    for (int d = 0; d < W.dim(); ++d) v += r.alpha[size_t(d)].to_double() * x0[d];
    if (std::abs(v) < 1e-9) throw MathError("constructed basepoint is not regular");
  }
  return x0;
}

TransportResult kz_transport(const ReflectionGroup& W, const std::vector<double>& c,
                             const std::vector<CVec>& polyline, const KZOptions& opts) {
  std::vector<Term> terms = real_terms(W, c);
  if (polyline.size() < 2) throw ConfigError("polyline needs at least two points");
  for (const CVec& p : polyline)
    if (p.size() != W.dim()) throw ConfigError("polyline point has the wrong dimension");
  std::vector<Piece> pieces;
  pieces.reserve(polyline.size() - 1);
  for (size_t i = 0; i + 1 < polyline.size(); ++i) {
    Piece pc;
    pc.kind = 0;
    pc.a = polyline[i];
    pc.b = polyline[i + 1];
    pieces.push_back(std::move(pc));
  }
  return transport_checked(terms, pieces, W.order(), opts);
}

MonodromyReport monodromy_eigencheck(const ReflectionGroup& W, const std::vector<double>& c,
                                     int cls, const KZOptions& opts) {
  std::vector<Term> terms = real_terms(W, c);
  if (cls < 0 || cls >= W.num_reflection_classes())
    throw ConfigError("reflection class index out of range");
  std::vector<int> mirrors;
  for (const Reflection& r : W.reflections())
    if (r.cls == cls) mirrors.push_back(r.elem);
  if (mirrors.empty()) throw MathError("reflection class has no members");
  int pick = opts.reflection_pick % int(mirrors.size());
  if (pick < 0) pick += int(mirrors.size());

  MonodromyReport rep;
  rep.group = W.name();
  rep.cls = cls;
  rep.q = std::exp(Cx(0.0, 2.0 * kPi * c[size_t(cls)]));

  Eigen::VectorXd x0 = kz_basepoint(W);
  rep.T = monodromy_T(W, terms, x0, mirrors[size_t(pick)], opts, &rep.reverse_error);

  const long n = rep.T.rows();
  rep.quad_residual =
      ((rep.T - CMatX::Identity(n, n)) * (rep.T + rep.q * CMatX::Identity(n, n))).norm();
  Eigen::ComplexEigenSolver<CMatX> es(rep.T, false);
  rep.eigenvalues = cluster_eigs(es.eigenvalues(), opts.cluster_tol);
  return rep;
}

double braid_relation_residual(const ReflectionGroup& W, const std::vector<double>& c, int i,
                               int j, const KZOptions& opts) {
  std::vector<Term> terms = real_terms(W, c);
  if (i < 0 || i >= W.num_generators() || j < 0 || j >= W.num_generators() || i == j)
    throw ConfigError("need two distinct generator indices");
  int a = W.mult(W.generator(i), W.generator(j));
  int m = 1, e = a;
  while (e != 0) {
    e = W.mult(e, a);
    ++m;
  }
  Eigen::VectorXd x0 = kz_basepoint(W);
  CMatX Ti = monodromy_T(W, terms, x0, W.generator(i), opts, nullptr);
  CMatX Tj = monodromy_T(W, terms, x0, W.generator(j), opts, nullptr);
  CMatX L = CMatX::Identity(W.order(), W.order());
  CMatX R = L;
  for (int t = 0; t < m; ++t) {
    L = L * (t % 2 == 0 ? Ti : Tj);
    R = R * (t % 2 == 0 ? Tj : Ti);
  }
  return (L - R).norm();
}

CyclicReport kz_cyclic_monodromy(int m, const std::vector<double>& c, const KZOptions& opts) {
  if (m < 2 || m > 24) throw ConfigError("cyclic order must lie in 2..24");
  if (int(c.size()) != m - 1) throw ConfigError("need one coupling per nontrivial power");

  std::vector<Term> terms;
  terms.reserve(size_t(m - 1));
  for (int j = 1; j < m; ++j) {
    Term tm;
    Cx lambda = std::exp(Cx(0.0, -2.0 * kPi * j / m));
    tm.coef = 2.0 * c[size_t(j - 1)] / (Cx(1.0, 0.0) - lambda);
    tm.alpha = Eigen::VectorXd::Ones(1);
    tm.perm.resize(size_t(m));
    for (int h = 0; h < m; ++h) tm.perm[size_t(h)] = (h + j) % m;
    terms.push_back(std::move(tm));
  }

  Piece arc;
  arc.kind = 1;
  arc.ctr = CVec::Zero(1);
  arc.rad = CVec::Ones(1);
  arc.phi0 = 0.0;
  arc.dphi = 2.0 * kPi / m;

  CyclicReport rep;
  rep.m = m;
  TransportResult tr = transport_checked(terms, {arc}, m, opts);
  rep.reverse_error = tr.reverse_error;

  CMatX shift = CMatX::Zero(m, m);
  for (int h = 0; h < m; ++h) shift((h + 1) % m, h) = Cx(1.0, 0.0);
  rep.T = shift * tr.M;

  // Closed form: the connection matrix is constant along the loop parameter,
  // so the transport is the exponential of (2 pi i / m) B.
  CMatX B = CMatX::Zero(m, m);
  for (const Term& tm : terms)
    for (int h = 0; h < m; ++h) {
      B(h, h) += tm.coef;
      B(tm.perm[size_t(h)], h) -= tm.coef;
    }
  Eigen::ComplexEigenSolver<CMatX> eb(B);
  Eigen::VectorXcd expd = (Cx(0.0, 2.0 * kPi / m) * eb.eigenvalues().array()).exp();
  CMatX Mcf = eb.eigenvectors() * expd.asDiagonal() * eb.eigenvectors().inverse();
  rep.route_diff = (rep.T - shift * Mcf).cwiseAbs().maxCoeff();

  Eigen::ComplexEigenSolver<CMatX> es(rep.T, false);
  rep.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + m);
  return rep;
}

}  // namespace cmwork
