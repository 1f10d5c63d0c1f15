#include "cmwork/cm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cmwork/errors.hpp"

namespace cmwork {

namespace {

void check_chart(const CoordChart& chart, double tau_sep) {
  if (chart.x.empty() || chart.x.size() != chart.p.size())
    throw ConfigError("coordinate chart needs matching nonempty x and p lists");
  int n = int(chart.x.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(chart.x[size_t(i)] - chart.x[size_t(j)]) <= tau_sep)
        throw SeparationTooSmall("positions " + std::to_string(i + 1) + " and " +
                                 std::to_string(j + 1) + " closer than the separation floor");
}

double min_separation(const std::vector<Cx>& x) {
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = i + 1; j < x.size(); ++j) m = std::min(m, std::abs(x[i] - x[j]));
  return m;
}

std::string fmt_value(const Cx& v) {
  char buf[64];
  if (std::abs(v.imag()) <= 1e-13 * std::max(1.0, std::abs(v.real()))) {
    std::snprintf(buf, sizeof buf, "%.17g", v.real());
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
  return buf;
}

// Best assignment of cur to prev by total displacement, over all
// permutations (n <= 7 keeps this cheap and exact).
std::vector<int> match_order(const std::vector<Cx>& prev, const std::vector<Cx>& cur) {
  int n = int(prev.size());
  std::vector<int> perm(static_cast<size_t>(n)), best(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (int i = 0; i < n && cost < best_cost; ++i)
      cost += std::abs(cur[size_t(perm[size_t(i)])] - prev[size_t(i)]);
    if (cost < best_cost) {
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;  // position i should take cur[best[i]]
}

std::vector<Cx> traces_of_powers(const CMat& Y, int n) {
  std::vector<Cx> out;
  CMat acc = CMat::Identity(Y.rows(), Y.cols());
  for (int j = 1; j <= n; ++j) {
    acc = acc * Y;
    out.push_back(acc.trace());
  }
  return out;
}

// Hamilton's equations for H = sum p^2 - g^2 sum_{i != j} (x_i - x_j)^{-2}.
void hamilton_rhs(const std::vector<Cx>& x, const std::vector<Cx>& p, double g2,
                  std::vector<Cx>* dx, std::vector<Cx>* dp) {
  int n = int(x.size());
  dx->assign(size_t(n), Cx(0));
  dp->assign(size_t(n), Cx(0));
  for (int i = 0; i < n; ++i) (*dx)[size_t(i)] = 2.0 * p[size_t(i)];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      Cx d = x[size_t(i)] - x[size_t(j)];
      (*dp)[size_t(i)] -= 4.0 * g2 / (d * d * d);
    }
}

}  // namespace

CMPoint xi_map(const CoordChart& chart, double coupling, double tau_sep) {
  check_chart(chart, tau_sep);
  int n = int(chart.x.size());
  CMPoint P;
  P.n = n;
  P.X = CMat::Zero(n, n);
  P.Y = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    P.X(i, i) = chart.x[size_t(i)];
    P.Y(i, i) = chart.p[size_t(i)];
    for (int j = 0; j < n; ++j)
      if (j != i) P.Y(i, j) = coupling / (chart.x[size_t(i)] - chart.x[size_t(j)]);
  }
  return P;
}

double rank_one_residual(const CMPoint& P) {
  if (P.n <= 1) return 0.0;
  CMat T = P.X * P.Y - P.Y * P.X + CMat::Identity(P.n, P.n);
  Eigen::JacobiSVD<CMat> svd(T);
  return svd.singularValues()(1);
}

bool on_variety(const CMPoint& P, double tol_factor) {
  if (P.n <= 1) return true;
  CMat T = P.X * P.Y - P.Y * P.X + CMat::Identity(P.n, P.n);
  Eigen::JacobiSVD<CMat> svd(T);
  return svd.singularValues()(1) <= tol_factor * svd.singularValues()(0);
}

CMPoint flow(const CMPoint& P, int i, double t) {
  if (i < 1) throw ConfigError("flow index must be a positive integer");
  CMat pw = CMat::Identity(P.n, P.n);
  for (int j = 0; j < i - 1; ++j) pw = pw * P.Y;
  CMPoint out;
  out.n = P.n;
  out.X = P.X + double(i) * t * pw;
  out.Y = P.Y;
  return out;
}

std::vector<Cx> conserved_traces(const CMPoint& P) { return traces_of_powers(P.Y, P.n); }

std::vector<double> uniform_grid(double t0, double t1, int steps) {
  if (steps < 1) throw ConfigError("grid needs at least one step");
  std::vector<double> t(size_t(steps) + 1);
  for (int k = 0; k <= steps; ++k) t[size_t(k)] = t0 + (t1 - t0) * double(k) / double(steps);
  return t;
}

Trajectory trajectories_spectral(const CoordChart& chart0, const std::vector<double>& t_grid,
                                 double coupling, double tau_sep) {
  if (t_grid.size() < 2) throw ConfigError("time grid needs at least two points");
  for (size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > t_grid[k - 1])) throw ConfigError("time grid must increase strictly");
  CMPoint P = xi_map(chart0, coupling, tau_sep);
  if (P.n > 7) throw ConfigError("eigenvalue tracking enumerates permutations; n <= 7");

  Trajectory tr;
  tr.t = t_grid;
  std::vector<Cx> prev = chart0.x;
  std::vector<Cx> H = conserved_traces(P);
  for (size_t k = 0; k < t_grid.size(); ++k) {
    CMat Xt = P.X + 2.0 * t_grid[k] * P.Y;
    Eigen::ComplexEigenSolver<CMat> es(Xt, /*computeEigenvectors=*/false);
    std::vector<Cx> ev(size_t(P.n));
    for (int i = 0; i < P.n; ++i) ev[size_t(i)] = es.eigenvalues()(i);
    std::vector<int> pick = match_order(prev, ev);
    std::vector<Cx> row(size_t(P.n));
    for (int i = 0; i < P.n; ++i) row[size_t(i)] = ev[size_t(pick[size_t(i)])];
    if (min_separation(row) < tau_sep) tr.collision_steps.push_back(int(k));
    tr.x.push_back(row);
    tr.conserved.push_back(H);
    prev = std::move(row);
  }

  // p = x'/2 by centered differences; one-sided at the ends.
  size_t m = t_grid.size();
  tr.p.assign(m, std::vector<Cx>(size_t(P.n)));
  for (size_t k = 0; k < m; ++k) {
    size_t lo = k == 0 ? 0 : k - 1;
    size_t hi = k + 1 == m ? k : k + 1;
    double dt = t_grid[hi] - t_grid[lo];
    for (int i = 0; i < P.n; ++i)
      tr.p[k][size_t(i)] = (tr.x[hi][size_t(i)] - tr.x[lo][size_t(i)]) / dt / 2.0;
  }
  tr.energy_drift = 0.0;  // Y never changes on this route
  return tr;
}

Trajectory trajectories_ode(const CoordChart& chart0, const std::vector<double>& t_grid,
                            double rtol, double atol, double coupling) {
  if (t_grid.size() < 2) throw ConfigError("time grid needs at least two points");
  for (size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > t_grid[k - 1])) throw ConfigError("time grid must increase strictly");
  check_chart(chart0, kTauSep);
  const int n = int(chart0.x.size());
  const double g2 = coupling * coupling;
  const double span = t_grid.back() - t_grid.front();

  // Dormand-Prince 5(4) coefficients.
  static const double A[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double B4[7] = {5179.0 / 57600, 0.0,           7571.0 / 16695, 393.0 / 640,
                               -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

  const int dim = 2 * n;
  std::vector<Cx> y(static_cast<size_t>(dim));
  for (int i = 0; i < n; ++i) {
    y[size_t(i)] = chart0.x[size_t(i)];
    y[size_t(n + i)] = chart0.p[size_t(i)];
  }
  auto rhs = [&](const std::vector<Cx>& s, std::vector<Cx>* out) {
    std::vector<Cx> x(s.begin(), s.begin() + n), p(s.begin() + n, s.end());
    std::vector<Cx> dx, dp;
    hamilton_rhs(x, p, g2, &dx, &dp);
    out->resize(size_t(dim));
    for (int i = 0; i < n; ++i) {
      (*out)[size_t(i)] = dx[size_t(i)];
      (*out)[size_t(n + i)] = dp[size_t(i)];
    }
  };

  Trajectory tr;
  tr.t = t_grid;
  auto record = [&](const std::vector<Cx>& state) {
    std::vector<Cx> x(state.begin(), state.begin() + n), p(state.begin() + n, state.end());
    if (min_separation(x) < kTauSep) tr.collision_steps.push_back(int(tr.x.size()));
    CoordChart c{x, p};
    CMPoint P;
    try {
      P = xi_map(c, coupling);
    } catch (const SeparationTooSmall&) {
      throw StepFailure("grid point sits on a collision; conserved traces undefined");
    }
    tr.x.push_back(std::move(x));
    tr.p.push_back(std::move(p));
    tr.conserved.push_back(conserved_traces(P));
  };

  record(y);
  double h = span / double(100 * (t_grid.size() - 1));
  std::vector<std::vector<Cx>> k(7);
  std::vector<Cx> stage(static_cast<size_t>(dim)), y5(static_cast<size_t>(dim));
  for (size_t seg = 0; seg + 1 < t_grid.size(); ++seg) {
    double t = t_grid[seg];
    const double t_end = t_grid[seg + 1];
    long iters = 0;
    while (t < t_end) {
      if (++iters > 10000000L) throw StepFailure("integrator exceeded its step budget");
      h = std::min(h, t_end - t);
      if (!(h > 1e-14 * std::max(1.0, std::abs(span))))
        throw StepFailure("step size collapsed near t = " + std::to_string(t) +
                          " (collision or stiffness)");
      rhs(y, &k[0]);
      bool finite = true;
      for (int s = 1; s < 7 && finite; ++s) {
        for (int i = 0; i < dim; ++i) {
          Cx acc(0);
          for (int j = 0; j < s; ++j) acc += A[s][j] * k[size_t(j)][size_t(i)];
          stage[size_t(i)] = y[size_t(i)] + h * acc;
        }
        rhs(stage, &k[size_t(s)]);
        for (int i = 0; i < dim; ++i)
          if (!std::isfinite(k[size_t(s)][size_t(i)].real()) ||
              !std::isfinite(k[size_t(s)][size_t(i)].imag()))
            finite = false;
      }
      double err = std::numeric_limits<double>::infinity();
      if (finite) {
        // 5th-order solution is the last stage row (FSAL pair).
        for (int i = 0; i < dim; ++i) {
          Cx acc(0);
          for (int j = 0; j < 6; ++j) acc += A[6][j] * k[size_t(j)][size_t(i)];
          y5[size_t(i)] = y[size_t(i)] + h * acc;
        }
        double sum = 0.0;
        for (int i = 0; i < dim; ++i) {
          // Embedded error = y5 - y4; the 4th-order weights also use the
          // FSAL stage k[6] = f(y5).
          Cx acc(0);
          for (int j = 0; j < 7; ++j)
            acc += (j < 6 ? A[6][j] - B4[j] : -B4[j]) * k[size_t(j)][size_t(i)];
          double sc = atol + rtol * std::max(std::abs(y[size_t(i)]), std::abs(y5[size_t(i)]));
          double e = std::abs(h * acc);
          sum += (e / sc) * (e / sc);
        }
        err = std::sqrt(sum / double(dim));
      }
      if (err <= 1.0) {
        t += h;
        y = y5;
        double grow = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
        h *= std::clamp(grow, 0.2, 5.0);
      } else {
        double shrink = finite ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.1;
        h *= std::min(shrink, 0.9);
      }
    }
    record(y);
  }

  // Relative drift of the integrated Hamiltonian H = Tr(Y^2).
  size_t hi = n >= 2 ? 1 : 0;
  Cx h0 = tr.conserved.front()[hi];
  double scale = std::max(std::abs(h0), 1e-12);
  double drift = 0.0;
  for (const std::vector<Cx>& row : tr.conserved)
    drift = std::max(drift, std::abs(row[hi] - h0) / scale);
  tr.energy_drift = drift;
  return tr;
}

std::vector<std::string> Trajectory::csv_rows() const {
  std::vector<std::string> rows;
  size_t n = x.empty() ? 0 : x.front().size();
  std::string header = "t";
  for (size_t i = 1; i <= n; ++i) header += ",x" + std::to_string(i);
  for (size_t i = 1; i <= n; ++i) header += ",p" + std::to_string(i);
  for (size_t i = 1; i <= n; ++i) header += ",H" + std::to_string(i);
  rows.push_back(header);
  char buf[64];
  for (size_t k = 0; k < t.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", t[k]);
    std::string row = buf;
    for (size_t i = 0; i < n; ++i) row += "," + fmt_value(x[k][i]);
    for (size_t i = 0; i < n; ++i) row += "," + fmt_value(p[k][i]);
    for (size_t i = 0; i < n; ++i) row += "," + fmt_value(conserved[k][i]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cmwork
