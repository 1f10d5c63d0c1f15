#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace cmwork {

using Cx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

// Pair of n x n complex matrices (X, Y) meant to satisfy the rank-one
// condition: XY - YX + 1 has exactly one singular value above tolerance.
struct CMPoint {
  int n = 0;
  CMat X, Y;
};

// Particle coordinates and momenta; positions must stay pairwise separated.
struct CoordChart {
  std::vector<Cx> x, p;
};

inline constexpr double kTauSep = 1e-8;

// Particle paths on a time grid with their conserved trace values.
struct Trajectory {
  std::vector<double> t;
  std::vector<std::vector<Cx>> x;          // [step][particle], tracked continuously
  std::vector<std::vector<Cx>> p;          // momenta (state or finite differences)
  std::vector<std::vector<Cx>> conserved;  // [step][j-1] = Tr(Y^j), j = 1..n
  std::vector<int> collision_steps;        // grid indices where min separation < tau
  double energy_drift = 0.0;               // max relative drift of Tr(Y^2)

  // Rows in the schema `t,x1..xn,p1..pn,H1..Hn` (header first).  Real values
  // print plainly; a complex value prints as re+imi.
  std::vector<std::string> csv_rows() const;
};

// X = diag(x), Y = p on the diagonal and coupling/(x_i - x_j) off it.  With
// the default coupling this forces XY - YX + 1 to be the all-ones matrix.
CMPoint xi_map(const CoordChart& chart, double coupling = 1.0, double tau_sep = kTauSep);

// Second-largest singular value of XY - YX + 1 (zero means rank one, i.e.
// the point lies on the variety).  A 1 x 1 point returns 0.
double rank_one_residual(const CMPoint& P);

// Residual test against tol_factor * ||XY - YX + 1||_2.
bool on_variety(const CMPoint& P, double tol_factor = 1e-8);

// The i-th flow for time t: (X, Y) -> (X + i t Y^{i-1}, Y).  Requires i >= 1.
CMPoint flow(const CMPoint& P, int i, double t);

// Tr(Y^j) for j = 1..n.
std::vector<Cx> conserved_traces(const CMPoint& P);

// Particle paths as the tracked eigenvalues of X_0 + 2 t Y_0.  Momenta come
// from centered finite differences (p = x'/2); eigenvalues are matched
// between consecutive grid points by minimal total displacement, so n is
// capped at 7 (the matching enumerates permutations).  Grid points with
// separation below tau_sep are flagged, not fatal.
Trajectory trajectories_spectral(const CoordChart& chart0, const std::vector<double>& t_grid,
                                 double coupling = 1.0, double tau_sep = kTauSep);

// The same paths by direct integration of the Hamiltonian system for
// H = sum p_i^2 - coupling^2 sum_{i != j} (x_i - x_j)^{-2}, with an adaptive
// embedded Runge-Kutta 5(4) pair.  Throws StepFailure when the step size
// collapses (collisions) or a grid point sits on a collision.
Trajectory trajectories_ode(const CoordChart& chart0, const std::vector<double>& t_grid,
                            double rtol = 1e-10, double atol = 1e-12, double coupling = 1.0);

// steps + 1 equally spaced times from t0 to t1 inclusive.
std::vector<double> uniform_grid(double t0, double t1, int steps);

}  // namespace cmwork
