#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cmwork/group.hpp"

namespace cmwork {

// ---------------------------------------------------------------------------
// Flat connection on the regular locus of the reflection representation,
//     dF = [ sum_s  2 c_s / (1 - lambda_s) * (d alpha_s / alpha_s) (1 - s) ] F,
// valued in the left regular representation of the group (lambda_s = -1 for
// real reflections, so the coefficient is just c_s).  Transport along paths
// is computed with an adaptive embedded Runge-Kutta pair; braid-generator
// monodromy is transport along a half-loop around one mirror composed with
// the deck transformation of the reflection.
// ---------------------------------------------------------------------------

using CVec = Eigen::VectorXcd;
using CMatX = Eigen::MatrixXcd;

struct KZOptions {
  double rtol = 1e-10;       // relative integrator tolerance per step
  double atol = 1e-12;       // absolute integrator tolerance per step
  double margin = 1e-6;      // minimal allowed |alpha_s(x)| along the path
  // Allowed defect of backward * forward transport; negative means automatic
  // (scales with rtol, since the defect tracks the global integration error).
  double reverse_tol = -1.0;
  double cluster_tol = 1e-6;  // eigenvalue clustering radius
  int reflection_pick = 0;    // which mirror of the class to encircle
};

// Left regular representation matrix: lambda(g) e_h = e_{g h}.
CMatX regular_rep(const ReflectionGroup& W, int elem);

// A regular real basepoint: positive values on all simple roots.
Eigen::VectorXd kz_basepoint(const ReflectionGroup& W);

struct TransportResult {
  CMatX M;                     // F(end) = M F(start)
  double reverse_error = 0.0;  // || M_back M - 1 ||_max, checked internally
};

// Parallel transport along the polyline of complex points (straight segments
// between consecutive entries).  c holds one coupling per reflection class.
// Throws HyperplaneTooClose if the path comes within `margin` of a mirror,
// ToleranceNotMet if the integrator cannot hold its tolerance or the
// backward transport fails to invert the forward one.
TransportResult kz_transport(const ReflectionGroup& W, const std::vector<double>& c,
                             const std::vector<CVec>& polyline, const KZOptions& opts = {});

struct EigenCluster {
  std::complex<double> value;  // cluster mean
  int mult = 0;
};

struct MonodromyReport {
  std::string group;
  int cls = 0;
  std::complex<double> q;  // exp(2 pi i c) for the class
  std::vector<EigenCluster> eigenvalues;
  double quad_residual = 0.0;  // || (T - 1)(T + q) ||_F
  double reverse_error = 0.0;
  CMatX T;
};

// Monodromy of the braid generator around one mirror of the class: transport
// from the basepoint to its reflection along a line-arc-line path that passes
// the mirror at half the basepoint's distance, composed with the regular
// representation of the reflection.  Eigenvalues cluster on {1, -e^{2 pi i c}}
// with equal multiplicities |W|/2.
MonodromyReport monodromy_eigencheck(const ReflectionGroup& W, const std::vector<double>& c,
                                     int cls, const KZOptions& opts = {});

// || T_i T_j T_i ... - T_j T_i T_j ... ||_F with m_ij factors on both sides,
// for the braid-generator monodromies of two simple reflections.
double braid_relation_residual(const ReflectionGroup& W, const std::vector<double>& c, int i,
                               int j, const KZOptions& opts = {});

struct CyclicReport {
  int m = 0;
  std::vector<std::complex<double>> eigenvalues;  // unordered, from the transport route
  double route_diff = 0.0;  // transport route vs. closed-form exponential
  double reverse_error = 0.0;
  CMatX T;
};

// Rank-one cyclic group Z/m acting on C by rotation: the connection has one
// coupling per nontrivial power (c has size m-1), all supported on z = 0,
// with lambda_{g^j} = exp(-2 pi i j / m).  Monodromy of the fundamental
// 1/m-turn loop, computed by transport and cross-checked against the exact
// exponential (the connection matrix is constant in the loop parameter).
// At c = 0 the eigenvalues are the m-th roots of unity.
CyclicReport kz_cyclic_monodromy(int m, const std::vector<double>& c,
                                 const KZOptions& opts = {});

}  // namespace cmwork
