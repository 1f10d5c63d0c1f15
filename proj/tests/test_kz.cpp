#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "cmwork/errors.hpp"
#include "cmwork/group.hpp"
#include "cmwork/kz.hpp"
#include "doctest.h"

using namespace cmwork;

namespace {

using Cx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

CVec cplx(const Eigen::VectorXd& v) { return CVec(v.cast<Cx>()); }

double max_dev_from_identity(const CMatX& m) {
  return (m - CMatX::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

// The cluster whose mean is closest to the target.
const EigenCluster& nearest(const std::vector<EigenCluster>& cl, Cx target) {
  REQUIRE(!cl.empty());
  size_t best = 0;
  for (size_t i = 1; i < cl.size(); ++i)
    if (std::abs(cl[i].value - target) < std::abs(cl[best].value - target)) best = i;
  return cl[best];
}

}  // namespace

TEST_CASE("regular representation multiplies like the group") {
  ReflectionGroup W = ReflectionGroup::build("A2");
  CHECK(max_dev_from_identity(regular_rep(W, 0)) == 0.0);
  for (int g : {1, 3, 5})
    for (int h : {2, 4}) {
      CMatX prod = regular_rep(W, g) * regular_rep(W, h);
      CHECK((prod - regular_rep(W, W.mult(g, h))).cwiseAbs().maxCoeff() == 0.0);
    }
  CHECK_THROWS_AS(regular_rep(W, 6), ConfigError);
}

TEST_CASE("basepoint pairs positively with the simple roots") {
  for (const char* label : {"A2", "B2", "A3", "I2(6)"}) {
    ReflectionGroup W = ReflectionGroup::build(label);
    Eigen::VectorXd x0 = kz_basepoint(W);
    for (int i = 0; i < W.num_generators(); ++i) {
      for (const Reflection& r : W.reflections())
        if (r.elem == W.generator(i)) {
          double v = 0.0;
          for (int d = 0; d < W.dim(); ++d) v += r.alpha[size_t(d)].to_double() * x0[d];
          CHECK(v == doctest::Approx(1.0 + 0.3 * i).epsilon(1e-12));
        }
    }
    // Regular: no mirror through the basepoint.
    for (const Reflection& r : W.reflections()) {
      double v = 0.0;
      for (int d = 0; d < W.dim(); ++d) v += r.alpha[size_t(d)].to_double() * x0[d];
      CHECK(std::abs(v) > 1e-3);
    }
  }
  CHECK_THROWS_AS(kz_basepoint(ReflectionGroup::build("Zm:3")), ConfigError);
}

TEST_CASE("segment transport matches the rank-one closed form") {
  // Along a ray the connection integrates to a power of the coordinate ratio:
  // eigenvalues 1 (symmetric) and ratio^{2c} (antisymmetric).
  ReflectionGroup W = ReflectionGroup::build("A1");
  Eigen::VectorXd x0 = kz_basepoint(W);
  TransportResult tr = kz_transport(W, {0.25}, {cplx(x0), cplx(1.5 * x0)});
  const double lam = std::pow(1.5, 0.5);  // 1.5^{2c}
  CHECK(std::abs(tr.M(0, 0) - Cx((1 + lam) / 2, 0)) < 1e-9);
  CHECK(std::abs(tr.M(1, 1) - Cx((1 + lam) / 2, 0)) < 1e-9);
  CHECK(std::abs(tr.M(0, 1) - Cx((1 - lam) / 2, 0)) < 1e-9);
  CHECK(std::abs(tr.M(1, 0) - Cx((1 - lam) / 2, 0)) < 1e-9);
  CHECK(tr.reverse_error < 1e-8);
}

TEST_CASE("zero coupling transports trivially, and guards fire") {
  ReflectionGroup W = ReflectionGroup::build("A2");
  Eigen::VectorXd x0 = kz_basepoint(W);
  Eigen::VectorXd d1(3), d2(3);
  d1 << 0.05, -0.02, -0.03;
  d2 << 0.01, 0.04, -0.05;
  std::vector<CVec> loop = {cplx(x0), cplx(x0 + d1), cplx(x0 + d1 + d2), cplx(x0 + d2),
                            cplx(x0)};
  TransportResult tz = kz_transport(W, {0.0}, loop);
  CHECK(max_dev_from_identity(tz.M) == 0.0);

  CHECK_THROWS_AS(kz_transport(W, {0.1, 0.2}, loop), ConfigError);    // one class only
  CHECK_THROWS_AS(kz_transport(W, {0.1}, {cplx(x0)}), ConfigError);   // single point
  std::vector<CVec> bad = {cplx(x0), CVec::Zero(2)};
  CHECK_THROWS_AS(kz_transport(W, {0.1}, bad), ConfigError);          // wrong dimension
  CHECK_THROWS_AS(kz_transport(ReflectionGroup::build("Zm:3"), {0.1},
                               {CVec::Ones(1), 2.0 * CVec::Ones(1)}),
                  ConfigError);
}

TEST_CASE("contractible loops and inverse loops transport to the identity") {
  ReflectionGroup W = ReflectionGroup::build("A2");
  Eigen::VectorXd x0 = kz_basepoint(W);
  Eigen::VectorXd d1(3), d2(3);
  d1 << 0.05, -0.02, -0.03;
  d2 << 0.01, 0.04, -0.05;
  std::vector<CVec> loop = {cplx(x0), cplx(x0 + d1), cplx(x0 + d1 + d2), cplx(x0 + d2),
                            cplx(x0)};
  TransportResult tr = kz_transport(W, {0.2}, loop);
  CHECK(max_dev_from_identity(tr.M) < 1e-8);
  CHECK(tr.reverse_error < 1e-8);

  // Explicit loop-then-reversed-loop product.
  std::vector<CVec> back(loop.rbegin(), loop.rend());
  TransportResult tb = kz_transport(W, {0.2}, back);
  CHECK(max_dev_from_identity(tb.M * tr.M) < 1e-8);
}

TEST_CASE("braid monodromy spectra: rank one and the smallest type A") {
  ReflectionGroup A1 = ReflectionGroup::build("A1");
  MonodromyReport r1 = monodromy_eigencheck(A1, {0.25}, 0);
  REQUIRE(r1.eigenvalues.size() == 2);
  CHECK(std::abs(nearest(r1.eigenvalues, Cx(1, 0)).value - Cx(1, 0)) < 1e-6);
  CHECK(std::abs(nearest(r1.eigenvalues, Cx(0, -1)).value - Cx(0, -1)) < 1e-6);
  CHECK(r1.quad_residual < 1e-8);
  CHECK(std::abs(r1.q - Cx(0, 1)) < 1e-12);

  ReflectionGroup A2 = ReflectionGroup::build("A2");
  MonodromyReport r2 = monodromy_eigencheck(A2, {0.1}, 0);
  REQUIRE(r2.eigenvalues.size() == 2);
  Cx minus_q = -std::exp(Cx(0.0, 0.2 * kPi));
  const EigenCluster& c1 = nearest(r2.eigenvalues, Cx(1, 0));
  const EigenCluster& cq = nearest(r2.eigenvalues, minus_q);
  CHECK(std::abs(c1.value - Cx(1, 0)) < 1e-6);
  CHECK(c1.mult == 3);
  CHECK(std::abs(cq.value - minus_q) < 1e-6);
  CHECK(cq.mult == 3);
  CHECK(r2.quad_residual < 1e-8);
  CHECK(r2.reverse_error < 1e-8);
  CHECK(r2.group == A2.name());

  CHECK_THROWS_AS(monodromy_eigencheck(A2, {0.1}, 1), ConfigError);  // one class
}

TEST_CASE("zero coupling monodromy is the bare reflection") {
  ReflectionGroup W = ReflectionGroup::build("A2");
  MonodromyReport r = monodromy_eigencheck(W, {0.0}, 0);
  // T = lambda(s) exactly; the quadratic relation holds at q = 1 exactly.
  CHECK(r.quad_residual == 0.0);
  REQUIRE(r.eigenvalues.size() == 2);
  CHECK(nearest(r.eigenvalues, Cx(1, 0)).mult == 3);
  CHECK(nearest(r.eigenvalues, Cx(-1, 0)).mult == 3);
}

TEST_CASE("monodromy around both mirror classes of B2") {
  ReflectionGroup W = ReflectionGroup::build("B2");
  std::vector<double> c = {0.2, 0.35};
  for (int cls = 0; cls < 2; ++cls) {
    MonodromyReport r = monodromy_eigencheck(W, c, cls);
    Cx minus_q = -std::exp(Cx(0.0, 2.0 * kPi * c[size_t(cls)]));
    REQUIRE(r.eigenvalues.size() == 2);
    CHECK(std::abs(nearest(r.eigenvalues, Cx(1, 0)).value - Cx(1, 0)) < 1e-6);
    CHECK(nearest(r.eigenvalues, Cx(1, 0)).mult == 4);
    CHECK(std::abs(nearest(r.eigenvalues, minus_q).value - minus_q) < 1e-6);
    CHECK(nearest(r.eigenvalues, minus_q).mult == 4);
    CHECK(r.quad_residual < 1e-8);
  }
}

TEST_CASE("conjugate mirrors of one class share the spectrum") {
  ReflectionGroup W = ReflectionGroup::build("A2");
  MonodromyReport base = monodromy_eigencheck(W, {0.3}, 0);
  for (int pick = 1; pick < 3; ++pick) {
    KZOptions o;
    o.reflection_pick = pick;
    MonodromyReport other = monodromy_eigencheck(W, {0.3}, 0, o);
    REQUIRE(other.eigenvalues.size() == base.eigenvalues.size());
    for (size_t i = 0; i < base.eigenvalues.size(); ++i) {
      CHECK(std::abs(other.eigenvalues[i].value - base.eigenvalues[i].value) < 1e-6);
      CHECK(other.eigenvalues[i].mult == base.eigenvalues[i].mult);
    }
  }
}

TEST_CASE("braid relations between generator monodromies") {
  ReflectionGroup A2 = ReflectionGroup::build("A2");
  CHECK(braid_relation_residual(A2, {0.1}, 0, 1) < 1e-8);

  ReflectionGroup B2 = ReflectionGroup::build("B2");
  CHECK(braid_relation_residual(B2, {0.2, 0.35}, 0, 1) < 1e-8);

  ReflectionGroup A3 = ReflectionGroup::build("A3");
  CHECK(braid_relation_residual(A3, {0.15}, 0, 1) < 1e-8);
  CHECK(braid_relation_residual(A3, {0.15}, 0, 2) < 1e-8);  // commuting pair

  CHECK_THROWS_AS(braid_relation_residual(A2, {0.1}, 0, 0), ConfigError);
  CHECK_THROWS_AS(braid_relation_residual(A2, {0.1}, 0, 2), ConfigError);
}

TEST_CASE("residuals track the integrator tolerance") {
  ReflectionGroup W = ReflectionGroup::build("A2");
  KZOptions loose;
  loose.rtol = 1e-6;
  loose.atol = 1e-8;
  MonodromyReport rl = monodromy_eigencheck(W, {0.1}, 0, loose);
  MonodromyReport rt = monodromy_eigencheck(W, {0.1}, 0);  // rtol 1e-10

  CHECK(rt.quad_residual < 1e-8);
  CHECK(rl.quad_residual < 1e-4);
  CHECK(rl.quad_residual > 1e-9);  // loose integration leaves a visible residual
  CHECK(rt.quad_residual * 10 < rl.quad_residual);

  double bl = braid_relation_residual(W, {0.1}, 0, 1, loose);
  double bt = braid_relation_residual(W, {0.1}, 0, 1);
  CHECK(bt < 1e-8);
  CHECK(bl < 1e-4);
  CHECK(bt * 10 < bl);
}

TEST_CASE("paths near mirrors are rejected") {
  ReflectionGroup W = ReflectionGroup::build("A2");
  Eigen::VectorXd x0 = kz_basepoint(W);
  // The straight segment to the reflected basepoint crosses the mirror.
  Eigen::MatrixXd s(3, 3);
  const Reflection& r = W.reflections().front();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s(i, j) = W.matrix(r.elem).at(i, j).to_double();
  CHECK_THROWS_AS(kz_transport(W, {0.1}, {cplx(x0), cplx(s * x0)}), HyperplaneTooClose);

  // A segment that merely comes close is rejected once the margin covers it.
  KZOptions wide;
  wide.margin = 2.0;
  CHECK_THROWS_AS(kz_transport(W, {0.1}, {cplx(x0), cplx(1.5 * x0)}, wide),
                  HyperplaneTooClose);

  // An unreachable reverse tolerance reports failure instead of an answer.
  KZOptions strict;
  strict.rtol = 1e-6;
  strict.atol = 1e-8;
  strict.reverse_tol = 1e-13;
  CHECK_THROWS_AS(monodromy_eigencheck(W, {0.1}, 0, strict), ToleranceNotMet);
}

TEST_CASE("cyclic monodromy: transport agrees with the exact exponential") {
  for (int m : {2, 3, 4, 6}) {
    std::vector<double> c(size_t(m - 1));
    for (int j = 0; j < m - 1; ++j) c[size_t(j)] = 0.05 + 0.07 * j;
    CyclicReport r = kz_cyclic_monodromy(m, c);
    CHECK(r.m == m);
    CHECK(int(r.eigenvalues.size()) == m);
    CHECK(r.route_diff < 1e-9);
    CHECK(r.reverse_error < 1e-8);
  }
}

TEST_CASE("cyclic monodromy: order two matches the real rank-one answer") {
  CyclicReport r = kz_cyclic_monodromy(2, {0.05});
  std::vector<Cx> want = {Cx(1, 0), -std::exp(Cx(0, 2.0 * kPi * 0.05))};
  for (const Cx& w : want) {
    double best = 1e9;
    for (const Cx& e : r.eigenvalues) best = std::min(best, std::abs(e - w));
    CHECK(best < 1e-9);
  }
}

TEST_CASE("cyclic monodromy at zero coupling gives the roots of unity") {
  CyclicReport r = kz_cyclic_monodromy(4, {0.0, 0.0, 0.0});
  CHECK(r.route_diff < 1e-12);
  for (int k = 0; k < 4; ++k) {
    Cx w = std::exp(Cx(0.0, 2.0 * kPi * k / 4.0));
    double best = 1e9;
    for (const Cx& e : r.eigenvalues) best = std::min(best, std::abs(e - w));
    CHECK(best < 1e-12);
  }

  CHECK_THROWS_AS(kz_cyclic_monodromy(1, {}), ConfigError);
  CHECK_THROWS_AS(kz_cyclic_monodromy(25, std::vector<double>(24, 0.1)), ConfigError);
  CHECK_THROWS_AS(kz_cyclic_monodromy(4, {0.1}), ConfigError);
}
