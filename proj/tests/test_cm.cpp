#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cmwork/cm.hpp"
#include "cmwork/errors.hpp"
#include "cmwork/necklace.hpp"
#include "cmwork/scalar.hpp"

using namespace cmwork;

namespace {

double max_abs_diff(const std::vector<std::vector<Cx>>& a, const std::vector<std::vector<Cx>>& b) {
  double m = 0.0;
  for (size_t s = 0; s < a.size(); ++s)
    for (size_t i = 0; i < a[s].size(); ++i) m = std::max(m, std::abs(a[s][i] - b[s][i]));
  return m;
}

CoordChart real_chart(const std::vector<double>& x, const std::vector<double>& p) {
  CoordChart c;
  for (double v : x) c.x.emplace_back(v, 0.0);
  for (double v : p) c.p.emplace_back(v, 0.0);
  return c;
}

// All words over {X, Y} of lengths 1..max_len, in length-then-binary order.
std::vector<std::string> all_words(int max_len) {
  std::vector<std::string> out;
  for (int len = 1; len <= max_len; ++len)
    for (int mask = 0; mask < (1 << len); ++mask) {
      std::string w;
      for (int i = 0; i < len; ++i) w += (mask >> i) & 1 ? 'Y' : 'X';
      out.push_back(w);
    }
  return out;
}

}  // namespace

TEST_CASE("xi map: matrix form, commutator identity, and guards") {
  CoordChart c = real_chart({0.0, 1.0}, {0.0, 0.0});
  CMPoint P = xi_map(c);
  CHECK(P.n == 2);
  CHECK(P.X(0, 0) == Cx(0.0));
  CHECK(P.X(1, 1) == Cx(1.0));
  CHECK(P.X(0, 1) == Cx(0.0));
  CHECK(P.Y(0, 0) == Cx(0.0));
  CHECK(P.Y(1, 1) == Cx(0.0));
  CHECK(P.Y(0, 1) == Cx(-1.0));
  CHECK(P.Y(1, 0) == Cx(1.0));

  // XY - YX + I is exactly the all-ones matrix at unit separations.
  CMat T = P.X * P.Y - P.Y * P.X + CMat::Identity(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(T(i, j) == Cx(1.0));
  CHECK(rank_one_residual(P) < 1e-12);
  CHECK(on_variety(P));

  // Generic three-particle chart: same identity up to roundoff.
  CoordChart c3 = real_chart({-1.3, 0.2, 2.7}, {0.4, -0.1, 0.25});
  CMPoint P3 = xi_map(c3);
  CMat T3 = P3.X * P3.Y - P3.Y * P3.X + CMat::Identity(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(T3(i, j) - Cx(1.0)) < 1e-14);
  CHECK(rank_one_residual(P3) < 1e-12);
  CHECK(on_variety(P3));

  // The coupling scales the off-diagonal of Y and nothing else.
  CMPoint Pg = xi_map(c3, 2.5);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j)
        CHECK(Pg.Y(i, j) == P3.Y(i, j));
      else
        CHECK(std::abs(Pg.Y(i, j) - 2.5 * P3.Y(i, j)) < 1e-15);
    }

  // One particle: the commutator vanishes and the point is trivially fine.
  CMPoint P1 = xi_map(real_chart({0.7}, {-0.2}));
  CHECK(P1.X(0, 0) == Cx(0.7));
  CHECK(P1.Y(0, 0) == Cx(-0.2));
  CHECK(rank_one_residual(P1) == 0.0);
  CHECK(on_variety(P1));

  CHECK_THROWS_AS(xi_map(real_chart({0.0, 1.0}, {0.0})), ConfigError);
  CHECK_THROWS_AS(xi_map(real_chart({}, {})), ConfigError);
  CHECK_THROWS_AS(xi_map(real_chart({0.0, 5e-9}, {0.0, 0.0})), SeparationTooSmall);
  // A custom separation floor tightens the guard.
  CHECK_THROWS_AS(xi_map(real_chart({0.0, 0.5}, {0.0, 0.0}), 1.0, 0.75), SeparationTooSmall);
}

TEST_CASE("rank-one residual: scale, negatives, and unitary invariance") {
  // Commuting diagonal pair: XY - YX + I = I, whose second singular value is 1.
  CMPoint D;
  D.n = 2;
  D.X = CMat::Zero(2, 2);
  D.Y = CMat::Zero(2, 2);
  D.X(0, 0) = 1.0;
  D.X(1, 1) = 2.0;
  D.Y(0, 0) = 3.0;
  D.Y(1, 1) = 4.0;
  CHECK(rank_one_residual(D) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(on_variety(D));

  // Conjugating by a unitary leaves the singular values alone.
  CMPoint P = xi_map(real_chart({-1.0, 0.3, 1.4}, {0.2, -0.5, 0.1}));
  CMat G(3, 3);
  G << Cx(0.3, 1.1), Cx(-0.7, 0.2), Cx(0.5, -0.4), Cx(1.2, 0.0), Cx(0.1, -0.9), Cx(-0.3, 0.8),
      Cx(-0.6, 0.5), Cx(0.4, 0.7), Cx(0.9, -0.2);
  CMat Q = Eigen::HouseholderQR<CMat>(G).householderQ();
  CMPoint Pc;
  Pc.n = 3;
  Pc.X = Q * P.X * Q.adjoint();
  Pc.Y = Q * P.Y * Q.adjoint();
  CHECK(rank_one_residual(Pc) < 1e-12);
  CHECK(on_variety(Pc));
}

TEST_CASE("flows: X gains i t Y^(i-1), Y never moves") {
  CMPoint P = xi_map(real_chart({-1.0, 0.5, 2.0}, {0.3, -0.2, 0.1}));

  CMPoint F0 = flow(P, 2, 0.0);
  CHECK(F0.X == P.X);
  CHECK(F0.Y == P.Y);

  double t = 0.37;
  CMPoint F2 = flow(P, 2, t);
  CMat want2 = P.X + 2.0 * t * P.Y;
  CHECK((F2.X - want2).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(F2.Y == P.Y);

  CMPoint F1 = flow(P, 1, t);
  CMat want1 = P.X + t * CMat::Identity(3, 3);
  CHECK((F1.X - want1).cwiseAbs().maxCoeff() < 1e-14);

  CMPoint F3 = flow(P, 3, t);
  CMat want3 = P.X + 3.0 * t * (P.Y * P.Y);
  CHECK((F3.X - want3).cwiseAbs().maxCoeff() < 1e-13);

  // Adding a polynomial in Y to X cannot change [X, Y]: every flow stays on
  // the variety and conserves all trace invariants of Y on the nose.
  std::vector<Cx> h0 = conserved_traces(P);
  for (int i = 1; i <= 3; ++i)
    for (double s : {0.1, 0.5, 1.0}) {
      CMPoint F = flow(P, i, s);
      CHECK(rank_one_residual(F) <= 1e-10);
      std::vector<Cx> h = conserved_traces(F);
      REQUIRE(h.size() == h0.size());
      for (size_t j = 0; j < h.size(); ++j) CHECK(h[j] == h0[j]);
    }

  CHECK_THROWS_AS(flow(P, 0, 1.0), ConfigError);
  CHECK_THROWS_AS(flow(P, -2, 1.0), ConfigError);
}

TEST_CASE("spectral trajectories: closed forms, conservation, tracking") {
  // One free particle: x(t) = x0 + 2 p0 t exactly.
  {
    auto grid = uniform_grid(0.0, 1.0, 50);
    Trajectory tr = trajectories_spectral(real_chart({0.0}, {1.0}), grid);
    REQUIRE(tr.x.size() == grid.size());
    for (size_t s = 0; s < grid.size(); ++s) {
      CHECK(std::abs(tr.x[s][0] - Cx(2.0 * grid[s])) < 1e-12);
      CHECK(std::abs(tr.p[s][0] - Cx(1.0)) < 1e-12);
    }
    CHECK(tr.collision_steps.empty());
    CHECK(tr.energy_drift == 0.0);
  }

  // Two particles released at rest from (-1, 1): x(t) = -+sqrt(1 - t^2).
  {
    auto grid = uniform_grid(0.0, 0.9, 90);
    Trajectory tr = trajectories_spectral(real_chart({-1.0, 1.0}, {0.0, 0.0}), grid);
    for (size_t s = 0; s < grid.size(); ++s) {
      double want = std::sqrt(1.0 - grid[s] * grid[s]);
      CHECK(std::abs(tr.x[s][0] - Cx(-want)) < 1e-10);
      CHECK(std::abs(tr.x[s][1] - Cx(want)) < 1e-10);
    }
    // Conserved rows repeat Tr(Y0^j) exactly; Tr(Y0^2) is the Hamiltonian.
    REQUIRE(tr.conserved.size() == grid.size());
    CHECK(tr.conserved.front()[0] == Cx(0.0));
    CHECK(std::abs(tr.conserved.front()[1] - Cx(-0.5)) < 1e-15);
    for (const auto& row : tr.conserved) {
      CHECK(row[0] == tr.conserved.front()[0]);
      CHECK(row[1] == tr.conserved.front()[1]);
    }
    CHECK(tr.collision_steps.empty());
  }

  // Tracking through a close approach: rows stay continuous, and the
  // symmetric functions of the tracked values match the matrix invariants.
  {
    CoordChart c0 = real_chart({-1.0, 1.0}, {0.3, -0.1});
    auto grid = uniform_grid(0.0, 1.0, 200);
    Trajectory tr = trajectories_spectral(c0, grid);
    // The pair brushes past at separation 0.076 near t = 0.71, where the
    // eigenvalues move fast; rows must still change gradually per step.
    for (size_t s = 1; s < grid.size(); ++s)
      for (int i = 0; i < 2; ++i) CHECK(std::abs(tr.x[s][i] - tr.x[s - 1][i]) < 0.25);
    CMPoint P = xi_map(c0);
    for (size_t s = 0; s < grid.size(); s += 25) {
      Cx sum = tr.x[s][0] + tr.x[s][1];
      Cx prod = tr.x[s][0] * tr.x[s][1];
      CMat Xt = P.X + 2.0 * grid[s] * P.Y;
      CHECK(std::abs(sum - Xt.trace()) < 1e-10);
      CHECK(std::abs(prod - Xt.determinant()) < 1e-8);
    }
  }

  CHECK_THROWS_AS(trajectories_spectral(real_chart({0.0}, {1.0}), {0.0}), ConfigError);
  CHECK_THROWS_AS(trajectories_spectral(real_chart({0.0}, {1.0}), {0.0, 0.5, 0.5}), ConfigError);
  CHECK_THROWS_AS(trajectories_spectral(real_chart({0.0}, {1.0}), {0.0, 0.5, 0.2}), ConfigError);
  {
    std::vector<double> xs, ps;
    for (int i = 0; i < 8; ++i) {
      xs.push_back(double(i));
      ps.push_back(0.0);
    }
    CHECK_THROWS_AS(trajectories_spectral(real_chart(xs, ps), uniform_grid(0.0, 1.0, 2)),
                    ConfigError);
  }
}

TEST_CASE("spectral route flags collisions instead of failing") {
  // Released at rest from (-1, 1), the particles meet at t = 1.  With a
  // generous separation floor the tail of the grid is flagged but the
  // trajectory is still produced in full.
  auto grid = uniform_grid(0.0, 1.0, 100);
  Trajectory tr = trajectories_spectral(real_chart({-1.0, 1.0}, {0.0, 0.0}), grid,
                                        /*coupling=*/1.0, /*tau_sep=*/0.1);
  REQUIRE(tr.x.size() == grid.size());
  REQUIRE_FALSE(tr.collision_steps.empty());
  // Separation 2 sqrt(1 - t^2) dips below 0.1 only past t = 0.9987.
  for (int s : tr.collision_steps) CHECK(s == 100);
  CHECK(std::abs(tr.x.back()[0] - tr.x.back()[1]) < 0.1);
}

TEST_CASE("ODE route matches the spectral route on collision-free charts") {
  // Two particles, outward momenta, nonzero energy.
  {
    CoordChart c0 = real_chart({-1.0, 1.0}, {-0.5, 0.4});
    auto grid = uniform_grid(0.0, 1.0, 200);
    Trajectory sp = trajectories_spectral(c0, grid);
    Trajectory od = trajectories_ode(c0, grid);
    CHECK(sp.collision_steps.empty());
    CHECK(od.collision_steps.empty());
    CHECK(max_abs_diff(sp.x, od.x) <= 1e-6);
    CHECK(od.energy_drift <= 1e-8);
    // The integrated H = Tr(Y^2) agrees with the spectral invariant.
    CHECK(std::abs(od.conserved.front()[1] - sp.conserved.front()[1]) < 1e-14);
  }

  // Three particles.
  {
    CoordChart c0 = real_chart({-2.0, 0.0, 2.0}, {-0.4, 0.1, 0.5});
    auto grid = uniform_grid(0.0, 1.0, 200);
    Trajectory sp = trajectories_spectral(c0, grid);
    Trajectory od = trajectories_ode(c0, grid);
    CHECK(max_abs_diff(sp.x, od.x) <= 1e-6);
    CHECK(od.energy_drift <= 1e-8);
    for (size_t s = 0; s < grid.size(); ++s)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(od.conserved[s][size_t(j)] - sp.conserved[s][size_t(j)]) < 1e-7);
  }

  // The inverse-square attraction is visible: released at rest, the pair
  // accelerates inward along x(t) = -+sqrt(1 - t^2) on both routes.
  {
    CoordChart c0 = real_chart({-1.0, 1.0}, {0.0, 0.0});
    auto grid = uniform_grid(0.0, 0.9, 90);
    Trajectory sp = trajectories_spectral(c0, grid);
    Trajectory od = trajectories_ode(c0, grid);
    CHECK(max_abs_diff(sp.x, od.x) <= 1e-6);
    CHECK(od.energy_drift <= 1e-8);
  }

  // One free particle integrates exactly.
  {
    auto grid = uniform_grid(0.0, 1.0, 20);
    Trajectory od = trajectories_ode(real_chart({0.0}, {1.0}), grid);
    for (size_t s = 0; s < grid.size(); ++s) CHECK(std::abs(od.x[s][0] - Cx(2.0 * grid[s])) < 1e-12);
    CHECK(od.energy_drift <= 1e-12);
  }
}

TEST_CASE("ODE route reports genuine collisions as step failures") {
  // Attractive dynamics: these inward charts hit a real collision inside
  // [0, 1], where the spectral eigenvalues merely brush past each other.
  CHECK_THROWS_AS(
      trajectories_ode(real_chart({-1.0, 1.0}, {0.3, -0.1}), uniform_grid(0.0, 1.0, 100)),
      StepFailure);
  CHECK_THROWS_AS(
      trajectories_ode(real_chart({-1.0, 0.0, 1.0}, {0.3, 0.0, -0.3}), uniform_grid(0.0, 1.0, 100)),
      StepFailure);
  // The same charts are fine for the spectral route.
  CHECK_NOTHROW(
      trajectories_spectral(real_chart({-1.0, 1.0}, {0.3, -0.1}), uniform_grid(0.0, 1.0, 100)));
  CHECK_THROWS_AS(trajectories_ode(real_chart({0.0}, {1.0}), {0.0, -1.0}), ConfigError);
}

TEST_CASE("trajectory CSV rows: header, shape, and value formatting") {
  CoordChart c0 = real_chart({-1.0, 1.0}, {-0.5, 0.4});
  auto grid = uniform_grid(0.0, 1.0, 10);
  Trajectory tr = trajectories_spectral(c0, grid);
  auto rows = tr.csv_rows();
  REQUIRE(rows.size() == grid.size() + 1);
  CHECK(rows[0] == "t,x1,x2,p1,p2,H1,H2");
  CHECK(rows[1].substr(0, 2) == "0,");
  for (const std::string& r : rows) CHECK(std::count(r.begin(), r.end(), ',') == 6);

  // Byte-identical re-runs.
  auto rows2 = trajectories_spectral(c0, grid).csv_rows();
  CHECK(rows == rows2);

  // Complex positions are rendered with an explicit imaginary part.
  CoordChart cc;
  cc.x = {Cx(0.0, 0.0), Cx(0.0, 1.0)};
  cc.p = {Cx(0.3, 0.0), Cx(-0.3, 0.0)};
  auto crows = trajectories_spectral(cc, uniform_grid(0.0, 0.5, 5)).csv_rows();
  bool has_complex = false;
  for (size_t r = 1; r < crows.size(); ++r)
    if (crows[r].find('i') != std::string::npos) has_complex = true;
  CHECK(has_complex);
}

TEST_CASE("necklace bracket: closed-form pins at fixed matrices") {
  CMat X(2, 2), Y(2, 2);
  X << Cx(1.0), Cx(2.0), Cx(3.0), Cx(4.0);
  Y << Cx(0.0), Cx(1.0), Cx(1.0), Cx(0.0);
  Cx trX = X.trace();
  Cx trXY = (X * Y).trace();

  // {Tr X^2, Tr Y^2} = -4 Tr(XY).
  CHECK(std::abs(necklace_bracket_canonical("XX", "YY", X, Y) - (-4.0 * trXY)) < 1e-12);
  CHECK(std::abs(necklace_bracket_theorem("XX", "YY", X, Y) - (-4.0 * trXY)) < 1e-12);

  // {Tr XY, Tr X} = Tr X.
  CHECK(std::abs(necklace_bracket_canonical("XY", "X", X, Y) - trX) < 1e-12);
  CHECK(std::abs(necklace_bracket_theorem("XY", "X", X, Y) - trX) < 1e-12);

  // Antisymmetry.
  CHECK(std::abs(necklace_bracket_canonical("X", "XY", X, Y) + trX) < 1e-12);
  CHECK(std::abs(necklace_bracket_canonical("XXY", "XYY", X, Y) +
                 necklace_bracket_canonical("XYY", "XXY", X, Y)) < 1e-12);
  CHECK(std::abs(necklace_bracket_theorem("XXY", "XYY", X, Y) +
                 necklace_bracket_theorem("XYY", "XXY", X, Y)) < 1e-12);

  // Same-letter words are structural zeros: exactly zero, not just small.
  CHECK(necklace_bracket_canonical("XX", "XX", X, Y) == Cx(0.0));
  CHECK(necklace_bracket_theorem("XX", "XX", X, Y) == Cx(0.0));
  CHECK(necklace_bracket_canonical("Y", "YY", X, Y) == Cx(0.0));
  CHECK(necklace_bracket_theorem("Y", "YY", X, Y) == Cx(0.0));

  // One-by-one matrices.
  CMat x1(1, 1), y1(1, 1);
  x1 << Cx(2.0);
  y1 << Cx(3.0);
  CHECK(std::abs(necklace_bracket_canonical("XY", "X", x1, y1) - Cx(2.0)) < 1e-14);
  CHECK(std::abs(necklace_bracket_theorem("XY", "X", x1, y1) - Cx(2.0)) < 1e-14);
}

TEST_CASE("necklace bracket: the two routes agree on random word pairs") {
  // 100 deterministic word pairs of length <= 4 at n = 4.
  std::vector<std::string> words = all_words(4);
  REQUIRE(words.size() == 30);
  int tested = 0;
  for (size_t i = 0; i < words.size(); ++i)
    for (size_t j = 0; j < words.size(); ++j) {
      size_t idx = i * words.size() + j;
      if (idx % 9 != 0) continue;
      NecklaceReport rep =
          necklace_bracket_check(words[i], words[j], 4, 5, 0x9d5u + idx, 1e-9);
      CHECK(rep.pass);
      CHECK(rep.max_rel_err <= 1e-9);
      CHECK(rep.n_samples == 5);
      if (!rep.pass)
        MESSAGE("words ", words[i], " ", words[j], " err ", rep.max_rel_err);
      ++tested;
    }
  CHECK(tested == 100);

  // Trace powers of Y commute with each other: structural zero.
  NecklaceReport zz = necklace_bracket_check("YY", "YYY", 3, 8, 11, 1e-9);
  CHECK(zz.structural_zero);
  CHECK(zz.pass);
  CHECK(zz.max_rel_err == 0.0);

  // Longest admissible words still agree.
  NecklaceReport big = necklace_bracket_check("XYXYXY", "YYXXYX", 5, 4, 2026, 1e-9);
  CHECK(big.pass);
  CHECK_FALSE(big.structural_zero);
}

TEST_CASE("necklace bracket: determinism and input guards") {
  NecklaceReport a = necklace_bracket_check("XXY", "XYY", 4, 64, 123, 1e-9, /*parallel=*/true);
  NecklaceReport b = necklace_bracket_check("XXY", "XYY", 4, 64, 123, 1e-9, /*parallel=*/false);
  CHECK(a.max_rel_err == b.max_rel_err);
  CHECK(a.worst_canonical == b.worst_canonical);
  CHECK(a.worst_theorem == b.worst_theorem);
  CHECK(a.pass == b.pass);
  CHECK(a.n_samples == b.n_samples);

  CMat X = CMat::Identity(2, 2), Y = CMat::Identity(2, 2);
  CHECK_THROWS_AS(necklace_bracket_canonical("XXXXXXX", "Y", X, Y), ConfigError);
  CHECK_THROWS_AS(necklace_bracket_canonical("XZ", "Y", X, Y), ConfigError);
  CHECK_THROWS_AS(necklace_bracket_check("XY", "X", 7, 4, 1, 1e-9), ConfigError);
  CHECK_THROWS_AS(necklace_bracket_check("XY", "xY", 3, 4, 1, 1e-9), ConfigError);
}

TEST_CASE("coordinate Poisson relations hold exactly under the xi pullback") {
  for (int n = 2; n <= 4; ++n)
    for (int m = 0; m <= 3; ++m)
      for (int k = 0; k <= 3; ++k) {
        CoordPoissonReport rep = coordinate_poisson_check(n, m, k, 3, 404u + uint64_t(m * 7 + k));
        CHECK(rep.pass);
        CHECK(rep.aa_zero);
        CHECK(rep.ba_match);
        CHECK(rep.bb_match);
        CHECK(rep.spot_checks == 3);
        if (!rep.pass) MESSAGE("n=", n, " m=", m, " k=", k);
      }
  // Top of the admissible exponent range.
  CHECK(coordinate_poisson_check(2, 5, 5, 2, 7).pass);
  CHECK(coordinate_poisson_check(3, 4, 5, 2, 7).pass);

  // Direct pins as rational-function identities.
  const int n = 2;
  RationalFn a1 = xi_pullback_a(n, 1), a2 = xi_pullback_a(n, 2), a3 = xi_pullback_a(n, 3);
  RationalFn b1 = xi_pullback_b(n, 1), b2 = xi_pullback_b(n, 2);
  CHECK(poisson_bracket_xp(a1, a2, n).is_zero());
  CHECK(poisson_bracket_xp(b1, a1, n) == a1);
  CHECK(poisson_bracket_xp(a1, b1, n) == -a1);
  CHECK(poisson_bracket_xp(b2, b1, n) == -b2);
  RationalFn two = RationalFn::of(MPoly::constant(Scalar(2), 2 * n, 0));
  CHECK(poisson_bracket_xp(b2, a2, n) == two * a3);
  // a_0 is the constant n, so it brackets to zero with everything here.
  CHECK(poisson_bracket_xp(b2, xi_pullback_a(n, 0), n).is_zero());
}

TEST_CASE("coordinate Poisson checks reject out-of-range shapes") {
  CHECK_THROWS_AS(coordinate_poisson_check(5, 1, 1, 2, 7), ConfigError);
  CHECK_THROWS_AS(coordinate_poisson_check(0, 1, 1, 2, 7), ConfigError);
  CHECK(coordinate_poisson_check(1, 2, 3, 2, 7).pass);  // a single pair is fine
  CHECK_THROWS_AS(coordinate_poisson_check(2, 6, 1, 2, 7), ConfigError);
  CHECK_THROWS_AS(coordinate_poisson_check(2, 1, 6, 2, 7), ConfigError);
  CHECK_THROWS_AS(coordinate_poisson_check(2, -1, 1, 2, 7), ConfigError);
}
