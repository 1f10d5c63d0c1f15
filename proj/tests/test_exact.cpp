#include "doctest.h"

#include <vector>

#include "cmwork/errors.hpp"
#include "cmwork/mpoly.hpp"
#include "cmwork/params.hpp"
#include "cmwork/scalar.hpp"
#include "cmwork/smat.hpp"

using namespace cmwork;

namespace {

// Deterministic little generator for property tests.
struct Lcg {
  unsigned long long s = 0x243f6a8885a308d3ull;
  unsigned next(unsigned bound) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return unsigned((s >> 33) % bound);
  }
  Rational rational() {
    long num = long(next(11)) - 5;
    long den = long(next(3)) + 1;
    return rat(num, den);
  }
};

MPoly random_poly(Lcg& rng, int nv, int np, int max_deg, int terms) {
  MPoly p(nv, np);
  for (int t = 0; t < terms; ++t) {
    std::vector<unsigned> exps(size_t(nv), 0);
    int budget = int(rng.next(unsigned(max_deg + 1)));
    for (int i = 0; i < nv && budget > 0; ++i) {
      unsigned e = rng.next(unsigned(budget + 1));
      exps[size_t(i)] = e;
      budget -= int(e);
    }
    ParamScalar coeff = ParamScalar::constant(Scalar(rng.rational()), np);
    if (np > 0 && rng.next(2) == 1) coeff = coeff * ParamScalar::param(0, np);
    p.add_term(MonoKey::from_exponents(exps), coeff);
  }
  return p;
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(rat_parse("3/4").value() == rat(3, 4));
  CHECK(rat_parse("-2").value() == rat(-2, 1));
  CHECK(!rat_parse("3/").has_value());
  CHECK(rat_str(rat(6, 4)) == "3/2");
  CHECK(rat_sqrt(rat(9, 4)).value() == rat(3, 2));
  CHECK(!rat_sqrt(rat(2, 1)).has_value());
  CHECK(rat_binom(rat(1, 2), 2) == rat(-1, 8));
  CHECK(factorial(5) == 120);
}

TEST_CASE("quadratic extension arithmetic is exact") {
  Scalar r2 = Scalar::sqrt_of(2);
  Scalar x = Scalar(1) + r2;
  CHECK(x * x == Scalar(3) + r2 * Scalar(2));
  CHECK(x.inverse() == r2 - Scalar(1));
  CHECK(x * x.inverse() == Scalar(1));
  CHECK((Scalar(3) - r2 * Scalar(2)).sign() > 0);   // 3 - 2.828... > 0
  CHECK((r2 * Scalar(2) - Scalar(3)).sign() < 0);
  CHECK((Scalar(1) - r2).sign() < 0);
  CHECK_THROWS_AS(r2 + Scalar::sqrt_of(3), FieldMismatch);
  CHECK(scalar_sqrt(Scalar(3) + r2 * Scalar(2)).value() == x);
  CHECK(scalar_sqrt_in_field(Scalar(2), 2).value() == r2);
  CHECK(scalar_sqrt_in_field(Scalar(8), 2).value() == r2 * Scalar(2));
  CHECK(Scalar(rat(9, 4)).str() == "9/4");
  CHECK((Scalar(1) + r2).str() == "1+1*sqrt(2)");
  CHECK((-r2).str() == "-1*sqrt(2)");
}

TEST_CASE("parameter polynomials") {
  ParamScalar c = ParamScalar::param(0, 1);
  ParamScalar one = ParamScalar::constant(Scalar(1), 1);
  ParamScalar p = one - c * Scalar(2);
  CHECK(p.str() == "1-2*c1");
  CHECK(p.eval({Scalar(rat(1, 2))}).is_zero());
  CHECK((p * (one + c * Scalar(2))).str() == "1-4*c1^2");

  // c1*c2 + c1 under c_i -> -k: coefficients by degree in k.
  ParamScalar c1 = ParamScalar::param(0, 2);
  ParamScalar c2 = ParamScalar::param(1, 2);
  std::vector<Scalar> coeffs = (c1 * c2 + c1).specialize_all_to(Scalar(-1));
  REQUIRE(coeffs.size() == 3);
  CHECK(coeffs[0] == Scalar(0));
  CHECK(coeffs[1] == Scalar(-1));
  CHECK(coeffs[2] == Scalar(1));
}

TEST_CASE("polynomial arithmetic golden cases") {
  int nv = 2, np = 1;
  MPoly x1 = MPoly::variable(0, nv, np);
  MPoly x2 = MPoly::variable(1, nv, np);
  CHECK((x1 + x2) * (x1 - x2) == x1 * x1 - x2 * x2);

  ParamScalar c = ParamScalar::param(0, np);
  MPoly cx1 = x1.times(c);
  CHECK(cx1 * cx1 == (x1 * x1).times(c * c));

  Lcg rng;
  for (int trial = 0; trial < 5; ++trial) {
    MPoly p = random_poly(rng, 3, 1, 4, 6);
    CHECK((p * MPoly::zero(3, 1)).is_zero());
  }
}

TEST_CASE("exact division by linear forms") {
  int nv = 2, np = 0;
  MPoly x1 = MPoly::variable(0, nv, np);
  MPoly x2 = MPoly::variable(1, nv, np);
  CHECK((x1 * x1 - x2 * x2).divide_exact_by_linear(x1 - x2) == x1 + x2);
  CHECK(MPoly::zero(nv, np).divide_exact_by_linear(x1).is_zero());
  CHECK_THROWS_AS(x1.divide_exact_by_linear(x2), NotDivisible);

  Lcg rng;
  for (int trial = 0; trial < 20; ++trial) {
    MPoly q = random_poly(rng, 3, 1, 3, 5);
    MPoly ell = MPoly::linear_form(
        {Scalar(long(rng.next(3)) + 1), Scalar(long(rng.next(5)) - 2), Scalar(long(rng.next(5)) - 2)}, 1);
    CHECK((q * ell).divide_exact_by_linear(ell) == q);
  }
}

TEST_CASE("substitution and evaluation") {
  int nv = 2, np = 1;
  MPoly x1 = MPoly::variable(0, nv, np);
  MPoly x2 = MPoly::variable(1, nv, np);
  ParamScalar c = ParamScalar::param(0, np);
  ParamScalar one = ParamScalar::constant(Scalar(1), np);

  // (1-2c)x with c=1/2 collapses to zero.
  MPoly p = x1.times(one - c * Scalar(2));
  CHECK(p.eval_params({Scalar(rat(1, 2))}).is_zero());

  CHECK((x1 * x2).eval({Scalar(2), Scalar(3)}, {Scalar(0)}) == Scalar(6));

  RationalFn f(MPoly::one(nv, np), x1 - x2);
  CHECK_THROWS_AS(f.eval({Scalar(1), Scalar(1)}, {Scalar(0)}), PoleAtPoint);
  CHECK(f.eval({Scalar(2), Scalar(1)}, {Scalar(0)}) == Scalar(1));

  // substitute_linear: swap variables, then a shear.
  MPoly g = x1 * x1 - x2 * x2;
  MPoly swapped = g.substitute_linear({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}}, 2);
  CHECK(swapped == -g);
  MPoly sheared = x1.substitute_linear({{Scalar(1), Scalar(1)}, {Scalar(0), Scalar(1)}}, 2);
  CHECK(sheared == x1 + x2);

  // Rectangular substitution into fewer variables.
  MPoly h = (x1 - x2).substitute_linear({{Scalar(1)}, {Scalar(1)}}, 1);
  CHECK(h.is_zero());
}

TEST_CASE("ring axioms on random inputs") {
  Lcg rng;
  for (int trial = 0; trial < 12; ++trial) {
    MPoly a = random_poly(rng, 3, 1, 4, 5);
    MPoly b = random_poly(rng, 3, 1, 4, 5);
    MPoly c = random_poly(rng, 3, 1, 4, 5);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    if (!a.is_zero() && !b.is_zero()) CHECK((a * b).degree() == a.degree() + b.degree());

    // Evaluation is a ring homomorphism.
    std::vector<Scalar> pt{Scalar(rng.rational()), Scalar(rng.rational()), Scalar(rng.rational())};
    std::vector<Scalar> pv{Scalar(rng.rational())};
    CHECK((a * b).eval(pt, pv) == a.eval(pt, pv) * b.eval(pt, pv));
    CHECK((a + b).eval(pt, pv) == a.eval(pt, pv) + b.eval(pt, pv));
  }
}

TEST_CASE("rational functions compare by cross-multiplication") {
  int nv = 2, np = 0;
  MPoly x1 = MPoly::variable(0, nv, np);
  MPoly x2 = MPoly::variable(1, nv, np);
  RationalFn a(MPoly::one(nv, np), x1 - x2);
  RationalFn b(MPoly::one(nv, np), x2 - x1);
  CHECK(a == -b);
  CHECK(a != b);
  CHECK((a + b).is_zero());

  // Same-denominator addition keeps the denominator unexpanded.
  RationalFn c(x1, x1 - x2);
  RationalFn s = a + c;
  CHECK(s.den() == x1 - x2);
  CHECK(s.num() == MPoly::one(nv, np) + x1);

  RationalFn prod = a * RationalFn(x1 - x2, x2);
  CHECK(prod == RationalFn(MPoly::one(nv, np), x2));
}

TEST_CASE("canonical serialization") {
  int nv = 2, np = 1;
  ParamScalar c2 = ParamScalar::param(0, np) * ParamScalar::param(0, np) * Scalar(rat(3, 2));
  MPoly p = MPoly::monomial(MonoKey::from_exponents({1, 3}), c2, nv);
  CHECK(p.str() == "3/2*c1^2*x1*x2^3");

  MPoly x1 = MPoly::variable(0, nv, np);
  MPoly x2 = MPoly::variable(1, nv, np);
  CHECK((x2 * x2 * x2 + x1 * x1).str() == "x2^3+x1^2");  // graded-lex, descending
  CHECK((x1 * x2 + x2 * x2).str() == "x1*x2+x2^2");
  CHECK((x1 - x2).str() == "x1-x2");
  CHECK(MPoly::zero(nv, np).str() == "0");
  ParamScalar one_minus = ParamScalar::constant(Scalar(1), np) - ParamScalar::param(0, np) * Scalar(2);
  CHECK(x1.times(one_minus).str() == "(1-2*c1)*x1");
}

TEST_CASE("exact matrices") {
  SMat m(2, 2);
  m.at(0, 0) = Scalar(1);
  m.at(0, 1) = Scalar(2);
  m.at(1, 0) = Scalar(3);
  m.at(1, 1) = Scalar(4);
  CHECK(m.rank() == 2);
  SMat inv = m.inverse();
  CHECK(m * inv == SMat::identity(2));

  SMat sing(2, 2);
  sing.at(0, 0) = Scalar(1);
  sing.at(0, 1) = Scalar(2);
  sing.at(1, 0) = Scalar(2);
  sing.at(1, 1) = Scalar(4);
  CHECK(sing.rank() == 1);
  auto ns = sing.nullspace();
  REQUIRE(ns.size() == 1);
  CHECK(sing.apply(ns[0]) == std::vector<Scalar>{Scalar(0), Scalar(0)});

  SMat d3(3, 3);
  d3.at(0, 0) = Scalar(1);
  d3.at(1, 1) = Scalar(2);
  d3.at(2, 2) = Scalar(3);
  auto e = d3.elementary_symmetric_eigen();
  REQUIRE(e.size() == 4);
  CHECK(e[0] == Scalar(1));
  CHECK(e[1] == Scalar(6));
  CHECK(e[2] == Scalar(11));
  CHECK(e[3] == Scalar(6));

  // Mod-p rank is one-sided: full rank mod p certifies full rank over Q.
  SMat dp(2, 2);
  dp.at(0, 0) = Scalar(1);
  dp.at(1, 1) = Scalar(101);
  CHECK(rank_mod_p(dp, 101) == 1);
  CHECK(rank_mod_p(dp, 7) == 2);

  SMat r(2, 2);
  r.at(0, 0) = Scalar::sqrt_of(2);
  r.at(1, 1) = Scalar::sqrt_of(2);
  CHECK(rank_mod_p(r, 7) == 2);  // 2 is a square mod 7 (3*3=9=2)
}
