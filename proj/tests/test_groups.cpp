#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "cmwork/degree_table.hpp"
#include "cmwork/errors.hpp"
#include "cmwork/group.hpp"

using namespace cmwork;

namespace {

std::set<std::string> root_set(const ReflectionGroup& g) {
  std::set<std::string> out;
  for (const auto& r : g.reflections()) {
    std::string s;
    for (const auto& x : r.alpha) s += x.str() + ",";
    out.insert(s);
  }
  return out;
}

// Exact division of integer polynomials; nullopt if not exact.
bool divides_poly(const std::vector<long long>& den, const std::vector<long long>& num) {
  std::vector<long long> rem = num;
  if (den.empty() || den.back() == 0) return false;
  if (num.size() < den.size()) return false;
  for (size_t k = num.size() - den.size() + 1; k-- > 0;) {
    long long c = rem[k + den.size() - 1];
    if (c % den.back() != 0) return false;
    long long q = c / den.back();
    for (size_t j = 0; j < den.size(); ++j) rem[k + j] -= q * den[j];
  }
  for (long long c : rem)
    if (c != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("group label parsing") {
  CHECK(GroupSpec::parse("A3").str() == "A3");
  CHECK(GroupSpec::parse("I2(6)").str() == "I2(6)");
  CHECK(GroupSpec::parse("Zm:5").str() == "Zm:5");
  CHECK_THROWS_AS(GroupSpec::parse("X9"), ConfigError);
  CHECK_THROWS_AS(GroupSpec::parse("I2(5)"), UnsupportedType);
}

TEST_CASE("symmetric group on three letters") {
  ReflectionGroup g = ReflectionGroup::build("A2");
  CHECK(g.order() == 6);
  CHECK(g.dim() == 3);
  CHECK(g.reflections().size() == 3);
  CHECK(g.num_reflection_classes() == 1);
  CHECK(g.length_census() == std::vector<long long>{1, 2, 2, 1});
  CHECK(g.degrees() == std::vector<int>{2, 3});

  std::set<std::string> expect{"1,-1,0,", "1,0,-1,", "0,1,-1,"};
  CHECK(root_set(g) == expect);

  // Identity word is empty; generator words are single letters.
  CHECK(g.word(0).empty());
  CHECK(g.length(g.generator(0)) == 1);
  // The longest element has length 3.
  int max_len = 0;
  for (int e = 0; e < g.order(); ++e) max_len = std::max(max_len, g.length(e));
  CHECK(max_len == 3);
}

TEST_CASE("hyperoctahedral group of rank two") {
  ReflectionGroup g = ReflectionGroup::build("B2");
  CHECK(g.order() == 8);
  CHECK(g.reflections().size() == 4);
  CHECK(g.num_reflection_classes() == 2);
  CHECK(g.length_census() == std::vector<long long>{1, 2, 2, 2, 1});
  CHECK(g.degrees() == std::vector<int>{2, 4});

  // Long roots e1-e2, e1+e2 plus rescaled short roots sqrt2*e1, sqrt2*e2.
  std::set<std::string> expect{"1,-1,", "1,1,", "1*sqrt(2),0,", "0,1*sqrt(2),"};
  CHECK(root_set(g) == expect);
}

TEST_CASE("reflection data invariants") {
  for (const char* label : {"A2", "B2", "D3", "I2(3)", "I2(4)", "I2(6)"}) {
    ReflectionGroup g = ReflectionGroup::build(label);
    CAPTURE(label);
    for (const auto& r : g.reflections()) {
      CHECK(dot(r.alpha, r.alpha) == Scalar(2));
      std::vector<Scalar> neg;
      for (const auto& x : r.alpha) neg.push_back(-x);
      CHECK(g.act(r.elem, r.alpha) == neg);
      CHECK(g.mult(r.elem, r.elem) == 0);
    }
    // Conjugation permutes reflections, preserves class, maps roots to
    // +-roots: w alpha_s = +- alpha_{w s w^-1}.
    for (const auto& r : g.reflections()) {
      for (int gi = 0; gi < g.num_generators(); ++gi) {
        int w = g.generator(gi);
        int conj = g.mult(g.mult(w, r.elem), g.inverse(w));
        CHECK(g.reflection_class_of(conj) == r.cls);
        std::vector<Scalar> wa = g.act(w, r.alpha);
        bool matched = false;
        for (const auto& r2 : g.reflections()) {
          if (r2.elem != conj) continue;
          std::vector<Scalar> neg;
          for (const auto& x : r2.alpha) neg.push_back(-x);
          matched = (wa == r2.alpha) || (wa == neg);
        }
        CHECK(matched);
      }
    }
  }
}

TEST_CASE("dihedral groups in quadratic fields") {
  ReflectionGroup h6 = ReflectionGroup::build("I2(6)");
  CHECK(h6.order() == 12);
  CHECK(h6.reflections().size() == 6);
  CHECK(h6.num_reflection_classes() == 2);
  CHECK(h6.degrees() == std::vector<int>{2, 6});

  ReflectionGroup h3 = ReflectionGroup::build("I2(3)");
  CHECK(h3.order() == 6);
  CHECK(h3.reflections().size() == 3);
  CHECK(h3.num_reflection_classes() == 1);
  CHECK(h3.degrees() == std::vector<int>{2, 3});

  ReflectionGroup h4 = ReflectionGroup::build("I2(4)");
  CHECK(h4.order() == 8);
  CHECK(h4.num_reflection_classes() == 2);
  CHECK(h4.degrees() == std::vector<int>{2, 4});
}

TEST_CASE("larger groups and repeated degrees") {
  ReflectionGroup a3 = ReflectionGroup::build("A3");
  CHECK(a3.order() == 24);
  CHECK(a3.degrees() == std::vector<int>{2, 3, 4});

  ReflectionGroup d4 = ReflectionGroup::build("D4");
  CHECK(d4.order() == 192);
  CHECK(d4.reflections().size() == 12);
  CHECK(d4.num_reflection_classes() == 1);
  CHECK(d4.degrees() == std::vector<int>{2, 4, 4, 6});

  ReflectionGroup b3 = ReflectionGroup::build("B3");
  CHECK(b3.order() == 48);
  CHECK(b3.reflections().size() == 9);
  CHECK(b3.num_reflection_classes() == 2);
  CHECK(b3.degrees() == std::vector<int>{2, 4, 6});
}

TEST_CASE("cyclic groups stay symbolic") {
  ReflectionGroup z3 = ReflectionGroup::build("Zm:3");
  CHECK(z3.cyclic());
  CHECK(z3.order() == 3);
  CHECK(z3.degrees() == std::vector<int>{3});
  CHECK_THROWS_AS(z3.matrix(1), UnsupportedType);
}

TEST_CASE("degree recovery needs backtracking") {
  // 1+2q+2q^2+q^3 over order 6 -> {2,3}; the naive greedy 2,2 dead-ends.
  CHECK(degrees_from_census({1, 2, 2, 1}, 6) == std::vector<int>{2, 3});
  CHECK(degrees_from_census({1, 2, 2, 2, 1}, 8) == std::vector<int>{2, 4});
  CHECK(degrees_from_census({1, 1}, 2) == std::vector<int>{2});
  CHECK_THROWS_AS(degrees_from_census({1, 3, 1}, 5), FactorizationFailed);
}

TEST_CASE("stabilizers are parabolic subgroups") {
  ReflectionGroup g = ReflectionGroup::build("A2");
  std::vector<Scalar> a{Scalar(1), Scalar(1), Scalar(-2)};
  ReflectionGroup stab = g.stabilizer_group(a);
  CHECK(stab.order() == 2);
  CHECK(stab.reflections().size() == 1);
  CHECK(stab.degrees_molien() == std::vector<int>{2});

  CHECK(g.stabilizer({Scalar(0), Scalar(0), Scalar(0)}).size() == 6);
  CHECK(g.stabilizer({Scalar(1), Scalar(2), Scalar(3)}).size() == 1);
  ReflectionGroup triv = g.stabilizer_group({Scalar(1), Scalar(2), Scalar(3)});
  CHECK(triv.order() == 1);
}

TEST_CASE("parabolic Poincare polynomials divide the full one") {
  for (const char* label : {"A3", "B3"}) {
    ReflectionGroup g = ReflectionGroup::build(label);
    CAPTURE(label);
    std::vector<long long> pw = g.length_census();
    // Every proper subset of the generators spans a standard parabolic.
    int r = g.num_generators();
    for (int mask = 0; mask < (1 << r); ++mask) {
      std::vector<SMat> mats;
      for (int i = 0; i < r; ++i)
        if (mask & (1 << i)) mats.push_back(g.matrix(g.generator(i)));
      ReflectionGroup sub = ReflectionGroup::from_generator_matrices("sub", g.dim(), mats);
      CHECK(divides_poly(sub.length_census(), pw));
    }
  }
}

TEST_CASE("Molien degrees agree with census degrees on standard parabolics") {
  ReflectionGroup g = ReflectionGroup::build("B3");
  // <s1,s2> is a type-A parabolic of rank 2.
  std::vector<int> sub_elems = g.subgroup_from_generators({g.generator(0), g.generator(1)});
  CHECK(sub_elems.size() == 6);
  CHECK(g.subgroup_degrees_molien(sub_elems) == std::vector<int>{2, 3});

  std::vector<SMat> mats{g.matrix(g.generator(0)), g.matrix(g.generator(1))};
  ReflectionGroup sub = ReflectionGroup::from_generator_matrices("sub", g.dim(), mats);
  CHECK(sub.degrees() == std::vector<int>{2, 3});

  // <s2,s3> is a B2 parabolic.
  std::vector<int> b2 = g.subgroup_from_generators({g.generator(1), g.generator(2)});
  CHECK(g.subgroup_degrees_molien(b2) == std::vector<int>{2, 4});

  // Whole-group Molien agrees with the census route.
  CHECK(g.degrees_molien() == g.degrees());
}

TEST_CASE("shipped degree tables") {
  DegreeTable t = DegreeTable::load_default();
  CHECK(t.degrees("E7") == std::vector<int>{2, 6, 8, 10, 12, 14, 18});
  CHECK(t.order_of("E7") == 2903040);
  CHECK(t.order_of("E6") == 51840);
  CHECK(t.order_of("E8") == 696729600);
  CHECK(t.order_of("F4") == 1152);
  CHECK(t.order_of("G2") == 12);
  CHECK(t.order_of("H3") == 120);
  CHECK(t.order_of("H4") == 14400);

  auto e7par = t.maximal_parabolics("E7");
  CHECK(e7par.size() == 7);
  for (const auto& [label, degs] : e7par) {
    long long sub = 1;
    for (int d : degs) sub *= d;
    CHECK(2903040 % sub == 0);  // Lagrange
    CHECK(int(degs.size()) == 6);
  }
  auto e8par = t.maximal_parabolics("E8");
  CHECK(e8par.size() == 8);
  for (const auto& [label, degs] : e8par) {
    long long sub = 1;
    for (int d : degs) sub *= d;
    CHECK(696729600 % sub == 0);
    CHECK(int(degs.size()) == 7);
  }
  CHECK_THROWS_AS(t.degrees("E9"), MissingParabolicTable);
}
