#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "cmwork/errors.hpp"
#include "cmwork/group.hpp"
#include "cmwork/support.hpp"
#include "cmwork/verma.hpp"

using namespace cmwork;

namespace {

std::vector<int> class_degrees(const std::vector<ParabolicClass>& classes,
                               const std::string& label) {
  for (const ParabolicClass& pc : classes)
    if (pc.label == label) return pc.degrees;
  FAIL("no parabolic class labelled ", label);
  return {};
}

bool has_class(const std::vector<ParabolicClass>& classes, const std::string& label) {
  for (const ParabolicClass& pc : classes)
    if (pc.label == label) return true;
  return false;
}

}  // namespace

TEST_CASE("divisibility counts on degree lists") {
  std::vector<int> e7 = group_degrees("E7");
  CHECK(e7 == std::vector<int>{2, 6, 8, 10, 12, 14, 18});
  CHECK(divisible_degree_count(e7, 14) == 1);
  CHECK(divisible_degree_count(e7, 2) == 7);
  CHECK(divisible_degree_count(e7, 1) == 7);  // m = 1 gives the rank
  CHECK(divisible_degree_count({2, 3}, 5) == 0);
  CHECK(divisible_degree_count({2, 3}, 1) == 2);
  CHECK(divisible_degree_count({}, 3) == 0);
  CHECK_THROWS_AS(divisible_degree_count({2}, 0), ConfigError);
}

TEST_CASE("stratum membership from divisibility counts") {
  std::vector<int> a2 = {2, 3}, a1 = {2}, none = {};
  CHECK(stratum_in_support(a2, a1, rat(1, 2)));
  CHECK(!stratum_in_support(a2, none, rat(1, 2)));
  CHECK(stratum_in_support(a2, a2, rat(1, 2)));
  CHECK(stratum_in_support(a2, a2, rat(1, 3)));
  CHECK(stratum_in_support(a2, a2, rat(-7, 5)));
  // Integer couplings keep every stratum.
  CHECK(stratum_in_support(a2, none, rat(2)));
  CHECK(stratum_in_support(a2, none, rat(0)));
  CHECK(stratum_in_support(a2, none, rat(-3)));
  // Sign of c does not matter, only the denominator of |c|.
  CHECK(!stratum_in_support(a2, a1, rat(-1, 3)));
  CHECK(!stratum_in_support(a2, a1, rat(2, 3)));
}

TEST_CASE("parabolic classes of built groups carry diagram labels and degrees") {
  {
    ReflectionGroup g = ReflectionGroup::build("B3");
    std::vector<ParabolicClass> classes = parabolic_classes(g);
    CHECK(classes.size() == 5);  // B2, A2, A1xA1, A1, 1
    CHECK(class_degrees(classes, "B2") == std::vector<int>{2, 4});
    CHECK(class_degrees(classes, "A2") == std::vector<int>{2, 3});
    CHECK(class_degrees(classes, "A1xA1") == std::vector<int>{2, 2});
    CHECK(class_degrees(classes, "A1") == std::vector<int>{2});
    CHECK(class_degrees(classes, "1").empty());
    for (const ParabolicClass& pc : classes)
      CHECK(pc.maximal == (pc.degrees.size() == 2));
  }
  {
    ReflectionGroup g = ReflectionGroup::build("D4");
    std::vector<ParabolicClass> classes = parabolic_classes(g);
    CHECK(has_class(classes, "A3"));
    CHECK(has_class(classes, "A1xA1xA1"));
    CHECK(class_degrees(classes, "A3") == std::vector<int>{2, 3, 4});
    CHECK(class_degrees(classes, "A1xA1xA1") == std::vector<int>{2, 2, 2});
  }
  {
    ReflectionGroup g = ReflectionGroup::build("A3");
    std::vector<ParabolicClass> classes = parabolic_classes(g);
    CHECK(classes.size() == 4);  // A2, A1xA1, A1, 1
    CHECK(has_class(classes, "A2"));
    CHECK(has_class(classes, "A1xA1"));
  }
  {
    ReflectionGroup g = ReflectionGroup::build("B1");
    std::vector<ParabolicClass> classes = parabolic_classes(g);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].label == "1");
    CHECK(classes[0].maximal);
  }
}

TEST_CASE("maximal parabolic classes come from enumeration or shipped tables") {
  std::vector<ParabolicClass> e7 = maximal_parabolic_classes("E7");
  CHECK(e7.size() == 7);
  CHECK(class_degrees(e7, "E6") == std::vector<int>{2, 5, 6, 8, 9, 12});
  CHECK(class_degrees(e7, "D6") == std::vector<int>{2, 4, 6, 6, 8, 10});
  for (const ParabolicClass& pc : e7) {
    CHECK(pc.maximal);
    CHECK(pc.degrees.size() == 6);
  }

  std::vector<ParabolicClass> b3 = maximal_parabolic_classes("B3");
  CHECK(b3.size() == 3);
  for (const ParabolicClass& pc : b3) CHECK(pc.degrees.size() == 2);

  CHECK(maximal_parabolic_classes("E8").size() == 8);
  CHECK(maximal_parabolic_classes("H4").size() == 4);

  CHECK_THROWS_AS(maximal_parabolic_classes("H5"), MissingParabolicTable);
  CHECK_THROWS_AS(maximal_parabolic_classes("Zm:5"), UnsupportedType);
  CHECK_THROWS_AS(group_degrees("Q9"), MissingParabolicTable);
}

TEST_CASE("finite-dimensionality criterion for the symmetric groups") {
  // S_n: finite-dimensional exactly when the denominator of c equals n.
  for (int n = 2; n <= 6; ++n) {
    std::string label = "A" + std::to_string(n - 1);
    CHECK(finite_denominator_table(label) ==
          std::vector<unsigned long>{static_cast<unsigned long>(n)});
  }
  CHECK(finite_dim_criterion("A3", rat(3, 4)));
  CHECK(!finite_dim_criterion("A3", rat(1, 2)));
  CHECK(!finite_dim_criterion("A3", rat(2)));
  CHECK(!finite_dim_criterion("A3", rat(1)));
  CHECK(finite_dim_criterion("A3", rat(-1, 4)));  // |c| drives the criterion
}

TEST_CASE("finite-dimensionality denominator tables for the exceptional types") {
  using T = std::vector<unsigned long>;
  CHECK(finite_denominator_table("E7") == T{2, 6, 14, 18});
  CHECK(finite_denominator_table("E8") == T{2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 24, 30});
  CHECK(finite_denominator_table("E6") == T{3, 6, 9, 12});
  CHECK(finite_denominator_table("F4") == T{2, 3, 4, 6, 8, 12});
  CHECK(finite_denominator_table("H3") == T{2, 6, 10});
  CHECK(finite_denominator_table("H4") == T{2, 3, 4, 5, 6, 10, 12, 15, 20, 30});
  CHECK(finite_denominator_table("G2") == T{2, 3, 6});

  // Dihedral groups: the denominator must divide m (and exceed 1); for odd m
  // only the full rotation order works.
  CHECK(finite_denominator_table("I2(6)") == T{2, 3, 6});
  CHECK(finite_denominator_table("I2(4)") == T{2, 4});
  CHECK(finite_denominator_table("B2") == T{2, 4});
  CHECK(finite_denominator_table("I2(3)") == T{3});
  CHECK(finite_denominator_table("B1") == T{2});
}

TEST_CASE("divisibility monotonicity along parabolic inclusions") {
  for (const char* label : {"A2", "A3", "A4", "B2", "B3", "D4", "I2(6)"}) {
    ReflectionGroup g = ReflectionGroup::build(label);
    std::vector<int> wdeg = g.degrees();
    int dmax = *std::max_element(wdeg.begin(), wdeg.end());
    for (const ParabolicClass& pc : parabolic_classes(g))
      for (int m = 2; m <= dmax + 2; ++m)
        CHECK(divisible_degree_count(pc.degrees, static_cast<unsigned long>(m)) <=
              divisible_degree_count(wdeg, static_cast<unsigned long>(m)));
  }
}

TEST_CASE("parabolic length generating polynomials divide the group's") {
  for (const char* label : {"A2", "A3", "A4", "A5", "B2", "B3", "D4", "I2(6)"}) {
    ReflectionGroup g = ReflectionGroup::build(label);
    std::vector<BigInt> pw = poincare_coeffs(g.degrees());
    BigInt total = 0;
    for (const BigInt& coeff : pw) total += coeff;
    CHECK(total == g.order());
    for (const ParabolicClass& pc : parabolic_classes(g))
      CHECK(poly_divides(poincare_coeffs(pc.degrees), pw));
  }
  // Negative control: P_{A2} does not divide P_{B2} (orders 6 and 8).
  CHECK(!poly_divides(poincare_coeffs({2, 3}), poincare_coeffs({2, 4})));
  CHECK(poly_divides(poincare_coeffs({}), poincare_coeffs({2, 3})));
  CHECK_THROWS_AS(poly_divides({BigInt(2)}, {BigInt(4)}), ConfigError);
}

TEST_CASE("support reports list strata with counts and a finiteness verdict") {
  {
    SupportReport rep = support_report("A2", rat(1, 2));
    CHECK(rep.m == 2);
    CHECK(!rep.finite_dim);
    bool saw_a1 = false, saw_trivial = false;
    for (const SupportReport::Row& row : rep.rows) {
      if (row.stratum == "A1") {
        saw_a1 = true;
        CHECK(row.in_support);  // counts 1 = 1
        CHECK(row.count_w == 1);
        CHECK(row.count_wa == 1);
      }
      if (row.stratum == "1") {
        saw_trivial = true;
        CHECK(!row.in_support);  // 1 != 0
      }
    }
    CHECK(saw_a1);
    CHECK(saw_trivial);
    CHECK(rep.rows.back().stratum == "A2");
    CHECK(rep.rows.back().in_support);

    std::vector<std::string> csv = rep.csv_rows();
    CHECK(csv[0] == "group,c,m,stratum,deg_count_W,deg_count_Wa,in_support");
    CHECK(std::find(csv.begin(), csv.end(), "A2,1/2,2,A1,1,1,1") != csv.end());
    CHECK(std::find(csv.begin(), csv.end(), "A2,1/2,2,1,1,0,0") != csv.end());
  }
  {
    SupportReport rep = support_report("A2", rat(1, 3));
    CHECK(rep.finite_dim);
    for (const SupportReport::Row& row : rep.rows)
      CHECK(row.in_support == (row.stratum == "A2"));
  }
  {
    // Integer coupling: every stratum survives.
    SupportReport rep = support_report("A2", rat(2));
    CHECK(rep.m == 1);
    CHECK(!rep.finite_dim);
    for (const SupportReport::Row& row : rep.rows) CHECK(row.in_support);
  }
  {
    SupportReport rep = support_report("E7", rat(1, 2));
    CHECK(rep.finite_dim);
    CHECK(rep.rows.size() == 9);  // 7 maximal classes + trivial + self
    for (const SupportReport::Row& row : rep.rows)
      CHECK(row.in_support == (row.stratum == "E7"));
  }
  {
    SupportReport rep = support_report("E7", rat(1, 3));
    CHECK(!rep.finite_dim);
    bool e6_in = false;
    for (const SupportReport::Row& row : rep.rows)
      if (row.stratum == "E6") e6_in = row.in_support;
    CHECK(e6_in);  // counts tie at 3
  }
}

TEST_CASE("criterion agrees with the explicit quotient search for A2 and B2") {
  {
    ReflectionGroup g = ReflectionGroup::build("A2");
    VermaModule vm(g);
    for (int m = 2; m <= 6; ++m) {
      bool expect = finite_dim_criterion("A2", rat(1, m));
      CHECK(expect == (m == 3));
      for (long num : {1L, long(m) - 1}) {
        if (std::gcd(num, long(m)) != 1) continue;
        std::vector<long> h =
            essential_quotient_hilbert(vm, {Scalar(rat(num, m))}, 8);
        CHECK((h.back() == 0) == expect);
      }
    }
    // The terminating cases reproduce the type A quotient series exactly.
    std::vector<long> h13 = essential_quotient_hilbert(vm, {Scalar(rat(1, 3))}, 8);
    CHECK(h13 == std::vector<long>{1, 0});
    std::vector<long> h23 = essential_quotient_hilbert(vm, {Scalar(rat(2, 3))}, 8);
    CHECK(h23 == std::vector<long>{1, 2, 1, 0});
  }
  {
    ReflectionGroup g = ReflectionGroup::build("B2");
    VermaModule vm(g);
    for (int m = 2; m <= 6; ++m) {
      bool expect = finite_dim_criterion("B2", rat(1, m));
      CHECK(expect == (m == 2 || m == 4));
      Scalar c{rat(1, m)};
      std::vector<long> h = essential_quotient_hilbert(vm, {c, c}, 12);
      CHECK((h.back() == 0) == expect);
    }
  }
}
