#include "cmwork/support.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cmwork/degree_table.hpp"
#include "cmwork/errors.hpp"

namespace cmwork {

int divisible_degree_count(const std::vector<int>& degrees, unsigned long m) {
  if (m == 0) throw ConfigError("divisibility modulus must be positive");
  int n = 0;
  for (int d : degrees)
    if (d % long(m) == 0) ++n;
  return n;
}

bool stratum_in_support(const std::vector<int>& w_degrees,
                        const std::vector<int>& wa_degrees, const Rational& c) {
  if (rat_is_integer(c)) return true;
  unsigned long m = rat_denominator_ulong(c);
  return divisible_degree_count(w_degrees, m) == divisible_degree_count(wa_degrees, m);
}

namespace {

int product_order(const ReflectionGroup& g, int a, int b) {
  int step = g.mult(a, b);
  int cur = step;
  int ord = 1;
  while (cur != 0) {
    cur = g.mult(cur, step);
    if (++ord > 64) throw MathError("generator product order exceeds 64");
  }
  return ord;
}

// Diagram-type label of one connected generator subset ("A3", "B2", "D5",
// "I2(6)", ...).
std::string component_label(const std::vector<int>& comp,
                            const std::vector<std::vector<int>>& order) {
  int k = int(comp.size());
  if (k == 1) return "A1";
  if (k == 2) {
    int m = order[size_t(comp[0])][size_t(comp[1])];
    if (m == 3) return "A2";
    if (m == 4) return "B2";
    return "I2(" + std::to_string(m) + ")";
  }
  int max_valence = 0, four_edges = 0;
  for (int i : comp) {
    int valence = 0;
    for (int j : comp) {
      if (i == j) continue;
      int m = order[size_t(i)][size_t(j)];
      if (m >= 3) ++valence;
      if (i < j && m == 4) ++four_edges;
      if (i < j && m > 4) throw MathError("unrecognized diagram edge in parabolic");
    }
    max_valence = std::max(max_valence, valence);
  }
  if (max_valence >= 3) {
    if (four_edges > 0) throw MathError("unrecognized branched diagram in parabolic");
    return "D" + std::to_string(k);
  }
  if (four_edges == 0) return "A" + std::to_string(k);
  if (four_edges == 1) return "B" + std::to_string(k);
  throw MathError("unrecognized diagram with several marked edges");
}

std::string subset_label(const std::vector<int>& subset,
                         const std::vector<std::vector<int>>& order) {
  if (subset.empty()) return "1";
  // Connected components under adjacency (product order >= 3).
  std::vector<int> comp_of(subset.size(), -1);
  std::vector<std::string> labels;
  for (size_t seed = 0; seed < subset.size(); ++seed) {
    if (comp_of[seed] >= 0) continue;
    std::vector<int> comp;
    std::vector<size_t> stack = {seed};
    comp_of[seed] = int(seed);
    while (!stack.empty()) {
      size_t i = stack.back();
      stack.pop_back();
      comp.push_back(subset[i]);
      for (size_t j = 0; j < subset.size(); ++j)
        if (comp_of[j] < 0 && order[size_t(subset[i])][size_t(subset[j])] >= 3) {
          comp_of[j] = int(seed);
          stack.push_back(j);
        }
    }
    labels.push_back(component_label(comp, order));
  }
  std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  std::string out = labels[0];
  for (size_t i = 1; i < labels.size(); ++i) out += "x" + labels[i];
  return out;
}

}  // namespace

std::vector<ParabolicClass> parabolic_classes(const ReflectionGroup& g) {
  if (g.cyclic()) throw UnsupportedType("parabolic enumeration needs a real reflection group");
  int k = g.num_generators();
  std::vector<std::vector<int>> order(size_t(k), std::vector<int>(size_t(k), 2));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      order[size_t(i)][size_t(j)] = order[size_t(j)][size_t(i)] =
          product_order(g, g.generator(i), g.generator(j));

  std::map<std::string, ParabolicClass> classes;
  for (unsigned mask = 0; mask + 1 < (1u << k); ++mask) {  // proper subsets only
    std::vector<int> subset;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) subset.push_back(i);
    std::string label = subset_label(subset, order);
    if (classes.count(label)) continue;
    ParabolicClass pc;
    pc.label = label;
    pc.maximal = int(subset.size()) == k - 1;
    std::vector<int> elems;
    for (int i : subset) elems.push_back(g.generator(i));
    pc.degrees = g.subgroup_degrees_molien(g.subgroup_from_generators(elems));
    classes[label] = std::move(pc);
  }
  std::vector<ParabolicClass> out;
  for (auto& [label, pc] : classes) out.push_back(std::move(pc));
  std::sort(out.begin(), out.end(), [](const ParabolicClass& a, const ParabolicClass& b) {
    if (a.degrees.size() != b.degrees.size()) return a.degrees.size() > b.degrees.size();
    return a.label < b.label;
  });
  return out;
}

namespace {

// Classical labels are enumerated from the built group; returns false when
// the label is not a buildable real reflection group.
bool try_built_classes(const std::string& label, bool maximal_only,
                       std::vector<ParabolicClass>* out) {
  GroupSpec spec{};
  try {
    spec = GroupSpec::parse(label);
  } catch (const ConfigError&) {
    return false;
  }
  if (spec.family == GroupSpec::Family::Cyclic)
    throw UnsupportedType("support criterion needs a real reflection group");
  ReflectionGroup g = ReflectionGroup::build(spec);
  std::vector<ParabolicClass> all = parabolic_classes(g);
  for (ParabolicClass& pc : all)
    if (!maximal_only || pc.maximal) out->push_back(std::move(pc));
  return true;
}

}  // namespace

std::vector<ParabolicClass> maximal_parabolic_classes(const std::string& label) {
  std::vector<ParabolicClass> out;
  if (try_built_classes(label, true, &out)) return out;
  DegreeTable table = DegreeTable::load_default();
  for (auto& [name, degs] : table.maximal_parabolics(label)) {
    ParabolicClass pc;
    pc.label = name.substr(label.size() + 1);  // drop the "group/" key prefix
    pc.degrees = degs;
    pc.maximal = true;
    out.push_back(std::move(pc));
  }
  if (out.empty())
    throw MissingParabolicTable("no parabolic data shipped for " + label);
  return out;
}

std::vector<int> group_degrees(const std::string& label) {
  try {
    GroupSpec spec = GroupSpec::parse(label);
    if (spec.family != GroupSpec::Family::Cyclic)
      return ReflectionGroup::build(spec).degrees();
  } catch (const ConfigError&) {
  }
  return DegreeTable::load_default().degrees(label);
}

bool finite_dim_criterion(const std::string& label, const Rational& c) {
  if (rat_is_integer(c)) return false;
  std::vector<int> wdeg = group_degrees(label);
  unsigned long m = rat_denominator_ulong(c);
  int cw = divisible_degree_count(wdeg, m);
  for (const ParabolicClass& pc : maximal_parabolic_classes(label))
    if (divisible_degree_count(pc.degrees, m) >= cw) return false;
  return true;
}

std::vector<unsigned long> finite_denominator_table(const std::string& label) {
  std::vector<int> wdeg = group_degrees(label);
  int dmax = *std::max_element(wdeg.begin(), wdeg.end());
  std::vector<unsigned long> out;
  for (int m = 2; m <= dmax; ++m)
    if (finite_dim_criterion(label, rat(1, m))) out.push_back(static_cast<unsigned long>(m));
  return out;
}

SupportReport support_report(const std::string& label, const Rational& c) {
  SupportReport rep;
  rep.group = label;
  rep.c = c;
  rep.m = rat_is_integer(c) ? 1ul : rat_denominator_ulong(c);
  rep.w_degrees = group_degrees(label);
  int cw = divisible_degree_count(rep.w_degrees, rep.m);

  std::vector<ParabolicClass> classes;
  if (!try_built_classes(label, false, &classes)) {
    classes = maximal_parabolic_classes(label);
    ParabolicClass trivial;
    trivial.label = "1";
    trivial.maximal = false;
    classes.push_back(std::move(trivial));
  }

  bool proper_in_support = false;
  for (const ParabolicClass& pc : classes) {
    SupportReport::Row row;
    row.stratum = pc.label;
    row.degrees = pc.degrees;
    row.count_w = cw;
    row.count_wa = divisible_degree_count(pc.degrees, rep.m);
    row.in_support = stratum_in_support(rep.w_degrees, pc.degrees, c);
    row.maximal = pc.maximal;
    if (row.in_support) proper_in_support = true;
    rep.rows.push_back(std::move(row));
  }
  SupportReport::Row self;
  self.stratum = label;
  self.degrees = rep.w_degrees;
  self.count_w = cw;
  self.count_wa = cw;
  self.in_support = true;
  rep.rows.push_back(std::move(self));
  rep.finite_dim = !proper_in_support;
  return rep;
}

std::vector<std::string> SupportReport::csv_rows() const {
  std::vector<std::string> out;
  out.push_back("group,c,m,stratum,deg_count_W,deg_count_Wa,in_support");
  for (const Row& row : rows) {
    std::ostringstream os;
    os << group << "," << rat_str(c) << "," << m << "," << row.stratum << "," << row.count_w
       << "," << row.count_wa << "," << (row.in_support ? 1 : 0);
    out.push_back(os.str());
  }
  return out;
}

std::vector<BigInt> poincare_coeffs(const std::vector<int>& degrees) {
  std::vector<BigInt> p = {BigInt(1)};
  for (int d : degrees) {
    if (d < 1) throw ConfigError("invariant degrees must be positive");
    std::vector<BigInt> next(p.size() + size_t(d) - 1, BigInt(0));
    for (size_t i = 0; i < p.size(); ++i)
      for (int k = 0; k < d; ++k) next[i + size_t(k)] += p[i];
    p = std::move(next);
  }
  return p;
}

bool poly_divides(const std::vector<BigInt>& den, const std::vector<BigInt>& num) {
  if (den.empty() || den.back() == 0) throw ConfigError("division by zero polynomial");
  if (den.back() != 1) throw ConfigError("divisor must be monic");
  std::vector<BigInt> rem = num;
  while (rem.size() >= den.size()) {
    BigInt lead = rem.back();
    size_t shift = rem.size() - den.size();
    if (lead != 0)
      for (size_t i = 0; i < den.size(); ++i) rem[shift + i] -= lead * den[i];
    rem.pop_back();
  }
  for (const BigInt& r : rem)
    if (r != 0) return false;
  return true;
}

}  // namespace cmwork
