#include "cmwork/group.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "cmwork/errors.hpp"

namespace cmwork {

/* -------------------------------------------------------------- GroupSpec */

GroupSpec GroupSpec::parse(const std::string& label) {
  auto bad = [&]() -> GroupSpec {
    throw ConfigError("unrecognized group label: " + label);
  };
  if (label.rfind("I2(", 0) == 0 && label.back() == ')') {
    int m = 0;
    try {
      m = std::stoi(label.substr(3, label.size() - 4));
    } catch (...) {
      return bad();
    }
    if (m != 3 && m != 4 && m != 6)
      throw UnsupportedType("I2(m) supported for m in {3,4,6}, got " + label);
    return {Family::I2, m};
  }
  if (label.rfind("Zm:", 0) == 0) {
    int m = 0;
    try {
      m = std::stoi(label.substr(3));
    } catch (...) {
      return bad();
    }
    if (m < 2) throw UnsupportedType("cyclic group needs order >= 2");
    return {Family::Cyclic, m};
  }
  if (label.size() >= 2 && (label[0] == 'A' || label[0] == 'B' || label[0] == 'D')) {
    int n = 0;
    try {
      n = std::stoi(label.substr(1));
    } catch (...) {
      return bad();
    }
    Family f = label[0] == 'A' ? Family::A : (label[0] == 'B' ? Family::B : Family::D);
    if (n < 1 || (f == Family::D && n < 3))
      throw UnsupportedType("rank out of range for " + label);
    return {f, n};
  }
  return bad();
}

std::string GroupSpec::str() const {
  switch (family) {
    case Family::A: return "A" + std::to_string(n);
    case Family::B: return "B" + std::to_string(n);
    case Family::D: return "D" + std::to_string(n);
    case Family::I2: return "I2(" + std::to_string(n) + ")";
    case Family::Cyclic: return "Zm:" + std::to_string(n);
  }
  return "?";
}

/* ------------------------------------------------------- generator builds */

namespace {

SMat permutation_swap(int n, int i, int j) {
  SMat m = SMat::identity(n);
  m.at(i, i) = Scalar(0);
  m.at(j, j) = Scalar(0);
  m.at(i, j) = Scalar(1);
  m.at(j, i) = Scalar(1);
  return m;
}

// Reflection across the line at angle phi, from exact (cos 2phi, sin 2phi).
SMat line_reflection(const Scalar& c2, const Scalar& s2) {
  SMat m(2, 2);
  m.at(0, 0) = c2;
  m.at(0, 1) = s2;
  m.at(1, 0) = s2;
  m.at(1, 1) = -c2;
  return m;
}

}  // namespace

ReflectionGroup ReflectionGroup::build(const std::string& label) {
  return build(GroupSpec::parse(label));
}

ReflectionGroup ReflectionGroup::build(const GroupSpec& spec) {
  ReflectionGroup g;
  g.name_ = spec.str();
  if (spec.family == GroupSpec::Family::Cyclic) {
    g.cyclic_ = true;
    g.cyclic_m_ = spec.n;
    g.dim_ = 1;
    return g;
  }
  std::vector<SMat> gens;
  switch (spec.family) {
    case GroupSpec::Family::A: {
      int n = spec.n + 1;  // S_{n} permuting coordinates of C^n
      g.dim_ = n;
      for (int i = 0; i + 1 < n; ++i) gens.push_back(permutation_swap(n, i, i + 1));
      break;
    }
    case GroupSpec::Family::B: {
      int n = spec.n;
      g.dim_ = n;
      for (int i = 0; i + 1 < n; ++i) gens.push_back(permutation_swap(n, i, i + 1));
      SMat sign = SMat::identity(n);
      sign.at(n - 1, n - 1) = Scalar(-1);
      gens.push_back(sign);
      break;
    }
    case GroupSpec::Family::D: {
      int n = spec.n;
      g.dim_ = n;
      for (int i = 0; i + 1 < n; ++i) gens.push_back(permutation_swap(n, i, i + 1));
      SMat d = SMat::identity(n);
      d.at(n - 2, n - 2) = Scalar(0);
      d.at(n - 1, n - 1) = Scalar(0);
      d.at(n - 2, n - 1) = Scalar(-1);
      d.at(n - 1, n - 2) = Scalar(-1);
      gens.push_back(d);
      break;
    }
    case GroupSpec::Family::I2: {
      g.dim_ = 2;
      int m = spec.n;
      if (m == 4) {
        // Mirrors on the x-axis and the diagonal; everything in Q(sqrt 2).
        gens.push_back(line_reflection(Scalar(1), Scalar(0)));
        gens.push_back(line_reflection(Scalar(0), Scalar(1)));
      } else {
        // Mirrors at pi/12 and pi/12 + pi/m, chosen so that cos/sin of the
        // doubled angles -- and hence every matrix entry and every
        // normalized root -- stay inside Q(sqrt 3).
        Scalar half = Scalar(Rational(1, 2));
        Scalar half_rt3 = Scalar::sqrt_of(3) * half;   // cos(pi/6)
        SMat s1 = line_reflection(half_rt3, half);     // 2*phi1 = pi/6
        if (m == 3) {
          // 2*phi2 = 5*pi/6.
          gens.push_back(s1);
          gens.push_back(line_reflection(-half_rt3, half));
        } else {
          // m = 6: 2*phi2 = pi/2.
          gens.push_back(s1);
          gens.push_back(line_reflection(Scalar(0), Scalar(1)));
        }
      }
      break;
    }
    case GroupSpec::Family::Cyclic:
      break;  // handled above
  }
  g.bfs_build(gens, 1000000);
  g.find_reflections();
  return g;
}

ReflectionGroup ReflectionGroup::from_generator_matrices(const std::string& name, int dim,
                                                         const std::vector<SMat>& gens) {
  ReflectionGroup g;
  g.name_ = name;
  g.dim_ = dim;
  g.bfs_build(gens, 1000000);
  g.find_reflections();
  return g;
}

/* -------------------------------------------------------------- BFS build */

void ReflectionGroup::bfs_build(const std::vector<SMat>& gen_mats, long order_cap) {
  int r = int(gen_mats.size());
  std::unordered_map<std::string, int> index;
  elems_.push_back(SMat::identity(dim_));
  words_.push_back({});
  rmul_.push_back(std::vector<int>(size_t(r), -1));
  index.emplace(elems_[0].key(), 0);

  // FIFO expansion with children in generator order makes the first word
  // found for each element its lexicographically minimal reduced word.
  for (size_t head = 0; head < elems_.size(); ++head) {
    for (int i = 0; i < r; ++i) {
      if (rmul_[head][size_t(i)] >= 0) continue;
      SMat prod = elems_[head] * gen_mats[size_t(i)];
      std::string key = prod.key();
      auto it = index.find(key);
      int idx;
      if (it == index.end()) {
        idx = int(elems_.size());
        if (idx >= order_cap) throw OrderCapExceeded("group order exceeds cap");
        index.emplace(std::move(key), idx);
        elems_.push_back(std::move(prod));
        std::vector<int> w = words_[head];
        w.push_back(i);
        words_.push_back(std::move(w));
        rmul_.push_back(std::vector<int>(size_t(r), -1));
      } else {
        idx = it->second;
      }
      rmul_[head][size_t(i)] = idx;
    }
  }
  gens_.resize(size_t(r));
  for (int i = 0; i < r; ++i) gens_[size_t(i)] = rmul_[0][size_t(i)];

  inv_.assign(elems_.size(), 0);
  for (size_t e = 0; e < elems_.size(); ++e) {
    int cur = 0;
    const auto& w = words_[e];
    for (auto it = w.rbegin(); it != w.rend(); ++it) cur = rmul_[size_t(cur)][size_t(*it)];
    inv_[e] = cur;
  }
}

const SMat& ReflectionGroup::matrix(int e) const {
  if (cyclic_) throw UnsupportedType("cyclic group is stored symbolically; no matrices");
  return elems_[size_t(e)];
}

int ReflectionGroup::mult(int a, int b) const {
  int cur = a;
  for (int i : words_[size_t(b)]) cur = rmul_[size_t(cur)][size_t(i)];
  return cur;
}

/* ------------------------------------------------------------ reflections */

void ReflectionGroup::find_reflections() {
  refl_class_of_.assign(elems_.size(), -1);
  long field_d = 1;
  for (const SMat& m : elems_)
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        if (m.at(i, j).radicand() != 1) field_d = m.at(i, j).radicand();
  if (name_.rfind("B", 0) == 0 || name_ == "I2(4)") field_d = 2;

  std::vector<int> refl_elems;
  std::vector<std::vector<Scalar>> roots;
  for (int e = 1; e < order(); ++e) {
    if (mult(e, e) != 0) continue;  // not an involution
    SMat fix = elems_[size_t(e)] - SMat::identity(dim_);
    auto fixed = fix.nullspace();
    if (int(fixed.size()) != dim_ - 1) continue;
    SMat neg = elems_[size_t(e)] + SMat::identity(dim_);
    auto lines = neg.nullspace();
    if (lines.size() != 1) continue;
    std::vector<Scalar> alpha = lines[0];
    Scalar norm2 = dot(alpha, alpha);
    Scalar factor = Scalar(2) / norm2;
    std::optional<Scalar> root_factor = scalar_sqrt(factor);
    if (!root_factor && factor.is_rational())
      for (long dd : {field_d, 2L, 3L}) {
        root_factor = scalar_sqrt_in_field(factor, dd);
        if (root_factor) break;
      }
    if (!root_factor)
      throw MathError("cannot normalize root inside the realization field");
    for (Scalar& x : alpha) x = x * (*root_factor);
    for (Scalar& x : alpha)
      if (!x.is_zero()) {
        if (x.sign() < 0)
          for (Scalar& y : alpha) y = -y;
        break;
      }
    refl_elems.push_back(e);
    roots.push_back(std::move(alpha));
  }

  // Conjugacy classes among reflections: orbit closure under conjugation by
  // the generators.
  std::set<int> refl_set(refl_elems.begin(), refl_elems.end());
  int next_class = 0;
  for (int e : refl_elems) {
    if (refl_class_of_[size_t(e)] >= 0) continue;
    std::deque<int> queue{e};
    refl_class_of_[size_t(e)] = next_class;
    while (!queue.empty()) {
      int t = queue.front();
      queue.pop_front();
      for (int gi = 0; gi < num_generators(); ++gi) {
        int s = gens_[size_t(gi)];
        int conj = mult(mult(s, t), s);
        if (refl_class_of_[size_t(conj)] < 0) {
          refl_class_of_[size_t(conj)] = next_class;
          queue.push_back(conj);
        }
      }
    }
    ++next_class;
  }
  refl_classes_ = next_class;

  refl_.resize(refl_elems.size());
  for (size_t i = 0; i < refl_elems.size(); ++i)
    refl_[i] = Reflection{refl_elems[i], roots[i], refl_class_of_[size_t(refl_elems[i])]};
}

int ReflectionGroup::reflection_class_of(int e) const {
  return refl_class_of_.empty() ? -1 : refl_class_of_[size_t(e)];
}

/* ----------------------------------------------------------------- action */

std::vector<Scalar> ReflectionGroup::act(int e, const std::vector<Scalar>& v) const {
  return matrix(e).apply(v);
}

MPoly ReflectionGroup::act_poly(int e, const MPoly& f) const {
  return f.substitute_linear(matrix(inverse(e)).row_vectors(), dim_);
}

/* ---------------------------------------------------------------- degrees */

std::vector<long long> ReflectionGroup::length_census() const {
  if (cyclic_)
    throw UnsupportedType("length census undefined for the symbolic cyclic group");
  size_t max_len = 0;
  for (const auto& w : words_) max_len = std::max(max_len, w.size());
  std::vector<long long> census(max_len + 1, 0);
  for (const auto& w : words_) ++census[w.size()];
  return census;
}

namespace {

// Exact division by [d]_q = 1 + q + ... + q^{d-1}; nullopt when not exact.
std::optional<std::vector<long long>> div_q_integer(const std::vector<long long>& a, int d) {
  if (int(a.size()) < d) return std::nullopt;
  std::vector<long long> rem = a;
  std::vector<long long> q(a.size() - size_t(d) + 1, 0);
  for (size_t k = q.size(); k-- > 0;) {
    long long c = rem[k + size_t(d) - 1];
    q[k] = c;
    if (c != 0)
      for (int j = 0; j < d; ++j) rem[k + size_t(j)] -= c;
  }
  for (long long c : rem)
    if (c != 0) return std::nullopt;
  return q;
}

bool is_unit_poly(const std::vector<long long>& p) {
  if (p.empty() || p[0] != 1) return false;
  for (size_t k = 1; k < p.size(); ++k)
    if (p[k] != 0) return false;
  return true;
}

// Smallest-first iterated division with backtracking: try d ascending, divide
// exactly, recurse on the quotient, undo on dead ends.
bool search_degrees(const std::vector<long long>& poly, int min_d, long long remaining,
                    std::vector<int>& acc, std::vector<int>& out) {
  if (is_unit_poly(poly)) {
    if (remaining != 1) return false;
    out = acc;
    return true;
  }
  for (long long d = min_d; d <= static_cast<long long>(poly.size()); ++d) {
    if (remaining % d != 0) continue;
    auto q = div_q_integer(poly, int(d));
    if (!q) continue;
    acc.push_back(int(d));
    if (search_degrees(*q, int(d), remaining / d, acc, out)) return true;
    acc.pop_back();
  }
  return false;
}

}  // namespace

std::vector<int> degrees_from_census(const std::vector<long long>& census,
                                     long long group_order) {
  if (group_order == 1) return {};
  std::vector<int> acc, out;
  if (!search_degrees(census, 2, group_order, acc, out))
    throw FactorizationFailed("length census is not a product of q-integers");
  long long prod = 1;
  for (int d : out) prod *= d;
  if (prod != group_order)
    throw FactorizationFailed("degree product does not match group order");
  return out;
}

std::vector<int> ReflectionGroup::degrees() const {
  if (cyclic_) return {cyclic_m_};
  return degrees_from_census(length_census(), order());
}

/* -------------------------------------------------------------- subgroups */

std::vector<int> ReflectionGroup::subgroup_from_generators(const std::vector<int>& gens) const {
  std::set<int> seen{0};
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int e = queue.front();
    queue.pop_front();
    for (int g : gens) {
      int p = mult(e, g);
      if (seen.insert(p).second) queue.push_back(p);
    }
  }
  return std::vector<int>(seen.begin(), seen.end());
}

std::vector<int> ReflectionGroup::stabilizer(const std::vector<Scalar>& a) const {
  std::vector<int> out;
  for (int e = 0; e < order(); ++e)
    if (act(e, a) == a) out.push_back(e);
  return out;
}

ReflectionGroup ReflectionGroup::stabilizer_group(const std::vector<Scalar>& a) const {
  std::vector<int> elems = stabilizer(a);
  std::vector<int> refl_in;
  std::vector<SMat> gen_mats;
  for (int e : elems)
    if (e != 0 && reflection_class_of(e) >= 0) {
      refl_in.push_back(e);
      gen_mats.push_back(matrix(e));
    }
  std::vector<int> closure = subgroup_from_generators(refl_in);
  if (closure.size() != elems.size())
    throw MathError("stabilizer is not generated by its reflections");
  return from_generator_matrices(name_ + "-stab", dim_, gen_mats);
}

namespace {

// Truncated power series over Scalar.
using Series = std::vector<Scalar>;

// 1 / det(I - qM) to the given truncation, from elementary symmetric e_k.
Series inv_det_series(const std::vector<Scalar>& e, size_t trunc) {
  // det(I - qM) = sum_k (-1)^k e_k q^k.
  std::vector<Scalar> d(e.size());
  for (size_t k = 0; k < e.size(); ++k) d[k] = (k % 2 == 0) ? e[k] : -e[k];
  Series inv(trunc, Scalar(0));
  inv[0] = Scalar(1);
  for (size_t k = 1; k < trunc; ++k) {
    Scalar s(0);
    for (size_t j = 1; j < d.size() && j <= k; ++j) s = s + d[j] * inv[k - j];
    inv[k] = -s;
  }
  return inv;
}

void mul_by_one_minus_qd(Series& s, size_t d) {
  for (size_t k = s.size(); k-- > d;) s[k] = s[k] - s[k - d];
}

}  // namespace

std::vector<int> ReflectionGroup::subgroup_degrees_molien(const std::vector<int>& elems) const {
  int refl_count = 0;
  for (int e : elems)
    if (e != 0 && reflection_class_of(e) >= 0) ++refl_count;
  size_t trunc = size_t(refl_count + dim_ + 2);
  Series total(trunc, Scalar(0));
  for (int e : elems) {
    Series s = inv_det_series(matrix(e).elementary_symmetric_eigen(), trunc);
    for (size_t k = 0; k < trunc; ++k) total[k] = total[k] + s[k];
  }
  Scalar inv_order = Scalar(long(elems.size())).inverse();
  for (Scalar& v : total) v = v * inv_order;

  std::vector<int> degs;
  for (int extracted = 0; extracted < dim_; ++extracted) {
    size_t low = 0;
    for (size_t k = 1; k < trunc; ++k)
      if (!total[k].is_zero()) { low = k; break; }
    if (low == 0) throw FactorizationFailed("Molien series terminated early");
    mul_by_one_minus_qd(total, low);
    degs.push_back(int(low));
  }
  for (size_t k = 1; k < trunc; ++k)
    if (!total[k].is_zero())
      throw FactorizationFailed("Molien series is not a product of 1/(1-q^d)");
  std::vector<int> out;
  for (int d : degs)
    if (d > 1) out.push_back(d);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> ReflectionGroup::degrees_molien() const {
  std::vector<int> all(static_cast<size_t>(order()));
  for (int e = 0; e < order(); ++e) all[size_t(e)] = e;
  return subgroup_degrees_molien(all);
}

}  // namespace cmwork
