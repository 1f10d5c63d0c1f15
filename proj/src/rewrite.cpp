#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <utility>
#include <vector>

#include "cmwork/errors.hpp"
#include "cmwork/hecke.hpp"

namespace cmwork {

namespace {

constexpr double kPi = 3.14159265358979323846;

void add_term(std::map<std::vector<int>, Rational>& t, const std::vector<int>& e,
              const Rational& c) {
  auto it = t.find(e);
  if (it == t.end()) {
    if (!(c == Rational(0))) t.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second == Rational(0)) t.erase(it);
}

}  // namespace

Laurent::Laurent(const Rational& c, int nvars) : nv_(nvars) {
  if (!(c == Rational(0))) t_.emplace(std::vector<int>(size_t(nvars), 0), c);
}

Laurent Laurent::monomial(const Rational& c, const std::vector<int>& exps) {
  Laurent out;
  out.nv_ = int(exps.size());
  if (!(c == Rational(0))) out.t_.emplace(exps, c);
  return out;
}

Laurent Laurent::operator-() const {
  Laurent out;
  out.nv_ = nv_;
  for (const auto& [e, c] : t_) out.t_.emplace(e, -c);
  return out;
}

Laurent operator+(const Laurent& a, const Laurent& b) {
  if (a.nv_ != b.nv_ && !a.t_.empty() && !b.t_.empty())
    throw ConfigError("Laurent operands use different parameter rings");
  Laurent out;
  out.nv_ = a.t_.empty() ? b.nv_ : a.nv_;
  out.t_ = a.t_;
  for (const auto& [e, c] : b.t_) add_term(out.t_, e, c);
  return out;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  if (a.nv_ != b.nv_ && !a.t_.empty() && !b.t_.empty())
    throw ConfigError("Laurent operands use different parameter rings");
  Laurent out;
  out.nv_ = a.t_.empty() ? b.nv_ : a.nv_;
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) {
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      add_term(out.t_, e, ca * cb);
    }
  return out;
}

Laurent Laurent::inverse() const {
  if (t_.size() != 1) throw MathError("only monomials are invertible in the Laurent ring");
  const auto& [e, c] = *t_.begin();
  std::vector<int> ne(e.size());
  for (size_t i = 0; i < e.size(); ++i) ne[i] = -e[i];
  return monomial(Rational(1) / c, ne);
}

std::complex<double> Laurent::eval(const std::vector<std::complex<double>>& vals) const {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [e, c] : t_) {
    std::complex<double> term(c.get_d(), 0.0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      term *= std::pow(vals[i], e[i]);
    }
    acc += term;
  }
  return acc;
}

Rewriter::Rewriter(const ReflectionGroup& W, long move_cap) : W_(&W), move_cap_(move_cap) {
  if (W.cyclic()) throw ConfigError("rewriting needs a real reflection group");
  if (W.order() > 48) throw ConfigError("rewriting is limited to groups of order <= 48");
  int r = W.num_generators();
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      // Order of s_i s_j.
      int a = W.mult(W.generator(i), W.generator(j));
      int m = 1, e = a;
      while (e != 0) {
        e = W.mult(e, a);
        ++m;
      }
      order_[{i, j}] = m;
      block_offset_[{i, j}] = nvars_;
      nvars_ += m;
    }
}

int Rewriter::pair_order(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = order_.find({i, j});
  if (it == order_.end()) throw ConfigError("not a generator pair");
  return it->second;
}

int Rewriter::param_index(int i, int j, int k) const {
  if (i >= j) throw ConfigError("param_index expects i < j");
  auto it = block_offset_.find({i, j});
  if (it == block_offset_.end()) throw ConfigError("not a generator pair");
  int m = order_.at({i, j});
  if (k < 1 || k > m) throw ConfigError("parameter label out of range");
  return it->second + (k - 1);
}

Laurent Rewriter::twist(const Laurent& c) const {
  // t_{ij,k} -> t_{ji,k} = t_{ij, m-k mod m}^{-1}, blockwise on exponents.
  std::map<std::vector<int>, Rational> out;
  for (const auto& [e, coef] : c.terms()) {
    std::vector<int> ne(e.size(), 0);
    for (const auto& [pair, off] : block_offset_) {
      int m = order_.at(pair);
      for (int k = 1; k <= m; ++k) {
        int kk = (m - k) % m == 0 ? m : (m - k) % m;
        ne[size_t(off + kk - 1)] = -e[size_t(off + k - 1)];
      }
    }
    out.emplace(std::move(ne), coef);
  }
  Laurent r = Laurent(Rational(0), nvars_);
  for (const auto& [e, coef] : out) r = r + Laurent::monomial(coef, e);
  return r;
}

// Laurent monomial for t_{ab,k} with either ordering of (a, b).
static Laurent t_monomial(const std::map<std::pair<int, int>, int>& offsets,
                          const std::map<std::pair<int, int>, int>& orders, int nvars, int a,
                          int b, int k) {
  std::vector<int> e(size_t(nvars), 0);
  if (a < b) {
    e[size_t(offsets.at({a, b}) + k - 1)] = 1;
  } else {
    int m = orders.at({b, a});
    int kk = (m - k) % m == 0 ? m : (m - k) % m;
    e[size_t(offsets.at({b, a}) + kk - 1)] = -1;
  }
  return Laurent::monomial(Rational(1), e);
}

const Rewriter::Move& Rewriter::move_for(int from, int to) {
  auto key = std::make_pair(from, to);
  auto it = moves_cache_.find(key);
  if (it != moves_cache_.end()) return it->second;

  int m = pair_order(from, to);
  // Work with a = s_to s_from, so the defining relation
  //   sum_r gamma_r a^r = 0, gamma_r = (-1)^(m-r) e_{m-r}(t_{to,from,1..m}),
  // rewrites the alternating word of length m starting with `from`.
  std::vector<Laurent> elem(size_t(m) + 1, Laurent(Rational(0), nvars_));
  elem[0] = Laurent(Rational(1), nvars_);
  for (int k = 1; k <= m; ++k) {
    Laurent tk = t_monomial(block_offset_, order_, nvars_, to, from, k);
    for (int d = std::min(k, m); d >= 1; --d) elem[size_t(d)] = elem[size_t(d)] + tk * elem[size_t(d) - 1];
  }
  auto gamma = [&](int r) {
    Laurent g = elem[size_t(m - r)];
    return (m - r) % 2 == 0 ? g : -g;
  };

  auto alt_word = [](int first, int second, int len) {
    std::vector<int> w;
    for (int p = 0; p < len; ++p) w.push_back(p % 2 == 0 ? first : second);
    return w;
  };

  Move mv;
  if (m % 2 == 0) {
    // Multiply the relation by a^{-m/2} on the right:
    //   alt_from^m = sum_{r=1}^{m} (-gamma_r gamma_0^{-1}) a^{r - m/2}.
    int l = m / 2;
    Laurent g0inv = gamma(0).inverse();
    for (int r = 1; r <= m; ++r) {
      int u = r - l;
      std::vector<int> w;
      if (u > 0)
        w = alt_word(to, from, 2 * u);
      else if (u < 0)
        w = alt_word(from, to, -2 * u);
      Laurent c = -(gamma(r) * g0inv);
      if (!c.is_zero()) mv.pieces.emplace_back(std::move(w), std::move(c));
    }
  } else {
    // Multiply by s_from on the left and a^{-(m+1)/2} on the right; the
    // left factor twists every coefficient once:
    //   alt_from^m = sum_{r=0}^{m-1} (-twist(gamma_r)) piece(r - (m+1)/2).
    int l = (m - 1) / 2;
    for (int r = 0; r <= m - 1; ++r) {
      int u = r - l - 1;
      std::vector<int> w;
      if (u >= 0) {
        w.push_back(from);
        for (int p = 0; p < u; ++p) {
          w.push_back(to);
          w.push_back(from);
        }
      } else {
        w = alt_word(to, from, 2 * (-u) - 1);
      }
      Laurent c = -twist(gamma(r));
      if (!c.is_zero()) mv.pieces.emplace_back(std::move(w), std::move(c));
    }
  }
  return moves_cache_.emplace(key, std::move(mv)).first->second;
}

int Rewriter::eval_word(const std::vector<int>& word) const {
  int e = 0;
  for (int letter : word) e = W_->right_mult_gen(e, letter);
  return e;
}

void Rewriter::charge_move() {
  if (++moves_ > move_cap_)
    throw MoveCapExceeded("rewriting move budget exhausted; finite-type rewriting must terminate");
}

namespace {

// Braid-move neighbors of a word: every alternating run of exact length
// m_{fg} replaced by the run starting with the other letter.
std::vector<std::pair<size_t, std::vector<int>>> braid_neighbors(
    const std::vector<int>& w, const std::map<std::pair<int, int>, int>& orders) {
  std::vector<std::pair<size_t, std::vector<int>>> out;  // (position, new word)
  for (size_t p = 0; p < w.size(); ++p) {
    if (p + 1 >= w.size()) break;
    int f = w[p], g = w[p + 1];
    if (f == g) continue;
    auto key = f < g ? std::make_pair(f, g) : std::make_pair(g, f);
    auto it = orders.find(key);
    if (it == orders.end()) continue;
    int m = it->second;
    if (p + size_t(m) > w.size()) continue;
    bool alt = true;
    for (int d = 0; d < m; ++d)
      if (w[p + size_t(d)] != (d % 2 == 0 ? f : g)) {
        alt = false;
        break;
      }
    if (!alt) continue;
    std::vector<int> nw = w;
    for (int d = 0; d < m; ++d) nw[p + size_t(d)] = d % 2 == 0 ? g : f;
    out.emplace_back(p, std::move(nw));
  }
  return out;
}

// First braid move along a shortest path from `start` to `target` in the
// graph of reduced words connected by classical braid moves.
std::pair<size_t, std::pair<int, int>> first_move_on_path(
    const std::vector<int>& start, const std::vector<int>& target,
    const std::map<std::pair<int, int>, int>& orders) {
  std::map<std::vector<int>, std::vector<int>> parent;  // word -> predecessor
  std::deque<std::vector<int>> queue{start};
  parent[start] = start;
  while (!queue.empty()) {
    std::vector<int> cur = queue.front();
    queue.pop_front();
    if (cur == target) break;
    for (auto& [pos, nw] : braid_neighbors(cur, orders)) {
      (void)pos;
      if (parent.count(nw)) continue;
      parent[nw] = cur;
      queue.push_back(nw);
    }
  }
  if (!parent.count(target))
    throw MathError("reduced words of one element must be braid-connected");
  // Walk back from target to the word right after start.
  std::vector<int> step = target;
  while (parent[step] != start) step = parent[step];
  // Identify the move start -> step.
  for (auto& [pos, nw] : braid_neighbors(start, orders))
    if (nw == step) return {pos, {start[pos], nw[pos]}};
  throw MathError("braid path reconstruction failed");
}

}  // namespace

const NormalForm& Rewriter::canonicalize(const std::vector<int>& word) {
  auto found = memo_.find(word);
  if (found != memo_.end()) return found->second;

  NormalForm nf;

  // Quadratic move: squares vanish (s^2 = 1), shortening the word by two.
  bool squared = false;
  for (size_t p = 0; p + 1 < word.size(); ++p)
    if (word[p] == word[p + 1]) {
      charge_move();
      std::vector<int> shorter;
      shorter.reserve(word.size() - 2);
      for (size_t k = 0; k < word.size(); ++k)
        if (k != p && k != p + 1) shorter.push_back(word[k]);
      nf = canonicalize(shorter);
      squared = true;
      break;
    }

  if (!squared) {
    int x = eval_word(word);
    std::vector<int> prefix;
    int prefix_end_letter = -1;
    size_t suffix_from = 0;
    std::vector<int> target;

    if (int(word.size()) == W_->length(x)) {
      if (word == W_->word(x)) {
        NormalForm unit;
        unit.coeff.emplace(x, Laurent(Rational(1), nvars_));
        return memo_.emplace(word, std::move(unit)).first->second;
      }
      // Reduced but not canonical: braid along a shortest path to w(x).
      prefix = word;
      suffix_from = word.size();
      target = W_->word(x);
    } else {
      // Non-reduced: find the first prefix drop and steer its last letter.
      int e = 0;
      size_t j = 0;
      for (; j < word.size(); ++j) {
        int en = W_->right_mult_gen(e, word[j]);
        if (W_->length(en) < W_->length(e)) break;
        e = en;
      }
      prefix.assign(word.begin(), word.begin() + long(j));
      prefix_end_letter = word[j];
      suffix_from = j;
      // A reduced word of the prefix element ending with word[j]: canonical
      // word of (prefix element * s_j) followed by that letter.
      int shorter_elem = W_->right_mult_gen(e, word[j]);
      target = W_->word(shorter_elem);
      target.push_back(word[j]);
      (void)prefix_end_letter;
    }

    auto [pos, letters] = first_move_on_path(prefix, target, order_);
    const Move& mv = move_for(letters.first, letters.second);
    int m = pair_order(letters.first, letters.second);
    charge_move();

    for (const auto& [piece, coef] : mv.pieces) {
      std::vector<int> nw;
      nw.reserve(word.size() - size_t(m) + piece.size());
      nw.insert(nw.end(), word.begin(), word.begin() + long(pos));
      nw.insert(nw.end(), piece.begin(), piece.end());
      nw.insert(nw.end(), word.begin() + long(pos) + m, word.end());
      // Moving the relation's coefficients past the prefix twists them once
      // per crossed generator.
      Laurent c = pos % 2 == 0 ? coef : twist(coef);
      const NormalForm& sub = canonicalize(nw);
      for (const auto& [elem, sc] : sub.coeff) {
        Laurent add = c * sc;
        auto it = nf.coeff.find(elem);
        if (it == nf.coeff.end())
          nf.coeff.emplace(elem, std::move(add));
        else {
          it->second = it->second + add;
          if (it->second.is_zero()) nf.coeff.erase(it);
        }
      }
    }
    (void)suffix_from;
  }

  return memo_.emplace(word, std::move(nf)).first->second;
}

NormalForm Rewriter::rewrite(const std::vector<int>& word) {
  for (int letter : word)
    if (letter < 0 || letter >= W_->num_generators())
      throw ConfigError("word contains an out-of-range generator index");
  return canonicalize(word);
}

std::complex<double> Rewriter::classical_value(const Laurent& c) const {
  std::vector<std::complex<double>> vals(static_cast<size_t>(nvars_));
  for (const auto& [pair, off] : block_offset_) {
    int m = order_.at(pair);
    for (int k = 1; k <= m; ++k)
      vals[size_t(off + k - 1)] =
          std::complex<double>(std::cos(2.0 * kPi * k / m), std::sin(2.0 * kPi * k / m));
  }
  return c.eval(vals);
}

ClassicalCheckReport classical_multiplication_check(const ReflectionGroup& W, double tol,
                                                    long move_cap) {
  if (W.order() > 24) throw ConfigError("exhaustive pair check is limited to |W| <= 24");
  Rewriter rw(W, move_cap);
  ClassicalCheckReport rep;
  rep.group = W.name();
  for (int x = 0; x < W.order(); ++x)
    for (int y = 0; y < W.order(); ++y) {
      std::vector<int> word = W.word(x);
      const std::vector<int>& wy = W.word(y);
      word.insert(word.end(), wy.begin(), wy.end());
      NormalForm nf = rw.rewrite(word);
      int expect = W.mult(x, y);
      bool saw_expected = false;
      for (const auto& [elem, c] : nf.coeff) {
        std::complex<double> v = rw.classical_value(c);
        double want = elem == expect ? 1.0 : 0.0;
        if (elem == expect) saw_expected = true;
        rep.max_err = std::max(rep.max_err, std::abs(v - std::complex<double>(want, 0.0)));
      }
      if (!saw_expected) rep.max_err = std::max(rep.max_err, 1.0);
      ++rep.pairs;
    }
  rep.moves = rw.moves_used();
  rep.pass = rep.max_err <= tol;
  return rep;
}

}  // namespace cmwork
