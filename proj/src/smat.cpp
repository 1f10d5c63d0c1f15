#include "cmwork/smat.hpp"

#include <utility>

#include "cmwork/errors.hpp"
#include "cmwork/rational.hpp"

namespace cmwork {

SMat SMat::identity(int n) {
  SMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

SMat operator*(const SMat& a, const SMat& b) {
  if (a.cols_ != b.rows_) throw MathError("matrix product shape mismatch");
  SMat r(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b.at(k, j);
        if (!bkj.is_zero()) r.at(i, j) = r.at(i, j) + aik * bkj;
      }
    }
  return r;
}

SMat operator+(const SMat& a, const SMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw MathError("matrix sum shape mismatch");
  SMat r(a.rows_, a.cols_);
  for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
  return r;
}

SMat operator-(const SMat& a, const SMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw MathError("matrix difference shape mismatch");
  SMat r(a.rows_, a.cols_);
  for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
  return r;
}

SMat SMat::times(const Scalar& s) const {
  SMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
  return r;
}

std::vector<Scalar> SMat::apply(const std::vector<Scalar>& v) const {
  if (int(v.size()) != cols_) throw MathError("matrix-vector shape mismatch");
  std::vector<Scalar> r(size_t(rows_), Scalar(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) r[size_t(i)] = r[size_t(i)] + at(i, j) * v[size_t(j)];
  return r;
}

SMat SMat::transpose() const {
  SMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Scalar SMat::trace() const {
  Scalar t(0);
  for (int i = 0; i < rows_ && i < cols_; ++i) t = t + at(i, i);
  return t;
}

// Reduce a copy to row echelon form; returns pivot columns.
static std::vector<int> echelonize(SMat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int sel = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
    Scalar inv = m.at(r, c).inverse();
    for (int j = c; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int SMat::rank() const {
  SMat m = *this;
  return int(echelonize(m).size());
}

std::vector<std::vector<Scalar>> SMat::nullspace() const {
  SMat m = *this;
  std::vector<int> pivots = echelonize(m);
  std::vector<bool> is_pivot(size_t(cols_), false);
  for (int c : pivots) is_pivot[size_t(c)] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[size_t(free)]) continue;
    std::vector<Scalar> v(size_t(cols_), Scalar(0));
    v[size_t(free)] = Scalar(1);
    for (size_t r = 0; r < pivots.size(); ++r)
      v[size_t(pivots[r])] = -m.at(int(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

SMat SMat::inverse() const {
  if (rows_ != cols_) throw MathError("inverse of non-square matrix");
  SMat aug(rows_, 2 * cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = Scalar(1);
  }
  std::vector<int> pivots = echelonize(aug);
  if (int(pivots.size()) != rows_ || pivots.back() >= cols_)
    throw MathError("matrix is singular");
  SMat r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = aug.at(i, cols_ + j);
  return r;
}

std::vector<Scalar> SMat::elementary_symmetric_eigen() const {
  if (rows_ != cols_) throw MathError("charpoly of non-square matrix");
  int n = rows_;
  // Faddeev-LeVerrier: det(lambda I - A) = sum_j c_j lambda^j with c_n = 1.
  std::vector<Scalar> c(size_t(n) + 1, Scalar(0));
  c[size_t(n)] = Scalar(1);
  SMat m = SMat::identity(n);
  for (int k = 1; k <= n; ++k) {
    SMat am = (*this) * m;
    Scalar ck = -(am.trace() / Scalar(long(k)));
    c[size_t(n - k)] = ck;
    m = am + SMat::identity(n).times(ck);
  }
  // e_k = (-1)^k c_{n-k}.
  std::vector<Scalar> e(size_t(n) + 1, Scalar(0));
  for (int k = 0; k <= n; ++k)
    e[size_t(k)] = (k % 2 == 0) ? c[size_t(n - k)] : -c[size_t(n - k)];
  return e;
}

std::string SMat::key() const {
  std::string s = std::to_string(rows_) + "x" + std::to_string(cols_) + ":";
  for (const Scalar& v : a_) {
    s += v.str();
    s += ",";
  }
  return s;
}

std::vector<std::vector<Scalar>> SMat::row_vectors() const {
  std::vector<std::vector<Scalar>> rows(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i) {
    rows[size_t(i)].reserve(size_t(cols_));
    for (int j = 0; j < cols_; ++j) rows[size_t(i)].push_back(at(i, j));
  }
  return rows;
}

/* ------------------------------------------------------------- mod-p rank */

namespace {

unsigned long pow_mod(unsigned long b, unsigned long e, unsigned long p) {
  unsigned long long r = 1, base = b % p;
  while (e) {
    if (e & 1) r = (__uint128_t(r) * base) % p;
    base = (__uint128_t(base) * base) % p;
    e >>= 1;
  }
  return static_cast<unsigned long>(r);
}

unsigned long inv_mod(unsigned long a, unsigned long p) {
  if (a % p == 0) throw MathError("prime divides a denominator in mod-p reduction");
  return pow_mod(a % p, p - 2, p);
}

unsigned long rational_mod(const Rational& q, unsigned long p) {
  unsigned long num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
  unsigned long den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
  return static_cast<unsigned long>((__uint128_t(num) * inv_mod(den, p)) % p);
}

}  // namespace

ModPReducer::ModPReducer(long radicand, unsigned long p) : p_(p), root_(0) {
  if (radicand != 1) {
    unsigned long dm = static_cast<unsigned long>(((radicand % long(p)) + long(p)) % long(p));
    bool found = false;
    for (unsigned long r = 0; r < p; ++r)
      if ((__uint128_t(r) * r) % p == dm) { root_ = r; found = true; break; }
    if (!found) throw MathError("radicand has no square root mod p; choose another prime");
  }
}

unsigned long ModPReducer::operator()(const Scalar& v) const {
  unsigned long x = rational_mod(v.rat_part(), p_);
  if (v.irr_part() != 0) {
    unsigned long y = rational_mod(v.irr_part(), p_);
    x = static_cast<unsigned long>((x + (__uint128_t(y) * root_) % p_) % p_);
  }
  return x;
}

int residue_rank_mod_p(std::vector<std::vector<unsigned long>>& a, unsigned long p) {
  if (a.empty()) return 0;
  int nrows = int(a.size()), ncols = int(a[0].size());
  int rank = 0;
  for (int c = 0; c < ncols && rank < nrows; ++c) {
    int sel = -1;
    for (int i = rank; i < nrows; ++i)
      if (a[size_t(i)][size_t(c)] != 0) { sel = i; break; }
    if (sel < 0) continue;
    std::swap(a[size_t(sel)], a[size_t(rank)]);
    unsigned long inv = inv_mod(a[size_t(rank)][size_t(c)], p);
    for (int j = c; j < ncols; ++j)
      a[size_t(rank)][size_t(j)] =
          static_cast<unsigned long>((__uint128_t(a[size_t(rank)][size_t(j)]) * inv) % p);
    for (int i = rank + 1; i < nrows; ++i) {
      unsigned long f = a[size_t(i)][size_t(c)];
      if (f == 0) continue;
      for (int j = c; j < ncols; ++j) {
        unsigned long sub =
            static_cast<unsigned long>((__uint128_t(f) * a[size_t(rank)][size_t(j)]) % p);
        a[size_t(i)][size_t(j)] = (a[size_t(i)][size_t(j)] + p - sub) % p;
      }
    }
    ++rank;
  }
  return rank;
}

int rank_mod_p(const SMat& m, unsigned long p) {
  long d = 1;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j).radicand() != 1) d = m.at(i, j).radicand();
  ModPReducer reduce(d, p);
  std::vector<std::vector<unsigned long>> a(size_t(m.rows()),
                                            std::vector<unsigned long>(size_t(m.cols()), 0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a[size_t(i)][size_t(j)] = reduce(m.at(i, j));
  return residue_rank_mod_p(a, p);
}

}  // namespace cmwork
