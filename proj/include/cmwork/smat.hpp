#pragma once

#include <string>
#include <vector>

#include "cmwork/scalar.hpp"

namespace cmwork {

// Dense matrix over Scalar (exact Q(sqrt d) entries), row-major.
// Sized for reflection-group realizations and small Gram blocks, so all
// algorithms are straightforward exact Gaussian elimination.
class SMat {
 public:
  SMat() : rows_(0), cols_(0) {}
  SMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols), Scalar(0)) {}

  static SMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int r, int c) { return a_[size_t(r) * size_t(cols_) + size_t(c)]; }
  const Scalar& at(int r, int c) const { return a_[size_t(r) * size_t(cols_) + size_t(c)]; }

  friend SMat operator*(const SMat& a, const SMat& b);
  friend SMat operator+(const SMat& a, const SMat& b);
  friend SMat operator-(const SMat& a, const SMat& b);
  SMat times(const Scalar& s) const;
  friend bool operator==(const SMat& a, const SMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const SMat& a, const SMat& b) { return !(a == b); }

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
  SMat transpose() const;
  Scalar trace() const;

  int rank() const;
  // Basis of the right nullspace {v : Mv = 0}.
  std::vector<std::vector<Scalar>> nullspace() const;
  SMat inverse() const;  // throws MathError if singular

  // e_0..e_n with det(I - q M) = sum_k (-1)^k e_k q^k (elementary symmetric
  // functions of the eigenvalues), by the Faddeev-LeVerrier recurrence.
  std::vector<Scalar> elementary_symmetric_eigen() const;

  // Canonical content key, used to deduplicate group elements.
  std::string key() const;

  // Extract row vectors (for MPoly::substitute_linear).
  std::vector<std::vector<Scalar>> row_vectors() const;

 private:
  int rows_, cols_;
  std::vector<Scalar> a_;
};

// Reduction of exact scalars a+b*sqrt(d) modulo the prime p, sending
// sqrt(d) to a fixed square root of d mod p.  Throws MathError when p
// divides a denominator or d has no square root mod p (pick another prime).
class ModPReducer {
 public:
  ModPReducer(long radicand, unsigned long p);
  unsigned long operator()(const Scalar& v) const;
  unsigned long prime() const { return p_; }

 private:
  unsigned long p_, root_;
};

// Row rank of a residue matrix mod p (rows reduced in place).
int residue_rank_mod_p(std::vector<std::vector<unsigned long>>& a, unsigned long p);

// Exact rank of a matrix reduced modulo the prime p.  Entries a+b*sqrt(d)
// map to residues via a square root of d mod p; throws MathError when p
// divides a denominator or d has no square root mod p (pick another prime).
int rank_mod_p(const SMat& m, unsigned long p);

}  // namespace cmwork
