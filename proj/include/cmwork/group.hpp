#pragma once

#include <string>
#include <vector>

#include "cmwork/mpoly.hpp"
#include "cmwork/smat.hpp"

namespace cmwork {

// Parsed group label: "A3", "B2", "D4", "I2(6)", "Zm:5".
struct GroupSpec {
  enum class Family { A, B, D, I2, Cyclic };
  Family family;
  int n;  // rank for A/B/D, the m of I2(m), or the order of the cyclic group

  static GroupSpec parse(const std::string& label);
  std::string str() const;
};

struct Reflection {
  int elem;                   // element index
  std::vector<Scalar> alpha;  // root with (alpha,alpha) = 2, sign-canonical
  int cls;                    // conjugacy-class index among reflections
};

// Finite real reflection group with an exact matrix realization:
//   A{n-1} as coordinate permutations of C^n (n >= 2),
//   B{n}   as signed permutations (field Q(sqrt2), short roots scaled);
//          B1 is the rank-one sign group x -> -x,
//   D{n}   as even signed permutations,
//   I2(m)  for m in {3,4,6}, realized so all entries lie in one Q(sqrt d).
// "Zm:m" builds a rank-one cyclic group stored symbolically (no matrices).
// Elements are indexed 0..order-1 with 0 = identity; each element carries its
// lexicographically minimal reduced word in the generators.
class ReflectionGroup {
 public:
  static ReflectionGroup build(const std::string& label);
  static ReflectionGroup build(const GroupSpec& spec);
  // Group generated by explicit reflection matrices (used for parabolic
  // subgroups); words/lengths are relative to the given generators.
  static ReflectionGroup from_generator_matrices(const std::string& name, int dim,
                                                 const std::vector<SMat>& gens);

  const std::string& name() const { return name_; }
  bool cyclic() const { return cyclic_; }
  int cyclic_order() const { return cyclic_m_; }

  int order() const { return cyclic_ ? cyclic_m_ : int(elems_.size()); }
  int dim() const { return dim_; }
  int num_generators() const { return int(gens_.size()); }
  int generator(int i) const { return gens_[size_t(i)]; }

  const SMat& matrix(int e) const;
  int right_mult_gen(int e, int i) const { return rmul_[size_t(e)][size_t(i)]; }
  int mult(int a, int b) const;  // index of a*b
  int inverse(int e) const { return inv_[size_t(e)]; }
  int length(int e) const { return int(words_[size_t(e)].size()); }
  const std::vector<int>& word(int e) const { return words_[size_t(e)]; }

  const std::vector<Reflection>& reflections() const { return refl_; }
  int num_reflection_classes() const { return refl_classes_; }
  // -1 when e is not a reflection.
  int reflection_class_of(int e) const;

  std::vector<Scalar> act(int e, const std::vector<Scalar>& v) const;
  // act_poly(w, f)(x) = f(w^{-1} x).
  MPoly act_poly(int e, const MPoly& f) const;

  // Element counts by word length (coefficients of the length generating
  // polynomial, exact).
  std::vector<long long> length_census() const;
  // Degrees of basic invariants (nontrivial ones, ascending), recovered
  // exactly from the length census.
  std::vector<int> degrees() const;

  // Subgroup generated by the given elements; returns sorted element indices.
  std::vector<int> subgroup_from_generators(const std::vector<int>& gens) const;
  // All elements fixing the vector a pointwise (element indices).
  std::vector<int> stabilizer(const std::vector<Scalar>& a) const;
  // The stabilizer as a group of its own, generated by the reflections it
  // contains; asserts that those reflections do generate the full stabilizer.
  ReflectionGroup stabilizer_group(const std::vector<Scalar>& a) const;
  // Degrees (>1, ascending) of the reflection subgroup with these elements,
  // from its Molien series.
  std::vector<int> subgroup_degrees_molien(const std::vector<int>& elems) const;
  // Molien-series degrees of this whole group (matches degrees() for groups
  // built from a simple system; meaningful for stabilizer groups too).
  std::vector<int> degrees_molien() const;

 private:
  ReflectionGroup() = default;
  void bfs_build(const std::vector<SMat>& gen_mats, long order_cap);
  void find_reflections();

  std::string name_;
  bool cyclic_ = false;
  int cyclic_m_ = 0;
  int dim_ = 0;
  std::vector<int> gens_;             // generator element indices
  std::vector<SMat> elems_;           // matrices by element index
  std::vector<std::vector<int>> rmul_;  // rmul_[e][i] = index of e * s_i
  std::vector<int> inv_;
  std::vector<std::vector<int>> words_;
  std::vector<Reflection> refl_;
  std::vector<int> refl_class_of_;  // by element index, -1 if not reflection
  int refl_classes_ = 0;
};

// Degrees d_1..d_r with Poincare polynomial = prod_i (1+q+...+q^{d_i-1}),
// recovered by iterated exact division by q-integers, trying the smallest
// candidate first and backtracking when a division dead-ends.  Asserts
// prod d_i equals the group order; throws FactorizationFailed otherwise.
std::vector<int> degrees_from_census(const std::vector<long long>& census,
                                     long long group_order);

}  // namespace cmwork
