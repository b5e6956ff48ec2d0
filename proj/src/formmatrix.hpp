// Square matrices with Grassmann-algebra entries, plus the two
// characteristic-class series built on them.
#pragma once

#include <vector>

#include "multivector.hpp"

namespace heatindex {

class FormMatrix {
 public:
  FormMatrix(int size, int generator_count);

  int size() const { return size_; }
  int generator_count() const { return n_; }

  MultiVector& at(int i, int j) { return entries_[idx(i, j)]; }
  const MultiVector& at(int i, int j) const { return entries_[idx(i, j)]; }

  MultiVector trace() const;
  bool is_antisymmetric(double tol = 1e-12) const;
  // Every entry purely even degree >= 2 (nilpotent, power series terminate).
  bool has_nilpotent_even_entries(double tol = 0.0) const;

  FormMatrix& operator+=(const FormMatrix& rhs);
  FormMatrix& operator*=(Complex s);
  friend FormMatrix operator*(const FormMatrix& a, const FormMatrix& b);
  friend FormMatrix operator+(FormMatrix a, const FormMatrix& b) { return a += b; }
  friend FormMatrix operator*(FormMatrix a, Complex s) { return a *= s; }

  static FormMatrix identity(int size, int generator_count);
  // Single antisymmetric 2x2 block [[0, theta], [-theta, 0]].
  static FormMatrix curvature_block(const MultiVector& theta);

 private:
  int idx(int i, int j) const;
  int size_;
  int n_;
  std::vector<MultiVector> entries_;
};

// A-hat genus det^{1/2}((R/2)/sinh(R/2)) of an antisymmetric curvature
// matrix, evaluated on the skew normal-form parameters so that a 2x2 block
// with 2-form theta contributes (theta/2)/sinh(theta/2).  Computed as
// exp(1/2 tr log H(-R^2)) with H the even series of (sqrt(s)/2)/sinh(sqrt(s)/2);
// all series terminate because the entries are nilpotent.
// Throws std::invalid_argument if R is not antisymmetric with nilpotent
// even entries.
MultiVector a_hat(const FormMatrix& R);

// Chern character tr(exp(-F)); degree-0 part equals the rank.
// Throws std::invalid_argument if an entry has a degree-0 or odd part.
MultiVector chern_character(const FormMatrix& F);

}  // namespace heatindex
