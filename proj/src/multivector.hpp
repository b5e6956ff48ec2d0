// Complex Grassmann algebra on n generators (n even, 2..8), sparse over
// index subsets encoded as bitmasks. Degree-graded; wedge is the product.
#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>

namespace heatindex {

using Complex = std::complex<double>;

class MultiVector {
 public:
  explicit MultiVector(int generator_count);

  static MultiVector scalar(int generator_count, Complex value);
  // Basis monomial e_{i1}...e_{ik} from strictly increasing 1-based indices.
  static MultiVector basis(int generator_count, std::initializer_list<int> indices);
  static MultiVector from_mask(int generator_count, std::uint32_t mask, Complex value);

  int generator_count() const { return n_; }
  std::uint32_t top_mask() const { return (1u << n_) - 1u; }

  Complex coefficient(std::uint32_t mask) const;
  void set_coefficient(std::uint32_t mask, Complex value);
  const std::map<std::uint32_t, Complex>& terms() const { return coeff_; }

  MultiVector degree_part(int degree) const;  // throws std::out_of_range
  Complex berezin_top() const { return coefficient(top_mask()); }
  bool is_homogeneous(int* degree_out = nullptr) const;

  double max_abs() const;
  bool is_zero(double tol = 0.0) const { return max_abs() <= tol; }
  // Drop coefficients with |c| <= tol (tol = 0 removes exact zeros).
  MultiVector& prune(double tol = 0.0);

  MultiVector& operator+=(const MultiVector& rhs);
  MultiVector& operator-=(const MultiVector& rhs);
  MultiVector& operator*=(Complex s);
  friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
  friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
  friend MultiVector operator*(MultiVector a, Complex s) { return a *= s; }
  friend MultiVector operator*(Complex s, MultiVector a) { return a *= s; }

 private:
  int n_;
  std::map<std::uint32_t, Complex> coeff_;  // strictly increasing index tuples as bitmasks
};

// Exterior product; throws std::invalid_argument on generator_count mismatch.
MultiVector wedge(const MultiVector& a, const MultiVector& b);

// Sign of merging two disjoint ordered index sets, 0 if they intersect.
int wedge_sign(std::uint32_t a, std::uint32_t b);

// exp(a) = sum a^k / k!; terminates because a has no degree-0 part.
// Throws std::invalid_argument if a has a degree-0 component.
MultiVector exterior_exp(const MultiVector& a);

// Max-coefficient distance between two multivectors.
double distance(const MultiVector& a, const MultiVector& b);

}  // namespace heatindex
