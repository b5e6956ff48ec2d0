// Spinor representation of the complex Clifford algebra in even dimension:
// generators with g_i g_j + g_j g_i = -2 delta_ij, grading involution,
// supertrace, and the symbol / quantization maps to the Grassmann algebra.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "multivector.hpp"

namespace heatindex {

class CliffordAlgebra {
 public:
  // n even, 2 <= n <= 8; throws std::invalid_argument otherwise.
  explicit CliffordAlgebra(int n);

  int generator_count() const { return n_; }
  int spinor_dim() const { return dim_; }  // 2^{n/2}

  // 1-based generator index; gamma_i^2 = -1, pairwise anticommuting.
  const Eigen::MatrixXcd& generator(int i) const;
  // Grading Gamma with Gamma^2 = 1, anticommuting with every generator.
  const Eigen::MatrixXcd& grading() const { return grading_; }

  // Ordered product gamma_{i1}...gamma_{ik} for the bitmask {i1<...<ik}.
  const Eigen::MatrixXcd& monomial(std::uint32_t mask) const;

  // Str(x) = Tr(Gamma x). Vanishes on monomials of degree < n;
  // Str(gamma_1...gamma_n) = (-2i)^{n/2}.
  Complex supertrace(const Eigen::MatrixXcd& x) const;

  // Linear isomorphism sending gamma_{i1}...gamma_{ik} to e_{i1}^...^e_{ik}.
  MultiVector symbol(const Eigen::MatrixXcd& x) const;
  Eigen::MatrixXcd quantize(const MultiVector& a) const;

 private:
  int n_;
  int dim_;
  std::vector<Eigen::MatrixXcd> generators_;
  Eigen::MatrixXcd grading_;
  std::vector<Eigen::MatrixXcd> monomials_;     // indexed by mask
  std::vector<Complex> monomial_norm_;          // Tr(m^H m), real positive
};

}  // namespace heatindex
