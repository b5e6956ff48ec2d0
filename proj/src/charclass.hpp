// Sampled differential forms and idempotent fields on the two model
// domains (unit-area flat 2-torus, unit round 2-sphere), top-degree
// quadrature, the de Rham Chern character of idempotents, and the
// geometric side of the index formula.
#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <variant>
#include <vector>

#include "formmatrix.hpp"
#include "multivector.hpp"

namespace heatindex {

// N x N periodic grid on [0,1)^2, nodes (i/N, j/N), unit area.
struct TorusGrid {
  int n;
};

// Gauss-Legendre nodes in cos(theta) crossed with a uniform phi grid.
// Forms are stored in the (d theta, d phi) coordinate coframe.
struct SphereGrid {
  int n_theta;
  int n_phi;
  std::vector<double> theta;      // colatitude of each GL node
  std::vector<double> gl_weight;  // weights for integration in cos(theta)
};

SphereGrid make_sphere_grid(int n_theta, int n_phi);

using Domain = std::variant<TorusGrid, SphereGrid>;

std::size_t node_count(const Domain& d);
// Node coordinates: (x, y) on the torus, (theta, phi) on the sphere.
std::pair<double, double> node_coordinates(const Domain& d, std::size_t idx);

// Per-node multivector values over the 2-generator coordinate coframe.
class FormField {
 public:
  FormField(Domain domain, MultiVector fill);

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  MultiVector& operator[](std::size_t i) { return values_[i]; }
  const MultiVector& operator[](std::size_t i) const { return values_[i]; }

  void write_csv(std::ostream& os) const;

 private:
  Domain domain_;
  std::vector<MultiVector> values_;
};

// Quadrature of the top-degree coefficient against the volume element:
// plain node average on the torus (spectrally accurate for smooth periodic
// integrands), Gauss-Legendre x uniform on the sphere.
Complex integrate_top(const FormField& f);

// Grid of k x k complex idempotents e(x).
class IdempotentField {
 public:
  IdempotentField(Domain domain, int rank);

  const Domain& domain() const { return domain_; }
  int rank() const { return rank_; }
  std::size_t size() const { return values_.size(); }
  Eigen::MatrixXcd& operator[](std::size_t i) { return values_[i]; }
  const Eigen::MatrixXcd& operator[](std::size_t i) const { return values_[i]; }

  // Largest Frobenius norm of e^2 - e over the nodes.
  double idempotency_defect() const;
  // Pointwise trace, which must be constant; returns the common value.
  double pointwise_rank(double tol = 1e-8) const;

  static IdempotentField constant(Domain domain, const Eigen::MatrixXcd& value);

 private:
  Domain domain_;
  int rank_;
  std::vector<Eigen::MatrixXcd> values_;
};

// Tr(exp(s e de de)) per node with d computed spectrally on the torus and by
// finite differences (away from the poles) on the sphere.  exp_sign selects
// the sign s inside the exponential; the displayed character uses +1.
// Throws std::invalid_argument if the idempotency defect exceeds 1e-12.
FormField ch_de_rham(const IdempotentField& e, int exp_sign = +1);

// Geometric side of the index formula:
//   (2 i pi)^{-exponent} * integrate_top( chdr(e) ^ a_hat(R) ^ ch(F) )
// where chdr pairs through the exp(-e de de) series (the branch that makes
// the result match the spectral index; see rhs tests).  The prefactor
// exponent defaults to dim(M)/2 = 1 and is exposed explicitly.
Complex rhs_index(const IdempotentField& e, const FormMatrix& R, const FormMatrix& F,
                  int prefactor_exponent = 1);

}  // namespace heatindex
