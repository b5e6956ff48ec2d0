#include "clifford.hpp"

#include <bit>
#include <stdexcept>

namespace heatindex {

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::Matrix2cd pauli(int k) {
  Eigen::Matrix2cd s;
  const Complex I(0.0, 1.0);
  switch (k) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -I, I, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

}  // namespace

CliffordAlgebra::CliffordAlgebra(int n) : n_(n) {
  if (n < 2 || n > 8 || n % 2 != 0)
    throw std::invalid_argument("Clifford dimension must be even and in [2,8]");
  const int m = n / 2;
  dim_ = 1 << m;

  // Jordan-Wigner tensor construction, then multiply by i so that
  // generators square to -1 (the epsilon-minus-iota convention).
  const Complex I(0.0, 1.0);
  generators_.reserve(n);
  for (int j = 0; j < m; ++j) {
    for (int which = 1; which <= 2; ++which) {
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(1, 1);
      for (int f = 0; f < m; ++f) {
        Eigen::Matrix2cd factor;
        if (f < j)
          factor = pauli(3);
        else if (f == j)
          factor = pauli(which);
        else
          factor = Eigen::Matrix2cd::Identity();
        g = kron(g, factor);
      }
      generators_.push_back(I * g);
    }
  }

  grading_ = Eigen::MatrixXcd::Identity(1, 1);
  for (int f = 0; f < m; ++f) grading_ = kron(grading_, pauli(3));

  monomials_.resize(1u << n_);
  monomial_norm_.resize(1u << n_);
  for (std::uint32_t mask = 0; mask < (1u << n_); ++mask) {
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(dim_, dim_);
    for (int i = 0; i < n_; ++i)
      if (mask & (1u << i)) p = p * generators_[i];
    monomials_[mask] = p;
    monomial_norm_[mask] = (p.adjoint() * p).trace();
  }
}

const Eigen::MatrixXcd& CliffordAlgebra::generator(int i) const {
  if (i < 1 || i > n_) throw std::out_of_range("generator index out of range");
  return generators_[i - 1];
}

const Eigen::MatrixXcd& CliffordAlgebra::monomial(std::uint32_t mask) const {
  if (mask >= monomials_.size()) throw std::out_of_range("monomial mask out of range");
  return monomials_[mask];
}

Complex CliffordAlgebra::supertrace(const Eigen::MatrixXcd& x) const {
  return (grading_ * x).trace();
}

MultiVector CliffordAlgebra::symbol(const Eigen::MatrixXcd& x) const {
  if (x.rows() != dim_ || x.cols() != dim_)
    throw std::invalid_argument("matrix size does not match the spinor dimension");
  // The gamma monomials are Hilbert-Schmidt orthogonal, so the expansion
  // coefficients are Tr(m^H x) / Tr(m^H m).
  MultiVector out(n_);
  for (std::uint32_t mask = 0; mask < monomials_.size(); ++mask) {
    Complex c = (monomials_[mask].adjoint() * x).trace() / monomial_norm_[mask];
    out.set_coefficient(mask, c);
  }
  return out.prune(0.0);
}

Eigen::MatrixXcd CliffordAlgebra::quantize(const MultiVector& a) const {
  if (a.generator_count() != n_)
    throw std::invalid_argument("generator_count does not match the algebra");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (const auto& [mask, c] : a.terms()) out += c * monomials_[mask];
  return out;
}

}  // namespace heatindex
