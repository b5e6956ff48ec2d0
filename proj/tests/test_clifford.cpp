#include <doctest.h>

#include <random>

#include "clifford.hpp"

using namespace heatindex;

namespace {

bool entries_exact(const Eigen::MatrixXcd& m) {
  // all entries in {0, +-1, +-i}
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Complex v = m(i, j);
      double re = std::abs(v.real()), im = std::abs(v.imag());
      bool ok = (re == 0.0 || re == 1.0) && (im == 0.0 || im == 1.0) &&
                !(re == 1.0 && im == 1.0);
      if (!ok) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("Clifford relations hold exactly for n = 2, 4, 6") {
  for (int n : {2, 4, 6}) {
    CliffordAlgebra cl(n);
    CHECK(cl.spinor_dim() == (1 << (n / 2)));
    for (int i = 1; i <= n; ++i) {
      CHECK(entries_exact(cl.generator(i)));
      for (int j = 1; j <= n; ++j) {
        Eigen::MatrixXcd anti =
            cl.generator(i) * cl.generator(j) + cl.generator(j) * cl.generator(i);
        Eigen::MatrixXcd expected = (i == j)
            ? Eigen::MatrixXcd(-2.0 * Eigen::MatrixXcd::Identity(cl.spinor_dim(),
                                                                 cl.spinor_dim()))
            : Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(cl.spinor_dim(), cl.spinor_dim()));
        CHECK((anti - expected).norm() == 0.0);
      }
      CHECK((cl.grading() * cl.generator(i) + cl.generator(i) * cl.grading()).norm() ==
            0.0);
    }
    Eigen::MatrixXcd g2 = cl.grading() * cl.grading();
    CHECK((g2 - Eigen::MatrixXcd::Identity(cl.spinor_dim(), cl.spinor_dim())).norm() ==
          0.0);
  }
  CHECK_THROWS_AS(CliffordAlgebra(3), std::invalid_argument);
}

TEST_CASE("supertrace on low monomials vanishes, top gives (-2i)^{n/2}") {
  CliffordAlgebra cl2(2);
  CHECK(cl2.supertrace(Eigen::MatrixXcd::Identity(2, 2)) == Complex(0.0));
  CHECK(cl2.supertrace(cl2.generator(1)) == Complex(0.0));
  CHECK(std::abs(cl2.supertrace(cl2.generator(1) * cl2.generator(2)) -
                 Complex(0.0, -2.0)) < 1e-15);

  for (int n : {2, 4, 6}) {
    CliffordAlgebra cl(n);
    Complex top = cl.supertrace(cl.monomial((1u << n) - 1));
    Complex expected = std::pow(Complex(0.0, -2.0), n / 2);
    CHECK(std::abs(top - expected) < 1e-12);
    // every proper sub-monomial is annihilated
    for (std::uint32_t mask = 0; mask + 1 < (1u << n); ++mask)
      CHECK(std::abs(cl.supertrace(cl.monomial(mask))) < 1e-12);
  }
}

TEST_CASE("symbol map sends ordered monomials to wedge monomials") {
  CliffordAlgebra cl(4);
  MultiVector s = cl.symbol(cl.generator(1) * cl.generator(2));
  CHECK(distance(s, MultiVector::basis(4, {1, 2})) < 1e-14);
  CHECK(distance(cl.symbol(Eigen::MatrixXcd::Identity(4, 4)),
                 MultiVector::scalar(4, 1.0)) < 1e-14);
}

TEST_CASE("symbol and quantization are mutually inverse") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int n : {2, 4}) {
    CliffordAlgebra cl(n);
    for (int trial = 0; trial < 10; ++trial) {
      MultiVector a(n);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        a.set_coefficient(mask, Complex(dist(rng), dist(rng)));
      CHECK(distance(cl.symbol(cl.quantize(a)), a) < 1e-12);
    }
  }
}

TEST_CASE("supertrace through the symbol is the Berezin top") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int n : {2, 4}) {
    CliffordAlgebra cl(n);
    Complex norm = std::pow(Complex(0.0, -2.0), n / 2);
    for (int trial = 0; trial < 10; ++trial) {
      MultiVector a(n);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        a.set_coefficient(mask, Complex(dist(rng), dist(rng)));
      Complex str = cl.supertrace(cl.quantize(a));
      CHECK(std::abs(str - norm * a.berezin_top()) < 1e-11);
      // annihilation below top degree
      MultiVector no_top = a;
      no_top.set_coefficient(a.top_mask(), 0.0);
      CHECK(std::abs(cl.supertrace(cl.quantize(no_top))) < 1e-11);
    }
  }
}
