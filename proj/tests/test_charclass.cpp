#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "charclass.hpp"
#include "formmatrix.hpp"
#include "models.hpp"

using namespace heatindex;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent Taylor oracle: coefficients of x/sinh(x) obtained by inverting
// the series of sinh(x)/x term by term (no closed-form constants assumed).
std::vector<double> x_over_sinh_series(int order_in_x2) {
  std::vector<double> sinh_over_x(order_in_x2 + 1);
  double fact = 1.0;
  for (int k = 0; k <= order_in_x2; ++k) {
    // x^{2k} coefficient of sinh(x)/x is 1/(2k+1)!
    if (k > 0) fact *= (2.0 * k) * (2.0 * k + 1.0);
    sinh_over_x[k] = 1.0 / fact;
  }
  std::vector<double> inv(order_in_x2 + 1, 0.0);
  inv[0] = 1.0;
  for (int k = 1; k <= order_in_x2; ++k) {
    double acc = 0.0;
    for (int j = 0; j < k; ++j) acc += inv[j] * sinh_over_x[k - j];
    inv[k] = -acc;
  }
  return inv;
}

MultiVector random_two_form(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  MultiVector m(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (std::popcount(mask) == 2) m.set_coefficient(mask, Complex(dist(rng), dist(rng)));
  return m;
}

}  // namespace

TEST_CASE("a_hat trivial cases") {
  FormMatrix zero(2, 4);
  CHECK(distance(a_hat(zero), MultiVector::scalar(4, 1.0)) == 0.0);

  // single block with theta^2 = 0: every correction dies
  MultiVector theta = MultiVector::basis(2, {1, 2});
  CHECK(distance(a_hat(FormMatrix::curvature_block(theta)),
                 MultiVector::scalar(2, 1.0)) == 0.0);
}

TEST_CASE("a_hat on theta = e12 + e34 matches the Taylor oracle") {
  // oracle: block factor (theta/2)/sinh(theta/2), theta^2 = 2 e1234
  std::vector<double> series = x_over_sinh_series(2);
  CHECK(series[1] == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
  CHECK(series[2] == doctest::Approx(7.0 / 360.0).epsilon(1e-15));

  MultiVector theta = MultiVector::basis(4, {1, 2});
  theta += MultiVector::basis(4, {3, 4});
  MultiVector theta2 = wedge(theta, theta);  // 2 e1234
  // expected = 1 + series[1] * (theta/2)^2, higher terms vanish in 4 generators
  MultiVector expected = MultiVector::scalar(4, 1.0);
  expected += theta2 * Complex(series[1] / 4.0);
  CHECK(expected.berezin_top() == doctest::Approx(-1.0 / 12.0).epsilon(1e-15));

  MultiVector ah = a_hat(FormMatrix::curvature_block(theta));
  CHECK(distance(ah, expected) < 1e-15);
}

TEST_CASE("a_hat structural invariants on random antisymmetric curvature") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    FormMatrix r(4, 8);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        MultiVector f = random_two_form(8, rng);
        r.at(i, j) = f;
        r.at(j, i) = f * Complex(-1.0);
      }
    MultiVector ah = a_hat(r);
    CHECK(std::abs(ah.coefficient(0) - Complex(1.0)) < 1e-12);
    for (int d = 0; d <= 8; ++d)
      if (d % 4 != 0) CHECK(ah.degree_part(d).max_abs() < 1e-12);
  }
}

TEST_CASE("a_hat precondition failures") {
  FormMatrix not_antisym(2, 4);
  not_antisym.at(0, 1) = MultiVector::basis(4, {1, 2});
  CHECK_THROWS_AS(a_hat(not_antisym), std::invalid_argument);

  FormMatrix degree0(2, 4);
  degree0.at(0, 1) = MultiVector::scalar(4, 1.0);
  degree0.at(1, 0) = MultiVector::scalar(4, -1.0);
  CHECK_THROWS_AS(a_hat(degree0), std::invalid_argument);
}

TEST_CASE("chern_character examples") {
  FormMatrix zero(3, 4);
  CHECK(distance(chern_character(zero), MultiVector::scalar(4, 3.0)) == 0.0);

  FormMatrix rank1(1, 2);
  rank1.at(0, 0) = MultiVector::basis(2, {1, 2});
  MultiVector expected = MultiVector::scalar(2, 1.0);
  expected += MultiVector::basis(2, {1, 2}) * Complex(-1.0);
  CHECK(distance(chern_character(rank1), expected) == 0.0);

  // rank-2 diagonal (f, -f) over 4 generators: 2 + f^2
  FormMatrix diag(2, 4);
  diag.at(0, 0) = MultiVector::basis(4, {1, 2}) + MultiVector::basis(4, {3, 4});
  diag.at(1, 1) = diag.at(0, 0) * Complex(-1.0);
  MultiVector expect2 = MultiVector::scalar(4, 2.0);
  expect2 += wedge(diag.at(0, 0), diag.at(0, 0));
  CHECK(distance(chern_character(diag), expect2) < 1e-14);
}

TEST_CASE("chern_character additivity on block sums") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 6; ++trial) {
    FormMatrix f1(2, 6), f2(1, 6);
    f1.at(0, 0) = random_two_form(6, rng);
    f1.at(0, 1) = random_two_form(6, rng);
    f1.at(1, 0) = random_two_form(6, rng);
    f1.at(1, 1) = random_two_form(6, rng);
    f2.at(0, 0) = random_two_form(6, rng);
    FormMatrix sum(3, 6);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) sum.at(i, j) = f1.at(i, j);
    sum.at(2, 2) = f2.at(0, 0);
    CHECK(distance(chern_character(sum), chern_character(f1) + chern_character(f2)) <
          1e-12);
  }
}

TEST_CASE("integrate_top on the torus") {
  TorusGrid grid{64};
  FormField constant(grid, MultiVector::from_mask(2, 0b11, 1.0));
  CHECK(std::abs(integrate_top(constant) - Complex(1.0)) < 1e-14);

  FormField sin2(grid, MultiVector(2));
  FormField exact(grid, MultiVector(2));
  for (std::size_t i = 0; i < sin2.size(); ++i) {
    auto [x, y] = node_coordinates(Domain{grid}, i);
    double s = std::sin(2.0 * kPi * x);
    sin2[i].set_coefficient(0b11, s * s);
    // d(sin(2 pi x) sin(2 pi y)) ^ dy: exact, integral must vanish
    exact[i].set_coefficient(
        0b11, 2.0 * kPi * std::cos(2.0 * kPi * x) * std::sin(2.0 * kPi * y));
  }
  CHECK(std::abs(integrate_top(sin2) - Complex(0.5)) < 1e-10);
  CHECK(std::abs(integrate_top(exact)) < 1e-8);
}

TEST_CASE("integrate_top on the sphere recovers the area") {
  SphereGrid grid = make_sphere_grid(24, 48);
  FormField area(Domain{grid}, MultiVector(2));
  for (std::size_t i = 0; i < area.size(); ++i) {
    auto [theta, phi] = node_coordinates(Domain{grid}, i);
    area[i].set_coefficient(0b11, std::sin(theta));  // area form in dtheta^dphi
  }
  CHECK(std::abs(integrate_top(area) - Complex(4.0 * kPi)) < 1e-10);
}

TEST_CASE("ch_de_rham constants") {
  TorusGrid grid{32};
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(2, 2);
  proj(0, 0) = 1.0;
  IdempotentField constant = IdempotentField::constant(Domain{grid}, proj);
  FormField ch = ch_de_rham(constant);
  for (std::size_t i = 0; i < ch.size(); ++i) {
    CHECK(std::abs(ch[i].coefficient(0) - Complex(1.0)) < 1e-13);
    CHECK(std::abs(ch[i].coefficient(0b11)) < 1e-13);
  }

  IdempotentField identity =
      IdempotentField::constant(Domain{grid}, Eigen::MatrixXcd::Identity(3, 3));
  FormField chi = ch_de_rham(identity);
  CHECK(std::abs(chi[5].coefficient(0) - Complex(3.0)) < 1e-13);
}

TEST_CASE("ch_de_rham rejects non-idempotents") {
  TorusGrid grid{16};
  Eigen::MatrixXcd half = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  IdempotentField bad = IdempotentField::constant(Domain{grid}, half);
  CHECK_THROWS_AS(ch_de_rham(bad), std::invalid_argument);
}

TEST_CASE("Bott projection Chern number is a unit integer") {
  IdempotentField bott = bott_projection(64);
  FormField ch = ch_de_rham(bott);
  Complex c1 = integrate_top(ch) / Complex(0.0, 2.0 * kPi);
  CHECK(std::abs(std::abs(c1) - 1.0) < 1e-6);
  CHECK(std::abs(c1.imag()) < 1e-6);
}

TEST_CASE("sphere tautological projection has unit Chern number") {
  SphereGrid grid = make_sphere_grid(96, 96);
  IdempotentField e(Domain{grid}, 2);
  const Complex I(0.0, 1.0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    auto [theta, phi] = node_coordinates(Domain{grid}, i);
    double v1 = std::sin(theta) * std::cos(phi);
    double v2 = std::sin(theta) * std::sin(phi);
    double v3 = std::cos(theta);
    Eigen::Matrix2cd m;
    m << 1.0 + v3, v1 - I * v2, v1 + I * v2, 1.0 - v3;
    e[i] = 0.5 * m;
  }
  FormField ch = ch_de_rham(e);
  Complex c1 = integrate_top(ch) / Complex(0.0, 2.0 * kPi);
  // centered differences on the GL grid: second-order accuracy only
  CHECK(std::abs(std::abs(c1) - 1.0) < 2e-3);
}

TEST_CASE("rhs_index examples") {
  TorusGrid grid{64};
  IdempotentField one =
      IdempotentField::constant(Domain{grid}, Eigen::MatrixXcd::Identity(1, 1));
  FormMatrix r_zero(0, 2);
  FormMatrix f_zero(1, 2);
  CHECK(std::abs(rhs_index(one, r_zero, f_zero)) < 1e-13);

  // Landau twist with integer flux k: the index is k.
  for (int k : {1, 3, -2}) {
    FormMatrix f(1, 2);
    f.at(0, 0) = MultiVector::basis(2, {1, 2}) * Complex(0.0, -2.0 * kPi * k);
    Complex val = rhs_index(one, r_zero, f);
    CHECK(std::abs(val - Complex(k)) < 1e-8);
  }
}

TEST_CASE("FormField CSV export carries coordinates and coefficients") {
  TorusGrid grid{4};
  FormField f(grid, MultiVector::scalar(2, 1.0));
  std::ostringstream os;
  f.write_csv(os);
  std::string text = os.str();
  CHECK(text.find("x,y") == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 17);  // header + 16 nodes
}
