#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heat.hpp"

using namespace heatindex;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("heat supertrace is the index, flat torus cancels") {
  SpectralModel flat = flat_torus_dirac(6);
  for (double t : {0.05, 0.2, 1.0})
    CHECK(std::abs(heat_supertrace(flat, t).value) < 1e-12);
  CHECK_THROWS_AS(heat_supertrace(flat, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(heat_supertrace(flat, -1.0), std::invalid_argument);
}

TEST_CASE("heat supertrace equals flux and charge with small tails") {
  SpectralModel landau = landau_model(3, 48);
  for (double t : {0.05, 0.2, 1.0}) {
    SupertraceResult st = heat_supertrace(landau, t);
    CHECK(std::abs(st.value - 3.0) < 1e-8);
    CHECK(st.tail_bound < 1e-8);
  }
  SpectralModel monopole = monopole_model(-2, 40);
  SupertraceResult st = heat_supertrace(monopole, 0.5);
  CHECK(std::abs(st.value + 2.0) < 1e-8);
  CHECK(st.tail_bound < 1e-8);
}

TEST_CASE("heat supertrace is t-independent within the tail bound") {
  for (const SpectralModel& m :
       {landau_model(2, 48), monopole_model(1, 40), flat_torus_dirac(5)}) {
    double at_small = heat_supertrace(m, 0.08).value;
    double at_large = heat_supertrace(m, 1.2).value;
    double budget = heat_supertrace(m, 0.08).tail_bound + 1e-12;
    CHECK(std::abs(at_small - at_large) <= budget);
    CHECK(std::abs(at_small - m.zero_mode_index()) <= budget);
  }
}

TEST_CASE("mehler kernel closed forms") {
  Eigen::Matrix2d zero = Eigen::Matrix2d::Zero();
  Eigen::Vector2d v(0.3, -0.4);
  double t = 0.37;
  double gaussian = std::exp(-v.squaredNorm() / (4.0 * t)) / (4.0 * kPi * t);
  CHECK(mehler_kernel(zero, 0.0, t, v) == doctest::Approx(gaussian).epsilon(1e-14));
  // twist factorizes
  CHECK(mehler_kernel(zero, 1.7, t, v) ==
        doctest::Approx(gaussian * std::exp(-1.7 * t)).epsilon(1e-14));
  // even in v
  Eigen::Matrix2d curv;
  curv << 0, 1.3, -1.3, 0;
  CHECK(mehler_kernel(curv, 0.0, t, v) ==
        doctest::Approx(mehler_kernel(curv, 0.0, t, -v)).epsilon(1e-14));
  // small-curvature limit approaches the Gaussian
  Eigen::Matrix2d tiny;
  tiny << 0, 1e-6, -1e-6, 0;
  CHECK(std::abs(mehler_kernel(tiny, 0.0, t, v) - gaussian) < 1e-12);
  CHECK(mehler_kernel(curv, 0.0, t, v) > 0.0);
  CHECK_THROWS_AS(mehler_kernel(Eigen::Matrix2d::Identity(), 0.0, t, v),
                  std::invalid_argument);
}

TEST_CASE("oscillator oracle matches the free Gaussian and conserves mass") {
  OracleGrid grid;
  grid.base_cells = 512;
  grid.refinements = 2;
  OracleResult res = oscillator_fd_oracle(0.0, 0.0, 0.25, grid);
  CHECK(std::abs(res.extrapolated - 1.0 / (4.0 * kPi * 0.25)) < 1e-6);
  CHECK(std::abs(res.mass - 1.0) < 1e-8);
  CHECK(res.measured_order == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("oscillator oracle reproduces the curved Mehler factor") {
  OracleGrid grid;
  double b = 2.0, t = 0.5;
  OracleResult res = oscillator_fd_oracle(b, 0.0, t, grid);
  Eigen::Matrix2d curv;
  curv << 0, b, -b, 0;
  double formula = mehler_kernel(curv, 0.0, t, Eigen::Vector2d::Zero());
  CHECK(std::abs(res.extrapolated - formula) < 1e-4);
  CHECK(res.measured_order >= 1.8);
}

TEST_CASE("getzler rescaling definition cases") {
  const Eigen::Vector2d origin = Eigen::Vector2d::Zero();
  // degree-0 constant: r(u,t,v) = u^{dim/2} c
  KernelFn constant = [](double, const Eigen::Vector2d&) {
    return MultiVector::scalar(2, 3.0);
  };
  MultiVector r = getzler_rescale(constant, 0.25, 2)(1.0, origin);
  CHECK(std::abs(r.coefficient(0) - Complex(0.75)) < 1e-15);

  // pure degree-i monomial: weight u^{(dim-i)/2} and rescaled arguments
  KernelFn monomial = [](double t, const Eigen::Vector2d& v) {
    MultiVector m(2);
    m.set_coefficient(0b01, t * v.x());
    return m;
  };
  double u = 0.09;
  MultiVector rm = getzler_rescale(monomial, u, 2)(2.0, Eigen::Vector2d(3.0, 0.0));
  double expected = std::pow(u, 0.5) * (u * 2.0) * (std::sqrt(u) * 3.0);
  CHECK(std::abs(rm.coefficient(0b01) - Complex(expected)) < 1e-14);

  // u = 1 is the identity
  MultiVector id = getzler_rescale(monomial, 1.0, 2)(2.0, Eigen::Vector2d(3.0, 0.0));
  CHECK(std::abs(id.coefficient(0b01) - Complex(6.0)) < 1e-15);

  CHECK_THROWS_AS(getzler_rescale(constant, 0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(getzler_rescale(constant, 1.5, 2), std::invalid_argument);
}

TEST_CASE("rescaling composes as a group action") {
  KernelFn kernel = [](double t, const Eigen::Vector2d& v) {
    MultiVector m(2);
    m.set_coefficient(0b00, std::exp(-t) * v.y());
    m.set_coefficient(0b01, t * v.x());
    m.set_coefficient(0b11, t * t + v.x() * v.y());
    return m;
  };
  double u1 = 0.3, u2 = 0.41;
  KernelFn composed = getzler_rescale(getzler_rescale(kernel, u2, 2), u1, 2);
  KernelFn direct = getzler_rescale(kernel, u1 * u2, 2);
  Eigen::Vector2d v(0.7, -1.1);
  CHECK(distance(composed(1.3, v), direct(1.3, v)) < 1e-14);
}

TEST_CASE("flat twisted kernel reduces to the theta kernel") {
  Eigen::Vector2d v(0.2, 0.1);
  MultiVector k = flat_twisted_kernel(0.05, v, 0.0);
  double direct = 0.0;
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      direct += std::exp(-((v.x() - a) * (v.x() - a) + (v.y() - b) * (v.y() - b)) /
                         (4.0 * 0.05));
  direct /= 4.0 * kPi * 0.05;
  CHECK(k.coefficient(0).real() == doctest::Approx(direct).epsilon(1e-12));
  CHECK(k.coefficient(0b11) == Complex(0.0));
}

TEST_CASE("rescaled limit check hits the Mehler limit") {
  std::vector<double> u = {1e-1, 3.162277660168379e-2, 1e-2, 3.162277660168379e-3, 1e-3};
  for (double f : {0.0, 1.0}) {
    RescaleCheck check = rescaled_limit_check(f, u);
    CHECK(check.rows.back().error < 1e-6);
    CHECK(check.fitted_exponent >= 0.5);
    CHECK(std::abs(check.target.coefficient(0) - Complex(1.0 / (4.0 * kPi))) < 1e-15);
    CHECK(std::abs(check.target.coefficient(0b11) - Complex(-f / (4.0 * kPi))) < 1e-15);
  }
  std::vector<double> increasing = {1e-3, 1e-2};
  CHECK_THROWS_AS(rescaled_limit_check(0.0, increasing), std::invalid_argument);
}
