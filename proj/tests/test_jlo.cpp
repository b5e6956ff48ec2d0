#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "heat.hpp"
#include "jlo.hpp"
#include "models.hpp"

using namespace heatindex;

namespace {

constexpr double kPi = std::numbers::pi;

// ---- test-only exact rational polynomial integration oracle ----
struct Frac {
  long long n = 0, d = 1;
  void reduce() {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
  }
};
Frac frac(long long n, long long d) {
  Frac f{n, d};
  f.reduce();
  return f;
}
Frac operator+(Frac a, Frac b) { return frac(a.n * b.d + b.n * a.d, a.d * b.d); }
Frac operator*(Frac a, Frac b) { return frac(a.n * b.n, a.d * b.d); }

// Integral over 0 <= sigma_1 <= ... <= sigma_n <= 1 of prod sigma_j^{k_j},
// done by symbolic univariate integration, one variable at a time.
Frac ordered_moment_oracle(const std::vector<int>& k) {
  std::vector<Frac> poly = {frac(1, 1)};  // polynomial in the current sigma
  for (int kj : k) {
    // multiply by sigma^{k_j}
    std::vector<Frac> shifted(poly.size() + kj, frac(0, 1));
    for (std::size_t i = 0; i < poly.size(); ++i) shifted[i + kj] = poly[i];
    // integrate from 0 to the next variable
    std::vector<Frac> integrated(shifted.size() + 1, frac(0, 1));
    for (std::size_t i = 0; i < shifted.size(); ++i)
      integrated[i + 1] = shifted[i] * frac(1, static_cast<long long>(i) + 1);
    poly = std::move(integrated);
  }
  Frac total = frac(0, 1);
  for (const Frac& c : poly) total = total + c;  // evaluate at 1
  return total;
}

FourierData scalar_fd(std::map<std::pair<int, int>, Complex> c) {
  return FourierData::scalar(c);
}

FourierData sincos_a0() {
  return scalar_fd({{{1, 1}, -0.25}, {{1, -1}, 0.25}, {{-1, 1}, 0.25}, {{-1, -1}, -0.25}});
}

}  // namespace

TEST_CASE("simplex_moment closed values") {
  std::vector<int> zeros2 = {0, 0};
  CHECK(simplex_moment(zeros2) == Rational(1, 2));
  std::vector<int> zeros3 = {0, 0, 0};
  CHECK(simplex_moment(zeros3) == Rational(1, 6));
  std::vector<int> k10 = {1, 0};
  CHECK(simplex_moment(k10) == Rational(1, 6));
  std::vector<int> k01 = {0, 1};
  CHECK(simplex_moment(k01) == Rational(1, 3));
}

TEST_CASE("simplex_moment equals the exact iterated-integration oracle") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<int> k(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int budget) {
      if (pos == n) {
        Rational got = simplex_moment(k);
        Frac want = ordered_moment_oracle(k);
        CHECK(got.num == want.n);
        CHECK(got.den == want.d);
        return;
      }
      for (int v = 0; v <= budget; ++v) {
        k[pos] = v;
        rec(pos + 1, budget - v);
        k[pos] = 0;
      }
    };
    rec(0, 6);
  }
}

TEST_CASE("simplex_moment matches the displayed coefficient formula") {
  // c(k) = (-1)^{sum k} / (k_1!...k_n! (k_1+1)(k_1+k_2+2)...(sum k + n))
  for (int n = 1; n <= 3; ++n) {
    std::vector<int> k(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int budget) {
      if (pos == n) {
        long long kfact = 1, partial = 0, prod = 1;
        int total = 0;
        for (int j = 0; j < n; ++j) {
          for (int f = 2; f <= k[j]; ++f) kfact *= f;
          partial += k[j];
          total += k[j];
          prod *= partial + j + 1;
        }
        double c_formula =
            ((total % 2 == 0) ? 1.0 : -1.0) / (static_cast<double>(kfact) * prod);
        double from_moment = simplex_moment(k).to_double() *
                             ((total % 2 == 0) ? 1.0 : -1.0) / kfact;
        CHECK(from_moment == doctest::Approx(c_formula).epsilon(1e-15));
        return;
      }
      for (int v = 0; v <= budget; ++v) {
        k[pos] = v;
        rec(pos + 1, budget - v);
        k[pos] = 0;
      }
    };
    rec(0, 6);
  }
}

TEST_CASE("simplex_moment Monte-Carlo cross check") {
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double acc = 0.0;
  const int samples = 200000;
  for (int i = 0; i < samples; ++i) {
    double u1 = unif(rng), u2 = unif(rng);
    double lo = std::min(u1, u2);
    acc += lo;  // sigma_1^1 sigma_2^0 under uniform simplex sampling
  }
  // uniform density on the 2-simplex is 2! relative to ds
  double estimate = acc / samples / 2.0;
  std::vector<int> k10 = {1, 0};
  CHECK(std::abs(estimate - simplex_moment(k10).to_double()) < 3.0 / std::sqrt(samples));
}

TEST_CASE("divided differences: closed forms") {
  std::vector<double> same = {2.0, 2.0, 2.0};
  CHECK(divided_difference_exp(same, 0.7) ==
        doctest::Approx(std::exp(-1.4) / 2.0).epsilon(1e-13));
  std::vector<double> pair = {0.0, 1.0};
  CHECK(divided_difference_exp(pair, 1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
  std::vector<double> single = {3.5};
  CHECK(divided_difference_exp(single, 2.0) ==
        doctest::Approx(std::exp(-7.0)).epsilon(1e-14));
}

TEST_CASE("divided differences: permutation symmetry") {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> dist(0.0, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> l = {dist(rng), dist(rng), dist(rng)};
    double base = divided_difference_exp(l, 0.11);
    std::vector<double> perm = {l[2], l[0], l[1]};
    double other = divided_difference_exp(perm, 0.11);
    CHECK(std::abs(base - other) <= 1e-10 * std::abs(base));
  }
}

TEST_CASE("divided differences agree with the recursive table at wide gaps") {
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  const double t = 0.4;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> l = {dist(rng), dist(rng) + 12.0, dist(rng) + 24.0};
    // recursive divided-difference table of f(x) = exp(-t x)
    std::vector<double> table = {std::exp(-t * l[0]), std::exp(-t * l[1]),
                                 std::exp(-t * l[2])};
    for (int level = 1; level < 3; ++level)
      for (int i = 0; i < 3 - level; ++i)
        table[i] = (table[i] - table[i + 1]) / (l[i] - l[i + level]);
    double expected = table[0] / (t * t);  // (-1/t)^2
    double got = divided_difference_exp(l, t);
    CHECK(std::abs(got - expected) <= 1e-8 * std::abs(expected));
  }
}

TEST_CASE("divided differences stay smooth as gaps close") {
  const double t = 0.9;
  std::vector<double> merged = {5.0, 5.0, 5.0};
  double limit = divided_difference_exp(merged, t);
  for (double gap : {1e-6, 1e-9, 1e-12}) {
    std::vector<double> nearby = {5.0 - gap, 5.0, 5.0 + gap};
    CHECK(std::abs(divided_difference_exp(nearby, t) - limit) < 1e-10);
  }
}

TEST_CASE("jlo degree-0 equals the heat supertrace") {
  SpectralModel landau = landau_model(2, 40);
  for (double t : {0.1, 0.7}) {
    JloResult r = jlo_cochain(landau, Complex(1.0), t);
    CHECK(r.value.real() ==
          doctest::Approx(heat_supertrace(landau, t).value).epsilon(1e-14));
    CHECK(std::abs(r.value.imag()) == 0.0);
  }
}

TEST_CASE("jlo cochain with constant arguments vanishes") {
  FlatTorusAlgebra alg(3, 1);
  std::vector<FourierData> args = {scalar_fd({{{0, 0}, 2.0}}),
                                   scalar_fd({{{0, 0}, 1.5}}),
                                   scalar_fd({{{0, 0}, -0.5}})};
  CHECK(std::abs(jlo_cochain(alg, args, 0.3).value) == 0.0);
}

TEST_CASE("jlo cochain against the dense eigenmode-sum oracle") {
  FlatTorusAlgebra alg(3, 1);
  std::vector<FourierData> args = {
      sincos_a0(),
      scalar_fd({{{1, 0}, 0.5}, {{-1, 0}, 0.5}}),
      scalar_fd({{{0, 1}, 0.5}, {{0, -1}, 0.5}}),
  };
  const double t = 0.15;

  Eigen::MatrixXcd a0 = alg.multiplication_operator(args[0]).mat;
  Eigen::MatrixXcd a1 = alg.dirac_commutator(args[1]).mat;
  Eigen::MatrixXcd a2 = alg.dirac_commutator(args[2]).mat;
  Complex dense(0.0);
  const int dim = alg.dim();
  std::vector<double> nodes(3);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (a0(i, j) == Complex(0.0)) continue;
      for (int k = 0; k < dim; ++k) {
        Complex w = a0(i, j) * a1(j, k) * a2(k, i);
        if (w == Complex(0.0)) continue;
        nodes[0] = alg.d2_eigenvalue(j);
        nodes[1] = alg.d2_eigenvalue(k);
        nodes[2] = alg.d2_eigenvalue(i);
        dense += static_cast<double>(alg.gamma_sign(i)) * w *
                 divided_difference_exp(nodes, t);
      }
    }
  dense *= t;  // t^{n/2}

  JloResult structured = jlo_cochain(alg, args, t);
  CHECK(std::abs(structured.value - dense) < 1e-12 * std::max(1.0, std::abs(dense)));
}

TEST_CASE("jlo cochain is multilinear in its arguments") {
  FlatTorusAlgebra alg(3, 1);
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto random_arg = [&] {
    std::map<std::pair<int, int>, Complex> c;
    for (int p = -1; p <= 1; ++p)
      for (int q = -1; q <= 1; ++q) c[{p, q}] = Complex(dist(rng), dist(rng));
    return scalar_fd(c);
  };
  FourierData a = random_arg(), b = random_arg(), c1 = random_arg(), c2 = random_arg();
  Complex alpha(0.7, -0.3), beta(-1.1, 0.2);
  const double t = 0.2;

  FourierData combo;
  combo.rank = 1;
  for (const auto& [k, m] : c1.coeffs) combo.add(k, alpha * m);
  for (const auto& [k, m] : c2.coeffs) combo.add(k, beta * m);

  std::vector<FourierData> lhs = {a, combo, b};
  std::vector<FourierData> rhs1 = {a, c1, b};
  std::vector<FourierData> rhs2 = {a, c2, b};
  Complex left = jlo_cochain(alg, lhs, t).value;
  Complex right = alpha * jlo_cochain(alg, rhs1, t).value +
                  beta * jlo_cochain(alg, rhs2, t).value;
  CHECK(std::abs(left - right) < 1e-10 * std::max(1.0, std::abs(left)));
}

TEST_CASE("jlo small-t stability window is enforced") {
  FlatTorusAlgebra alg(3, 1);
  std::vector<FourierData> args = {sincos_a0(), scalar_fd({{{1, 0}, 0.5}, {{-1, 0}, 0.5}}),
                                   scalar_fd({{{0, 1}, 0.5}, {{0, -1}, 0.5}})};
  std::vector<double> bad = {0.01, 0.005, 1e-6};
  CHECK_THROWS_AS(jlo_small_t_limit(alg, args, bad), std::domain_error);
}

TEST_CASE("de Rham side of the sin cos triple") {
  std::vector<FourierData> args = {sincos_a0(), scalar_fd({{{1, 0}, 0.5}, {{-1, 0}, 0.5}}),
                                   scalar_fd({{{0, 1}, 0.5}, {{0, -1}, 0.5}})};
  Complex val = de_rham_limit(args);
  CHECK(std::abs(val - Complex(0.0, -kPi / 4.0)) < 1e-12);
  std::vector<FourierData> deg0 = {sincos_a0()};
  CHECK(std::abs(de_rham_limit(deg0)) == 0.0);
}

TEST_CASE("k-pairing with e = 1 collapses to the supertrace") {
  SpectralModel landau = landau_model(3, 48);
  PairingResult pr = k_pairing_index(landau, 0.2);
  CHECK(std::abs(pr.pairing - Complex(3.0)) < 1e-8);
  CHECK(pr.spectral_index == 3);
}

TEST_CASE("spectral index of the Bott projection at a small cutoff") {
  IdempotentField bott = bott_projection(48);
  FourierData ef = fourier_coefficients(bott, 6);
  SpectralIndexResult si = spectral_index_compressed(8, ef);
  CHECK(std::abs(si.index) == 1);
  CHECK(si.near_zero_count == 1);
  CHECK(si.gap_above > 50.0 * std::max(si.gap_below, 1e-300));
}

TEST_CASE("conjugation expansion residual has the right slope") {
  FlatTorusAlgebra alg(4, 1);
  FourierData a = scalar_fd({{{1, 0}, 0.5}, {{-1, 0}, 0.5}});
  std::vector<double> ts = {3.2e-4, 1.6e-4, 8e-5, 4e-5, 2e-5};
  ConjugationFit fit = conjugation_expansion_check(alg, a, 1, ts);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.15));
}
