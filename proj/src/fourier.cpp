#include "fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heatindex {

namespace {

// One-axis DFT applied to every row (stride 1) or column (stride n) of an
// n x n grid. sign = -1 forward, +1 inverse. O(n^3), fine at desk scale.
void dft_axis(std::vector<Complex>& data, int n, bool rows, int sign) {
  std::vector<Complex> twiddle(n);
  for (int k = 0; k < n; ++k) {
    double ang = sign * 2.0 * std::numbers::pi * k / n;
    twiddle[k] = Complex(std::cos(ang), std::sin(ang));
  }
  std::vector<Complex> line(n), out(n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) line[t] = rows ? data[s * n + t] : data[t * n + s];
    for (int k = 0; k < n; ++k) {
      Complex acc(0.0);
      for (int t = 0; t < n; ++t) acc += line[t] * twiddle[(k * t) % n];
      out[k] = acc;
    }
    for (int k = 0; k < n; ++k) (rows ? data[s * n + k] : data[k * n + s]) = out[k];
  }
}

}  // namespace

std::vector<Complex> dft2_forward(const std::vector<Complex>& grid, int n) {
  if (static_cast<int>(grid.size()) != n * n)
    throw std::invalid_argument("dft2_forward: grid size mismatch");
  std::vector<Complex> data = grid;
  dft_axis(data, n, /*rows=*/true, -1);
  dft_axis(data, n, /*rows=*/false, -1);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (Complex& c : data) c *= scale;
  return data;
}

std::vector<Complex> dft2_inverse(const std::vector<Complex>& coef, int n) {
  if (static_cast<int>(coef.size()) != n * n)
    throw std::invalid_argument("dft2_inverse: coefficient size mismatch");
  std::vector<Complex> data = coef;
  dft_axis(data, n, /*rows=*/true, +1);
  dft_axis(data, n, /*rows=*/false, +1);
  return data;
}

int signed_wavenumber(int k, int n) {
  int m = (k <= n / 2) ? k : k - n;
  if (n % 2 == 0 && k == n / 2) m = 0;
  return m;
}

void spectral_derivatives(const std::vector<Complex>& grid, int n,
                          std::vector<Complex>& ddx, std::vector<Complex>& ddy) {
  const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> coef = dft2_forward(grid, n);
  std::vector<Complex> cx(coef.size()), cy(coef.size());
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      Complex c = coef[p * n + q];
      cx[p * n + q] = c * two_pi_i * static_cast<double>(signed_wavenumber(p, n));
      cy[p * n + q] = c * two_pi_i * static_cast<double>(signed_wavenumber(q, n));
    }
  }
  ddx = dft2_inverse(cx, n);
  ddy = dft2_inverse(cy, n);
}

}  // namespace heatindex
