// Small separable DFT utilities for periodic N x N grids on the unit torus.
// Grid convention: node (i, j) at (x, y) = (i/N, j/N), row-major index i*N + j.
#pragma once

#include <vector>

#include "multivector.hpp"

namespace heatindex {

// Forward transform: coef[p*N+q] = (1/N^2) sum_{ij} f(i,j) e^{-2 pi i (p i + q j)/N}.
std::vector<Complex> dft2_forward(const std::vector<Complex>& grid, int n);

// Inverse transform: f(i,j) = sum_{pq} coef[p*N+q] e^{+2 pi i (p i + q j)/N}.
std::vector<Complex> dft2_inverse(const std::vector<Complex>& coef, int n);

// Signed wavenumber of DFT bin k on an N-point axis (Nyquist bin mapped to 0,
// which is the right convention for spectral differentiation).
int signed_wavenumber(int k, int n);

// Spectral partial derivatives d/dx, d/dy of a smooth periodic grid function.
void spectral_derivatives(const std::vector<Complex>& grid, int n,
                          std::vector<Complex>& ddx, std::vector<Complex>& ddy);

}  // namespace heatindex
