// Heat-kernel side: truncated supertraces with tail bounds, the harmonic
// oscillator (Mehler) kernel with an independent Crank-Nicolson oracle,
// and the degree-weighted rescaling transform with its small-u limit check.
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "models.hpp"
#include "multivector.hpp"

namespace heatindex {

struct SupertraceResult {
  double value;
  double tail_bound;
};

// Sum of chirality * multiplicity * exp(-t lambda^2) over the retained
// spectrum; throws std::invalid_argument for t <= 0.
SupertraceResult heat_supertrace(const SpectralModel& model, double t);

// Oscillator heat kernel
//   (4 pi t)^{-n/2} det^{1/2}(tR/2 / sinh(tR/2))
//     * exp(-(1/4t) <v, (tR/2) coth(tR/2) v>) * exp(-t F)
// for a real antisymmetric R (n = 2), evaluated on the skew parameter
// b = R01, matching the magnetic realization solved by the oracle below.
double mehler_kernel(const Eigen::Matrix2d& curvature, double twist, double t,
                     const Eigen::Vector2d& v);

struct OracleGrid {
  double r_max = 7.0;        // radial domain size
  int base_cells = 512;      // coarsest resolution
  int refinements = 2;       // additional dyadic levels
  int base_steps = 500;      // time steps at the coarsest level
  double ic_width = 5e-3;    // Gaussian initial data carries this much heat time
};

struct OracleResult {
  std::vector<double> value_per_level;  // kernel at v = 0, one per resolution
  double extrapolated = 0.0;            // Richardson limit in grid spacing
  double measured_order = 0.0;          // self-convergence slope
  double mass = 0.0;                    // spatial integral at the final time
};

// Independent Crank-Nicolson solve of (d_t + K) p = 0 for the magnetic
// oscillator K = -sum_i (d_i + (i b/4) (Jv)_i)^2 + F, which on radial
// functions reduces exactly to -(1/r) d_r (r d_r) + (b^2/16) r^2 + F.
// The initial Gaussian is treated as the kernel at time ic_width and the
// solve is extrapolated to the delta limit over widths {ic, ic/2}.
// Throws std::runtime_error if self-convergence collapses.
OracleResult oscillator_fd_oracle(double b, double twist, double t, const OracleGrid& grid);

// One sampled kernel value.
struct KernelSample {
  double t;
  Eigen::Vector2d v;
  MultiVector value;   // over the 2-generator coframe
  Complex twist{1.0};  // optional scalar factor carried alongside
};

using KernelFn = std::function<MultiVector(double, const Eigen::Vector2d&)>;

// Degree-weighted rescaling r(u,t,v) = sum_i u^{(dim-i)/2} k(ut, sqrt(u) v)_{[i]}.
// Requires u in (0,1].
KernelFn getzler_rescale(KernelFn kernel, double u, int manifold_dim);

// Heat kernel of the unit-area flat torus at offset v (lattice-summed
// Gaussian), times the symbol of exp(-t f gamma1 gamma2) for a constant
// twist strength f: theta(t,v) * (cos(tf) - sin(tf) e1^e2).
MultiVector flat_twisted_kernel(double t, const Eigen::Vector2d& v, double twist_f);

struct RescaleRow {
  double u;
  double error;
};

struct RescaleCheck {
  std::vector<RescaleRow> rows;
  double fitted_exponent = 0.0;    // least-squares log-log slope
  bool exponent_at_floor = false;  // errors hit the numerical floor
  MultiVector limit_value{2};      // r(u_min, 1, 0)
  MultiVector target{2};           // (4 pi)^{-1} exterior exp(-f e1^e2)
};

// Tabulates || r(u,1,0) - (4 pi)^{-dim/2} e^{-F} || over a decreasing
// u-sequence for the flat torus with constant twist f, and fits the
// convergence exponent.
RescaleCheck rescaled_limit_check(double twist_f, std::span<const double> u_sequence);

}  // namespace heatindex
