// JLO cochain machinery: simplex-exact divided differences of the heat
// semigroup, simplex monomial moments, cochain evaluation on the flat
// torus, small-time extrapolation against the de Rham limit, and the
// K-theory index pairing.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "charclass.hpp"
#include "models.hpp"

namespace heatindex {

// Exact nonnegative rational, normalized with positive denominator.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);
  double to_double() const { return static_cast<double>(num) / den; }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator+(const Rational& a, const Rational& b);
};

// Moment integral over the standard n-simplex of sigma_1^{k1}...sigma_n^{kn}
// with sigma_j = s_0 + ... + s_{j-1}:
//   1 / ((k1+1)(k1+k2+2)...(k1+...+kn+n)).
// The displayed c(k1,...,kn) equals this times (-1)^{sum k} / (k1!...kn!).
Rational simplex_moment(std::span<const int> k);

// Simplex heat integral int_{Delta_n} exp(-t sum_i s_i lambda_i) ds,
// i.e. the n-th divided difference of exp at the nodes {-t lambda_i},
// computed from the corner entry of the exponential of the bidiagonal
// node matrix (scaling and squaring); stable under coincident nodes and
// symmetric in the lambda_i.  Supports up to 9 nodes.
double divided_difference_exp(std::span<const double> lambdas, double t);

struct JloResult {
  Complex value{0.0};
  double tail_estimate = 0.0;
  double t = 0.0;
  int degree = 0;
  bool truncation_warning = false;
};

// JLO_n^t(a_0,...,a_n) on the truncated flat torus, n = args.size()-1 even.
// Evaluated as the eigenmode path sum with exact matrix elements and the
// simplex integral carried by divided_difference_exp.
JloResult jlo_cochain(const FlatTorusAlgebra& algebra, std::span<const FourierData> args,
                      double t);

// Degree-0 cochain of a constant function on any spectral model:
// a0 * Str(exp(-t D^2)).
JloResult jlo_cochain(const SpectralModel& model, Complex a0_constant, double t);

// de Rham limit value for the untwisted flat torus:
//   (1/(n! (2 i pi)^{n/2})) int a_0 da_1 ... da_n   (n = 0 or 2).
Complex de_rham_limit(std::span<const FourierData> args, int quadrature_grid = 64);

struct SmallTRow {
  double t;
  Complex value;
  double tail_estimate;
};

struct SmallTLimit {
  std::vector<SmallTRow> rows;
  Complex extrapolated{0.0};
  Complex de_rham{0.0};
  double discrepancy = 0.0;  // relative where the de Rham side is nonzero
};

// Richardson extrapolation (orders 1 then 2) of the cochain over a
// decreasing t-sequence inside the truncation stability window
// t * max(D^2) >= 5; throws std::domain_error when the window is violated.
SmallTLimit jlo_small_t_limit(const FlatTorusAlgebra& algebra,
                              std::span<const FourierData> args,
                              std::span<const double> t_sequence);

// Entire-cyclic Chern pairing truncated at degree_cap:
//   JLO_0(tr e) + sum_{k>=1} (-1)^k (2k)!/k! JLO_{2k}(e - 1/2, e, ..., e).
Complex jlo_pairing(const FlatTorusAlgebra& algebra, const FourierData& e_fourier,
                    double t, int degree_cap);

struct SpectralIndexResult {
  int index = 0;
  int near_zero_count = 0;
  double gap_below = 0.0;  // largest singular value inside the near-zero set
  double gap_above = 0.0;  // smallest singular value outside it
};

// Signed count of near-zero singular values of the chiral block of the
// compressed operator P_e D P_e, classified by infrared localization of the
// left/right singular vectors (a localized partner on only one chirality is
// a genuine zero mode; both localized is a paired zero crossing).
// Throws std::domain_error when no clean spectral gap is visible.
SpectralIndexResult spectral_index_compressed(int mode_cutoff, const FourierData& e_fourier);

struct PairingResult {
  Complex pairing{0.0};
  int spectral_index = 0;
  double gap_below = 0.0;
  double gap_above = 0.0;
};

// e = 1: the pairing collapses to the heat supertrace and the spectral
// index to the signed zero-mode count.
PairingResult k_pairing_index(const SpectralModel& model, double t);
// Matrix idempotent on the flat torus.
PairingResult k_pairing_index(int mode_cutoff, const IdempotentField& e, double t,
                              int degree_cap, int fourier_support = 8);

struct ConjugationFit {
  std::vector<std::pair<double, double>> residuals;  // (t, Frobenius residual)
  double slope = 0.0;
};

// Residual of the truncated conjugation expansion
//   exp(-tD^2) a exp(tD^2) - sum_{k<=K} (-t)^k/k! ad^k(D^2)(a)
// over a t-sweep, with the fitted log-log slope (expected K+1).
ConjugationFit conjugation_expansion_check(const FlatTorusAlgebra& algebra,
                                           const FourierData& a, int order_k,
                                           std::span<const double> t_sequence);

}  // namespace heatindex
