// Exactly solvable Dirac models: closed-form spectra with chirality
// bookkeeping (flat torus, Landau-twisted torus, monopole sphere), and a
// truncated matrix realization of the flat-torus operator algebra
// (multiplication operators, Dirac commutators, iterated commutators).
#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charclass.hpp"
#include "multivector.hpp"

namespace heatindex {

enum class ModelKind { FlatTorus, Landau, Monopole };

// One per-chirality level of D^2: lambda = sqrt of the D^2 eigenvalue on the
// given chirality subspace.  The Dirac spectrum itself is {+-lambda}.
struct Eigenpair {
  double lambda;
  int chirality;  // +1 or -1
  int multiplicity;
  std::string label;
};

// Independently assembled Lichnerowicz pieces: per-eigenpair Bochner
// eigenvalue, the chirality-diagonal twist term, and the scalar curvature.
struct LichnerowiczTerms {
  std::vector<double> bochner;
  double twist_plus = 0.0;
  double twist_minus = 0.0;
  double scalar_curvature = 0.0;
};

class SpectralModel {
 public:
  ModelKind kind;
  std::string name;
  int dimension = 2;
  std::vector<Eigenpair> eigenpairs;
  int cutoff = 0;
  int flux = 0;    // Landau
  int charge = 0;  // monopole
  Complex twist_curvature{0.0, 0.0};  // coefficient of dx^dy for the twist 2-form
  std::optional<LichnerowiczTerms> lichnerowicz;

  // Signed count of zero modes (the operator index).
  int zero_mode_index() const;
  // Unsigned bound on the spectral mass dropped by the truncation at time t.
  double truncation_tail(double t) const;

  void write_spectrum_csv(std::ostream& os) const;
};

SpectralModel flat_torus_dirac(int mode_cutoff);            // mode_cutoff >= 2
SpectralModel landau_model(int flux, int level_cutoff);     // flux != 0, levels >= 1
SpectralModel monopole_model(int charge, int angular_cutoff);

// Operator norm of D^2 - (Delta + F + r/4) over the truncated levels.
// Throws std::domain_error if the model carries no decomposition data.
double lichnerowicz_residual(const SpectralModel& model);

// Matrix-valued trigonometric polynomial sum_{pq} c(p,q) e^{2 pi i(px+qy)}.
struct FourierData {
  int rank = 1;
  std::map<std::pair<int, int>, Eigen::MatrixXcd> coeffs;

  static FourierData scalar(const std::map<std::pair<int, int>, Complex>& c);
  Eigen::MatrixXcd evaluate(double x, double y) const;
  double l1_norm() const;     // sum of operator norms of the coefficients
  int support_radius() const; // max |p|_inf over the support
  FourierData& add(const std::pair<int, int>& key, const Eigen::MatrixXcd& m);
};

enum class Parity { Even, Odd };

struct OperatorMatrix {
  Eigen::MatrixXcd mat;
  Parity parity = Parity::Even;
  bool truncation_warning = false;
};

// Galerkin compression of the flat-torus operator algebra onto plane waves
// |m|,|n| <= cutoff, two spinor components, optionally amplified by a rank-k
// coefficient factor.  Basis index: ((mode_x, mode_y), spinor, component)
// with component fastest.  D^2 is diagonal in this basis.
class FlatTorusAlgebra {
 public:
  explicit FlatTorusAlgebra(int mode_cutoff, int rank = 1);

  int cutoff() const { return cutoff_; }
  int rank() const { return rank_; }
  int modes_per_axis() const { return 2 * cutoff_ + 1; }
  int dim() const { return dim_; }

  int basis_index(int m, int n, int spinor, int component) const;
  double d2_eigenvalue(int basis) const { return d2_[basis]; }
  int gamma_sign(int basis) const { return gamma_[basis]; }
  double max_d2() const;

  Eigen::MatrixXcd dirac_dense() const;

  // Matrix elements are exact between retained modes; a warning flag is set
  // when the Fourier support exceeds half the cutoff.
  OperatorMatrix multiplication_operator(const FourierData& a) const;
  OperatorMatrix dirac_commutator(const OperatorMatrix& a) const;
  OperatorMatrix dirac_commutator(const FourierData& a) const;
  // ad^k(D^2): entrywise multiplication by (mu_i - mu_j)^k.
  OperatorMatrix iterated_commutator(const OperatorMatrix& x, int k) const;

 private:
  int cutoff_;
  int rank_;
  int dim_;
  std::vector<double> d2_;
  std::vector<int> gamma_;
};

// Smooth degree-1 idempotent e = (1 + v.sigma)/2 on the N x N torus grid,
// built from the normalized map (sin 2πx, sin 2πy, 1 - cos 2πx - cos 2πy).
// Exactly idempotent and rank 1 at every node.  Requires N >= 16.
IdempotentField bott_projection(int grid_size);

// Fourier coefficients of a torus idempotent field truncated to
// |p|,|q| <= support; dropped_l1 reports the discarded coefficient mass.
FourierData fourier_coefficients(const IdempotentField& e, int support,
                                 double* dropped_l1 = nullptr);

}  // namespace heatindex
