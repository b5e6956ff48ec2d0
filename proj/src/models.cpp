#include "models.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "fourier.hpp"

namespace heatindex {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

int SpectralModel::zero_mode_index() const {
  int idx = 0;
  for (const auto& p : eigenpairs)
    if (p.lambda == 0.0) idx += p.chirality * p.multiplicity;
  return idx;
}

double SpectralModel::truncation_tail(double t) const {
  if (t <= 0.0) throw std::invalid_argument("truncation_tail requires t > 0");
  // Unsigned spectral mass of the dropped levels, summed from the exact
  // level structure of each model until terms fall below 1e-300.
  double tail = 0.0;
  switch (kind) {
    case ModelKind::FlatTorus: {
      for (int r = cutoff + 1;; ++r) {
        // modes with |m|_inf = r have m^2+n^2 >= r^2; 8r of them, 2 spinor states
        double term = 16.0 * r * std::exp(-t * kTwoPi * kTwoPi * r * r);
        tail += term;
        if (term < 1e-300 || r > cutoff + 100000) break;
      }
      break;
    }
    case ModelKind::Landau: {
      double b = kTwoPi * std::abs(flux);
      // both chirality branches resume at D^2 = 2B(N+1)
      double q = std::exp(-2.0 * b * t);
      tail = 2.0 * std::abs(flux) * std::pow(q, cutoff + 1) / (1.0 - q);
      break;
    }
    case ModelKind::Monopole: {
      int aq = std::abs(charge);
      for (int n = cutoff + 1;; ++n) {
        double term =
            2.0 * (2.0 * n + aq) * std::exp(-t * n * (n + aq));
        tail += term;
        if (term < 1e-300 || n > cutoff + 100000) break;
      }
      break;
    }
  }
  return tail;
}

void SpectralModel::write_spectrum_csv(std::ostream& os) const {
  os << "eigenvalue,chirality,multiplicity,label\n";
  os.precision(17);
  for (const auto& p : eigenpairs)
    os << p.lambda << "," << p.chirality << "," << p.multiplicity << "," << p.label
       << "\n";
}

SpectralModel flat_torus_dirac(int mode_cutoff) {
  if (mode_cutoff < 2) throw std::invalid_argument("flat torus cutoff must be >= 2");
  SpectralModel m;
  m.kind = ModelKind::FlatTorus;
  m.name = "flat-torus";
  m.cutoff = mode_cutoff;
  for (int mm = -mode_cutoff; mm <= mode_cutoff; ++mm)
    for (int nn = -mode_cutoff; nn <= mode_cutoff; ++nn) {
      double lambda = kTwoPi * std::hypot(mm, nn);
      std::string label = "(" + std::to_string(mm) + "," + std::to_string(nn) + ")";
      m.eigenpairs.push_back({lambda, +1, 1, label});
      m.eigenpairs.push_back({lambda, -1, 1, label});
    }
  LichnerowiczTerms lich;
  lich.bochner.reserve(m.eigenpairs.size());
  for (const auto& p : m.eigenpairs) lich.bochner.push_back(p.lambda * p.lambda);
  m.lichnerowicz = std::move(lich);
  return m;
}

SpectralModel landau_model(int flux, int level_cutoff) {
  if (flux == 0)
    throw std::invalid_argument("landau_model requires nonzero flux; use flat_torus_dirac");
  if (level_cutoff < 1) throw std::invalid_argument("level cutoff must be >= 1");
  SpectralModel m;
  m.kind = ModelKind::Landau;
  m.name = "landau";
  m.cutoff = level_cutoff;
  m.flux = flux;
  m.twist_curvature = Complex(0.0, -kTwoPi * flux);  // curvature -2*pi*i*k dx^dy
  const double b = kTwoPi * std::abs(flux);
  const int sign = flux > 0 ? +1 : -1;
  const int mult = std::abs(flux);
  LichnerowiczTerms lich;
  // Bochner Landau levels B(2n+1); the Clifford twist term shifts them to
  // 2Bn / 2B(n+1) on the chirality-aligned / anti-aligned components.
  lich.twist_plus = -kTwoPi * flux;
  lich.twist_minus = kTwoPi * flux;
  for (int n = 0; n <= level_cutoff; ++n) {
    m.eigenpairs.push_back(
        {std::sqrt(2.0 * b * n), sign, mult, "level+" + std::to_string(n)});
    lich.bochner.push_back(b * (2.0 * n + 1.0));
  }
  for (int n = 0; n < level_cutoff; ++n) {
    m.eigenpairs.push_back(
        {std::sqrt(2.0 * b * (n + 1)), -sign, mult, "level-" + std::to_string(n)});
    lich.bochner.push_back(b * (2.0 * n + 1.0));
  }
  m.lichnerowicz = std::move(lich);
  return m;
}

SpectralModel monopole_model(int charge, int angular_cutoff) {
  if (angular_cutoff < 1) throw std::invalid_argument("angular cutoff must be >= 1");
  SpectralModel m;
  m.kind = ModelKind::Monopole;
  m.name = "monopole";
  m.cutoff = angular_cutoff;
  m.charge = charge;
  const int aq = std::abs(charge);
  if (charge != 0)
    m.eigenpairs.push_back({0.0, charge > 0 ? +1 : -1, aq, "zero"});
  for (int n = 1; n <= angular_cutoff; ++n) {
    double lambda = std::sqrt(static_cast<double>(n) * (n + aq));
    m.eigenpairs.push_back({lambda, +1, 2 * n + aq, "n=" + std::to_string(n)});
    m.eigenpairs.push_back({lambda, -1, 2 * n + aq, "n=" + std::to_string(n)});
  }
  if (charge == 0) {
    // Unit round sphere: D^2 = Delta + r/4 with r = 2.
    LichnerowiczTerms lich;
    lich.scalar_curvature = 2.0;
    for (const auto& p : m.eigenpairs)
      lich.bochner.push_back(p.lambda * p.lambda - 0.5);
    m.lichnerowicz = std::move(lich);
  }
  return m;
}

double lichnerowicz_residual(const SpectralModel& model) {
  if (!model.lichnerowicz)
    throw std::domain_error("model does not carry a Lichnerowicz decomposition");
  const auto& lich = *model.lichnerowicz;
  if (lich.bochner.size() != model.eigenpairs.size())
    throw std::domain_error("Lichnerowicz data does not match the spectrum");
  double worst = 0.0;
  for (std::size_t i = 0; i < model.eigenpairs.size(); ++i) {
    const auto& p = model.eigenpairs[i];
    double twist = p.chirality > 0 ? lich.twist_plus : lich.twist_minus;
    double assembled = lich.bochner[i] + twist + 0.25 * lich.scalar_curvature;
    worst = std::max(worst, std::abs(p.lambda * p.lambda - assembled));
  }
  return worst;
}

FourierData FourierData::scalar(const std::map<std::pair<int, int>, Complex>& c) {
  FourierData f;
  f.rank = 1;
  for (const auto& [key, v] : c) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = v;
    f.coeffs[key] = m;
  }
  return f;
}

Eigen::MatrixXcd FourierData::evaluate(double x, double y) const {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rank, rank);
  for (const auto& [key, m] : coeffs) {
    double phase = kTwoPi * (key.first * x + key.second * y);
    acc += Complex(std::cos(phase), std::sin(phase)) * m;
  }
  return acc;
}

double FourierData::l1_norm() const {
  double s = 0.0;
  for (const auto& [key, m] : coeffs) s += m.operatorNorm();
  return s;
}

int FourierData::support_radius() const {
  int r = 0;
  for (const auto& [key, m] : coeffs)
    r = std::max({r, std::abs(key.first), std::abs(key.second)});
  return r;
}

FourierData& FourierData::add(const std::pair<int, int>& key, const Eigen::MatrixXcd& m) {
  auto it = coeffs.find(key);
  if (it == coeffs.end())
    coeffs[key] = m;
  else
    it->second += m;
  return *this;
}

FlatTorusAlgebra::FlatTorusAlgebra(int mode_cutoff, int rank)
    : cutoff_(mode_cutoff), rank_(rank) {
  if (mode_cutoff < 2) throw std::invalid_argument("mode cutoff must be >= 2");
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  const int axis = modes_per_axis();
  dim_ = 2 * axis * axis * rank;
  d2_.resize(dim_);
  gamma_.resize(dim_);
  for (int m = -cutoff_; m <= cutoff_; ++m)
    for (int n = -cutoff_; n <= cutoff_; ++n)
      for (int s = 0; s < 2; ++s)
        for (int c = 0; c < rank_; ++c) {
          int b = basis_index(m, n, s, c);
          d2_[b] = kTwoPi * kTwoPi * (m * m + n * n);
          gamma_[b] = (s == 0) ? +1 : -1;
        }
}

int FlatTorusAlgebra::basis_index(int m, int n, int spinor, int component) const {
  const int axis = modes_per_axis();
  int im = m + cutoff_, in = n + cutoff_;
  if (im < 0 || im >= axis || in < 0 || in >= axis)
    throw std::out_of_range("mode outside the truncation");
  return ((im * axis + in) * 2 + spinor) * rank_ + component;
}

double FlatTorusAlgebra::max_d2() const {
  return kTwoPi * kTwoPi * 2.0 * cutoff_ * cutoff_;
}

Eigen::MatrixXcd FlatTorusAlgebra::dirac_dense() const {
  // D acts per mode as -2*pi*(m sigma1 + n sigma2) and trivially on the
  // coefficient factor.
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(dim_, dim_);
  const Complex I(0.0, 1.0);
  for (int m = -cutoff_; m <= cutoff_; ++m)
    for (int n = -cutoff_; n <= cutoff_; ++n)
      for (int c = 0; c < rank_; ++c) {
        int up = basis_index(m, n, 0, c);
        int dn = basis_index(m, n, 1, c);
        d(up, dn) = -kTwoPi * (static_cast<double>(m) - I * static_cast<double>(n));
        d(dn, up) = -kTwoPi * (static_cast<double>(m) + I * static_cast<double>(n));
      }
  return d;
}

OperatorMatrix FlatTorusAlgebra::multiplication_operator(const FourierData& a) const {
  if (a.rank != rank_)
    throw std::invalid_argument("Fourier data rank does not match the algebra");
  OperatorMatrix out;
  out.mat = Eigen::MatrixXcd::Zero(dim_, dim_);
  out.parity = Parity::Even;
  out.truncation_warning = 2 * a.support_radius() > cutoff_;
  for (const auto& [key, coeff] : a.coeffs) {
    const auto [p, q] = key;
    for (int m = -cutoff_; m <= cutoff_; ++m) {
      if (m + p < -cutoff_ || m + p > cutoff_) continue;
      for (int n = -cutoff_; n <= cutoff_; ++n) {
        if (n + q < -cutoff_ || n + q > cutoff_) continue;
        for (int s = 0; s < 2; ++s)
          for (int ca = 0; ca < rank_; ++ca)
            for (int cb = 0; cb < rank_; ++cb)
              out.mat(basis_index(m + p, n + q, s, ca), basis_index(m, n, s, cb)) +=
                  coeff(ca, cb);
      }
    }
  }
  return out;
}

OperatorMatrix FlatTorusAlgebra::dirac_commutator(const OperatorMatrix& a) const {
  Eigen::MatrixXcd d = dirac_dense();
  OperatorMatrix out;
  out.mat = d * a.mat - a.mat * d;
  out.parity = (a.parity == Parity::Even) ? Parity::Odd : Parity::Even;
  out.truncation_warning = a.truncation_warning;
  return out;
}

OperatorMatrix FlatTorusAlgebra::dirac_commutator(const FourierData& a) const {
  return dirac_commutator(multiplication_operator(a));
}

OperatorMatrix FlatTorusAlgebra::iterated_commutator(const OperatorMatrix& x, int k) const {
  if (k < 0) throw std::invalid_argument("iterated_commutator requires k >= 0");
  OperatorMatrix out = x;
  for (int step = 0; step < k; ++step) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) out.mat(i, j) *= (d2_[i] - d2_[j]);
  }
  return out;
}

IdempotentField bott_projection(int grid_size) {
  if (grid_size < 16) throw std::invalid_argument("bott_projection grid must be >= 16");
  IdempotentField e(TorusGrid{grid_size}, 2);
  const Complex I(0.0, 1.0);
  for (int i = 0; i < grid_size; ++i)
    for (int j = 0; j < grid_size; ++j) {
      double x = static_cast<double>(i) / grid_size;
      double y = static_cast<double>(j) / grid_size;
      double v1 = std::sin(kTwoPi * x);
      double v2 = std::sin(kTwoPi * y);
      double v3 = 1.0 - std::cos(kTwoPi * x) - std::cos(kTwoPi * y);
      double norm = std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);  // >= 1 on the torus
      v1 /= norm;
      v2 /= norm;
      v3 /= norm;
      Eigen::Matrix2cd m;
      m << 1.0 + v3, v1 - I * v2, v1 + I * v2, 1.0 - v3;
      e[static_cast<std::size_t>(i) * grid_size + j] = 0.5 * m;
    }
  return e;
}

FourierData fourier_coefficients(const IdempotentField& e, int support,
                                 double* dropped_l1) {
  const auto* torus = std::get_if<TorusGrid>(&e.domain());
  if (!torus)
    throw std::invalid_argument("fourier_coefficients requires a torus-domain field");
  const int n = torus->n;
  const int k = e.rank();
  if (2 * support + 1 > n)
    throw std::invalid_argument("requested Fourier support exceeds the grid");
  FourierData f;
  f.rank = k;
  std::vector<Complex> grid(e.size());
  double dropped = 0.0;
  std::vector<std::vector<Complex>> coefs(static_cast<std::size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      for (std::size_t i = 0; i < e.size(); ++i) grid[i] = e[i](a, b);
      coefs[static_cast<std::size_t>(a) * k + b] = dft2_forward(grid, n);
    }
  auto signed_bin = [n](int k) { return k <= n / 2 ? k : k - n; };
  for (int ip = 0; ip < n; ++ip)
    for (int iq = 0; iq < n; ++iq) {
      int p = signed_bin(ip);
      int q = signed_bin(iq);
      Eigen::MatrixXcd m(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          m(a, b) = coefs[static_cast<std::size_t>(a) * k + b][ip * n + iq];
      if (std::abs(p) <= support && std::abs(q) <= support)
        f.add({p, q}, m);
      else
        dropped += m.operatorNorm();
    }
  if (dropped_l1) *dropped_l1 = dropped;
  return f;
}

}  // namespace heatindex
