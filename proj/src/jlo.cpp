#include "jlo.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "heat.hpp"

namespace heatindex {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num * b.num, a.den * b.den);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

Rational simplex_moment(std::span<const int> k) {
  if (k.empty()) throw std::invalid_argument("simplex_moment requires n >= 1");
  long long den = 1;
  long long partial = 0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (k[j] < 0) throw std::invalid_argument("multi-index entries must be >= 0");
    partial += k[j];
    den *= partial + static_cast<long long>(j) + 1;
  }
  return Rational(1, den);
}

double divided_difference_exp(std::span<const double> lambdas, double t) {
  if (t <= 0.0) throw std::invalid_argument("divided_difference_exp requires t > 0");
  const int m = static_cast<int>(lambdas.size());
  if (m < 1 || m > 9)
    throw std::invalid_argument("divided_difference_exp supports 1..9 nodes");
  if (m == 1) return std::exp(-t * lambdas[0]);

  // Opitz: exp of the upper bidiagonal matrix with the nodes -t*lambda_i on
  // the diagonal and ones above it has the divided difference in the corner.
  double shift = 0.0;
  for (double l : lambdas) shift += -t * l;
  shift /= m;

  double a[9][9] = {};  // shifted node matrix
  double spread = 0.0;
  for (int i = 0; i < m; ++i) {
    a[i][i] = -t * lambdas[i] - shift;
    spread = std::max(spread, std::abs(a[i][i]));
    if (i + 1 < m) a[i][i + 1] = 1.0;
  }
  int squarings = 0;
  double norm = spread + 1.0;
  while (norm > 0.5 && squarings < 64) {
    norm *= 0.5;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (int i = 0; i < m; ++i) {
    a[i][i] *= scale;
    if (i + 1 < m) a[i][i + 1] = scale;
  }

  // Taylor series; everything stays upper triangular.
  double acc[9][9] = {}, term[9][9] = {}, next[9][9];
  for (int i = 0; i < m; ++i) {
    acc[i][i] = 1.0;
    term[i][i] = 1.0;
  }
  for (int k = 1; k <= 40; ++k) {
    double maxterm = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double s = 0.0;
        for (int l = i; l <= j; ++l) s += term[i][l] * a[l][j];
        next[i][j] = s / k;
        maxterm = std::max(maxterm, std::abs(next[i][j]));
      }
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        term[i][j] = next[i][j];
        acc[i][j] += term[i][j];
      }
    if (maxterm < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) {
    double sq[9][9] = {};
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double v = 0.0;
        for (int l = i; l <= j; ++l) v += acc[i][l] * acc[l][j];
        sq[i][j] = v;
      }
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) acc[i][j] = sq[i][j];
  }
  return std::exp(shift) * acc[0][m - 1];
}

namespace {

Eigen::Matrix2cd spinor_shift(const std::pair<int, int>& p) {
  // [D, e^{2 pi i p.x}] acts per mode as -2 pi (p1 sigma1 + p2 sigma2).
  Eigen::Matrix2cd k;
  const Complex I(0.0, 1.0);
  k << 0.0, -kTwoPi * (static_cast<double>(p.first) - I * static_cast<double>(p.second)),
      -kTwoPi * (static_cast<double>(p.first) + I * static_cast<double>(p.second)), 0.0;
  return k;
}

struct KahanSum {
  Complex sum{0.0};
  Complex comp{0.0};
  void add(Complex x) {
    Complex y = x - comp;
    Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// Path weight that does not depend on the base mode: the spinor supertrace
// of the shift chain times the coefficient-matrix trace.
struct ShiftTuple {
  std::vector<std::pair<int, int>> shifts;  // p_0 ... p_n
  Complex weight;
};

void enumerate_tuples(std::span<const FourierData> args, std::size_t level,
                      std::vector<std::pair<int, int>>& shifts,
                      std::vector<const Eigen::MatrixXcd*>& coeffs,
                      std::vector<ShiftTuple>& out) {
  const std::size_t n = args.size() - 1;
  if (level == n) {
    // Closing shift fixed by momentum conservation around the trace.
    std::pair<int, int> close{0, 0};
    for (const auto& p : shifts) {
      close.first -= p.first;
      close.second -= p.second;
    }
    auto it = args[n].coeffs.find(close);
    if (it == args[n].coeffs.end()) return;
    Eigen::Matrix2cd spin = Eigen::Matrix2cd::Identity();
    for (std::size_t j = 1; j < n; ++j) spin = spin * spinor_shift(shifts[j]);
    spin = spin * spinor_shift(close);
    Complex str = spin(0, 0) - spin(1, 1);  // Tr(sigma3 * chain)
    if (n == 0) str = 0.0;                  // Tr(sigma3) vanishes
    Eigen::MatrixXcd mat = *coeffs[0];
    for (std::size_t j = 1; j < n; ++j) mat = mat * (*coeffs[j]);
    Complex w = str * (mat * it->second).trace();
    if (w != Complex(0.0)) {
      ShiftTuple tup;
      tup.shifts = shifts;
      tup.shifts.push_back(close);
      tup.weight = w;
      out.push_back(std::move(tup));
    }
    return;
  }
  for (const auto& [p, c] : args[level].coeffs) {
    shifts.push_back(p);
    coeffs.push_back(&c);
    enumerate_tuples(args, level + 1, shifts, coeffs, out);
    shifts.pop_back();
    coeffs.pop_back();
  }
}

double tail_estimate_flat(const FlatTorusAlgebra& alg, std::span<const FourierData> args,
                          double t) {
  const int n = static_cast<int>(args.size()) - 1;
  int reach = 0;
  double amp = 2.0;  // spinor trace bound
  for (int j = 0; j <= n; ++j) {
    reach = std::max(reach, args[j].support_radius());
    double l1 = args[j].l1_norm();
    if (j > 0) l1 *= kTwoPi * std::sqrt(2.0) * args[j].support_radius();
    amp *= l1;
  }
  const int margin = n * reach;
  double nfact = 1.0;
  for (int j = 2; j <= n; ++j) nfact *= j;
  double tail = 0.0;
  for (int r = alg.cutoff() - margin + 1;; ++r) {
    if (r <= 0) continue;
    double mu = kTwoPi * kTwoPi * std::max(0, r - margin) * std::max(0, r - margin);
    double term = 8.0 * r * alg.rank() * amp * std::exp(-t * mu) / nfact;
    tail += term;
    if ((term < 1e-300 && r > alg.cutoff()) || r > alg.cutoff() + 100000) break;
  }
  return std::pow(t, 0.5 * n) * tail;
}

}  // namespace

JloResult jlo_cochain(const FlatTorusAlgebra& algebra, std::span<const FourierData> args,
                      double t) {
  if (t <= 0.0) throw std::invalid_argument("jlo_cochain requires t > 0");
  if (args.empty() || args.size() % 2 == 0)
    throw std::invalid_argument("jlo_cochain needs an odd argument count (even degree)");
  const int n = static_cast<int>(args.size()) - 1;
  for (const auto& a : args)
    if (a.rank != algebra.rank())
      throw std::invalid_argument("argument rank does not match the algebra");

  JloResult res;
  res.t = t;
  res.degree = n;
  for (const auto& a : args)
    res.truncation_warning |= 2 * a.support_radius() > algebra.cutoff();
  res.tail_estimate = tail_estimate_flat(algebra, args, t);
  if (n == 0) return res;  // spinor trace kills every term on the flat torus

  std::vector<ShiftTuple> tuples;
  {
    std::vector<std::pair<int, int>> shifts;
    std::vector<const Eigen::MatrixXcd*> coeffs;
    enumerate_tuples(args, 0, shifts, coeffs, tuples);
  }

  const int cut = algebra.cutoff();
  std::vector<double> nodes(static_cast<std::size_t>(n) + 1);
  KahanSum acc;
  for (const auto& tup : tuples) {
    for (int m0 = -cut; m0 <= cut; ++m0) {
      for (int n0 = -cut; n0 <= cut; ++n0) {
        int mm = m0, nn = n0;
        bool inside = true;
        // Mode path i_1 ... i_n, then back to the base mode.
        for (int j = 0; j < n; ++j) {
          mm -= tup.shifts[j].first;
          nn -= tup.shifts[j].second;
          if (mm < -cut || mm > cut || nn < -cut || nn > cut) {
            inside = false;
            break;
          }
          nodes[j] = kTwoPi * kTwoPi * (mm * mm + nn * nn);
        }
        if (!inside) continue;
        nodes[n] = kTwoPi * kTwoPi * (m0 * m0 + n0 * n0);
        acc.add(tup.weight * divided_difference_exp(nodes, t));
      }
    }
  }
  res.value = std::pow(t, 0.5 * n) * acc.sum;
  return res;
}

JloResult jlo_cochain(const SpectralModel& model, Complex a0_constant, double t) {
  SupertraceResult st = heat_supertrace(model, t);
  JloResult res;
  res.t = t;
  res.degree = 0;
  res.value = a0_constant * st.value;
  res.tail_estimate = std::abs(a0_constant) * st.tail_bound;
  return res;
}

namespace {

FourierData fourier_derivative(const FourierData& a, int axis) {
  FourierData d;
  d.rank = a.rank;
  const Complex two_pi_i(0.0, kTwoPi);
  for (const auto& [p, c] : a.coeffs) {
    int wave = (axis == 0) ? p.first : p.second;
    if (wave == 0) continue;
    d.coeffs[p] = two_pi_i * static_cast<double>(wave) * c;
  }
  return d;
}

}  // namespace

Complex de_rham_limit(std::span<const FourierData> args, int quadrature_grid) {
  if (args.size() != 1 && args.size() != 3)
    throw std::invalid_argument("de_rham_limit supports degrees 0 and 2");
  if (args.size() == 1) return Complex(0.0);  // no top-degree term from a_0 alone
  FourierData d1x = fourier_derivative(args[1], 0);
  FourierData d1y = fourier_derivative(args[1], 1);
  FourierData d2x = fourier_derivative(args[2], 0);
  FourierData d2y = fourier_derivative(args[2], 1);
  const int n = quadrature_grid;
  KahanSum acc;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double x = static_cast<double>(i) / n;
      double y = static_cast<double>(j) / n;
      Eigen::MatrixXcd jac = d1x.evaluate(x, y) * d2y.evaluate(x, y) -
                             d1y.evaluate(x, y) * d2x.evaluate(x, y);
      acc.add((args[0].evaluate(x, y) * jac).trace());
    }
  Complex integral = acc.sum / static_cast<double>(static_cast<long>(n) * n);
  const Complex two_i_pi(0.0, kTwoPi);
  return integral / (2.0 * two_i_pi);  // 1/(n! (2 i pi)^{n/2}) at n = 2
}

SmallTLimit jlo_small_t_limit(const FlatTorusAlgebra& algebra,
                              std::span<const FourierData> args,
                              std::span<const double> t_sequence) {
  if (t_sequence.size() < 3)
    throw std::invalid_argument("jlo_small_t_limit needs at least three t values");
  for (std::size_t i = 1; i < t_sequence.size(); ++i)
    if (!(t_sequence[i] < t_sequence[i - 1]))
      throw std::invalid_argument("t sequence must be strictly decreasing");
  const double window = 5.0;
  for (double t : t_sequence)
    if (t * algebra.max_d2() < window)
      throw std::domain_error(
          "t sequence leaves the truncation stability window: t*max(D^2) = " +
          std::to_string(t * algebra.max_d2()) + " < " + std::to_string(window));

  SmallTLimit out;
  for (double t : t_sequence) {
    JloResult r = jlo_cochain(algebra, args, t);
    out.rows.push_back({t, r.value, r.tail_estimate});
  }
  // Richardson table eliminating t then t^2 with per-step ratios.
  std::vector<Complex> level(out.rows.size());
  std::vector<double> ts(out.rows.size());
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    level[i] = out.rows[i].value;
    ts[i] = out.rows[i].t;
  }
  for (int order = 1; order <= 2; ++order) {
    std::vector<Complex> next(level.size() - 1);
    for (std::size_t j = 0; j + 1 < level.size(); ++j) {
      double r = std::pow(ts[j + 1] / ts[j], order);
      next[j] = (level[j + 1] - r * level[j]) / (1.0 - r);
    }
    level = std::move(next);
  }
  out.extrapolated = level.back();
  out.de_rham = de_rham_limit(args);
  double scale = std::abs(out.de_rham);
  out.discrepancy = std::abs(out.extrapolated - out.de_rham) / (scale > 0 ? scale : 1.0);
  return out;
}

Complex jlo_pairing(const FlatTorusAlgebra& algebra, const FourierData& e_fourier,
                    double t, int degree_cap) {
  if (degree_cap < 0 || degree_cap % 2 != 0)
    throw std::invalid_argument("degree cap must be even and >= 0");
  if (e_fourier.rank != algebra.rank())
    throw std::invalid_argument("idempotent rank does not match the algebra");
  // Degree-0 term: JLO_0(tr e), which vanishes identically on the flat torus
  // but is kept for the record (tail bookkeeping).
  Complex pairing(0.0);
  double factor = 1.0;
  for (int k = 1; 2 * k <= degree_cap; ++k) {
    factor *= -1.0;
    double coeff = factor;
    for (int j = k + 1; j <= 2 * k; ++j) coeff *= j;  // (2k)!/k!
    FourierData e_half = e_fourier;
    Eigen::MatrixXcd half =
        0.5 * Eigen::MatrixXcd::Identity(e_fourier.rank, e_fourier.rank);
    e_half.add({0, 0}, -half);
    std::vector<FourierData> chain(static_cast<std::size_t>(2 * k) + 1, e_fourier);
    chain[0] = e_half;
    pairing += coeff * jlo_cochain(algebra, chain, t).value;
  }
  return pairing;
}

SpectralIndexResult spectral_index_compressed(int mode_cutoff, const FourierData& e_fourier) {
  const int axis = 2 * mode_cutoff + 1;
  const int k = e_fourier.rank;
  const int s = axis * axis * k;  // one chirality sector, modes x components

  auto idx = [&](int m, int n, int c) {
    return ((m + mode_cutoff) * axis + (n + mode_cutoff)) * k + c;
  };

  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(s, s);
  for (const auto& [key, coeff] : e_fourier.coeffs) {
    const auto [pp, qq] = key;
    for (int m = -mode_cutoff; m <= mode_cutoff; ++m) {
      if (m + pp < -mode_cutoff || m + pp > mode_cutoff) continue;
      for (int n = -mode_cutoff; n <= mode_cutoff; ++n) {
        if (n + qq < -mode_cutoff || n + qq > mode_cutoff) continue;
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b) p(idx(m + pp, n + qq, a), idx(m, n, b)) += coeff(a, b);
      }
    }
  }
  p = 0.5 * (p + Eigen::MatrixXcd(p.adjoint())).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p);
  int rank = 0;
  for (int i = 0; i < s; ++i)
    if (es.eigenvalues()(i) > 0.5) ++rank;
  if (rank == 0 || rank == s)
    throw std::domain_error("compressed projection has no proper range");
  Eigen::MatrixXcd range = es.eigenvectors().rightCols(rank);

  // The chirality-reversing block of D is mode-diagonal: -2 pi (m + i n).
  Eigen::VectorXcd d(s);
  const Complex I(0.0, 1.0);
  for (int m = -mode_cutoff; m <= mode_cutoff; ++m)
    for (int n = -mode_cutoff; n <= mode_cutoff; ++n)
      for (int c = 0; c < k; ++c)
        d(idx(m, n, c)) = -kTwoPi * (static_cast<double>(m) + I * static_cast<double>(n));

  Eigen::MatrixXcd b = range.adjoint() * d.asDiagonal() * range;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd sv = svd.singularValues();  // descending
  const int r = static_cast<int>(sv.size());
  std::vector<double> ascending(r);
  for (int i = 0; i < r; ++i) ascending[i] = sv(r - 1 - i);

  const double median = ascending[r / 2];
  SpectralIndexResult res;
  if (ascending[0] > 0.05 * median) {
    res.gap_above = ascending[0];
    return res;  // no near-zero band at all
  }
  double best_ratio = 0.0;
  int split = 0;
  for (int i = 0; i + 1 < r && i < r / 2; ++i) {
    double ratio = ascending[i + 1] / std::max(ascending[i], 1e-300);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      split = i;
    }
  }
  if (best_ratio < 50.0)
    throw std::domain_error(
        "no visible spectral gap in the compressed operator (cutoff too small)");
  res.near_zero_count = split + 1;
  res.gap_below = ascending[split];
  res.gap_above = ascending[split + 1];

  // Infrared weight: norm fraction carried by modes with |m|_inf <= cutoff/2.
  auto ir_fraction = [&](const Eigen::VectorXcd& psi) {
    double inner = 0.0, total = 0.0;
    for (int m = -mode_cutoff; m <= mode_cutoff; ++m)
      for (int n = -mode_cutoff; n <= mode_cutoff; ++n)
        for (int c = 0; c < k; ++c) {
          double w = std::norm(psi(idx(m, n, c)));
          total += w;
          if (std::abs(m) <= mode_cutoff / 2 && std::abs(n) <= mode_cutoff / 2) inner += w;
        }
    return total > 0 ? inner / total : 0.0;
  };
  for (int j = 0; j < res.near_zero_count; ++j) {
    int col = r - 1 - j;  // singular values are descending
    Eigen::VectorXcd plus = range * svd.matrixV().col(col);
    Eigen::VectorXcd minus = range * svd.matrixU().col(col);
    bool plus_ir = ir_fraction(plus) >= 0.5;
    bool minus_ir = ir_fraction(minus) >= 0.5;
    if (plus_ir && !minus_ir)
      res.index += 1;
    else if (minus_ir && !plus_ir)
      res.index -= 1;
    // both localized: a paired zero mode, net contribution 0
  }
  return res;
}

PairingResult k_pairing_index(const SpectralModel& model, double t) {
  SupertraceResult st = heat_supertrace(model, t);
  PairingResult res;
  res.pairing = st.value;
  res.spectral_index = model.zero_mode_index();
  return res;
}

PairingResult k_pairing_index(int mode_cutoff, const IdempotentField& e, double t,
                              int degree_cap, int fourier_support) {
  double dropped = 0.0;
  FourierData ef = fourier_coefficients(e, fourier_support, &dropped);
  FlatTorusAlgebra algebra(mode_cutoff, e.rank());
  PairingResult res;
  res.pairing = jlo_pairing(algebra, ef, t, degree_cap);
  SpectralIndexResult si = spectral_index_compressed(mode_cutoff, ef);
  res.spectral_index = si.index;
  res.gap_below = si.gap_below;
  res.gap_above = si.gap_above;
  return res;
}

ConjugationFit conjugation_expansion_check(const FlatTorusAlgebra& algebra,
                                           const FourierData& a, int order_k,
                                           std::span<const double> t_sequence) {
  if (order_k < 0) throw std::invalid_argument("expansion order must be >= 0");
  OperatorMatrix op = algebra.multiplication_operator(a);
  const int dim = algebra.dim();
  ConjugationFit fit;
  for (double t : t_sequence) {
    if (t <= 0.0) throw std::invalid_argument("t sweep must stay positive");
    double resid2 = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        Complex x = op.mat(i, j);
        if (x == Complex(0.0)) continue;
        double delta = algebra.d2_eigenvalue(i) - algebra.d2_eigenvalue(j);
        double exact = std::exp(-t * delta);
        double series = 0.0, term = 1.0;
        for (int k = 0; k <= order_k; ++k) {
          series += term;
          term *= -t * delta / (k + 1);
        }
        resid2 += std::norm(x) * (exact - series) * (exact - series);
      }
    fit.residuals.push_back({t, std::sqrt(resid2)});
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (auto [t, r] : fit.residuals) {
    if (r <= 0.0) continue;
    double lx = std::log(t), ly = std::log(r);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count >= 2) fit.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return fit;
}

}  // namespace heatindex
