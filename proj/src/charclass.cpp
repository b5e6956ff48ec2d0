#include "charclass.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "fourier.hpp"

namespace heatindex {

SphereGrid make_sphere_grid(int n_theta, int n_phi) {
  if (n_theta < 4 || n_phi < 4)
    throw std::invalid_argument("sphere grid sizes must be >= 4");
  SphereGrid g;
  g.n_theta = n_theta;
  g.n_phi = n_phi;
  g.theta.resize(n_theta);
  g.gl_weight.resize(n_theta);
  // Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
  for (int i = 0; i < n_theta; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n_theta + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n_theta; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n_theta * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Store with theta increasing from the north pole.
    g.theta[n_theta - 1 - i] = std::acos(x);
    g.gl_weight[n_theta - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return g;
}

std::size_t node_count(const Domain& d) {
  if (const auto* t = std::get_if<TorusGrid>(&d))
    return static_cast<std::size_t>(t->n) * t->n;
  const auto& s = std::get<SphereGrid>(d);
  return static_cast<std::size_t>(s.n_theta) * s.n_phi;
}

std::pair<double, double> node_coordinates(const Domain& d, std::size_t idx) {
  if (const auto* t = std::get_if<TorusGrid>(&d)) {
    int i = static_cast<int>(idx) / t->n;
    int j = static_cast<int>(idx) % t->n;
    return {static_cast<double>(i) / t->n, static_cast<double>(j) / t->n};
  }
  const auto& s = std::get<SphereGrid>(d);
  int i = static_cast<int>(idx) / s.n_phi;
  int j = static_cast<int>(idx) % s.n_phi;
  return {s.theta[i], 2.0 * std::numbers::pi * j / s.n_phi};
}

namespace {

void check_domain(const Domain& d) {
  if (const auto* t = std::get_if<TorusGrid>(&d)) {
    if (t->n < 4) throw std::invalid_argument("torus grid size must be >= 4");
  }
}

}  // namespace

FormField::FormField(Domain domain, MultiVector fill) : domain_(std::move(domain)) {
  check_domain(domain_);
  values_.assign(node_count(domain_), fill);
}

void FormField::write_csv(std::ostream& os) const {
  const bool torus = std::holds_alternative<TorusGrid>(domain_);
  os << (torus ? "x,y" : "theta,phi");
  const int n = values_.empty() ? 2 : values_[0].generator_count();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    os << ",c" << mask << "_re,c" << mask << "_im";
  os << "\n";
  os.precision(17);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    auto [a, b] = node_coordinates(domain_, i);
    os << a << "," << b;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      Complex c = values_[i].coefficient(mask);
      os << "," << c.real() << "," << c.imag();
    }
    os << "\n";
  }
}

Complex integrate_top(const FormField& f) {
  Complex acc(0.0);
  if (const auto* t = std::get_if<TorusGrid>(&f.domain())) {
    for (std::size_t i = 0; i < f.size(); ++i) acc += f[i].berezin_top();
    return acc / static_cast<double>(static_cast<std::size_t>(t->n) * t->n);
  }
  const auto& s = std::get<SphereGrid>(f.domain());
  const double dphi = 2.0 * std::numbers::pi / s.n_phi;
  for (int i = 0; i < s.n_theta; ++i) {
    // Coefficients are relative to d theta ^ d phi; the GL rule integrates
    // in cos(theta), hence the 1/sin(theta) factor (nodes avoid the poles).
    double w = s.gl_weight[i] / std::sin(s.theta[i]) * dphi;
    for (int j = 0; j < s.n_phi; ++j)
      acc += w * f[static_cast<std::size_t>(i) * s.n_phi + j].berezin_top();
  }
  return acc;
}

IdempotentField::IdempotentField(Domain domain, int rank)
    : domain_(std::move(domain)), rank_(rank) {
  check_domain(domain_);
  if (rank < 1) throw std::invalid_argument("idempotent rank must be >= 1");
  values_.assign(node_count(domain_), Eigen::MatrixXcd::Zero(rank, rank));
}

double IdempotentField::idempotency_defect() const {
  double worst = 0.0;
  for (const auto& e : values_) worst = std::max(worst, (e * e - e).norm());
  return worst;
}

double IdempotentField::pointwise_rank(double tol) const {
  double r = values_.empty() ? 0.0 : values_[0].trace().real();
  for (const auto& e : values_) {
    Complex tr = e.trace();
    if (std::abs(tr - Complex(r)) > tol)
      throw std::invalid_argument("idempotent field has non-constant pointwise trace");
  }
  return r;
}

IdempotentField IdempotentField::constant(Domain domain, const Eigen::MatrixXcd& value) {
  IdempotentField f(std::move(domain), static_cast<int>(value.rows()));
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = value;
  return f;
}

namespace {

// Per-entry derivatives of a matrix-valued grid function.
struct MatrixDerivatives {
  std::vector<Eigen::MatrixXcd> d1;  // d/dx or d/dtheta
  std::vector<Eigen::MatrixXcd> d2;  // d/dy or d/dphi
};

MatrixDerivatives torus_derivatives(const IdempotentField& e, const TorusGrid& g) {
  const int n = g.n;
  const int k = e.rank();
  MatrixDerivatives out;
  out.d1.assign(e.size(), Eigen::MatrixXcd::Zero(k, k));
  out.d2.assign(e.size(), Eigen::MatrixXcd::Zero(k, k));
  std::vector<Complex> grid(e.size()), ddx, ddy;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      for (std::size_t i = 0; i < e.size(); ++i) grid[i] = e[i](a, b);
      spectral_derivatives(grid, n, ddx, ddy);
      for (std::size_t i = 0; i < e.size(); ++i) {
        out.d1[i](a, b) = ddx[i];
        out.d2[i](a, b) = ddy[i];
      }
    }
  return out;
}

MatrixDerivatives sphere_derivatives(const IdempotentField& e, const SphereGrid& g) {
  const int nt = g.n_theta, np = g.n_phi;
  const int k = e.rank();
  const double dphi = 2.0 * std::numbers::pi / np;
  MatrixDerivatives out;
  out.d1.assign(e.size(), Eigen::MatrixXcd::Zero(k, k));
  out.d2.assign(e.size(), Eigen::MatrixXcd::Zero(k, k));
  auto at = [&](int i, int j) -> const Eigen::MatrixXcd& {
    return e[static_cast<std::size_t>(i) * np + ((j % np) + np) % np];
  };
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < np; ++j) {
      std::size_t idx = static_cast<std::size_t>(i) * np + j;
      // phi: centered differences on the uniform periodic grid
      out.d2[idx] = (at(i, j + 1) - at(i, j - 1)) / (2.0 * dphi);
      // theta: 3-point stencil on the nonuniform GL nodes, one-sided at the ends
      if (i == 0 || i == nt - 1) {
        int s = (i == 0) ? 1 : -1;
        double h = g.theta[i + s] - g.theta[i];
        out.d1[idx] = (at(i + s, j) - at(i, j)) / h;
      } else {
        double hm = g.theta[i] - g.theta[i - 1];
        double hp = g.theta[i + 1] - g.theta[i];
        out.d1[idx] = (hm * hm * at(i + 1, j) - hp * hp * at(i - 1, j) +
                       (hp * hp - hm * hm) * at(i, j)) /
                      (hm * hp * (hm + hp));
      }
    }
  }
  return out;
}

FormField ch_core(const IdempotentField& e, int exp_sign) {
  if (e.idempotency_defect() > 1e-12)
    throw std::invalid_argument("ch_de_rham input violates idempotency tolerance");
  MatrixDerivatives d;
  if (const auto* t = std::get_if<TorusGrid>(&e.domain()))
    d = torus_derivatives(e, *t);
  else
    d = sphere_derivatives(e, std::get<SphereGrid>(e.domain()));

  // On a 2-manifold the series terminates after the first power:
  // Tr exp(s e de de) = rank + s Tr(e [d1 e, d2 e]) vol.
  FormField out(e.domain(), MultiVector(2));
  for (std::size_t i = 0; i < e.size(); ++i) {
    Eigen::MatrixXcd two_form = e[i] * (d.d1[i] * d.d2[i] - d.d2[i] * d.d1[i]);
    MultiVector v = MultiVector::scalar(2, e[i].trace());
    v.set_coefficient(0b11, static_cast<double>(exp_sign) * two_form.trace());
    out[i] = v;
  }
  return out;
}

}  // namespace

FormField ch_de_rham(const IdempotentField& e, int exp_sign) {
  return ch_core(e, exp_sign);
}

Complex rhs_index(const IdempotentField& e, const FormMatrix& R, const FormMatrix& F,
                  int prefactor_exponent) {
  if (R.generator_count() != 2 || F.generator_count() != 2)
    throw std::invalid_argument("rhs_index expects forms over the 2-dim coframe");
  FormField chdr = ch_de_rham(e, /*exp_sign=*/-1);
  MultiVector constant = wedge(a_hat(R), chern_character(F));
  FormField integrand(e.domain(), MultiVector(2));
  for (std::size_t i = 0; i < chdr.size(); ++i)
    integrand[i] = wedge(chdr[i], constant);
  Complex raw = integrate_top(integrand);
  const Complex two_i_pi(0.0, 2.0 * std::numbers::pi);
  Complex prefactor(1.0);
  for (int k = 0; k < std::abs(prefactor_exponent); ++k)
    prefactor = prefactor_exponent > 0 ? prefactor / two_i_pi : prefactor * two_i_pi;
  return prefactor * raw;
}

}  // namespace heatindex
