#include "suites.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "charclass.hpp"
#include "clifford.hpp"
#include "formmatrix.hpp"
#include "heat.hpp"
#include "jlo.hpp"
#include "models.hpp"

namespace heatindex {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> descending(std::vector<double> v) {
  if (v.size() >= 2 && v[1] > v[0]) std::reverse(v.begin(), v.end());
  return v;
}

FourierData sincos_a0() {
  // sin(2 pi x) sin(2 pi y)
  std::map<std::pair<int, int>, Complex> c;
  c[{1, 1}] = -0.25;
  c[{1, -1}] = 0.25;
  c[{-1, 1}] = 0.25;
  c[{-1, -1}] = -0.25;
  return FourierData::scalar(c);
}

FourierData cos_axis(int axis) {
  std::map<std::pair<int, int>, Complex> c;
  std::pair<int, int> plus = axis == 0 ? std::pair{1, 0} : std::pair{0, 1};
  std::pair<int, int> minus = axis == 0 ? std::pair{-1, 0} : std::pair{0, -1};
  c[plus] = 0.5;
  c[minus] = 0.5;
  return FourierData::scalar(c);
}

FourierData const_one() {
  std::map<std::pair<int, int>, Complex> c;
  c[{0, 0}] = 1.0;
  return FourierData::scalar(c);
}

}  // namespace

void suite_mckean_singer(const RunConfig& cfg, VerificationReport& report) {
  SweepTable table;
  table.name = "mckean_singer";
  table.columns = {"flux_or_charge", "is_monopole", "t", "value", "tail_bound"};
  auto run_model = [&](const SpectralModel& model, int expected, bool monopole,
                       const std::string& tag) {
    for (double t : cfg.heat_t) {
      SupertraceResult st = heat_supertrace(model, t);
      std::ostringstream name;
      name << "mckean/" << tag << "/t=" << t;
      CheckRecord& c = report.add_check(name.str(), st.value, expected, cfg.tol_mckean);
      c.tail_bound = st.tail_bound;
      c.pass = c.pass && st.tail_bound <= cfg.tol_mckean;
      table.rows.push_back({static_cast<double>(expected), monopole ? 1.0 : 0.0, t,
                            st.value, st.tail_bound});
    }
  };
  for (int k : cfg.flux_list)
    run_model(landau_model(k, cfg.landau_levels), k, false, "landau_k=" + std::to_string(k));
  for (int q : cfg.charge_list) {
    if (q == 0) continue;
    run_model(monopole_model(q, cfg.monopole_levels), q, true,
              "monopole_q=" + std::to_string(q));
  }
  report.tables.push_back(std::move(table));
}

void suite_mehler(const RunConfig& cfg, VerificationReport& report) {
  SweepTable table;
  table.name = "mehler";
  table.columns = {"b", "t", "formula", "oracle", "abs_err", "order"};
  // Free-kernel sanity and mass conservation first.
  {
    double t = cfg.mehler_t.front();
    OracleResult free_kernel = oscillator_fd_oracle(0.0, 0.0, t, cfg.oracle);
    double gauss = 1.0 / (4.0 * kPi * t);
    report.add_check("mehler/free_gaussian", free_kernel.extrapolated, gauss, 1e-6);
    report.add_check("mehler/mass_conservation", free_kernel.mass, 1.0, 1e-8);
  }
  for (double b : cfg.mehler_b) {
    for (double t : cfg.mehler_t) {
      OracleResult oracle = oscillator_fd_oracle(b, 0.0, t, cfg.oracle);
      Eigen::Matrix2d curv;
      curv << 0.0, b, -b, 0.0;
      double formula = mehler_kernel(curv, 0.0, t, Eigen::Vector2d::Zero());
      std::ostringstream name;
      name << "mehler/b=" << b << "/t=" << t;
      CheckRecord& c =
          report.add_check(name.str(), formula, oracle.extrapolated, cfg.tol_mehler);
      std::ostringstream order_name;
      order_name << "mehler/order/b=" << b << "/t=" << t;
      CheckRecord oc;
      oc.name = order_name.str();
      oc.lhs = oracle.measured_order;
      oc.rhs = 2.0;
      oc.abs_err = std::abs(oracle.measured_order - 2.0);
      oc.rel_err = oc.abs_err / 2.0;
      oc.tolerance = 2.0 - cfg.oracle_order_min;
      oc.pass = oracle.measured_order >= cfg.oracle_order_min;
      report.checks.push_back(oc);
      c.notes = "order=" + format_double(oracle.measured_order);
      table.rows.push_back(
          {b, t, formula, oracle.extrapolated, c.abs_err, oracle.measured_order});
    }
  }
  report.tables.push_back(std::move(table));
}

void suite_rescale(const RunConfig& cfg, VerificationReport& report) {
  std::vector<double> u = descending(cfg.u_sweep);
  for (double f : cfg.rescale_twists) {
    RescaleCheck check = rescaled_limit_check(f, u);
    std::string tag = "rescale/f=" + format_double(f);
    CheckRecord& limit = report.add_check(tag + "/limit",
                                          check.rows.back().error + 0.0, 0.0,
                                          cfg.tol_rescale_limit);
    limit.lhs = check.rows.back().error;
    limit.notes = "max coefficient error of r(u_min,1,0) against (4pi)^{-1}e^{-F}";
    CheckRecord rate;
    rate.name = tag + "/exponent";
    rate.lhs = check.fitted_exponent;
    rate.rhs = cfg.rescale_exponent_min;
    rate.abs_err = 0.0;
    rate.tolerance = 0.0;
    rate.pass = check.fitted_exponent >= cfg.rescale_exponent_min;
    if (check.exponent_at_floor)
      rate.notes = "all errors at the numerical floor; rate beyond resolution";
    report.checks.push_back(rate);

    SweepTable table;
    table.name = "rescale_f" + std::to_string(static_cast<int>(std::lround(f * 1000)));
    table.columns = {"u", "error", "fitted_rate"};
    for (const auto& row : check.rows)
      table.rows.push_back({row.u, row.error, check.fitted_exponent});
    report.tables.push_back(std::move(table));
  }
}

void suite_jlo_limit(const RunConfig& cfg, VerificationReport& report) {
  FlatTorusAlgebra algebra(cfg.torus_cutoff, 1);
  std::vector<double> ts = descending(cfg.jlo_t);

  {
    // Main small-t limit: a0 = sin sin, a1 = cos x, a2 = cos y.
    std::vector<FourierData> args = {sincos_a0(), cos_axis(0), cos_axis(1)};
    SmallTLimit lim = jlo_small_t_limit(algebra, args, ts);
    CheckRecord c;
    c.name = "jlo/sincos_limit";
    c.lhs = std::abs(lim.extrapolated);
    c.rhs = std::abs(lim.de_rham);
    c.abs_err = std::abs(lim.extrapolated - lim.de_rham);
    c.rel_err = lim.discrepancy;
    c.tolerance = cfg.tol_jlo_rel;
    c.pass = lim.discrepancy <= cfg.tol_jlo_rel;
    c.notes = "extrapolated=(" + format_double(lim.extrapolated.real()) + "," +
              format_double(lim.extrapolated.imag()) + ") de_rham=(" +
              format_double(lim.de_rham.real()) + "," +
              format_double(lim.de_rham.imag()) + ")";
    report.checks.push_back(c);

    SweepTable table;
    table.name = "jlo_sincos";
    table.columns = {"t", "value_re", "value_im", "tail_bound"};
    for (const auto& row : lim.rows)
      table.rows.push_back({row.t, row.value.real(), row.value.imag(), row.tail_estimate});
    report.tables.push_back(std::move(table));
  }
  {
    // da ^ da = 0: repeated argument must extrapolate to zero.
    std::vector<FourierData> args = {const_one(), cos_axis(0), cos_axis(0)};
    SmallTLimit lim = jlo_small_t_limit(algebra, args, ts);
    CheckRecord& c = report.add_check("jlo/antisymmetry", std::abs(lim.extrapolated),
                                      0.0, 1e-6);
    c.notes = "de_rham=" + format_double(std::abs(lim.de_rham));
  }
  {
    // n = 0 with a0 = 1: both sides vanish on the untwisted torus.
    JloResult r = jlo_cochain(algebra, std::vector<FourierData>{const_one()}, ts.front());
    report.add_check("jlo/degree0_flat", std::abs(r.value), 0.0, 1e-12);
  }
  {
    // Conjugation expansion residual slopes.
    FlatTorusAlgebra small(cfg.conj_cutoff, 1);
    FourierData a = cos_axis(0);
    for (int order : {1, 2, 3}) {
      ConjugationFit fit =
          conjugation_expansion_check(small, a, order, descending(cfg.conj_t));
      CheckRecord c;
      c.name = "jlo/conjugation_slope_K=" + std::to_string(order);
      c.lhs = fit.slope;
      c.rhs = order + 1.0;
      c.abs_err = std::abs(fit.slope - (order + 1.0));
      c.rel_err = c.abs_err / (order + 1.0);
      c.tolerance = cfg.conj_slope_tol;
      c.pass = c.abs_err <= cfg.conj_slope_tol;
      report.checks.push_back(c);

      SweepTable table;
      table.name = "conjugation_K" + std::to_string(order);
      table.columns = {"t", "residual"};
      for (auto [t, r] : fit.residuals) table.rows.push_back({t, r});
      report.tables.push_back(std::move(table));
    }
  }
  {
    // Simplex moments against the closed product form (exact rationals).
    bool all_equal = true;
    for (int n = 1; n <= 3 && all_equal; ++n) {
      std::vector<int> k(n, 0);
      std::function<void(int, int)> rec = [&](int pos, int budget) {
        if (!all_equal) return;
        if (pos == n) {
          Rational m = simplex_moment(k);
          long long den = 1, partial = 0;
          for (int j = 0; j < n; ++j) {
            partial += k[j];
            den *= partial + j + 1;
          }
          if (!(m == Rational(1, den))) all_equal = false;
          return;
        }
        for (int v = 0; v <= budget; ++v) {
          k[pos] = v;
          rec(pos + 1, budget - v);
        }
      };
      rec(0, 6);
    }
    CheckRecord c;
    c.name = "jlo/simplex_moments_exact";
    c.lhs = all_equal ? 1.0 : 0.0;
    c.rhs = 1.0;
    c.abs_err = all_equal ? 0.0 : 1.0;
    c.tolerance = 0.0;
    c.pass = all_equal;
    report.checks.push_back(c);
  }
}

void suite_k_pairing(const RunConfig& cfg, VerificationReport& report) {
  IdempotentField bott = bott_projection(cfg.bott_grid);

  // Spectral index across cutoffs.
  double dropped = 0.0;
  FourierData ef = fourier_coefficients(bott, cfg.fourier_support, &dropped);
  SweepTable idx_table;
  idx_table.name = "spectral_index";
  idx_table.columns = {"cutoff", "index", "gap_below", "gap_above"};
  std::vector<int> indices;
  for (int m : cfg.pairing_cutoffs) {
    SpectralIndexResult si = spectral_index_compressed(m, ef);
    indices.push_back(si.index);
    idx_table.rows.push_back({static_cast<double>(m), static_cast<double>(si.index),
                              si.gap_below, si.gap_above});
  }
  bool stable = !indices.empty() && std::abs(indices.front()) == 1;
  for (int i : indices) stable = stable && (i == indices.front());
  CheckRecord stab;
  stab.name = "pairing/spectral_index_stable";
  stab.lhs = indices.empty() ? 0.0 : indices.front();
  stab.rhs = indices.empty() ? 0.0 : indices.front();
  stab.pass = stable;
  stab.notes = "indices across cutoffs";
  report.checks.push_back(stab);
  report.tables.push_back(std::move(idx_table));
  const int index = indices.empty() ? 0 : indices.front();

  // Geometric side.
  FormMatrix r_zero(0, 2);
  FormMatrix f_zero(1, 2);
  Complex rhs = rhs_index(bott, r_zero, f_zero);
  CheckRecord& geo = report.add_check("pairing/rhs_vs_spectral", rhs.real(),
                                      static_cast<double>(index), cfg.tol_rhs_integer);
  geo.pass = geo.pass && std::abs(rhs.imag()) <= cfg.tol_rhs_integer;
  geo.notes = "rhs=(" + format_double(rhs.real()) + "," + format_double(rhs.imag()) + ")";

  // JLO pairing over the t sweep, Richardson orders 1 and 2.
  FlatTorusAlgebra algebra(cfg.torus_cutoff, bott.rank());
  std::vector<double> ts = descending(cfg.pairing_t);
  SweepTable pair_table;
  pair_table.name = "jlo_pairing";
  pair_table.columns = {"t", "pairing_re", "pairing_im"};
  std::vector<Complex> values;
  for (double t : ts) {
    Complex p = jlo_pairing(algebra, ef, t, cfg.degree_cap);
    values.push_back(p);
    pair_table.rows.push_back({t, p.real(), p.imag()});
  }
  std::vector<Complex> level = values;
  std::vector<double> tv = ts;
  for (int order = 1; order <= 2 && level.size() >= 2; ++order) {
    std::vector<Complex> next(level.size() - 1);
    for (std::size_t j = 0; j + 1 < level.size(); ++j) {
      double ratio = std::pow(tv[j + 1] / tv[j], order);
      next[j] = (level[j + 1] - ratio * level[j]) / (1.0 - ratio);
    }
    level = std::move(next);
  }
  Complex extrap = level.back();
  CheckRecord pc;
  pc.name = "pairing/jlo_vs_index";
  pc.lhs = extrap.real();
  pc.rhs = index;
  pc.abs_err = std::abs(extrap - Complex(index));
  pc.rel_err = index != 0 ? pc.abs_err / std::abs(index) : pc.abs_err;
  pc.tolerance = cfg.tol_pairing_rel;
  pc.pass = pc.rel_err <= cfg.tol_pairing_rel;
  pc.notes = "extrapolated=(" + format_double(extrap.real()) + "," +
             format_double(extrap.imag()) + "), raw(t_min)=(" +
             format_double(values.back().real()) + "," +
             format_double(values.back().imag()) + "), dropped_l1=" +
             format_double(dropped);
  report.checks.push_back(pc);
  report.tables.push_back(std::move(pair_table));

  // e = 1 reproduces the heat supertrace on the twisted models.
  for (int k : cfg.flux_list) {
    SpectralModel landau = landau_model(k, cfg.landau_levels);
    for (double t : cfg.heat_t) {
      PairingResult pr = k_pairing_index(landau, t);
      std::ostringstream name;
      name << "pairing/e1_landau_k=" << k << "/t=" << t;
      CheckRecord& c =
          report.add_check(name.str(), pr.pairing.real(), k, cfg.tol_mckean);
      c.pass = c.pass && pr.spectral_index == k;
    }
  }
}

void suite_charclass(const RunConfig& cfg, VerificationReport& report) {
  // A-hat formal example on four generators: 1 - e1234/12.
  {
    MultiVector theta = MultiVector::basis(4, {1, 2});
    theta += MultiVector::basis(4, {3, 4});
    MultiVector ah = a_hat(FormMatrix::curvature_block(theta));
    MultiVector expected = MultiVector::scalar(4, 1.0);
    expected += MultiVector::basis(4, {1, 2, 3, 4}) * Complex(-1.0 / 12.0);
    report.add_check("charclass/a_hat_formal", distance(ah, expected), 0.0, 1e-15);
  }
  {
    // Degenerate block: theta^2 = 0 forces A-hat = 1.
    MultiVector theta = MultiVector::basis(2, {1, 2});
    MultiVector ah = a_hat(FormMatrix::curvature_block(theta));
    report.add_check("charclass/a_hat_degenerate",
                     distance(ah, MultiVector::scalar(2, 1.0)), 0.0, 1e-15);
  }
  {
    // Chern character of the rank-2 diagonal (f, -f): 2 + f^2.
    FormMatrix f(2, 4);
    f.at(0, 0) = MultiVector::basis(4, {1, 2});
    f.at(1, 1) = MultiVector::basis(4, {1, 2}) * Complex(-1.0);
    MultiVector ch = chern_character(f);
    MultiVector expected = MultiVector::scalar(4, 2.0);
    expected += wedge(f.at(0, 0), f.at(0, 0));
    report.add_check("charclass/chern_rank2", distance(ch, expected), 0.0, 1e-15);
  }
  {
    // Quadrature: sin^2(2 pi x) dx^dy integrates to 1/2.
    TorusGrid grid{cfg.quadrature_grid};
    FormField f(grid, MultiVector(2));
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto [x, y] = node_coordinates(Domain{grid}, i);
      double s = std::sin(2.0 * kPi * x);
      f[i].set_coefficient(0b11, s * s);
    }
    report.add_check("charclass/integrate_sin2", integrate_top(f).real(), 0.5, 1e-10);
  }
  {
    // Exact form d(sin 2pi x sin 2pi y ... ) wedge dy integrates to ~0.
    TorusGrid grid{cfg.quadrature_grid};
    FormField f(grid, MultiVector(2));
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto [x, y] = node_coordinates(Domain{grid}, i);
      double ddx = 2.0 * kPi * std::cos(2.0 * kPi * x) * std::sin(2.0 * kPi * y);
      f[i].set_coefficient(0b11, ddx);
    }
    report.add_check("charclass/integrate_exact_form", std::abs(integrate_top(f).real()),
                     0.0, 1e-8);
  }
  {
    // Bott projection Chern number via the de Rham character.
    IdempotentField bott = bott_projection(cfg.bott_grid);
    FormField ch = ch_de_rham(bott);
    Complex c1 = integrate_top(ch) / Complex(0.0, 2.0 * kPi);
    report.add_check("charclass/bott_chern_number", std::abs(c1), 1.0, 1e-6);
    report.add_check("charclass/chdr_degree0_rank",
                     ch[0].coefficient(0).real(), 1.0, 1e-10);
  }
  {
    // Landau integrality: e = 1 with the flux-k twist returns k.
    for (int k : cfg.flux_list) {
      IdempotentField one = IdempotentField::constant(
          TorusGrid{cfg.quadrature_grid}, Eigen::MatrixXcd::Identity(1, 1));
      FormMatrix r_zero(0, 2);
      FormMatrix f(1, 2);
      f.at(0, 0) =
          MultiVector::basis(2, {1, 2}) * Complex(0.0, -2.0 * kPi * k);
      Complex val = rhs_index(one, r_zero, f);
      std::ostringstream name;
      name << "charclass/landau_flux_k=" << k;
      CheckRecord& c = report.add_check(name.str(), val.real(), k, 1e-8);
      c.pass = c.pass && std::abs(val.imag()) <= 1e-8;
    }
  }
}

VerificationReport run_suite(const RunConfig& cfg) {
  cfg.validate();
  VerificationReport report;
  report.suite = cfg.suite;
  report.timestamp = iso8601_utc_now();
  auto t0 = std::chrono::steady_clock::now();

  bool all = cfg.suite == "all";
  if (all || cfg.suite == "mckean-singer") suite_mckean_singer(cfg, report);
  if (all || cfg.suite == "mehler") suite_mehler(cfg, report);
  if (all || cfg.suite == "rescale") suite_rescale(cfg, report);
  if (all || cfg.suite == "jlo-limit") suite_jlo_limit(cfg, report);
  if (all || cfg.suite == "k-pairing") suite_k_pairing(cfg, report);
  if (all || cfg.suite == "charclass") suite_charclass(cfg, report);

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!cfg.out_dir.empty()) report.write(cfg.out_dir);
  return report;
}

}  // namespace heatindex
