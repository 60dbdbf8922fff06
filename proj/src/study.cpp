#include "cslrad/study.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "cslrad/parallel.hpp"

namespace cslrad {

ScalingResult run_scaling(const PhysicalParams &params, const NoiseModel &noise,
                          const ScalingStudySpec &spec, unsigned jobs) {
  spec.validate();
  params.validate();
  const DerivedParams derived = derive(params);
  const ScaleFrame frame = make_frame(params, spec.k_fixed);
  const KernelSetup base = make_setup(params, derived, frame, spec.k_fixed);
  const NoiseModel model = noise.rescaled(frame.t_unit);
  const double t = frame.time_to_frame(spec.t_final);

  ScalingResult out;
  out.rows = parallel_map<ScalingRow>(spec.beta_multipliers.size(), jobs, [&](std::size_t i) {
    ScalingRow row;
    row.multiplier = spec.beta_multipliers[i];
    row.beta = derived.beta * row.multiplier;
    KernelSetup setup = base;
    setup.osc.beta *= row.multiplier;
    row.beta_frame = setup.osc.beta;
    const auto pieces = t_pieces(setup, model, t, spec.order);
    row.abs_A = std::abs(pieces[0].value);
    row.abs_B = std::abs(pieces[1].value);
    row.abs_D = std::abs(pieces[3].value);
    return row;
  });
  std::vector<double> b, A, B, D;
  for (const auto &r : out.rows) {
    b.push_back(r.beta);
    A.push_back(r.abs_A);
    B.push_back(r.abs_B);
    D.push_back(r.abs_D);
  }
  out.fit_B = oracles::fit_loglog(b, B);
  out.fit_D = oracles::fit_loglog(b, D);
  const auto [lo, hi] = std::minmax_element(A.begin(), A.end());
  out.a_variation = *lo > 0 ? (*hi - *lo) / *lo : 0.0;
  return out;
}

namespace {

double factor_two_error(double fault) {
  PhysicalParams p;
  const NoiseModel white;
  SweepSpec grid;
  grid.k_min = 1e5;
  grid.k_max = 1e9;
  grid.n_points = 50;
  double err = 0;
  for (double k : grid.grid()) {
    const double ratio = fault * naive_rate(p, white, k) / resummed_free(p, white, k);
    err = std::max(err, std::abs(ratio - 2.0) / 2.0);
  }
  return err;
}

double resummation_error() {
  PhysicalParams p;
  const double k = 1e7;
  double err = 0;
  for (double w0 : {0.0, 0.3})
    for (double wt : {0.0, 0.1, 1.0, 10.0}) {
      p.omega0 = w0 * p.c * k;
      // wt = 0 stands for white noise
      const double tau = wt / (p.c * k);
      const NoiseModel m = wt > 0 ? NoiseModel::exponential_ou(tau) : NoiseModel::white();
      const double t = wt > 0 ? 40 * tau : 1.0 / (p.c * k);
      const SlopeRate r = rate_from_photon_number(p, m, k, t, Order::LowestOrder);
      err = std::max(err, std::abs(r.rate / resummed_rate(p, m, k) - 1.0));
    }
  return err;
}

double kernel_oracle_error(unsigned jobs) {
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> re(-1.0, 0.0), im(-3.0, 3.0), tau(0.2, 2.0), tt(0.5, 4.0);
  struct Draw {
    cplx a, b;
    double tau, t;
  };
  std::vector<Draw> draws;
  for (int i = 0; i < 5; ++i)
    draws.push_back({{re(rng), im(rng)}, {re(rng), im(rng)}, tau(rng), tt(rng)});
  const auto errs = parallel_map<double>(draws.size(), jobs, [&](std::size_t i) {
    const Draw &d = draws[i];
    const NoiseModel m = NoiseModel::exponential_ou(d.tau);
    oracles::Quad2DOptions o;
    o.diagonal_split = true;
    o.rel_tol = 1e-11;
    const auto q = oracles::quad2d(
        [&](double t1, double t2) { return correlation(m, t1 - t2) * std::exp(d.a * t1 + d.b * t2); },
        d.t, o);
    return std::abs(i_ab(m, d.a, d.b, d.t).value - q.value) / std::abs(q.value);
  });
  return *std::max_element(errs.begin(), errs.end());
}

double window_error() {
  double err = 0;
  const double tau = 1.0;
  const NoiseModel m = NoiseModel::exponential_ou(tau);
  for (double wt : {0.1, 1.0, 10.0}) {
    const double w = wt / tau;
    const double target = 0.5 * spectrum(m, w);
    err = std::max(err, std::abs(window_rate(m, w, 40 * tau) - target) / target);
  }
  return err;
}

double moment_error(unsigned jobs) {
  const double r = 1e-7;
  std::vector<Eigen::Vector3d> grid;
  for (double x : {0.0, 0.5, 1.0})
    for (double y : {0.0, 0.5, 1.0})
      for (double z : {0.0, 0.5, 1.0})
        grid.emplace_back(x * r, y * r, z * r);
  const auto errs = parallel_map<double>(grid.size(), jobs, [&](std::size_t i) {
    return oracles::gaussian_moment_check(grid[i], r).max_error;
  });
  return *std::max_element(errs.begin(), errs.end());
}

double commutator_monotone_ratio() {
  double prev = 0, worst = 0;
  for (std::size_t dim : {32u, 64u, 128u}) {
    const double e = oracles::commutator_identity_check(dim, {0, 0.05}, 1, 1).rel_error;
    if (prev > 0)
      worst = std::max(worst, e / prev);
    prev = e;
  }
  return worst;
}

} // namespace

std::vector<VerifyCheck> run_verify(const VerifyOptions &opts) {
  struct Spec {
    const char *name;
    double tol;
    std::function<double()> measure;
  };
  const std::vector<Spec> specs = {
      {"factor_two_white_free", 1e-12, [&] { return factor_two_error(opts.naive_constant_fault); }},
      {"resummed_from_photon_number", 1e-6, resummation_error},
      {"i_ab_vs_quad2d", 1e-7, [&] { return kernel_oracle_error(opts.jobs); }},
      {"window_rate_asymptote", 1e-4, window_error},
      {"gaussian_moments", 1e-8, [&] { return moment_error(opts.jobs); }},
      {"iij_diagonal_limit", 1e-2, [] { return oracles::iij_limit_check(1e-7).error; }},
      {"fock_commutator_dim64", 1e-6,
       [] { return oracles::commutator_identity_check(64, {0, 0.05}, 1, 1).rel_error; }},
      // ratio of successive errors as dim doubles; must stay below one
      {"fock_commutator_monotone", 1.0, commutator_monotone_ratio},
  };
  std::vector<VerifyCheck> out;
  for (const auto &s : specs) {
    VerifyCheck c;
    c.name = s.name;
    c.tolerance = s.tol * opts.tol_scale;
    c.error = s.measure();
    c.passed = c.error <= c.tolerance;
    out.push_back(c);
  }
  return out;
}

} // namespace cslrad
