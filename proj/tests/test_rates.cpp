#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cslrad/errors.hpp"
#include "cslrad/oracles.hpp"
#include "cslrad/rates.hpp"
#include "check.hpp"

using namespace cslrad;
using cslrad::testing::rel_err;
using std::numbers::pi;

namespace {

// lambda hbar e^2 / (4 pi^2 eps0 c^3 m0^2 r_C^2)
double paper_prefactor(const PhysicalParams &p) {
  return p.lambda_csl * p.hbar * p.e * p.e /
         (4 * pi * pi * p.eps0 * std::pow(p.c, 3) * p.m0 * p.m0 * p.r_C * p.r_C);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> ks;
  for (int i = 0; i < n; ++i)
    ks.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return ks;
}

} // namespace

TEST_CASE("naive rate") {
  const PhysicalParams p = PhysicalParams::electron();
  const double k = 3e7;
  CHECK(rel_err(naive_rate(p, NoiseModel::white(), k), 2 * paper_prefactor(p) / k) <= 1e-14);
  CHECK(rel_err(naive_rate(p, NoiseModel::white(), 2 * k), naive_rate(p, NoiseModel::white(), k) / 2) <= 1e-15);
  // f~(omega_k) -> 0 leaves the f~(0) plateau
  const NoiseModel ou = NoiseModel::exponential_ou(1e-11);
  CHECK(rel_err(naive_rate(p, ou, k), paper_prefactor(p) / k) <= 1e-8);
  CHECK_THROWS_AS(naive_rate(p, ou, 0.0), ValidationError);
  CHECK_THROWS_AS(naive_rate(p, ou, -1.0), ValidationError);
}

TEST_CASE("free resummed rate and the factor two") {
  const PhysicalParams p = PhysicalParams::electron();
  for (double k : log_grid(1e5, 1e9, 50)) {
    CHECK(rel_err(resummed_free(p, NoiseModel::white(), k), paper_prefactor(p) / k) <= 1e-14);
    const double ratio = naive_rate(p, NoiseModel::white(), k) / resummed_rate(p, NoiseModel::white(), k);
    CHECK(std::abs(ratio - 2) <= 2e-12);
  }
}

TEST_CASE("harmonic rate tends to the free rate") {
  PhysicalParams p = PhysicalParams::electron();
  const NoiseModel m = NoiseModel::gaussian(2e-16);
  const double k = 2e7;
  CHECK(resummed_rate(p, m, k) == resummed_free(p, m, k));
  p.omega0 = 1e-4 * p.c * k;
  const double diff = resummed_rate(p, m, k) / resummed_free(p, m, k) - 1;
  // (1 - x^2)^{-2} - 1 = 2 x^2 + 3 x^4 + ...
  CHECK(rel_err(diff, 2e-8) <= 1e-7);
  // the general formula in the resummed form
  p.omega0 = 0.37 * p.c * k;
  const double w = p.c * k;
  const double expected = paper_prefactor(p) * std::pow(p.c, 4) * std::pow(k, 3) * spectrum(m, w) /
                          std::pow(w * w - p.omega0 * p.omega0, 2);
  CHECK(rel_err(resummed_rate(p, m, k), expected) <= 1e-13);
}

TEST_CASE("resonance guard") {
  PhysicalParams p = PhysicalParams::electron();
  p.omega0 = 3e15;
  const double k0 = p.omega0 / p.c;
  try {
    resummed_rate(p, NoiseModel::white(), k0 * (1 + 1e-8));
    FAIL("expected a domain error");
  } catch (const DomainError &e) {
    CHECK(std::string(e.what()).find("k0") != std::string::npos);
  }
  CHECK_NOTHROW(resummed_rate(p, NoiseModel::white(), k0 * (1 + 1e-5)));
  CHECK_NOTHROW(resummed_rate(p, NoiseModel::white(), k0 * (1 + 1e-8), 1e-9));

  const std::vector<double> ks = {k0 * 0.5, k0 * (1 - 1e-9), k0, k0 * 2};
  const RateSpectrum s = rate_spectrum(p, NoiseModel::white(), ks, RateFormula::ResummedHarmonic);
  CHECK(s.dropped == 2);
  REQUIRE(s.samples.size() == 2);
  CHECK(s.samples[0].k == ks[0]);
  CHECK(s.samples[1].k == ks[3]);
  for (const auto &r : s.samples)
    CHECK(r.rate >= 0);
}

TEST_CASE("photon number at lowest order") {
  PhysicalParams p = PhysicalParams::electron();
  p.omega0 = 4e14;
  const double k = 1e7, w = p.c * k;
  const double prefactor = p.e * p.e * p.hbar * p.lambda_csl /
                           (32 * pi * pi * pi * p.eps0 * p.m0 * p.m0 * p.r_C * p.r_C);
  for (double t : {1e-16, 1e-14, 3e-13}) {
    const double expected = prefactor * 2 * w / std::pow(w * w - p.omega0 * p.omega0, 2) * t / 2;
    CHECK(rel_err(photon_number(p, NoiseModel::white(), k, t, Order::LowestOrder), expected) <= 1e-10);
  }
  const NoiseModel ou = NoiseModel::exponential_ou(1e-16);
  CHECK(std::abs(photon_number(p, ou, k, 1e-30, Order::LowestOrder)) <
        1e-12 * photon_number(p, ou, k, 1e-15, Order::LowestOrder));
}

TEST_CASE("rate from photon number reproduces the resummed rate") {
  for (double ratio : {0.0, 0.3}) {
    PhysicalParams p = PhysicalParams::electron();
    const double k = 1e7, w = p.c * k;
    p.omega0 = ratio * w;
    for (double wt : {0.0, 0.1, 1.0, 10.0}) {
      const NoiseModel m = wt == 0 ? NoiseModel::white() : NoiseModel::exponential_ou(wt / w);
      const double t = wt == 0 ? 1e-15 : 40 * m.tau();
      const SlopeRate r = rate_from_photon_number(p, m, k, t, Order::LowestOrder);
      INFO("omega0/omega " << ratio << " omega tau " << wt);
      CHECK(r.converged);
      CHECK(std::abs(r.rate / resummed_rate(p, m, k) - 1) <= 1e-6);
    }
  }
}

TEST_CASE("slope convergence for OU noise") {
  PhysicalParams p = PhysicalParams::electron();
  const double k = 1e7;
  const NoiseModel m = NoiseModel::exponential_ou(1.0 / (p.c * k));
  CHECK_FALSE(rate_from_photon_number(p, m, k, 2 * m.tau(), Order::LowestOrder).converged);
  const SlopeRate r = rate_from_photon_number(p, m, k, 20 * m.tau(), Order::LowestOrder);
  CHECK(r.converged);
  CHECK(r.convergence_error <= kSlopeTolerance);
  // white noise has settled at any positive time
  CHECK(rate_from_photon_number(p, NoiseModel::white(), k, 1e-20, Order::LowestOrder).converged);
}

TEST_CASE("ExactBeta slope approaches the lowest-order slope") {
  KernelSetup s{{1.0, 0.05, 0.3}, 1.0};
  const NoiseModel m = NoiseModel::exponential_ou(0.8);
  const SlopeRate exact = frame_slope(s, m, 1e4, Order::ExactBeta);
  const SlopeRate lowest = frame_slope(s, m, 1e4, Order::LowestOrder);
  CHECK(exact.converged);
  CHECK(lowest.converged);
  CHECK(std::abs(exact.frame_slope / lowest.frame_slope - 1) < 1e-5);
  // still transient-dominated after a few decay times
  CHECK_FALSE(frame_slope(s, m, 50.0, Order::ExactBeta).converged);
}

TEST_CASE("the f~(0) plateau term is suppressed as beta^2") {
  // At fixed oscillator the late-time slope is linear in f~(omega_k) with an
  // offset proportional to f~(0) = 1; varying tau moves f~(omega_k) only. The
  // offset oscillates at omega_k, so its amplitude is taken from two times a
  // quarter period apart.
  const double t = 2 * pi * 10000;
  std::vector<double> betas, offsets;
  for (double beta : {0.01, 0.02, 0.04, 0.08}) {
    KernelSetup s{{1.0, beta, 0.3}, 1.0};
    double amplitude2 = 0;
    for (double tt : {t, t + pi / 2}) {
      std::vector<double> spec, slope;
      for (double tau : {0.3, 1.0, 3.0}) {
        const NoiseModel m = NoiseModel::exponential_ou(tau);
        const SlopeRate r = frame_slope(s, m, tt, Order::ExactBeta);
        REQUIRE(r.converged);
        spec.push_back(spectrum(m, 1.0));
        slope.push_back(r.frame_slope);
      }
      const auto fit = oracles::fit_line(spec, slope);
      REQUIRE(fit.valid);
      amplitude2 += std::pow(fit.intercept / fit.slope, 2);
    }
    betas.push_back(beta);
    offsets.push_back(std::sqrt(amplitude2));
  }
  const auto fit = oracles::fit_loglog(betas, offsets);
  REQUIRE(fit.valid);
  INFO("offsets " << offsets[0] << " " << offsets[3]);
  CHECK(std::abs(fit.slope - 2) <= 0.05);
}

TEST_CASE("rate spectrum") {
  PhysicalParams p = PhysicalParams::electron();
  p.omega0 = 9e14;
  const NoiseModel m = NoiseModel::exponential_ou(3e-17);
  const auto ks = log_grid(1e6, 1e8, 17);
  for (RateFormula f : {RateFormula::NaiveFirstOrder, RateFormula::ResummedHarmonic,
                        RateFormula::ResummedFree}) {
    const RateSpectrum serial = rate_spectrum(p, m, ks, f);
    SpectrumOptions o;
    o.jobs = 4;
    const RateSpectrum par = rate_spectrum(p, m, ks, f, o);
    REQUIRE(serial.samples.size() == ks.size());
    REQUIRE(par.samples.size() == ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
      CHECK(serial.samples[i].k == ks[i]);
      CHECK(serial.samples[i].rate == par.samples[i].rate);
      CHECK(serial.samples[i].rate >= 0);
      CHECK(serial.samples[i].omega_k == p.c * ks[i]);
    }
  }
  CHECK_THROWS_AS(rate_spectrum(p, m, ks, RateFormula::FromPhotonNumber), ValidationError);
  SpectrumOptions o;
  o.t_final = 40 * m.tau();
  const RateSpectrum pn = rate_spectrum(p, m, ks, RateFormula::FromPhotonNumber, o);
  const RateSpectrum rh = rate_spectrum(p, m, ks, RateFormula::ResummedHarmonic);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    CHECK(pn.samples[i].converged);
    CHECK(std::abs(pn.samples[i].rate / rh.samples[i].rate - 1) < 1e-6);
  }
}

TEST_CASE("formula names") {
  for (auto f : {RateFormula::NaiveFirstOrder, RateFormula::ResummedHarmonic,
                 RateFormula::ResummedFree, RateFormula::FromPhotonNumber})
    CHECK(rate_formula_from_string(to_string(f)) == f);
  CHECK(rate_formula_from_string("free") == RateFormula::ResummedFree);
  CHECK_THROWS_AS(rate_formula_from_string("bogus"), ValidationError);
}
