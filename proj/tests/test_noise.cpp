#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "cslrad/errors.hpp"
#include "cslrad/noise.hpp"
#include "cslrad/quadrature.hpp"
#include "check.hpp"

using namespace cslrad;
using cslrad::testing::rel_err;

namespace {

// int_{-L}^{L} f(s) e^{i w s} ds = 2 int_0^L f(s) cos(w s) ds, with panels
// that resolve both the correlation time and the phase.
double fourier_quadrature(const NoiseModel &m, double w, double L) {
  quad::Options o;
  o.rel_tol = 1e-13;
  o.max_panel = std::min(quad::oscillation_panel(std::abs(w)), m.tau());
  return 2 * quad::integrate([&](double s) { return correlation(m, s) * std::cos(w * s); }, 0.0, L, o)
                 .value.real();
}

using mp = boost::multiprecision::mpfr_float;

// Trapezoid rule for the Gaussian Fourier integral over the whole line, in
// enough digits to resolve e^{-w^2 tau^2/2} against O(1) cancellation. The
// nodes are dense enough (2 pi/h >= max(3 w, 8 pi/tau)) that the nearest
// alias term is below e^{-3 w^2 tau^2/2} relative to the result.
mp gaussian_fourier_mp(double tau_d, double w_d) {
  const double x = w_d * tau_d;
  const unsigned digits = unsigned(0.5 * x * x / std::log(10.0)) + 40;
  mp::default_precision(digits);
  const mp tau = tau_d, w = w_d, pi = acos(mp(-1));
  const mp h = 2 * pi / std::max(3 * w_d * tau_d, 8 * M_PI) * tau;
  const mp norm = 1 / (sqrt(2 * pi) * tau);
  const long n_max = long(std::ceil(std::sqrt(2.0 * digits * std::log(10.0)) * tau_d /
                                    h.convert_to<double>())) + 1;
  mp sum = norm;
  for (long n = 1; n <= n_max; ++n) {
    const mp s = h * n;
    sum += 2 * norm * exp(-s * s / (2 * tau * tau)) * cos(w * s);
  }
  return sum * h;
}

} // namespace

TEST_CASE("OU correlation values") {
  const double tau = 0.37;
  const NoiseModel m = NoiseModel::exponential_ou(tau);
  CHECK(rel_err(correlation(m, 0.0), 1 / (2 * tau)) <= 1e-15);
  CHECK(rel_err(correlation(m, tau), std::exp(-1.0) / (2 * tau)) <= 1e-15);
  // unit area, by an independent adaptive rule
  const double area = 2 * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                              [&](double s) { return correlation(m, s); }, 0.0, 60 * tau, 20, 1e-14);
  CHECK(rel_err(area, 1.0) <= 1e-12);
}

TEST_CASE("Gaussian correlation decays and is normalised") {
  const NoiseModel m = NoiseModel::gaussian(2.0);
  CHECK(correlation(m, 1e3) == 0.0);
  CHECK(correlation(m, 40.0) < 1e-80);
  const double area = 2 * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                              [&](double s) { return correlation(m, s); }, 0.0, 80.0, 20, 1e-14);
  CHECK(rel_err(area, 1.0) <= 1e-12);
}

TEST_CASE("white noise is never sampled pointwise") {
  CHECK_THROWS_AS(correlation(NoiseModel::white(), 0.0), DomainError);
  for (double w : {0.0, 1.0, -3e15})
    CHECK(spectrum(NoiseModel::white(), w) == 1.0);
}

const double kSpectrumGrid[] = {0.0, 0.1, 0.5, 1.0, 3.0, 10.0, 30.0, 100.0};

TEST_CASE("OU spectrum matches Fourier quadrature") {
  const double tau = 0.8;
  const NoiseModel m = NoiseModel::exponential_ou(tau);
  for (double wt : kSpectrumGrid) {
    const double w = wt / tau;
    const double closed = spectrum(m, w);
    INFO("w tau " << wt);
    CHECK(std::abs(fourier_quadrature(m, w, 40 * tau) - closed) / closed <= 1e-8);
  }
  CHECK(rel_err(spectrum(NoiseModel::exponential_ou(2.0), 3.0), 1 / (1 + 36.0)) <= 1e-15);
}

TEST_CASE("Gaussian spectrum matches Fourier quadrature") {
  const double tau = 0.8;
  const NoiseModel m = NoiseModel::gaussian(tau);
  for (double wt : kSpectrumGrid) {
    const double w = wt / tau;
    const double closed = spectrum(m, w);
    const mp numeric = gaussian_fourier_mp(tau, w);
    INFO("w tau " << wt);
    if (numeric > std::numeric_limits<double>::min()) {
      const mp err = abs(numeric - closed) / numeric;
      CHECK(err.convert_to<double>() <= 1e-8);
    } else {
      // below the double range: the closed form must underflow to zero
      CHECK(closed == 0.0);
    }
    if (wt <= 3.0) // the double-precision rule agrees while the value is O(1e-2) or more
      CHECK(std::abs(fourier_quadrature(m, w, 40 * tau) - closed) / closed <= 1e-8);
  }
}

TEST_CASE("symmetry, normalisation and monotone decay") {
  for (const NoiseModel &m : {NoiseModel::exponential_ou(0.3), NoiseModel::gaussian(0.3)}) {
    CHECK(spectrum(m, 0.0) == 1.0);
    double prev = 2;
    for (double w = 0; w < 50; w += 0.25) {
      CHECK(correlation(m, w) == correlation(m, -w));
      CHECK(spectrum(m, w) == spectrum(m, -w));
      CHECK(spectrum(m, w) <= prev);
      prev = spectrum(m, w);
    }
  }
}

TEST_CASE("OU tends to white as tau shrinks") {
  const double w = 1e3;
  for (double tau : {1e-7, 1e-8, 1e-9}) {
    REQUIRE(tau * w <= 1e-4);
    CHECK(std::abs(spectrum(NoiseModel::exponential_ou(tau), w) - 1) <= 1e-7);
  }
}

TEST_CASE("support cutoff bounds the tail") {
  for (const NoiseModel &m : {NoiseModel::exponential_ou(0.5), NoiseModel::gaussian(0.5)}) {
    for (double g : {0.0, 0.3, 1.5}) {
      const double L = m.support_cutoff(g);
      if (!std::isfinite(L))
        continue;
      CHECK(correlation(m, L) * std::exp(g * L) / correlation(m, 0.0) < 1e-18);
    }
  }
  CHECK(std::isinf(NoiseModel::exponential_ou(0.5).support_cutoff(2.5)));
  CHECK(NoiseModel::white().support_cutoff() == 0.0);
}

TEST_CASE("rescaling and mixtures") {
  const NoiseModel ou = NoiseModel::exponential_ou(3e-15);
  CHECK(rel_err(ou.rescaled(1e-15).tau(), 3.0) <= 1e-15);
  CHECK(NoiseModel::white().rescaled(1e-15).is_white());

  const NoiseModel mix = NoiseModel::mixture(0.3, NoiseModel::white(), NoiseModel::gaussian(1.0));
  CHECK(rel_err(mix.white_weight(), 0.3) <= 1e-15);
  CHECK(rel_err(spectrum(mix, 2.0), 0.3 + 0.7 * std::exp(-2.0)) <= 1e-15);
  CHECK(rel_err(correlation(mix, 0.5), 0.7 * correlation(NoiseModel::gaussian(1.0), 0.5)) <= 1e-15);

  CHECK(noise_kind_from_string("ou") == NoiseKind::ExponentialOU);
  CHECK(noise_kind_from_string("gaussian") == NoiseKind::GaussianCorr);
  CHECK_THROWS_AS(noise_kind_from_string("pink"), ValidationError);
  CHECK_THROWS(NoiseModel::exponential_ou(0.0));
  CHECK_THROWS(NoiseModel::mixture(1.5, ou, ou));
}
