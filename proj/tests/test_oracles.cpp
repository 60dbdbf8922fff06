#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "cslrad/errors.hpp"
#include "cslrad/oracles.hpp"
#include "cslrad/quadrature.hpp"
#include "check.hpp"

using namespace cslrad;
using namespace cslrad::oracles;
using cslrad::testing::rel_err;
using std::numbers::pi;

TEST_CASE("quad2d trivial integrands") {
  const auto r = quad2d([](double, double) { return cplx(1.0); }, 3.0);
  CHECK(r.converged);
  CHECK(rel_err(r.value.real(), 9.0) <= 1e-14);
  CHECK(r.abs_err_estimate >= 0);

  const auto c = quad2d([](double x, double y) { return std::exp(cplx(0, x - y)); }, 2 * pi);
  CHECK(c.converged);
  CHECK(std::abs(c.value) < 1e-12);

  Quad2DOptions diag;
  diag.diagonal_split = true;
  const auto d = quad2d([](double, double) { return cplx(1.0); }, 3.0, diag);
  CHECK(rel_err(d.value.real(), 9.0) <= 1e-14);
}

TEST_CASE("quad2d separable product equals product of 1D quadratures") {
  auto f1 = [](double x) { return std::exp(cplx(-0.3 * x, 2.1 * x)) * (1 + x * x); };
  auto f2 = [](double y) { return std::cos(0.7 * y) / (1 + y); };
  const double x0 = 0.0, x1 = 4.0, y0 = 0.5, y1 = 6.0;
  Quad2DOptions o;
  o.rel_tol = 1e-12;
  const auto r = quad2d([&](double x, double y) { return f1(x) * f2(y); }, x0, x1, y0, y1, o);
  REQUIRE(r.converged);
  const cplx i1 = quad::integrate([&](double x) { return f1(x); }, x0, x1).value;
  const cplx i2 = quad::integrate([&](double y) { return cplx(f2(y)); }, y0, y1).value;
  CHECK(std::abs(r.value - i1 * i2) / std::abs(i1 * i2) <= 1e-9);
}

TEST_CASE("quad2d panel budget and refinement") {
  auto peaked = [](double x, double y) { return cplx(1.0 / (1e-8 + (x - 0.3) * (x - 0.3) + y * y)); };
  Quad2DOptions o;
  o.rel_tol = 1e-12;
  double previous = INFINITY;
  for (std::size_t budget : {1, 4, 16, 64}) {
    o.max_panels = budget;
    const auto r = quad2d(peaked, 0.0, 1.0, 0.0, 1.0, o);
    CHECK_FALSE(r.converged);
    CHECK(r.panels <= budget);
    CHECK(r.abs_err_estimate >= 0);
    CHECK(r.abs_err_estimate <= previous);
    previous = r.abs_err_estimate;
  }
}

TEST_CASE("central differences") {
  CHECK(rel_err(central_diff([](double t) { return t * t; }, 1.0), 2.0) <= 1e-9);
  CHECK(rel_err(central_diff([](double t) { return 0.5 * t; }, 7.0), 0.5) <= 1e-9);
  CHECK(rel_err(central_diff([](double t) { return std::sin(t); }, 0.4), std::cos(0.4)) <= 1e-9);
}

TEST_CASE("line fits") {
  const std::vector<double> x = {1, 2, 4, 8};
  std::vector<double> y;
  for (double v : x)
    y.push_back(3 * std::pow(v, 2.0));
  const auto ll = fit_loglog(x, y);
  REQUIRE(ll.valid);
  CHECK(std::abs(ll.slope - 2) < 1e-12);
  CHECK(std::abs(ll.intercept - std::log(3.0)) < 1e-12);
  CHECK(std::abs(ll.r2 - 1) < 1e-12);
  const auto lin = fit_line(x, {1, 3, 7, 15});
  CHECK(std::abs(lin.slope - 2) < 1e-12);
  CHECK(std::abs(lin.intercept + 1) < 1e-12);
  CHECK_FALSE(fit_loglog(x, {1, 0, 2, 3}).valid);
  CHECK_FALSE(fit_loglog({0, 1, 2, 3}, {1, 1, 2, 3}).valid);
  CHECK_FALSE(fit_line({1.0}, {2.0}).valid);
}

TEST_CASE("Gaussian moment closed form") {
  const double r = 1e-7;
  const Eigen::Matrix3d X0 = gaussian_moment_closed(Eigen::Vector3d::Zero(), r);
  const double diag0 = std::pow(pi, 1.5) * std::pow(r, 5) / 2 / (std::pow(2 * pi, 3) * std::pow(r, 6));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(rel_err(X0(i, j), i == j ? diag0 : 0.0) <= 1e-15);

  // second printed form in terms of q - q'
  const Eigen::Vector3d d = Eigen::Vector3d(0.4, -1.1, 0.7) * r; // q - q'
  const Eigen::Matrix3d Xa = gaussian_moment_closed(d / 2, r);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double expected = std::exp(-d.squaredNorm() / (4 * r * r)) /
                              (8 * std::pow(pi, 1.5) * r * r * r) *
                              ((i == j ? r * r / 2 : 0.0) - d(i) / 2 * d(j) / 2);
      CHECK(std::abs(Xa(i, j) - expected) <= 1e-14 * diag0);
    }
}

TEST_CASE("Gaussian moments agree with box quadrature") {
  const double r = 2e-7;
  double worst = 0;
  for (double ax : {0.0, 0.5, 1.0})
    for (double ay : {0.0, 0.5, 1.0})
      for (double az : {0.0, 0.5, 1.0}) {
        const MomentCheck m = gaussian_moment_check(Eigen::Vector3d(ax, ay, az) * r, r);
        worst = std::max(worst, m.max_error);
      }
  CHECK(worst <= 1e-8);
  const MomentCheck unit = gaussian_moment_check(Eigen::Vector3d(1, 0, 0) * r, r);
  CHECK(std::abs(unit.numeric(0, 1)) <= 1e-8 * unit.closed_form(1, 1));
  CHECK_THROWS_AS(gaussian_moment_check(Eigen::Vector3d::Zero(), 0.0), ValidationError);
}

TEST_CASE("I_ij packet limit") {
  const double r = 1e-7;
  const IijCheck c = iij_limit_check(r);
  REQUIRE(c.diagonal.size() == 3);
  CHECK(rel_err(c.limit, 1 / (16 * std::pow(pi, 1.5) * r)) <= 1e-15);
  CHECK(c.error <= 1e-2);
  // convergence as the packets narrow
  for (std::size_t i = 1; i < 3; ++i)
    CHECK(std::abs(c.diagonal[i] - c.limit) < std::abs(c.diagonal[i - 1] - c.limit));
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(c.off_diagonal[i] <= 1e-3 * c.diagonal[i]);
  // 1/r_C scaling
  const IijCheck c2 = iij_limit_check(2 * r);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(rel_err(c2.diagonal[i], c.diagonal[i] / 2) <= 1e-12);
}

TEST_CASE("Fock operators") {
  for (std::size_t dim : {4, 17, 64}) {
    const FockOperators f = fock_operators(dim);
    CHECK((f.q_matrix - f.q_matrix.adjoint()).norm() <= 1e-14);
    CHECK((f.p_matrix - f.p_matrix.adjoint()).norm() <= 1e-14);
    const MatrixC comm = f.q_matrix * f.p_matrix - f.p_matrix * f.q_matrix;
    const auto n = Eigen::Index(dim - 1);
    const MatrixC expected = cplx(0, 1) * MatrixC::Identity(n, n);
    CHECK((comm.topLeftCorner(n, n) - expected).cwiseAbs().maxCoeff() <= 1e-12);
    // the truncation shows up in the last diagonal entry only
    CHECK(std::abs(comm(n, n) - cplx(0, 1)) > 0.5);
  }
  CHECK_THROWS_AS(fock_operators(1), ValidationError);
}

TEST_CASE("matrix exponential agrees with Eigen") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (double scale : {0.01, 1.0, 30.0}) {
    MatrixC X(12, 12);
    for (Eigen::Index i = 0; i < X.rows(); ++i)
      for (Eigen::Index j = 0; j < X.cols(); ++j)
        X(i, j) = cplx(g(rng), g(rng)) * scale / 12.0;
    const ExpmResult r = expm(X);
    const MatrixC ref = X.exp();
    CHECK((r.value - ref).norm() / ref.norm() <= 1e-11);
    CHECK(r.tail_bound <= 1e-12);
  }
  const MatrixC Z = MatrixC::Zero(5, 5);
  CHECK((expm(Z).value - MatrixC::Identity(5, 5)).norm() == 0.0);
  MatrixC bad = MatrixC::Identity(3, 3);
  bad(0, 0) = INFINITY;
  CHECK_THROWS_AS(expm(bad), ConvergenceError);
  CHECK_THROWS_AS(expm(MatrixC::Identity(3, 3) * 0.4, 1e-300, 3), ConvergenceError);
}

TEST_CASE("commutator identity") {
  const cplx alpha{0, 0.05};
  const CommutatorCheck c32 = commutator_identity_check(32, alpha, 1.0, 1.0);
  const CommutatorCheck c64 = commutator_identity_check(64, alpha, 1.0, 1.0);
  const CommutatorCheck c128 = commutator_identity_check(128, alpha, 1.0, 1.0);
  CHECK(c64.rel_error <= 1e-6);
  CHECK(c64.rel_error < c32.rel_error);
  CHECK(c128.rel_error < c64.rel_error);
  CHECK(c64.exponent_norm > 0);
  CHECK(c64.squarings > 0);

  CHECK(commutator_identity_check(32, 0.0, 1.0, 1.0).rel_error == 0.0);
  CHECK(commutator_identity_check(32, alpha, 1.0, 0.0).rel_error == 0.0);
  CHECK_THROWS_AS(commutator_identity_check(8, alpha, 1.0, 1.0), ValidationError);
}
