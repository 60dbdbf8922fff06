#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace cslrad::oracles {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// 2D adaptive quadrature

struct Quad2DResult {
  cplx value{};
  double abs_err_estimate = 0;
  std::size_t panels = 0;
  bool converged = false;
};

struct Quad2DOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0;
  std::size_t max_panels = 200000;
  /// Initial uniform split per axis.
  unsigned initial_split = 1;
  /// Split [0,t]^2 along the diagonal first and map each triangle onto a
  /// square, so integrands with a kink on t1 = t2 (e.g. f(|t1 - t2|)) stay
  /// smooth on every panel.
  bool diagonal_split = false;
};

using Integrand2D = std::function<cplx(double, double)>;

/// Adaptive tensor Gauss-Kronrod (15x15, error from the embedded 7x7 Gauss
/// rule) over [x0, x1] x [y0, y1]. The panel with the largest error estimate
/// is bisected along its worse axis until the total estimate meets the
/// tolerance (or falls below the round-off floor 50 eps int |f|) or the panel
/// budget runs out (converged = false).
Quad2DResult quad2d(const Integrand2D &f, double x0, double x1, double y0, double y1,
                    const Quad2DOptions &opts = {});

/// The square [0, t]^2.
Quad2DResult quad2d(const Integrand2D &f, double t, const Quad2DOptions &opts = {});

// ---------------------------------------------------------------------------
// Finite differences and fits

/// (fn(t + h) - fn(t - h)) / 2h with h = h_rel t, refined once by Richardson
/// extrapolation against h/2.
double central_diff(const std::function<double(double)> &fn, double t, double h_rel = 1e-5);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  bool valid = false;
};

/// Least squares of y on x.
LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y);
/// Least squares of log|y| on log x; invalid when any x <= 0 or y == 0.
LineFit fit_loglog(const std::vector<double> &x, const std::vector<double> &y);

// ---------------------------------------------------------------------------
// Gaussian spatial moments

/// Result of comparing the box quadrature of X_ij against its closed form.
struct MomentCheck {
  Eigen::Matrix3d numeric;
  Eigen::Matrix3d closed_form;
  /// max |numeric - closed| normalised by the a = 0 diagonal value.
  double max_error = 0;
};

/// Closed form of
///   X_ij = int g(x - q)(x_i - q_i)(x_j - q'_j) g(x - q') d^3x,  a = (q - q')/2,
/// with g(x) = e^{-x^2/(2 r_C^2)}/((2 pi)^{3/2} r_C^3).
Eigen::Matrix3d gaussian_moment_closed(const Eigen::Vector3d &a, double r_C);

/// Tensor Gauss-Legendre quadrature of X_ij over the box +-8 r_C around the
/// midpoint of q and q'.
MomentCheck gaussian_moment_check(const Eigen::Vector3d &a, double r_C);

struct IijCheck {
  /// Packet widths in units of r_C.
  std::vector<double> widths;
  /// Diagonal and largest off-diagonal I_ij for each width.
  std::vector<double> diagonal, off_diagonal;
  /// 1/(16 pi^{3/2} r_C)
  double limit = 0;
  /// |diagonal - limit| / limit at the narrowest width.
  double error = 0;
};

/// I_ij = int d^3q d^3q' rho(q) rho(q') int d^3x Z-weighted moment, averaged
/// over normalised Gaussian packets of width w for each w/r_C in `widths`.
IijCheck iij_limit_check(double r_C, const std::vector<double> &widths = {0.1, 0.03, 0.01});

// ---------------------------------------------------------------------------
// Truncated Fock space

using MatrixC = Eigen::MatrixXcd;

struct FockOperators {
  std::size_t dim = 0;
  MatrixC q_matrix, p_matrix;
};

/// q = (a + a^dagger)/sqrt 2, p = i(a^dagger - a)/sqrt 2 in the number basis.
FockOperators fock_operators(std::size_t dim);

struct ExpmResult {
  MatrixC value;
  /// Squaring steps used.
  int squarings = 0;
  /// Bound on the truncated Taylor tail relative to the scaled norm.
  double tail_bound = 0;
};

/// e^{X} by scaling and squaring with a Taylor series, terminated when the
/// remainder bound drops below tail_tol. Throws ConvergenceError naming ||X||
/// if the series does not converge within max_terms.
ExpmResult expm(const MatrixC &X, double tail_tol = 1e-12, int max_terms = 60);

/// Largest ||alpha O^2|| (Frobenius) accepted directly by the series; larger
/// arguments are reduced by squaring first.
inline constexpr double kExpmDirectNorm = 5.0;

struct CommutatorCheck {
  double rel_error = 0;
  /// ||alpha O^2|| before scaling.
  double exponent_norm = 0;
  int squarings = 0;
};

/// || [A, e^{alpha O^2}] - [A, O] 2 alpha O e^{alpha O^2} || / ||[A, e^{alpha O^2}]||
/// on the central dim/2 block, O = a_coef q + b_coef p, A = q. Returns 0 when
/// both sides vanish.
CommutatorCheck commutator_identity_check(std::size_t dim, cplx alpha, cplx a_coef, cplx b_coef);

} // namespace cslrad::oracles
