#include "cslrad/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cslrad/errors.hpp"

namespace cslrad::oracles {

namespace {

using std::numbers::pi;

// 15-point Kronrod nodes on [-1, 1] with their weights and the weights of the
// embedded 7-point Gauss rule (zero on Kronrod-only nodes).
struct KronrodRule {
  std::array<double, 15> x{}, wk{}, wg{};
};

const KronrodRule &kronrod_rule() {
  static const KronrodRule rule = [] {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    using G = boost::math::quadrature::gauss<double, 7>;
    const auto &ka = GK::abscissa();
    const auto &kw = GK::weights();
    const auto &ga = G::abscissa();
    const auto &gw = G::weights();
    KronrodRule r;
    auto gauss_weight = [&](double x) {
      for (std::size_t j = 0; j < ga.size(); ++j)
        if (std::abs(ga[j] - x) < 1e-14)
          return gw[j];
      return 0.0;
    };
    std::size_t n = 0;
    for (std::size_t i = ka.size(); i-- > 1;) {
      r.x[n] = -ka[i];
      r.wk[n] = kw[i];
      r.wg[n++] = gauss_weight(ka[i]);
    }
    for (std::size_t i = 0; i < ka.size(); ++i) {
      r.x[n] = ka[i];
      r.wk[n] = kw[i];
      r.wg[n++] = gauss_weight(ka[i]);
    }
    return r;
  }();
  return rule;
}

struct Panel {
  double x0, x1, y0, y1;
  cplx value;
  double err;
  double l1; // integral of |f|, sets the round-off floor
  bool split_x;
  bool operator<(const Panel &o) const { return err < o.err; }
};

Panel eval_panel(const Integrand2D &f, double x0, double x1, double y0, double y1) {
  const KronrodRule &r = kronrod_rule();
  const double hx = 0.5 * (x1 - x0), hy = 0.5 * (y1 - y0);
  const double cx = 0.5 * (x1 + x0), cy = 0.5 * (y1 + y0);
  cplx kk{}, gk{}, kg{};
  double abs_sum = 0;
  for (std::size_t i = 0; i < 15; ++i) {
    const double x = cx + hx * r.x[i];
    cplx row_k{}, row_g{};
    for (std::size_t j = 0; j < 15; ++j) {
      const cplx v = f(x, cy + hy * r.x[j]);
      row_k += r.wk[j] * v;
      row_g += r.wg[j] * v;
      abs_sum += r.wk[i] * r.wk[j] * std::abs(v);
    }
    kk += r.wk[i] * row_k;
    gk += r.wg[i] * row_k;
    kg += r.wk[i] * row_g;
  }
  const double area = hx * hy;
  Panel p{x0, x1, y0, y1, area * kk, 0.0, area * abs_sum, true};
  const double ex = std::abs(area * (kk - gk));
  const double ey = std::abs(area * (kk - kg));
  p.err = ex + ey;
  p.split_x = ex >= ey;
  return p;
}

} // namespace

Quad2DResult quad2d(const Integrand2D &f, double x0, double x1, double y0, double y1,
                    const Quad2DOptions &opts) {
  if (!(opts.rel_tol >= 1e-15))
    throw ValidationError("rel_tol", "quad2d: rel_tol must be >= 1e-15");
  Quad2DResult res;
  if (!(x1 > x0) || !(y1 > y0))
    return res.converged = true, res;
  std::priority_queue<Panel> queue;
  const unsigned n = std::max(1u, opts.initial_split);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      const double xa = x0 + (x1 - x0) * i / n, xb = i + 1 == n ? x1 : x0 + (x1 - x0) * (i + 1) / n;
      const double ya = y0 + (y1 - y0) * j / n, yb = j + 1 == n ? y1 : y0 + (y1 - y0) * (j + 1) / n;
      queue.push(eval_panel(f, xa, xb, ya, yb));
    }
  cplx total{};
  double err = 0, l1 = 0;
  auto recompute = [&] {
    // re-sum from scratch to avoid drift from repeated add/subtract
    total = 0;
    err = 0;
    l1 = 0;
    auto copy = queue;
    while (!copy.empty()) {
      total += copy.top().value;
      err += copy.top().err;
      l1 += copy.top().l1;
      copy.pop();
    }
  };
  recompute();
  const double eps = std::numeric_limits<double>::epsilon();
  std::size_t steps = 0;
  while (err > std::max({opts.abs_tol, opts.rel_tol * std::abs(total), 50 * eps * l1})) {
    if (queue.size() + 1 > opts.max_panels) {
      res.value = total;
      res.abs_err_estimate = err;
      res.panels = queue.size();
      res.converged = false;
      return res;
    }
    const Panel p = queue.top();
    queue.pop();
    Panel a, b;
    if (p.split_x) {
      const double m = 0.5 * (p.x0 + p.x1);
      a = eval_panel(f, p.x0, m, p.y0, p.y1);
      b = eval_panel(f, m, p.x1, p.y0, p.y1);
    } else {
      const double m = 0.5 * (p.y0 + p.y1);
      a = eval_panel(f, p.x0, p.x1, p.y0, m);
      b = eval_panel(f, p.x0, p.x1, m, p.y1);
    }
    total += a.value + b.value - p.value;
    err += a.err + b.err - p.err;
    l1 += a.l1 + b.l1 - p.l1;
    queue.push(a);
    queue.push(b);
    if (++steps % 256 == 0)
      recompute();
  }
  recompute();
  res.value = total;
  res.abs_err_estimate = std::max(err, 0.0);
  res.panels = queue.size();
  res.converged = true;
  return res;
}

Quad2DResult quad2d(const Integrand2D &f, double t, const Quad2DOptions &opts) {
  if (!opts.diagonal_split)
    return quad2d(f, 0.0, t, 0.0, t, opts);
  // t2 < t1: (u, v) -> (u, u v); t1 < t2: (u, v) -> (u v, u); Jacobian u.
  Quad2DOptions half = opts;
  half.max_panels = std::max<std::size_t>(1, opts.max_panels / 2);
  const Quad2DResult lower =
      quad2d([&](double u, double v) { return u * f(u, u * v); }, 0.0, t, 0.0, 1.0, half);
  const Quad2DResult upper =
      quad2d([&](double u, double v) { return u * f(u * v, u); }, 0.0, t, 0.0, 1.0, half);
  return {lower.value + upper.value, lower.abs_err_estimate + upper.abs_err_estimate,
          lower.panels + upper.panels, lower.converged && upper.converged};
}

double central_diff(const std::function<double(double)> &fn, double t, double h_rel) {
  const double h = h_rel * (t != 0 ? std::abs(t) : 1.0);
  const double d1 = (fn(t + h) - fn(t - h)) / (2 * h);
  const double d2 = (fn(t + h / 2) - fn(t - h / 2)) / h;
  return (4 * d2 - d1) / 3;
}

LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
  LineFit fit;
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n)
    return fit;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0))
    return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  fit.valid = std::isfinite(fit.slope);
  return fit;
}

LineFit fit_loglog(const std::vector<double> &x, const std::vector<double> &y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0) || !(std::abs(y[i]) > 0) || !std::isfinite(y[i]))
      return {};
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(std::abs(y[i])));
  }
  return fit_line(lx, ly);
}

Eigen::Matrix3d gaussian_moment_closed(const Eigen::Vector3d &a, double r_C) {
  const double r2 = r_C * r_C;
  const double pre = std::exp(-a.squaredNorm() / r2) / (std::pow(2 * pi, 3) * std::pow(r_C, 6));
  const double p32 = std::pow(pi, 1.5);
  Eigen::Matrix3d X = -(a * a.transpose()) * r2 * r_C * p32;
  X.diagonal().array() += p32 * std::pow(r_C, 5) / 2;
  return pre * X;
}

namespace {

// Composite Gauss-Legendre nodes on [-L, L].
void composite_gl(double L, int panels, std::vector<double> &x, std::vector<double> &w) {
  using G = boost::math::quadrature::gauss<double, 10>;
  const auto &ga = G::abscissa();
  const auto &gw = G::weights();
  const double h = 2 * L / panels;
  x.clear();
  w.clear();
  for (int p = 0; p < panels; ++p) {
    const double c = -L + h * (p + 0.5);
    for (std::size_t j = 0; j < ga.size(); ++j) {
      x.push_back(c + 0.5 * h * ga[j]);
      w.push_back(0.5 * h * gw[j]);
      if (ga[j] != 0) {
        x.push_back(c - 0.5 * h * ga[j]);
        w.push_back(0.5 * h * gw[j]);
      }
    }
  }
}

} // namespace

MomentCheck gaussian_moment_check(const Eigen::Vector3d &a, double r_C) {
  if (!(r_C > 0))
    throw ValidationError("r_C", "gaussian_moment_check: r_C must be > 0");
  std::vector<double> x, w;
  composite_gl(8 * r_C, 16, x, w);
  const double norm = 1.0 / std::pow(std::sqrt(2 * pi) * r_C, 6);
  const double inv2r2 = 1.0 / (2 * r_C * r_C);
  Eigen::Matrix3d X = Eigen::Matrix3d::Zero();
  Eigen::Vector3d z;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      for (std::size_t l = 0; l < x.size(); ++l) {
        z << x[i], x[j], x[l];
        const double g = norm * std::exp(-((z - a).squaredNorm() + (z + a).squaredNorm()) * inv2r2);
        X += (w[i] * w[j] * w[l] * g) * ((z - a) * (z + a).transpose());
      }
  MomentCheck out;
  out.numeric = X;
  out.closed_form = gaussian_moment_closed(a, r_C);
  const double scale = gaussian_moment_closed(Eigen::Vector3d::Zero(), r_C)(0, 0);
  out.max_error = (out.numeric - out.closed_form).cwiseAbs().maxCoeff() / scale;
  return out;
}

IijCheck iij_limit_check(double r_C, const std::vector<double> &widths) {
  if (!(r_C > 0))
    throw ValidationError("r_C", "iij_limit_check: r_C must be > 0");
  IijCheck out;
  out.widths = widths;
  out.limit = 1.0 / (16 * std::pow(pi, 1.5) * r_C);
  std::vector<double> x, w;
  for (double wr : widths) {
    if (!(wr > 0))
      throw ValidationError("widths", "iij_limit_check: packet widths must be > 0");
    // q and q' drawn from independent packets of width w: s = q - q' has
    // variance 2 w^2 per axis and X_ij depends on q, q' only through a = s/2.
    const double sigma = std::sqrt(2.0) * wr * r_C;
    composite_gl(8 * sigma, 8, x, w);
    const double norm = 1.0 / std::pow(std::sqrt(2 * pi) * sigma, 3);
    Eigen::Matrix3d I = Eigen::Matrix3d::Zero();
    Eigen::Vector3d s;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t l = 0; l < x.size(); ++l) {
          s << x[i], x[j], x[l];
          const double rho = norm * std::exp(-s.squaredNorm() / (2 * sigma * sigma));
          I += (w[i] * w[j] * w[l] * rho) * gaussian_moment_closed(0.5 * s, r_C);
        }
    out.diagonal.push_back(I.diagonal().mean());
    double off = 0;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        if (r != c)
          off = std::max(off, std::abs(I(r, c)));
    out.off_diagonal.push_back(off);
  }
  if (!out.diagonal.empty())
    out.error = std::abs(out.diagonal.back() - out.limit) / out.limit;
  return out;
}

FockOperators fock_operators(std::size_t dim) {
  if (dim < 2)
    throw ValidationError("dim", "fock_operators: dim must be >= 2");
  MatrixC a = MatrixC::Zero(dim, dim);
  for (std::size_t n = 1; n < dim; ++n)
    a(n - 1, n) = std::sqrt(double(n));
  const MatrixC ad = a.adjoint();
  const double s = 1.0 / std::sqrt(2.0);
  return {dim, s * (a + ad), cplx(0, s) * (ad - a)};
}

ExpmResult expm(const MatrixC &X, double tail_tol, int max_terms) {
  const double norm = X.cwiseAbs().colwise().sum().maxCoeff(); // induced 1-norm
  if (!std::isfinite(norm))
    throw ConvergenceError("expm: ||X|| is not finite");
  ExpmResult r;
  while (std::ldexp(norm, -r.squarings) > 0.5 && r.squarings < 1000)
    ++r.squarings;
  const MatrixC Y = X * std::ldexp(1.0, -r.squarings);
  const double y = std::ldexp(norm, -r.squarings);
  MatrixC term = MatrixC::Identity(X.rows(), X.cols());
  MatrixC sum = term;
  double term_bound = 1;
  bool done = false;
  for (int n = 1; n <= max_terms; ++n) {
    term = term * Y / double(n);
    sum += term;
    term_bound *= y / n;
    // remainder of the series after the n-th term, geometric bound
    const double tail = term_bound * y / (n + 1) / (1 - y / (n + 2));
    if (tail <= tail_tol) {
      r.tail_bound = tail;
      done = true;
      break;
    }
  }
  if (!done)
    throw ConvergenceError("expm: Taylor series did not converge for ||X|| = " +
                           std::to_string(norm));
  for (int i = 0; i < r.squarings; ++i)
    sum = sum * sum;
  r.value = std::move(sum);
  return r;
}

CommutatorCheck commutator_identity_check(std::size_t dim, cplx alpha, cplx a_coef, cplx b_coef) {
  if (dim < 16)
    throw ValidationError("dim", "commutator_identity_check: dim must be >= 16");
  const FockOperators ops = fock_operators(dim);
  const MatrixC &A = ops.q_matrix;
  const MatrixC O = a_coef * ops.q_matrix + b_coef * ops.p_matrix;
  const MatrixC X = alpha * O * O;
  CommutatorCheck out;
  out.exponent_norm = X.norm();
  const ExpmResult E = expm(X);
  out.squarings = E.squarings;
  const MatrixC lhs = A * E.value - E.value * A;
  const MatrixC rhs = (A * O - O * A) * (2.0 * alpha) * O * E.value;
  const Eigen::Index half = Eigen::Index(dim / 2), off = Eigen::Index(dim / 4);
  const double num = (lhs - rhs).block(off, off, half, half).norm();
  const double den = lhs.block(off, off, half, half).norm();
  const double scale = std::max(den, rhs.block(off, off, half, half).norm());
  // both sides are rounding noise relative to ||A|| ||e^X||: identity holds trivially
  const double noise = 1e-12 * A.block(off, off, half, half).norm() *
                       E.value.block(off, off, half, half).norm();
  if (scale <= noise)
    return out;
  out.rel_error = num / (den > 0 ? den : scale);
  return out;
}

} // namespace cslrad::oracles
