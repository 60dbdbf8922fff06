#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cslrad::quad {

struct Options {
  double rel_tol = 1e-14;
  /// Panels never exceed this width; adaptive refinement happens inside each.
  double max_panel = std::numeric_limits<double>::infinity();
  /// Bisection budget on top of the initial panels.
  std::size_t max_splits = 20000;
};

struct Result {
  std::complex<double> value{};
  double abs_err = 0;
  std::size_t panels = 0;
  bool converged = true;
};

/// Panel width resolving a phase e^{i w x}: one eighth of its period.
inline double oscillation_panel(double max_angular_freq) {
  if (!(max_angular_freq > 0))
    return std::numeric_limits<double>::infinity();
  return 2 * std::numbers::pi / max_angular_freq / 8.0;
}

/// Globally adaptive Gauss-Kronrod (15 points) over [a, b], starting from
/// equal panels no wider than opts.max_panel and bisecting the panel with the
/// largest error estimate. Stops once the summed estimate is below
/// rel_tol |I| or rounding level of int |f|. F: double -> complex or double.
template <class F> Result integrate(F &&f, double a, double b, const Options &opts = {}) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  using cplx = std::complex<double>;
  Result r;
  if (!(b > a))
    return r;
  auto g = [&](double x) { return cplx(f(x)); };
  struct Panel {
    double lo, hi;
    cplx value;
    double err, l1;
    bool operator<(const Panel &o) const { return err < o.err; }
  };
  auto eval = [&](double lo, double hi) {
    Panel p{lo, hi, {}, 0, 0};
    p.value = GK::integrate(g, lo, hi, 0, 0.0, &p.err, &p.l1);
    return p;
  };
  const double width = b - a;
  const double n_exact = std::ceil(width / opts.max_panel);
  const std::size_t n = std::isfinite(n_exact) ? std::max<std::size_t>(1, std::size_t(n_exact)) : 1;
  const double h = width / double(n);
  std::vector<Panel> heap;
  heap.reserve(n + 2 * opts.max_splits);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = a + h * double(i);
    heap.push_back(eval(lo, (i + 1 == n) ? b : lo + h));
  }
  std::make_heap(heap.begin(), heap.end());
  auto totals = [&](cplx &value, double &err, double &l1) {
    value = 0;
    err = l1 = 0;
    for (const auto &p : heap) {
      value += p.value;
      err += p.err;
      l1 += p.l1;
    }
  };
  cplx value;
  double err, l1;
  totals(value, err, l1);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::size_t splits = 0;
  while (err > std::max(opts.rel_tol * std::abs(value), 50 * eps * l1)) {
    if (splits++ >= opts.max_splits) {
      r.converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end());
    const Panel p = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (p.lo + p.hi);
    if (!(mid > p.lo && mid < p.hi)) { // cannot split further
      heap.push_back(p);
      std::push_heap(heap.begin(), heap.end());
      r.converged = false;
      break;
    }
    for (const Panel &c : {eval(p.lo, mid), eval(mid, p.hi)}) {
      value += c.value;
      err += c.err;
      l1 += c.l1;
      heap.push_back(c);
      std::push_heap(heap.begin(), heap.end());
    }
    value -= p.value;
    err -= p.err;
    l1 -= p.l1;
    if (splits % 512 == 0)
      totals(value, err, l1);
  }
  totals(value, err, l1);
  r.value = value;
  r.abs_err = err;
  r.panels = heap.size();
  return r;
}

} // namespace cslrad::quad
