#include "cslrad/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "cslrad/errors.hpp"
#include "cslrad/quadrature.hpp"

namespace cslrad {

namespace {

constexpr cplx I{0.0, 1.0};

// int_0^upper f(x) g(x) dx with the delta part handled by the half-weight rule.
// `growth` bounds the exponential growth rate of g, `max_freq` its fastest phase.
template <class G>
cplx integrate_noise(const NoiseModel &model, G &&g, double upper, double growth,
                     double max_freq) {
  cplx total = 0.5 * model.white_weight() * cplx(g(0.0));
  if (model.is_white() || upper <= 0)
    return total;
  const double limit = std::min(upper, model.support_cutoff(growth));
  quad::Options opts;
  opts.max_panel = quad::oscillation_panel(max_freq);
  // keep a few panels across the correlation time so sharp peaks are seen
  const double tau = model.kind() == NoiseKind::Mixture
                         ? std::min(model.first().tau() > 0 ? model.first().tau() : limit,
                                    model.second().tau() > 0 ? model.second().tau() : limit)
                         : model.tau();
  opts.max_panel = std::min(opts.max_panel, std::max(tau, limit / 4096.0));
  total += quad::integrate([&](double x) { return correlation(model, x) * cplx(g(x)); }, 0.0,
                           limit, opts)
               .value;
  return total;
}

double max_abs(std::initializer_list<double> xs) {
  double m = 0;
  for (double x : xs)
    m = std::max(m, std::abs(x));
  return m;
}

cplx degenerate_iab(const NoiseModel &model, cplx half_diff, double t) {
  const double growth = std::abs(half_diff.real());
  return 2.0 * integrate_noise(
                   model, [&](double x) { return (t - x) * std::cosh(half_diff * x); }, t, growth,
                   std::abs(half_diff.imag()));
}

cplx two_term_iab(const NoiseModel &model, cplx a, cplx b, double t) {
  const cplx sigma = a + b;
  const cplx half_diff = 0.5 * (a - b);
  const double growth = 0.5 * std::abs(sigma.real()) + std::abs(half_diff.real());
  const double freq = max_abs({a.imag(), b.imag(), 0.5 * sigma.imag(), half_diff.imag()});
  const cplx lower = integrate_noise(
      model, [&](double x) { return std::exp(-0.5 * sigma * x) * std::cosh(half_diff * x); }, t,
      growth, freq);
  const cplx upper = integrate_noise(
      model, [&](double x) { return std::exp(0.5 * sigma * x) * std::cosh(half_diff * x); }, t,
      growth, freq);
  return 2.0 * (std::exp(sigma * t) * lower - upper) / sigma;
}

} // namespace

IabResult i_ab(const NoiseModel &model, cplx a, cplx b, double t) {
  if (a.real() > 0 || b.real() > 0)
    throw DomainError("i_ab: Re a and Re b must be <= 0 (runaway-free exponents)");
  if (!(t >= 0))
    throw DomainError("i_ab: t must be >= 0");
  IabResult r;
  if (t == 0)
    return r;
  const double s = std::abs(a + b) * t;
  const bool degenerate = s < kDegenerateThreshold;
  const bool band = s >= 0.5 * kDegenerateThreshold && s <= 2.0 * kDegenerateThreshold;
  r.degenerate_branch = degenerate;
  r.value = degenerate ? degenerate_iab(model, 0.5 * (a - b), t) : two_term_iab(model, a, b, t);
  if (band) {
    r.crossover_warning = true;
    r.alternate = degenerate ? two_term_iab(model, a, b, t) : degenerate_iab(model, 0.5 * (a - b), t);
    const double scale = std::max(std::abs(r.value), std::abs(r.alternate));
    r.branch_discrepancy = scale > 0 ? std::abs(r.value - r.alternate) / scale : 0.0;
  }
  return r;
}

cplx i_ab_rate(const NoiseModel &model, cplx a, cplx b, double t) {
  if (a.real() > 0 || b.real() > 0)
    throw DomainError("i_ab_rate: Re a and Re b must be <= 0");
  if (!(t >= 0))
    throw DomainError("i_ab_rate: t must be >= 0");
  const double growth = std::max(std::abs(a.real()), std::abs(b.real()));
  const double freq = max_abs({a.imag(), b.imag()});
  const cplx inner = integrate_noise(
      model, [&](double x) { return std::exp(-a * x) + std::exp(-b * x); }, t, growth, freq);
  return std::exp((a + b) * t) * inner;
}

double window_integral(const NoiseModel &model, double omega, double t) {
  if (!(t >= 0))
    throw DomainError("window_integral: t must be >= 0");
  return integrate_noise(model, [&](double x) { return (t - x) * std::cos(omega * x); }, t, 0.0,
                         std::abs(omega))
      .real();
}

double window_rate(const NoiseModel &model, double omega, double t) {
  if (!(t >= 0))
    throw DomainError("window_rate: t must be >= 0");
  return integrate_noise(model, [&](double x) { return std::cos(omega * x); }, t, 0.0,
                         std::abs(omega))
      .real();
}

std::string_view to_string(Piece piece) {
  switch (piece) {
  case Piece::A:
    return "A";
  case Piece::B:
    return "B";
  case Piece::C:
    return "C";
  case Piece::D:
    return "D";
  case Piece::Total:
    return "Total";
  case Piece::Iab:
    return "Iab";
  case Piece::Window:
    return "Window";
  }
  return "?";
}

std::string_view to_string(Order order) {
  return order == Order::LowestOrder ? "lowest" : "exact";
}

Order order_from_string(std::string_view name) {
  if (name == "lowest" || name == "LowestOrder")
    return Order::LowestOrder;
  if (name == "exact" || name == "ExactBeta")
    return Order::ExactBeta;
  throw ValidationError("order", "expected 'lowest' or 'exact', got '" + std::string(name) + "'");
}

KernelSetup make_setup(const PhysicalParams &params, const DerivedParams &derived,
                       const ScaleFrame &frame, double k) {
  return {make_oscillator(params, derived, frame), params.c * k * frame.t_unit};
}

KernelFactors kernel_factors(const KernelSetup &setup, double t, Order order) {
  const Oscillator &osc = setup.osc;
  const double w = setup.omega_k;
  const cplx outer_phase = -std::exp(-I * w * t); // -e^{-i w t}
  // constant part of the bracket: -i w [1 - kappa/(beta z1 z2 z3)]
  const cplx bracket_const = -I * w * spurious_bracket(osc);
  KernelFactors f;
  if (order == Order::LowestOrder) {
    f.P.add(outer_phase * asymptotic_G1(osc, w, 0.0, -1), I * w);
    f.Q.add(asymptotic_G0(osc, w, t, +1) * bracket_const, 0.0);
    return f;
  }
  const Propagators prop(osc);
  f.P = prop.G1(w, -1, RunawayPolicy::DropRunaway);
  f.P *= outer_phase;
  const ExpSum F0 = prop.F0(RunawayPolicy::DropRunaway);
  const ExpSum F1 = prop.F1(RunawayPolicy::DropRunaway);
  const double kappa = osc.kappa();
  // F0 and F1 share the z2, z3 exponents in their first two terms
  for (std::size_t l = 0; l < 2; ++l)
    f.Q.add(kappa * (I * w * F1.terms[l].coef + F0.terms[l].coef), F0.terms[l].rate);
  f.Q.add(bracket_const, 0.0);
  f.Q *= prop.G0(w, +1, RunawayPolicy::DropRunaway)(t);
  return f;
}

namespace {

// int int f(t1 - t2) conj(Y(t2)) X(t1)
cplx pair_integral(const NoiseModel &model, const ExpSum &X, const ExpSum &Y, double t, bool &warn) {
  cplx total{};
  for (const auto &x : X.terms)
    for (const auto &y : Y.terms) {
      const cplx coef = x.coef * std::conj(y.coef);
      if (coef == cplx{})
        continue;
      const IabResult r = i_ab(model, x.rate, std::conj(y.rate), t);
      warn = warn || r.crossover_warning;
      total += coef * r.value;
    }
  return total;
}

cplx pair_rate(const NoiseModel &model, const ExpSum &X, const ExpSum &Y, double t) {
  cplx total{};
  for (const auto &x : X.terms)
    for (const auto &y : Y.terms) {
      const cplx coef = x.coef * std::conj(y.coef);
      if (coef != cplx{})
        total += coef * i_ab_rate(model, x.rate, std::conj(y.rate), t);
    }
  return total;
}

KernelValue make_value(Piece piece, const KernelSetup &setup, const NoiseModel &model, double t,
                       Order order) {
  KernelValue v;
  v.piece = piece;
  v.t = t;
  v.omega_k = setup.omega_k;
  v.noise = model.kind();
  v.noise_tau = model.tau();
  v.order = order;
  return v;
}

void check_time(double t) {
  if (!(t > 0) || !std::isfinite(t))
    throw DomainError("kernel: t must be finite and > 0");
}

} // namespace

std::array<KernelValue, 4> t_pieces(const KernelSetup &setup, const NoiseModel &model, double t,
                                    Order order) {
  check_time(t);
  const KernelFactors f = kernel_factors(setup, t, order);
  std::array<KernelValue, 4> out;
  const Piece pieces[4] = {Piece::A, Piece::B, Piece::C, Piece::D};
  const ExpSum *xs[4] = {&f.P, &f.Q, &f.P, &f.Q};
  const ExpSum *ys[4] = {&f.P, &f.P, &f.Q, &f.Q};
  for (int i = 0; i < 4; ++i) {
    out[i] = make_value(pieces[i], setup, model, t, order);
    out[i].value = pair_integral(model, *xs[i], *ys[i], t, out[i].warning);
  }
  return out;
}

KernelValue t_piece(Piece piece, const KernelSetup &setup, const NoiseModel &model, double t,
                    Order order) {
  check_time(t);
  const KernelFactors f = kernel_factors(setup, t, order);
  KernelValue v = make_value(piece, setup, model, t, order);
  switch (piece) {
  case Piece::A:
    v.value = pair_integral(model, f.P, f.P, t, v.warning);
    break;
  case Piece::B:
    v.value = pair_integral(model, f.Q, f.P, t, v.warning);
    break;
  case Piece::C:
    v.value = pair_integral(model, f.P, f.Q, t, v.warning);
    break;
  case Piece::D:
    v.value = pair_integral(model, f.Q, f.Q, t, v.warning);
    break;
  default:
    throw ValidationError("piece", "t_piece accepts A, B, C or D");
  }
  return v;
}

KernelValue t_total(const KernelSetup &setup, const NoiseModel &model, double t, Order order) {
  const auto pieces = t_pieces(setup, model, t, order);
  KernelValue v = make_value(Piece::Total, setup, model, t, order);
  std::array<cplx, 4> raw;
  for (int i = 0; i < 4; ++i) {
    raw[i] = pieces[i].value;
    v.value += raw[i];
    v.warning = v.warning || pieces[i].warning;
  }
  if (std::abs(v.value.imag()) > 1e-10 * std::abs(v.value))
    throw KernelRealityError("t_total: Im T = " + std::to_string(v.value.imag()) +
                                 " exceeds 1e-10 |T| = " + std::to_string(std::abs(v.value)),
                             raw);
  return v;
}

cplx t_total_rate(const KernelSetup &setup, const NoiseModel &model, double t) {
  check_time(t);
  const KernelFactors f = kernel_factors(setup, t, Order::LowestOrder);
  return pair_rate(model, f.P, f.P, t) + pair_rate(model, f.Q, f.P, t) +
         pair_rate(model, f.P, f.Q, t) + pair_rate(model, f.Q, f.Q, t);
}

KernelValue t_piece(Piece piece, const PhysicalParams &params, const NoiseModel &model_si,
                    double k, double t_si, Order order) {
  const DerivedParams derived = derive(params);
  const ScaleFrame frame = make_frame(params, k);
  return t_piece(piece, make_setup(params, derived, frame, k), model_si.rescaled(frame.t_unit),
                 frame.time_to_frame(t_si), order);
}

} // namespace cslrad
