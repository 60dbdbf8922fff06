#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include "cslrad/greens.hpp"
#include "cslrad/noise.hpp"
#include "cslrad/params.hpp"

namespace cslrad {

/// |a + b| t below which I(a, b) uses the a + b = 0 form.
inline constexpr double kDegenerateThreshold = 1e-6;

struct IabResult {
  cplx value{};
  bool degenerate_branch = false;
  /// |a + b| t fell in [0.5, 2] x kDegenerateThreshold; both branches were
  /// evaluated and `alternate` holds the one not returned.
  bool crossover_warning = false;
  cplx alternate{};
  double branch_discrepancy = 0;
};

/// I(a, b) = int_0^t int_0^t f(t1 - t2) e^{a t1} e^{b t2} dt1 dt2 for Re a, Re b <= 0,
/// through its reduction to one-dimensional integrals over the correlation lag.
IabResult i_ab(const NoiseModel &model, cplx a, cplx b, double t);

/// dI(a, b)/dt = e^{(a+b) t} int_0^t f(x) [e^{-a x} + e^{-b x}] dx.
cplx i_ab_rate(const NoiseModel &model, cplx a, cplx b, double t);

/// int_0^t f(x) (t - x) cos(omega x) dx
double window_integral(const NoiseModel &model, double omega, double t);
/// d/dt of window_integral: int_0^t f(x) cos(omega x) dx  (-> f~(omega)/2).
double window_rate(const NoiseModel &model, double omega, double t);

enum class Piece { A, B, C, D, Total, Iab, Window };
enum class Order { LowestOrder, ExactBeta };

std::string_view to_string(Piece piece);
std::string_view to_string(Order order);
Order order_from_string(std::string_view name);

/// Kernel problem in frame units: oscillator with mass 1 and the photon
/// angular frequency omega_k.
struct KernelSetup {
  Oscillator osc;
  double omega_k = 1;
};

/// Frame with k_ref = k, so omega_k = 1 and the frame prefactors apply to k.
KernelSetup make_setup(const PhysicalParams &params, const DerivedParams &derived,
                       const ScaleFrame &frame, double k);

struct KernelValue {
  cplx value{};
  Piece piece = Piece::Total;
  double t = 0;
  double omega_k = 0;
  NoiseKind noise = NoiseKind::White;
  double noise_tau = 0;
  Order order = Order::LowestOrder;
  RunawayPolicy policy = RunawayPolicy::DropRunaway;
  bool warning = false;
};

/// The integrand factors of T(t) = int int f(t1 - t2) S*(t2) S(t1), S = P + Q, with
///   P(t1) = -e^{-i w t} G1^-(t1)
///   Q(t1) = G0^+(t) [-i w + i w kappa F1(t1) + kappa F0(t1)]
/// at fixed outer time t. LowestOrder keeps only the terms that survive at
/// large times (oscillatory G, F0 = 0, F1 = 1/(beta z1 z2 z3)); ExactBeta keeps
/// every non-runaway term.
struct KernelFactors {
  ExpSum P, Q;
};
KernelFactors kernel_factors(const KernelSetup &setup, double t, Order order);

/// One of T_A .. T_D (Piece::A..D); t in frame units, model in frame units.
KernelValue t_piece(Piece piece, const KernelSetup &setup, const NoiseModel &model, double t,
                    Order order);

/// T = T_A + T_B + T_C + T_D. Throws KernelRealityError if Im T exceeds
/// 1e-10 |T|.
KernelValue t_total(const KernelSetup &setup, const NoiseModel &model, double t, Order order);

/// All four pieces at once (shares the factor construction).
std::array<KernelValue, 4> t_pieces(const KernelSetup &setup, const NoiseModel &model, double t,
                                    Order order);

/// Analytic dT/dt. Only for LowestOrder, where the outer factors are
/// time-independent in modulus and cancel in phase.
cplx t_total_rate(const KernelSetup &setup, const NoiseModel &model, double t);

/// SI entry point: builds the frame at k, converts t [s] and the noise model,
/// and returns the dimensionless piece.
KernelValue t_piece(Piece piece, const PhysicalParams &params, const NoiseModel &model_si,
                    double k, double t_si, Order order);

class KernelRealityError : public std::runtime_error {
public:
  KernelRealityError(const std::string &msg, std::array<cplx, 4> pieces)
      : std::runtime_error(msg), pieces_(pieces) {}
  const std::array<cplx, 4> &pieces() const { return pieces_; }

private:
  std::array<cplx, 4> pieces_;
};

} // namespace cslrad
