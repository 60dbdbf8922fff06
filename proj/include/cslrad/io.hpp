#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cslrad/rates.hpp"
#include "cslrad/study.hpp"

namespace cslrad::io {

/// Shortest form that still carries 17 significant digits ("%.17g").
std::string fmt17(double x);
/// RFC-4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(const std::string &s);

/// Reference frame for unit-free output: lengths in 1/k_ref, times in
/// 1/(c k_ref), rates in units of the white-noise free rate at k_ref.
struct OutputUnits {
  double k_ref = 1;
  double t_unit = 1;
  double rate_unit = 1;
};
OutputUnits dimensionless_units(const PhysicalParams &params, double k_ref);

inline constexpr const char *kSpectrumHeader = "k,omega_k,rate,formula,noise_kind,tau";

/// CSV with kSpectrumHeader, LF line endings. SI unless `units` is given.
void write_spectrum_csv(std::ostream &os, const RateSpectrum &s,
                        const std::optional<OutputUnits> &units = {});
/// JSON array of records with the same fields as the CSV.
void write_spectrum_json(std::ostream &os, const RateSpectrum &s,
                         const std::optional<OutputUnits> &units = {});

struct PhotonRow {
  double t = 0; // [s]
  double photon_number = 0;
  cplx T{};     // frame units
};
void write_photon_csv(std::ostream &os, const std::vector<PhotonRow> &rows, Order order,
                      const NoiseModel &noise, const std::optional<OutputUnits> &units = {});
void write_photon_json(std::ostream &os, const std::vector<PhotonRow> &rows, Order order,
                       const NoiseModel &noise, const std::optional<OutputUnits> &units = {});

/// Rows of (beta_multiplier, beta, |T_A|, |T_B|, |T_D|); beta in frame units
/// when `dimensionless`.
void write_scaling_csv(std::ostream &os, const ScalingResult &r, bool dimensionless = false);
/// quantity,value with slope_T_B, slope_T_D, variation_T_A; "n/a" for a
/// degenerate fit.
void write_scaling_fit_csv(std::ostream &os, const ScalingResult &r);
void write_scaling_json(std::ostream &os, const ScalingResult &r, bool dimensionless = false);

/// Fixed-width table: check, tolerance, error, verdict.
void write_verify_table(std::ostream &os, const std::vector<VerifyCheck> &checks);

} // namespace cslrad::io
