#include "cslrad/io.hpp"

#include <cstdio>
#include <iomanip>

#include <json.hpp>

namespace cslrad::io {

using nlohmann::ordered_json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += '"';
    out += ch;
  }
  return out + "\"";
}

OutputUnits dimensionless_units(const PhysicalParams &params, double k_ref) {
  const ScaleFrame f = make_frame(params, k_ref);
  return {k_ref, f.t_unit, resummed_free(params, NoiseModel::white(), k_ref)};
}

namespace {

struct SpectrumRecord {
  double k, w, rate, tau;
};

SpectrumRecord record(const RateSample &s, const NoiseModel &noise,
                      const std::optional<OutputUnits> &u) {
  SpectrumRecord r{s.k, s.omega_k, s.rate, noise.tau()};
  if (u) {
    r.k /= u->k_ref;
    r.w *= u->t_unit;
    r.rate /= u->rate_unit;
    r.tau /= u->t_unit;
  }
  return r;
}

double tau_out(const NoiseModel &noise, const std::optional<OutputUnits> &u) {
  return u ? noise.tau() / u->t_unit : noise.tau();
}

} // namespace

void write_spectrum_csv(std::ostream &os, const RateSpectrum &s,
                        const std::optional<OutputUnits> &units) {
  os << kSpectrumHeader << '\n';
  const std::string formula = csv_field(std::string(to_string(s.formula)));
  const std::string kind = csv_field(std::string(to_string(s.noise.kind())));
  for (const auto &sample : s.samples) {
    const SpectrumRecord r = record(sample, s.noise, units);
    os << fmt17(r.k) << ',' << fmt17(r.w) << ',' << fmt17(r.rate) << ',' << formula << ',' << kind
       << ',' << fmt17(r.tau) << '\n';
  }
}

void write_spectrum_json(std::ostream &os, const RateSpectrum &s,
                         const std::optional<OutputUnits> &units) {
  ordered_json arr = ordered_json::array();
  for (const auto &sample : s.samples) {
    const SpectrumRecord r = record(sample, s.noise, units);
    arr.push_back({{"k", r.k},
                   {"omega_k", r.w},
                   {"rate", r.rate},
                   {"formula", std::string(to_string(s.formula))},
                   {"noise_kind", std::string(to_string(s.noise.kind()))},
                   {"tau", r.tau}});
  }
  os << arr.dump(2) << '\n';
}

void write_photon_csv(std::ostream &os, const std::vector<PhotonRow> &rows, Order order,
                      const NoiseModel &noise, const std::optional<OutputUnits> &units) {
  os << "t,photon_number,re_T,im_T,order,noise_kind,tau\n";
  for (const auto &r : rows)
    os << fmt17(units ? r.t / units->t_unit : r.t) << ',' << fmt17(r.photon_number) << ','
       << fmt17(r.T.real()) << ',' << fmt17(r.T.imag()) << ',' << to_string(order) << ','
       << to_string(noise.kind()) << ',' << fmt17(tau_out(noise, units)) << '\n';
}

void write_photon_json(std::ostream &os, const std::vector<PhotonRow> &rows, Order order,
                       const NoiseModel &noise, const std::optional<OutputUnits> &units) {
  ordered_json arr = ordered_json::array();
  for (const auto &r : rows)
    arr.push_back({{"t", units ? r.t / units->t_unit : r.t},
                   {"photon_number", r.photon_number},
                   {"re_T", r.T.real()},
                   {"im_T", r.T.imag()},
                   {"order", std::string(to_string(order))},
                   {"noise_kind", std::string(to_string(noise.kind()))},
                   {"tau", tau_out(noise, units)}});
  os << arr.dump(2) << '\n';
}

void write_scaling_csv(std::ostream &os, const ScalingResult &r, bool dimensionless) {
  os << "beta_multiplier,beta,abs_T_A,abs_T_B,abs_T_D\n";
  for (const auto &row : r.rows)
    os << fmt17(row.multiplier) << ',' << fmt17(dimensionless ? row.beta_frame : row.beta) << ','
       << fmt17(row.abs_A) << ',' << fmt17(row.abs_B) << ',' << fmt17(row.abs_D) << '\n';
}

void write_scaling_fit_csv(std::ostream &os, const ScalingResult &r) {
  auto slope = [](const oracles::LineFit &f) { return f.valid ? fmt17(f.slope) : "n/a"; };
  os << "quantity,value\n";
  os << "slope_T_B," << slope(r.fit_B) << '\n';
  os << "slope_T_D," << slope(r.fit_D) << '\n';
  os << "variation_T_A," << fmt17(r.a_variation) << '\n';
}

void write_scaling_json(std::ostream &os, const ScalingResult &r, bool dimensionless) {
  ordered_json rows = ordered_json::array();
  for (const auto &row : r.rows)
    rows.push_back({{"beta_multiplier", row.multiplier},
                    {"beta", dimensionless ? row.beta_frame : row.beta},
                    {"abs_T_A", row.abs_A},
                    {"abs_T_B", row.abs_B},
                    {"abs_T_D", row.abs_D}});
  auto slope = [](const oracles::LineFit &f) -> ordered_json {
    return f.valid ? ordered_json(f.slope) : ordered_json("n/a");
  };
  ordered_json out = {{"rows", rows},
                      {"slope_T_B", slope(r.fit_B)},
                      {"slope_T_D", slope(r.fit_D)},
                      {"variation_T_A", r.a_variation}};
  os << out.dump(2) << '\n';
}

void write_verify_table(std::ostream &os, const std::vector<VerifyCheck> &checks) {
  std::size_t width = 5;
  for (const auto &c : checks)
    width = std::max(width, c.name.size());
  auto sci = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return std::string(buf);
  };
  os << std::left << std::setw(int(width) + 2) << "check" << std::setw(12) << "tolerance"
     << std::setw(12) << "error" << "verdict\n";
  for (const auto &c : checks)
    os << std::left << std::setw(int(width) + 2) << c.name << std::setw(12) << sci(c.tolerance)
       << std::setw(12) << sci(c.error) << (c.passed ? "PASS" : "FAIL") << '\n';
}

} // namespace cslrad::io
