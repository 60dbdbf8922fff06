// cslrad: spectra, beta-scaling studies, photon-number curves and the oracle
// suite from one JSON config.
//
// Exit codes: 0 success, 1 other failure, 2 config error, 3 verification
// failure, 4 numerical non-convergence.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cslrad/config.hpp"
#include "cslrad/errors.hpp"
#include "cslrad/io.hpp"
#include "cslrad/parallel.hpp"
#include "cslrad/study.hpp"

namespace fs = std::filesystem;
using namespace cslrad;

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kVerify = 3, kNonConvergence = 4 };

struct Common {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "csv";
  unsigned jobs = 1;
  bool dimensionless = false;
};

void add_common(CLI::App *sub, Common &c) {
  sub->add_option("-c,--config", c.config_path, "JSON config file (defaults apply when omitted)");
  sub->add_option("-o,--out-dir", c.out_dir, "Directory for output files")->capture_default_str();
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--jobs", c.jobs, "Worker threads (output order is unaffected)")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  sub->add_flag("--dimensionless", c.dimensionless,
                "Emit frame quantities (k/k_ref, t c k_ref, rate / free white rate at k_ref)");
  sub->allow_extras();
  sub->footer("Any config key can be overridden with a dotted flag, e.g. --noise.tau=1e-18 "
              "or --sweep.formulas='[\"NaiveFirstOrder\"]'.");
}

// "--a.b=v" or "--a.b v" pairs left over by the parser.
std::vector<Override> parse_overrides(const std::vector<std::string> &extras) {
  std::vector<Override> out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string &arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.size() < 3)
      throw ConfigError(arg, "unexpected argument");
    const std::string body = arg.substr(2);
    const auto eq = body.find('=');
    if (eq != std::string::npos) {
      out.emplace_back(body.substr(0, eq), body.substr(eq + 1));
    } else {
      if (i + 1 >= extras.size())
        throw ConfigError(body, "override is missing a value");
      out.emplace_back(body, extras[++i]);
    }
    if (out.back().first.find('.') == std::string::npos)
      throw ConfigError(out.back().first, "unknown option (config overrides use dotted keys)");
  }
  return out;
}

Config load(const Common &c, const std::vector<std::string> &extras) {
  const auto overrides = parse_overrides(extras);
  return c.config_path.empty() ? parse_config("{}", overrides) : load_config(c.config_path, overrides);
}

std::ofstream open_output(const Common &c, const std::string &stem) {
  fs::create_directories(c.out_dir);
  const fs::path path = fs::path(c.out_dir) / (stem + "." + c.format);
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot write '" + path.string() + "'");
  return os;
}

int run_spectrum(const Common &c, const std::vector<std::string> &extras) {
  const Config cfg = load(c, extras);
  const std::vector<double> ks = cfg.sweep.grid();
  std::optional<io::OutputUnits> units;
  if (c.dimensionless)
    units = io::dimensionless_units(cfg.params, cfg.sweep.k_min);
  SpectrumOptions opts;
  opts.t_final = cfg.sweep.t_final;
  opts.order = cfg.sweep.order;
  opts.guard = cfg.sweep.guard;
  opts.jobs = c.jobs;
  int status = kOk;
  for (RateFormula f : cfg.sweep.formulas) {
    const RateSpectrum s = rate_spectrum(cfg.params, cfg.noise, ks, f, opts);
    if (s.dropped)
      std::cerr << to_string(f) << ": dropped " << s.dropped
                << " sample(s) inside the resonance guard band\n";
    std::size_t unconverged = 0;
    for (const auto &sample : s.samples)
      unconverged += !sample.converged;
    if (unconverged) {
      std::cerr << to_string(f) << ": " << unconverged
                << " sample(s) with unconverged photon-number slope\n";
      status = kNonConvergence;
    }
    std::ofstream os = open_output(c, "spectrum_" + std::string(to_string(f)));
    if (c.format == "json")
      io::write_spectrum_json(os, s, units);
    else
      io::write_spectrum_csv(os, s, units);
  }
  return status;
}

int run_scaling_cmd(const Common &c, const std::vector<std::string> &extras) {
  const Config cfg = load(c, extras);
  if (!(cfg.scaling.t_final > 0))
    throw ConfigError("scaling.t_final", "required for the scaling study");
  const ScalingResult r = run_scaling(cfg.params, cfg.noise, cfg.scaling, c.jobs);
  if (c.format == "json") {
    std::ofstream os = open_output(c, "scaling");
    io::write_scaling_json(os, r, c.dimensionless);
  } else {
    std::ofstream os = open_output(c, "scaling");
    io::write_scaling_csv(os, r, c.dimensionless);
    std::ofstream fit = open_output(c, "scaling_fit");
    io::write_scaling_fit_csv(fit, r);
  }
  return kOk;
}

int run_photon(const Common &c, const std::vector<std::string> &extras) {
  const Config cfg = load(c, extras);
  const PhotonNumberSpec &spec = cfg.photon_number;
  if (spec.times.empty())
    throw ConfigError("photon_number.times", "must list at least one time");
  const ScaleFrame frame = make_frame(cfg.params, spec.k);
  const KernelSetup setup = make_setup(cfg.params, derive(cfg.params), frame, spec.k);
  const NoiseModel model = cfg.noise.rescaled(frame.t_unit);
  const auto rows = parallel_map<io::PhotonRow>(spec.times.size(), c.jobs, [&](std::size_t i) {
    io::PhotonRow row;
    row.t = spec.times[i];
    row.T = t_total(setup, model, frame.time_to_frame(row.t), spec.order).value;
    row.photon_number = frame.photon_prefactor * row.T.real();
    return row;
  });
  std::optional<io::OutputUnits> units;
  if (c.dimensionless)
    units = io::dimensionless_units(cfg.params, spec.k);
  std::ofstream os = open_output(c, "photon_number");
  if (c.format == "json")
    io::write_photon_json(os, rows, spec.order, cfg.noise, units);
  else
    io::write_photon_csv(os, rows, spec.order, cfg.noise, units);
  return kOk;
}

int run_verify_cmd(const VerifyOptions &opts) {
  const auto checks = run_verify(opts);
  io::write_verify_table(std::cout, checks);
  for (const auto &c : checks)
    if (!c.passed)
      return kVerify;
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"CSL spontaneous photon emission: naive and resummed rates, kernel studies and "
               "oracle checks"};
  app.require_subcommand(1);

  Common spectrum_opts, scaling_opts, photon_opts;
  auto *spectrum = app.add_subcommand("spectrum", "Rate density dGamma/dk on a k grid, one file per formula");
  add_common(spectrum, spectrum_opts);
  auto *scaling = app.add_subcommand("scaling", "Kernel pieces |T_A|, |T_B|, |T_D| against scaled beta");
  add_common(scaling, scaling_opts);
  auto *photon = app.add_subcommand("photon-number", "<a^dagger a>(t) for one mode");
  add_common(photon, photon_opts);

  VerifyOptions verify_opts;
  auto *verify = app.add_subcommand("verify", "Run the oracle suite and print a pass/fail table");
  verify->add_option("--tol-scale", verify_opts.tol_scale, "Multiply every tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--jobs", verify_opts.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  verify->add_option("--fault-naive-constant", verify_opts.naive_constant_fault,
                     "Test fixture: scale the naive-rate constant (1 = no fault)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*spectrum)
      return run_spectrum(spectrum_opts, spectrum->remaining());
    if (*scaling)
      return run_scaling_cmd(scaling_opts, scaling->remaining());
    if (*photon)
      return run_photon(photon_opts, photon->remaining());
    if (*verify)
      return run_verify_cmd(verify_opts);
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ValidationError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ConvergenceError &e) {
    std::cerr << "non-convergence: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
