#include "cslrad/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cslrad/errors.hpp"

namespace cslrad {

using nlohmann::json;

namespace {

void reject_unknown(const json &obj, const std::string &path, const std::set<std::string> &known) {
  if (!obj.is_object())
    throw ConfigError(path, "expected an object");
  for (const auto &[key, value] : obj.items())
    if (!known.count(key))
      throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
}

std::string join(const std::string &path, const std::string &key) {
  return path.empty() ? key : path + "." + key;
}

double read_number(const json &obj, const std::string &path, const std::string &key, double fallback) {
  if (!obj.contains(key))
    return fallback;
  const json &v = obj.at(key);
  if (!v.is_number())
    throw ConfigError(join(path, key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x))
    throw ConfigError(join(path, key), "must be finite");
  return x;
}

std::string read_string(const json &obj, const std::string &path, const std::string &key,
                        const std::string &fallback) {
  if (!obj.contains(key))
    return fallback;
  if (!obj.at(key).is_string())
    throw ConfigError(join(path, key), "expected a string");
  return obj.at(key).get<std::string>();
}

std::vector<double> read_numbers(const json &obj, const std::string &path, const std::string &key,
                                 const std::vector<double> &fallback) {
  if (!obj.contains(key))
    return fallback;
  const json &v = obj.at(key);
  if (!v.is_array())
    throw ConfigError(join(path, key), "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number())
      throw ConfigError(join(path, key) + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

Order read_order(const json &obj, const std::string &path, Order fallback) {
  if (!obj.contains("order"))
    return fallback;
  try {
    return order_from_string(read_string(obj, path, "order", ""));
  } catch (const ValidationError &e) {
    throw ConfigError(join(path, "order"), "expected 'lowest' or 'exact'");
  }
}

PhysicalParams read_params(const json &j) {
  const std::string path = "params";
  reject_unknown(j, path,
                 {"e", "m", "m0", "eps0", "hbar", "c", "lambda_csl", "gamma", "r_C", "omega0"});
  PhysicalParams p;
  p.e = read_number(j, path, "e", p.e);
  p.m = read_number(j, path, "m", p.m);
  p.m0 = read_number(j, path, "m0", p.m0);
  p.eps0 = read_number(j, path, "eps0", p.eps0);
  p.hbar = read_number(j, path, "hbar", p.hbar);
  p.c = read_number(j, path, "c", p.c);
  p.r_C = read_number(j, path, "r_C", p.r_C);
  p.omega0 = read_number(j, path, "omega0", p.omega0);
  if (j.contains("gamma") && j.contains("lambda_csl"))
    throw ConfigError("params.gamma", "give either lambda_csl or gamma, not both");
  if (j.contains("gamma")) {
    const double g = read_number(j, path, "gamma", 0);
    if (!(g > 0))
      throw ConfigError("params.gamma", "must be > 0");
    if (!(p.r_C > 0))
      throw ConfigError("params.r_C", "must be > 0");
    p.lambda_csl = PhysicalParams::lambda_from_gamma(g, p.r_C);
  } else {
    p.lambda_csl = read_number(j, path, "lambda_csl", p.lambda_csl);
  }
  try {
    p.validate();
  } catch (const ValidationError &e) {
    throw ConfigError("params." + e.field(), "must be positive (omega0: non-negative)");
  }
  return p;
}

NoiseModel read_noise(const json &j) {
  const std::string path = "noise";
  reject_unknown(j, path, {"kind", "tau"});
  NoiseKind kind;
  try {
    kind = noise_kind_from_string(read_string(j, path, "kind", "white"));
  } catch (const ValidationError &) {
    throw ConfigError("noise.kind", "expected 'white', 'ou' or 'gaussian'");
  }
  if (kind == NoiseKind::White)
    return NoiseModel::white();
  if (!j.contains("tau"))
    throw ConfigError("noise.tau", "required for colored noise");
  const double tau = read_number(j, path, "tau", 0);
  if (!(tau > 0))
    throw ConfigError("noise.tau", "must be > 0");
  return kind == NoiseKind::ExponentialOU ? NoiseModel::exponential_ou(tau)
                                          : NoiseModel::gaussian(tau);
}

SweepSpec read_sweep(const json &j) {
  const std::string path = "sweep";
  reject_unknown(j, path,
                 {"k_min", "k_max", "n_points", "spacing", "formulas", "t_final", "order", "guard"});
  SweepSpec s;
  s.k_min = read_number(j, path, "k_min", s.k_min);
  s.k_max = read_number(j, path, "k_max", s.k_max);
  if (j.contains("n_points")) {
    if (!j.at("n_points").is_number_integer() || j.at("n_points").get<long long>() < 0)
      throw ConfigError("sweep.n_points", "expected a non-negative integer");
    s.n_points = j.at("n_points").get<unsigned>();
  }
  const std::string spacing = read_string(j, path, "spacing", "log");
  if (spacing == "log")
    s.spacing = Spacing::Log;
  else if (spacing == "linear")
    s.spacing = Spacing::Linear;
  else
    throw ConfigError("sweep.spacing", "expected 'linear' or 'log'");
  if (j.contains("formulas")) {
    const json &f = j.at("formulas");
    if (!f.is_array())
      throw ConfigError("sweep.formulas", "expected an array of formula names");
    s.formulas.clear();
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::string key = "sweep.formulas[" + std::to_string(i) + "]";
      if (!f[i].is_string())
        throw ConfigError(key, "expected a string");
      try {
        s.formulas.push_back(rate_formula_from_string(f[i].get<std::string>()));
      } catch (const ValidationError &) {
        throw ConfigError(key, "unknown formula '" + f[i].get<std::string>() + "'");
      }
    }
  }
  s.t_final = read_number(j, path, "t_final", s.t_final);
  s.order = read_order(j, path, s.order);
  s.guard = read_number(j, path, "guard", s.guard);
  s.validate();
  return s;
}

ScalingStudySpec read_scaling(const json &j) {
  const std::string path = "scaling";
  reject_unknown(j, path, {"beta_multipliers", "k_fixed", "t_final", "order"});
  ScalingStudySpec s;
  s.beta_multipliers = read_numbers(j, path, "beta_multipliers", s.beta_multipliers);
  s.k_fixed = read_number(j, path, "k_fixed", s.k_fixed);
  s.t_final = read_number(j, path, "t_final", s.t_final);
  s.order = read_order(j, path, s.order);
  s.validate();
  return s;
}

PhotonNumberSpec read_photon(const json &j) {
  const std::string path = "photon_number";
  reject_unknown(j, path, {"k", "times", "order"});
  PhotonNumberSpec s;
  s.k = read_number(j, path, "k", s.k);
  s.times = read_numbers(j, path, "times", s.times);
  s.order = read_order(j, path, s.order);
  s.validate();
  return s;
}

void apply_override(json &root, const Override &ov) {
  const auto &[key, text] = ov;
  if (key.empty() || key.front() == '.' || key.back() == '.')
    throw ConfigError(key, "malformed override key");
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error &) {
    value = text;
  }
  json *node = &root;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty())
      throw ConfigError(key, "malformed override key");
    if (!node->is_object())
      throw ConfigError(key.substr(0, dot), "cannot override inside a non-object");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null())
      *node = json::object();
    start = dot + 1;
  }
}

const char *spacing_name(Spacing s) { return s == Spacing::Log ? "log" : "linear"; }

} // namespace

std::string_view to_string(Spacing spacing) { return spacing_name(spacing); }

void SweepSpec::validate() const {
  if (!(k_min > 0) || !std::isfinite(k_min))
    throw ConfigError("sweep.k_min", "must be finite and > 0");
  if (!(k_max > k_min) || !std::isfinite(k_max))
    throw ConfigError("sweep.k_max", "must be finite and > k_min");
  if (n_points < 2)
    throw ConfigError("sweep.n_points", "must be >= 2");
  if (formulas.empty())
    throw ConfigError("sweep.formulas", "must name at least one formula");
  if (!(t_final >= 0))
    throw ConfigError("sweep.t_final", "must be >= 0");
  if (std::count(formulas.begin(), formulas.end(), RateFormula::FromPhotonNumber) && !(t_final > 0))
    throw ConfigError("sweep.t_final", "FromPhotonNumber needs t_final > 0");
  if (!(guard > 0))
    throw ConfigError("sweep.guard", "must be > 0");
}

std::vector<double> SweepSpec::grid() const {
  validate();
  std::vector<double> k(n_points);
  const double n = double(n_points - 1);
  for (unsigned i = 0; i < n_points; ++i) {
    const double u = double(i) / n;
    k[i] = spacing == Spacing::Log ? std::exp(std::log(k_min) + u * (std::log(k_max) - std::log(k_min)))
                                   : k_min + u * (k_max - k_min);
  }
  k.front() = k_min;
  k.back() = k_max;
  return k;
}

void ScalingStudySpec::validate() const {
  if (beta_multipliers.empty())
    throw ConfigError("scaling.beta_multipliers", "must not be empty");
  if (beta_multipliers.size() < 4)
    throw ConfigError("scaling.beta_multipliers", "need at least 4 values for a slope fit");
  for (std::size_t i = 0; i < beta_multipliers.size(); ++i) {
    if (!(beta_multipliers[i] > 0) || !std::isfinite(beta_multipliers[i]))
      throw ConfigError("scaling.beta_multipliers[" + std::to_string(i) + "]", "must be > 0");
    if (i > 0 && !(beta_multipliers[i] > beta_multipliers[i - 1]))
      throw ConfigError("scaling.beta_multipliers", "must be sorted strictly ascending");
  }
  if (!(k_fixed > 0) || !std::isfinite(k_fixed))
    throw ConfigError("scaling.k_fixed", "must be finite and > 0");
  if (!(t_final > 0) || !std::isfinite(t_final))
    throw ConfigError("scaling.t_final", "must be finite and > 0");
}

void PhotonNumberSpec::validate() const {
  if (!(k > 0) || !std::isfinite(k))
    throw ConfigError("photon_number.k", "must be finite and > 0");
  for (std::size_t i = 0; i < times.size(); ++i)
    if (!(times[i] > 0) || !std::isfinite(times[i]))
      throw ConfigError("photon_number.times[" + std::to_string(i) + "]", "must be finite and > 0");
}

Config parse_config(const std::string &text, const std::vector<Override> &overrides) {
  json root;
  try {
    root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error &e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object())
    throw ConfigError("", "top level must be an object");
  for (const auto &ov : overrides)
    apply_override(root, ov);
  reject_unknown(root, "", {"params", "noise", "sweep", "scaling", "photon_number"});
  const json empty = json::object();
  auto section = [&](const char *name) -> const json & {
    return root.contains(name) ? root.at(name) : empty;
  };
  Config c;
  c.params = read_params(section("params"));
  c.noise = read_noise(section("noise"));
  // the sweep defaults are valid; scaling needs t_final only when used
  c.sweep = read_sweep(section("sweep"));
  if (root.contains("scaling"))
    c.scaling = read_scaling(root.at("scaling"));
  c.photon_number = read_photon(section("photon_number"));
  return c;
}

Config load_config(const std::string &path, const std::vector<Override> &overrides) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), overrides);
}

std::string dump_config(const Config &c) {
  json j;
  const PhysicalParams &p = c.params;
  j["params"] = {{"e", p.e},       {"m", p.m},       {"m0", p.m0},
                 {"eps0", p.eps0}, {"hbar", p.hbar}, {"c", p.c},
                 {"lambda_csl", p.lambda_csl},       {"r_C", p.r_C},
                 {"omega0", p.omega0}};
  j["noise"] = {{"kind", std::string(to_string(c.noise.kind()))}};
  if (!c.noise.is_white())
    j["noise"]["tau"] = c.noise.tau();
  json formulas = json::array();
  for (auto f : c.sweep.formulas)
    formulas.push_back(std::string(to_string(f)));
  j["sweep"] = {{"k_min", c.sweep.k_min},
                {"k_max", c.sweep.k_max},
                {"n_points", c.sweep.n_points},
                {"spacing", spacing_name(c.sweep.spacing)},
                {"formulas", formulas},
                {"t_final", c.sweep.t_final},
                {"order", std::string(to_string(c.sweep.order))},
                {"guard", c.sweep.guard}};
  if (c.scaling.t_final > 0) // an unset study is not a loadable section
    j["scaling"] = {{"beta_multipliers", c.scaling.beta_multipliers},
                    {"k_fixed", c.scaling.k_fixed},
                    {"t_final", c.scaling.t_final},
                    {"order", std::string(to_string(c.scaling.order))}};
  j["photon_number"] = {{"k", c.photon_number.k},
                        {"times", c.photon_number.times},
                        {"order", std::string(to_string(c.photon_number.order))}};
  return j.dump(2);
}

} // namespace cslrad
