#include "peakon/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace peakon {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s) {
  auto blank = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), blank));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), blank).base(), s.end());
  return s;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_number(const std::string& text, const std::string& key) {
  const std::string t = lower(trim(text));
  if (t == "inf" || t == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw InvalidConfig(key + ": expected a number, got '" + text + "'");
  }
  if (used != t.size()) throw InvalidConfig(key + ": expected a number, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& text, const std::string& key) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw InvalidConfig(key + ": expected a boolean, got '" + text + "'");
}

// Every key the parser understands, by section.
const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"scenario", {"name", "kind", "theta", "seed"}},
      {"grid", {"L", "N"}},
      {"time", {"dt", "t_end", "snapshot_every"}},
      {"integrator", {"method", "cfl", "particle_cfl", "dealias", "filter", "filter_order", "filter_strength",
                      "continue_past_blowup"}},
      {"initial", {"a", "phi", "sigma", "x0", "amplitude", "width", "ramp", "bumps", "file"}},
      {"thresholds", {"monitor", "spacing_ratio", "linf_factor", "spectral_tail"}},
      {"diagnostics", {"besov", "besov_s", "besov_p", "besov_r", "c0_factor", "residuals", "dt_probe"}},
      {"sweep", {"thetas"}},
      {"output", {"dir", "snapshots"}},
  };
  return s;
}

std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string t = lower(trim(text));
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c) != 0; }), t.end());
  const std::size_t at = t.find("pi");
  if (at == std::string::npos) return parse_number(t, "angle");
  std::string head = t.substr(0, at), tail = t.substr(at + 2);
  if (!head.empty() && head.back() == '*') head.pop_back();
  const double factor = head.empty() ? 1.0 : head == "-" ? -1.0 : parse_number(head, "angle");
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail[0] != '/') throw InvalidConfig("angle: cannot parse '" + text + "'");
    divisor = parse_number(tail.substr(1), "angle");
    if (divisor == 0.0) throw InvalidConfig("angle: division by zero in '" + text + "'");
  }
  return factor * kPi / divisor;
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::peakon: return "peakon";
    case Scenario::breather: return "breather";
    case Scenario::gaussian: return "gaussian";
    case Scenario::blowup_sweep: return "blowup_sweep";
    case Scenario::custom: return "custom";
  }
  return "?";
}

std::string integrator_name(Integrator i) {
  switch (i) {
    case Integrator::particle: return "particle";
    case Integrator::spectral: return "spectral";
    case Integrator::both: return "both";
  }
  return "?";
}

double auto_ramp(double theta, double width) {
  const double eff = theta <= 0.5 * kPi ? theta : theta - kPi;
  return -0.66 * eff / width;
}

void ScenarioConfig::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidConfig(std::string(what) + " must be positive and finite");
  };
  if (!(theta >= 0.0 && theta < kPi)) throw InvalidConfig("theta must lie in [0, pi)");
  positive(L, "grid.L");
  if (N < 8 || (N & (N - 1)) != 0) throw InvalidConfig("grid.N must be a power of two >= 8");
  if (!dt_auto) positive(dt, "time.dt");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidConfig("time.t_end must be nonnegative");
  if (snapshot_every < 1) throw InvalidConfig("time.snapshot_every must be at least 1");
  positive(cfl, "integrator.cfl");
  positive(particle_cfl, "integrator.particle_cfl");
  if (filter_order < 2 || filter_order % 2) throw InvalidConfig("integrator.filter_order must be even and >= 2");
  positive(filter_strength, "integrator.filter_strength");
  switch (scenario) {
    case Scenario::peakon:
    case Scenario::breather:
      positive(a, "initial.a");
      positive(sigma, "initial.sigma");
      if (!std::isfinite(phi) || !std::isfinite(x0)) throw InvalidConfig("initial.phi and initial.x0 must be finite");
      if (sigma > 0.25 * L) throw InvalidConfig("initial.sigma must be small against the period");
      break;
    case Scenario::gaussian:
      positive(amplitude, "initial.amplitude");
      if (bumps < 1) throw InvalidConfig("initial.bumps must be at least 1");
      break;
    case Scenario::blowup_sweep:
      positive(amplitude, "initial.amplitude");
      positive(width, "initial.width");
      if (!ramp_auto && !std::isfinite(ramp)) throw InvalidConfig("initial.ramp must be finite");
      for (double t : sweep_thetas)
        if (!(t >= 0.0 && t < kPi)) throw InvalidConfig("sweep.thetas must lie in [0, pi)");
      break;
    case Scenario::custom:
      if (file.empty()) throw InvalidConfig("custom scenario needs initial.file");
      break;
  }
  positive(thresholds.monitor, "thresholds.monitor");
  positive(thresholds.spacing_ratio, "thresholds.spacing_ratio");
  positive(thresholds.linf_factor, "thresholds.linf_factor");
  if (!(thresholds.spectral_tail > 0.0)) throw InvalidConfig("thresholds.spectral_tail must be positive (inf disables)");
  if (besov) {
    if (!std::isfinite(besov_s)) throw InvalidConfig("diagnostics.besov_s must be finite");
    if (!(besov_p >= 1.0)) throw InvalidConfig("diagnostics.besov_p must be >= 1");
    if (!(besov_r >= 1.0)) throw InvalidConfig("diagnostics.besov_r must be >= 1");
  }
  positive(c0_factor, "diagnostics.c0_factor");
  if (!(dt_probe >= 0.0)) throw InvalidConfig("diagnostics.dt_probe must be nonnegative");
}

SpectralOptions ScenarioConfig::spectral_options() const {
  SpectralOptions o;
  o.dealias = dealias;
  o.cfl = cfl;
  o.filter = filter;
  o.filter_order = filter_order;
  o.filter_strength = filter_strength;
  o.thresholds = thresholds;
  return o;
}

ScenarioConfig parse_config_string(const std::string& text, const std::filesystem::path& origin) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InvalidConfig(std::string("malformed config: ") + e.message() + " at line " + std::to_string(e.line()));
  }

  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) throw InvalidConfig("unknown section [" + section + "]");
    if (!body.data().empty()) throw InvalidConfig("key '" + section + "' outside any section");
    for (const auto& [key, value] : body)
      if (!it->second.count(key)) throw InvalidConfig("unknown key " + section + "." + key);
  }

  ScenarioConfig c;
  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return trim(*v);
    return std::nullopt;
  };
  auto number = [&](const std::string& path, double& out) {
    if (auto v = get(path)) out = parse_number(*v, path);
  };
  auto integer = [&](const std::string& path, auto& out) {
    if (auto v = get(path)) {
      const double d = parse_number(*v, path);
      if (d != std::floor(d) || std::abs(d) > 9e15) throw InvalidConfig(path + ": expected an integer");
      out = static_cast<std::remove_reference_t<decltype(out)>>(d);
    }
  };
  auto boolean = [&](const std::string& path, bool& out) {
    if (auto v = get(path)) out = parse_bool(*v, path);
  };

  if (auto v = get("scenario.name")) c.name = *v;
  if (auto v = get("scenario.kind")) {
    const std::string k = lower(*v);
    if (k == "peakon") c.scenario = Scenario::peakon;
    else if (k == "breather") c.scenario = Scenario::breather;
    else if (k == "gaussian") c.scenario = Scenario::gaussian;
    else if (k == "blowup_sweep") c.scenario = Scenario::blowup_sweep;
    else if (k == "custom") c.scenario = Scenario::custom;
    else throw InvalidConfig("scenario.kind: unknown scenario '" + *v + "'");
  }
  // The breather is the peakon at theta = pi/2 unless told otherwise.
  if (c.scenario == Scenario::breather) c.theta = 0.5 * kPi;
  if (auto v = get("scenario.theta")) c.theta = parse_angle(*v);
  if (auto v = get("scenario.seed")) {
    const double d = parse_number(*v, "scenario.seed");
    if (d < 0 || d != std::floor(d)) throw InvalidConfig("scenario.seed must be a nonnegative integer");
    c.seed = static_cast<std::uint64_t>(d);
  }

  number("grid.L", c.L);
  integer("grid.N", c.N);

  if (auto v = get("time.dt")) {
    if (lower(*v) == "auto") c.dt_auto = true;
    else c.dt = parse_number(*v, "time.dt");
  }
  number("time.t_end", c.t_end);
  integer("time.snapshot_every", c.snapshot_every);

  if (auto v = get("integrator.method")) {
    const std::string m = lower(*v);
    if (m == "particle") c.integrator = Integrator::particle;
    else if (m == "spectral") c.integrator = Integrator::spectral;
    else if (m == "both") c.integrator = Integrator::both;
    else throw InvalidConfig("integrator.method: expected particle, spectral or both");
  }
  number("integrator.cfl", c.cfl);
  number("integrator.particle_cfl", c.particle_cfl);
  boolean("integrator.dealias", c.dealias);
  boolean("integrator.filter", c.filter);
  integer("integrator.filter_order", c.filter_order);
  number("integrator.filter_strength", c.filter_strength);
  boolean("integrator.continue_past_blowup", c.continue_past_blowup);

  number("initial.a", c.a);
  if (auto v = get("initial.phi")) c.phi = parse_angle(*v);
  number("initial.sigma", c.sigma);
  number("initial.x0", c.x0);
  number("initial.amplitude", c.amplitude);
  number("initial.width", c.width);
  if (auto v = get("initial.ramp")) {
    if (lower(*v) == "auto") c.ramp_auto = true;
    else c.ramp = parse_number(*v, "initial.ramp"), c.ramp_auto = false;
  }
  integer("initial.bumps", c.bumps);
  if (auto v = get("initial.file")) {
    std::filesystem::path p(*v);
    c.file = p.is_relative() && !origin.empty() ? origin.parent_path() / p : p;
  }

  number("thresholds.monitor", c.thresholds.monitor);
  number("thresholds.spacing_ratio", c.thresholds.spacing_ratio);
  number("thresholds.linf_factor", c.thresholds.linf_factor);
  number("thresholds.spectral_tail", c.thresholds.spectral_tail);

  boolean("diagnostics.besov", c.besov);
  number("diagnostics.besov_s", c.besov_s);
  number("diagnostics.besov_p", c.besov_p);
  number("diagnostics.besov_r", c.besov_r);
  number("diagnostics.c0_factor", c.c0_factor);
  boolean("diagnostics.residuals", c.residuals);
  number("diagnostics.dt_probe", c.dt_probe);

  if (auto v = get("sweep.thetas")) {
    std::istringstream items(*v);
    std::string item;
    while (std::getline(items, item, ','))
      if (!trim(item).empty()) c.sweep_thetas.push_back(parse_angle(item));
    if (c.sweep_thetas.empty()) throw InvalidConfig("sweep.thetas is empty");
  }

  if (auto v = get("output.dir")) {
    std::filesystem::path p(*v);
    c.output_dir = p.is_relative() && !origin.empty() ? origin.parent_path() / p : p;
  }
  boolean("output.snapshots", c.write_snapshots);

  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_string(buf.str(), path);
}

std::string config_echo(const ScenarioConfig& c) {
  std::ostringstream os;
  os << "[scenario]\nname = " << c.name << "\nkind = " << scenario_name(c.scenario) << "\ntheta = " << fmt(c.theta)
     << "\nseed = " << c.seed << "\n\n";
  os << "[grid]\nL = " << fmt(c.L) << "\nN = " << c.N << "\n\n";
  os << "[time]\ndt = " << (c.dt_auto ? std::string("auto") : fmt(c.dt)) << "\nt_end = " << fmt(c.t_end)
     << "\nsnapshot_every = " << c.snapshot_every << "\n\n";
  os << "[integrator]\nmethod = " << integrator_name(c.integrator) << "\ncfl = " << fmt(c.cfl)
     << "\nparticle_cfl = " << fmt(c.particle_cfl) << "\ndealias = " << std::boolalpha << c.dealias
     << "\nfilter = " << c.filter << "\nfilter_order = " << c.filter_order
     << "\nfilter_strength = " << fmt(c.filter_strength) << "\ncontinue_past_blowup = " << c.continue_past_blowup
     << "\n\n";
  os << "[initial]\na = " << fmt(c.a) << "\nphi = " << fmt(c.phi) << "\nsigma = " << fmt(c.sigma)
     << "\nx0 = " << fmt(c.x0) << "\namplitude = " << fmt(c.amplitude) << "\nwidth = " << fmt(c.width)
     << "\nramp = " << (c.ramp_auto ? std::string("auto") : fmt(c.ramp)) << "\nbumps = " << c.bumps << "\n";
  if (!c.file.empty()) os << "file = " << c.file.string() << "\n";
  os << "\n[thresholds]\nmonitor = " << fmt(c.thresholds.monitor)
     << "\nspacing_ratio = " << fmt(c.thresholds.spacing_ratio)
     << "\nlinf_factor = " << fmt(c.thresholds.linf_factor)
     << "\nspectral_tail = " << fmt(c.thresholds.spectral_tail) << "\n\n";
  os << "[diagnostics]\nbesov = " << c.besov << "\nbesov_s = " << fmt(c.besov_s) << "\nbesov_p = " << fmt(c.besov_p)
     << "\nbesov_r = " << fmt(c.besov_r) << "\nc0_factor = " << fmt(c.c0_factor) << "\nresiduals = " << c.residuals
     << "\ndt_probe = " << fmt(c.dt_probe) << "\n";
  if (!c.sweep_thetas.empty()) {
    os << "\n[sweep]\nthetas = ";
    for (size_t i = 0; i < c.sweep_thetas.size(); ++i) os << (i ? ", " : "") << fmt(c.sweep_thetas[i]);
    os << "\n";
  }
  os << "\n[output]\n";
  if (!c.output_dir.empty()) os << "dir = " << c.output_dir.string() << "\n";
  os << "snapshots = " << c.write_snapshots << "\n";
  return os.str();
}

}  // namespace peakon
