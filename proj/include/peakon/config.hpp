#pragma once

#include "peakon/errors.hpp"
#include "peakon/spectral.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace peakon {

// Raised for anything wrong with a configuration file; maps to exit code 1.
class InvalidConfig : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

enum class Scenario { peakon, breather, gaussian, blowup_sweep, custom };
enum class Integrator { particle, spectral, both };

/**
 * Everything needed to reproduce a run. Sections of the config file:
 *
 *   [scenario]    name, kind, theta, seed
 *   [grid]        L, N
 *   [time]        dt (number or "auto"), t_end, snapshot_every
 *   [integrator]  method, cfl, particle_cfl, dealias, filter, filter_order,
 *                 filter_strength, continue_past_blowup
 *   [initial]     a, phi, sigma, x0, amplitude, width, ramp (number or
 *                 "auto"), bumps, file
 *   [thresholds]  monitor, spacing_ratio, linf_factor, spectral_tail
 *   [diagnostics] besov, besov_s, besov_p, besov_r, c0_factor, residuals,
 *                 dt_probe
 *   [sweep]       thetas (comma separated; default k pi/8, k = 0..7)
 *   [output]      dir, snapshots
 *
 * Angles accept plain numbers or multiples of pi ("pi/4", "3pi/8", "0.5*pi").
 */
struct ScenarioConfig {
  std::string name = "run";
  Scenario scenario = Scenario::gaussian;
  double theta = 0.0;
  std::uint64_t seed = 1;

  double L = 20.0;
  Index N = 4096;

  double dt = 1e-3;
  bool dt_auto = false;
  double t_end = 1.0;
  int snapshot_every = 100;

  Integrator integrator = Integrator::spectral;
  double cfl = 0.4;
  double particle_cfl = 0.5;
  bool dealias = true;
  bool filter = false;
  int filter_order = 8;
  double filter_strength = 36.0;
  bool continue_past_blowup = false;

  // peakon / breather
  double a = 1.0;
  double phi = 0.0;
  double sigma = 0.05;
  double x0 = 0.0;
  // gaussian: random complex Gaussian mix drawn from seed, scaled by amplitude
  // blowup_sweep: amplitude * d/dx sech^2(x / width) * e^{i ramp x}
  double amplitude = 1.0;
  double width = 0.012;
  double ramp = 0.0;
  bool ramp_auto = true;
  int bumps = 3;
  std::filesystem::path file;  // custom: snapshot JSON holding m0

  BlowupThresholds thresholds;

  bool besov = false;
  double besov_s = 1.0;
  double besov_p = 2.0;
  double besov_r = 2.0;
  double c0_factor = 7.0;
  bool residuals = false;
  double dt_probe = 0.0;  // 0 means dt / 10

  std::vector<double> sweep_thetas;

  std::filesystem::path output_dir;  // empty: no files written
  bool write_snapshots = true;

  void validate() const;
  SpectralOptions spectral_options() const;
};

double parse_angle(const std::string& text);
std::string scenario_name(Scenario s);
std::string integrator_name(Integrator i);

ScenarioConfig parse_config_string(const std::string& text, const std::filesystem::path& origin = {});
ScenarioConfig load_config(const std::filesystem::path& path);
// Round-trips through parse_config_string.
std::string config_echo(const ScenarioConfig& c);

// Ramp that turns the sech^2 dipole's Q_x toward the negative real axis
// for family parameter theta.
double auto_ramp(double theta, double width);

}  // namespace peakon
