// peakonlab: command-line front end for the peakon lab.
// Exit codes: 0 success (a reported blow-up is a success), 1 invalid
// configuration or arguments, 2 numerical fault.

#include "peakon/config.hpp"
#include "peakon/littlewood_paley.hpp"
#include "peakon/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>

namespace fs = std::filesystem;
using namespace peakon;

namespace {

constexpr int kOk = 0, kInvalid = 1, kFault = 2;

int simulate(const fs::path& path, const fs::path& out_override) {
  ScenarioConfig c = load_config(path);
  if (!out_override.empty()) c.output_dir = out_override;
  const RunArtifact a = run_scenario(c);
  if (!c.output_dir.empty()) write_artifact(a, c.output_dir);
  write_csv(std::cout, summary_table(a, path.filename().string()));
  for (const RunOutcome& o : a.runs)
    if (o.faulted()) std::cerr << integrator_name(o.integrator) << " run faulted: " << o.fault << "\n";
  return a.faulted() ? kFault : kOk;
}

int run_sweep(const fs::path& dir, const fs::path& report, int workers) {
  if (!fs::is_directory(dir)) throw InvalidConfig("not a directory: " + dir.string());
  std::vector<fs::path> configs;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && (e.path().extension() == ".ini" || e.path().extension() == ".cfg"))
      configs.push_back(e.path());
  if (configs.empty()) throw InvalidConfig("no .ini configs in " + dir.string());
  std::sort(configs.begin(), configs.end());

  const Table t = sweep(configs, workers > 0 ? workers : worker_count());
  if (report.empty()) write_csv(std::cout, t);
  else write_csv(report, t);

  const auto status = std::find(t.header.begin(), t.header.end(), "status") - t.header.begin();
  bool fault = false, invalid = false;
  for (const auto& row : t.rows) {
    fault = fault || row[status] == "fault" || row[status] == "error";
    invalid = invalid || row[status] == "invalid";
  }
  return fault ? kFault : invalid ? kInvalid : kOk;
}

int peakon_check(double theta, double a, double sigma, Index N, double t_end, const std::string& method) {
  ScenarioConfig c;
  c.name = "peakon-check";
  c.scenario = Scenario::peakon;
  c.theta = theta;
  c.a = a;
  c.sigma = sigma;
  c.N = N;
  c.t_end = t_end;
  c.dt_auto = true;
  c.snapshot_every = 10;
  c.integrator = method == "spectral" ? Integrator::spectral : Integrator::particle;
  c.write_snapshots = false;
  // The mollified crest sharpens into the weak peakon; follow it through.
  c.continue_past_blowup = true;
  const RunArtifact art = run_scenario(c);

  PeakonParams p;
  p.a = a;
  p.theta = theta;
  std::cout << "integrator,theta,a,sigma,N,c_exact,omega_exact,speed,frequency,speed_error,frequency_error,"
               "shape_error,collapse_t,status\n";
  int code = kOk;
  for (const RunOutcome& o : art.runs) {
    std::cout << integrator_name(o.integrator) << ',' << format_double(theta) << ',' << format_double(a) << ','
              << format_double(sigma) << ',' << N << ',' << format_double(p.c()) << ',' << format_double(p.omega());
    if (o.tracking) {
      const TrackingResult& r = *o.tracking;
      std::cout << ',' << format_double(r.speed) << ',' << format_double(r.frequency) << ','
                << format_double(r.speed_error) << ',' << format_double(r.frequency_error) << ','
                << format_double(r.shape_error) << ',' << format_double(o.blowup_time) << ",ok\n";
    } else {
      std::cout << ",nan,nan,nan,nan,nan," << format_double(o.blowup_time) << ',' << (o.faulted() ? "fault" : "tracking_failed") << "\n";
      std::cerr << (o.faulted() ? o.fault : o.tracking_error) << "\n";
    }
    if (o.faulted()) code = kFault;
  }
  return code;
}

int besov(const fs::path& file, double s, double p, double r) {
  const Snapshot snap = [&] {
    try {
      return read_snapshot(file);
    } catch (const InvalidParameter& e) {
      throw InvalidConfig(e.what());
    }
  }();
  if (!snap.m.is_finite()) throw InvalidConfig("snapshot holds non-finite samples");
  const BesovParams bp{s, p, r};
  std::cout << "t,s,p,r,besov_norm\n"
            << format_double(snap.t) << ',' << format_double(s) << ',' << format_double(p) << ',' << format_double(r)
            << ',' << format_double(besov_norm(snap.m, bp)) << "\n";
  return kOk;
}

int predict(const fs::path& path) {
  const ScenarioConfig c = load_config(path);

  Table t;
  t.header = {"theta", "ramp", "l1_m0", "C0", "x0", "Jx0", "abs_m0_x0", "margin", "triggered", "T_star"};
  for (double theta : scenario_thetas(c)) {
    ScenarioConfig ct = c;
    ct.theta = theta;
    const GridFunction m0 = initial_data(ct);
    const BlowupPrediction b = predict_blowup(m0, theta, c.c0_factor);
    const double ramp = c.scenario != Scenario::blowup_sweep ? 0.0 : c.ramp_auto ? auto_ramp(theta, c.width) : c.ramp;
    t.rows.push_back({format_double(theta), format_double(ramp), format_double(lp_norm(m0, 1.0)), format_double(b.C0),
                      format_double(b.x0), format_double(b.Jx0), format_double(b.m0_at_x0), format_double(b.margin),
                      b.triggered ? "true" : "false", format_double(b.T_star)});
  }
  write_csv(std::cout, t);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for the U(1)-invariant peakon equations"};
  app.require_subcommand(1);

  fs::path sim_config, sim_out;
  auto* sim = app.add_subcommand("simulate", "Run one scenario and print its summary row(s)");
  sim->add_option("config", sim_config, "Scenario config file")->required();
  sim->add_option("--out", sim_out, "Output directory (overrides [output] dir)");

  fs::path sweep_dir, sweep_report;
  int workers = 0;
  auto* sw = app.add_subcommand("sweep", "Run every .ini in a directory and print one row per run");
  sw->add_option("config-dir", sweep_dir, "Directory of scenario configs")->required();
  sw->add_option("--report", sweep_report, "Write the report CSV here instead of stdout");
  sw->add_option("--workers", workers, "Worker threads (default: PEAKON_WORKERS or all cores)");

  std::string theta_text = "0", method = "particle";
  double a = 1.0, sigma = 0.05, t_end = 1.0;
  Index N = 4096;
  auto* pc = app.add_subcommand("peakon-check", "Track a mollified peakon and compare with the exact speed and rate");
  pc->add_option("--theta", theta_text, "Family parameter in [0, pi); accepts pi/4 style")->required();
  pc->add_option("--a", a, "Peakon amplitude")->required();
  pc->add_option("--sigma", sigma, "Mollification width");
  pc->add_option("--N", N, "Grid points on [-20, 20)");
  pc->add_option("--t-end", t_end, "Final time");
  pc->add_option("--integrator", method, "particle or spectral")->check(CLI::IsMember({"particle", "spectral"}));

  fs::path snapshot;
  double s = 1.0;
  std::string p_text = "2", r_text = "2";
  auto* bs = app.add_subcommand("besov", "Besov norm of a snapshot's m");
  bs->add_option("--snapshot", snapshot, "Snapshot JSON")->required();
  bs->add_option("--s", s, "Smoothness")->required();
  bs->add_option("--p", p_text, "Integrability (number or inf)")->required();
  bs->add_option("--r", r_text, "Summability (number or inf)")->required();

  fs::path pred_config;
  auto* pb = app.add_subcommand("predict-blowup", "Evaluate the blow-up criterion on a config's initial data");
  pb->add_option("config", pred_config, "Scenario config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalid;
  }

  auto exponent = [](const std::string& text) {
    if (text == "inf" || text == "infinity") return kInf;
    try {
      size_t used = 0;
      const double v = std::stod(text, &used);
      if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidConfig("not a number: '" + text + "'");
  };

  try {
    if (*sim) return simulate(sim_config, sim_out);
    if (*sw) return run_sweep(sweep_dir, sweep_report, workers);
    if (*pc) return peakon_check(parse_angle(theta_text), a, sigma, N, t_end, method);
    if (*bs) return besov(snapshot, s, exponent(p_text), exponent(r_text));
    if (*pb) return predict(pred_config);
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "numerical fault: " << e.what() << "\n";
    return kFault;
  }
  return kInvalid;
}
