#include "peakon/scenario.hpp"

#include "peakon/fields.hpp"
#include "peakon/helmholtz.hpp"
#include "peakon/littlewood_paley.hpp"
#include "peakon/particles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <thread>

namespace peakon {

bool RunArtifact::faulted() const noexcept {
  return std::any_of(runs.begin(), runs.end(), [](const RunOutcome& r) { return r.faulted(); });
}

int worker_count() {
  if (const char* env = std::getenv("PEAKON_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min<long>(v, 1024));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

GridFunction blowup_datum(const Grid& g, double amplitude, double width, double ramp) {
  return GridFunction::sample(g, [&](double x) {
    const double s = 1.0 / std::cosh(x / width);
    return -2.0 * amplitude / width * s * s * std::tanh(x / width) * std::polar(1.0, ramp * x);
  });
}

namespace {

PeakonParams peakon_params(const ScenarioConfig& c) {
  PeakonParams p;
  p.a = c.a;
  p.phi = c.phi;
  p.theta = c.theta;
  p.x0 = c.x0;
  return p;
}

GridFunction gaussian_datum(const ScenarioConfig& c, const Grid& g) {
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> w(0.7, 1.5), centre(-3.0, 3.0), slope(-1.0, 1.0);
  ArrayXcd v = ArrayXcd::Zero(g.point_count());
  for (int b = 0; b < c.bumps; ++b) {
    const cplx amp = c.amplitude * cplx(n(rng), n(rng)) / std::sqrt(2.0 * c.bumps);
    const double x0 = centre(rng), s = w(rng), k = slope(rng);
    for (Index j = 0; j < v.size(); ++j) {
      const double d = g.x(j) - x0;
      v[j] += amp * std::exp(-d * d / (2 * s * s)) * std::polar(1.0, k * g.x(j));
    }
  }
  return GridFunction(g, v);
}

double ramp_for(const ScenarioConfig& c, double theta) { return c.ramp_auto ? auto_ramp(theta, c.width) : c.ramp; }

double particle_limit(const GridFunction& m0, double theta, double cfl) {
  const ParticleRates r = particle_rhs(init_particles(m0, theta));
  const double jmax = r.dh.size() ? r.dh.abs().maxCoeff() : 0.0;
  return jmax > 0.0 ? cfl * m0.grid().spacing() / jmax : kInf;
}

void finish_monitor(RunOutcome& o) {
  const double linf0 = o.monitor.empty() ? 0.0 : o.monitor.front().linf_m;
  o.monitor_min = kInf;
  o.linf_growth = 1.0;
  for (const MonitorSample& s : o.monitor) {
    if (o.blown_up && s.t >= o.blowup_time) break;
    if (std::isfinite(s.inf_Jx)) o.monitor_min = std::min(o.monitor_min, s.inf_Jx);
    if (linf0 > 0.0 && std::isfinite(s.linf_m)) o.linf_growth = std::max(o.linf_growth, s.linf_m / linf0);
  }
  if (std::isinf(o.monitor_min)) o.monitor_min = std::numeric_limits<double>::quiet_NaN();
}

void attach_besov(const ScenarioConfig& c, RunOutcome& o) {
  if (!c.besov) return;
  const BesovParams bp{c.besov_s, c.besov_p, c.besov_r};
  for (size_t i = 0; i < o.diagnostics.size() && i < o.snapshots.size(); ++i)
    if (o.snapshots[i].m.is_finite()) o.diagnostics[i].besov_h_s = besov_norm(o.snapshots[i].m, bp);
}

void attach_tracking(const ScenarioConfig& c, RunOutcome& o, const std::vector<USnapshot>& series) {
  if (c.scenario != Scenario::peakon && c.scenario != Scenario::breather) return;
  try {
    o.tracking = peakon_tracking_error(series, peakon_params(c));
  } catch (const std::exception& e) {
    o.tracking_error = e.what();
  }
}

RunOutcome run_spectral(const ScenarioConfig& c, const GridFunction& m0, double theta, double dt) {
  RunOutcome o;
  o.integrator = Integrator::spectral;
  o.theta = theta;
  const SpectralOptions opts = c.spectral_options();
  try {
    const SpectralRun r = run(MomentumState(0.0, m0, theta), dt, c.t_end, c.snapshot_every, opts);
    o.blown_up = r.final_state.blown_up;
    o.blowup_time = r.final_state.blowup_time;
    o.blowup_reason = r.final_state.blowup_reason;
    o.final_t = r.final_state.t;
    o.diagnostics = r.diagnostics;
    o.monitor = r.monitor;
    std::vector<USnapshot> series;
    for (const MomentumState& s : r.snapshots) {
      o.snapshots.push_back({s.t, theta, s.m});
      if (s.m.is_finite() && !s.blown_up) series.push_back({s.t, u_from_m(s.m)});
    }
    if (o.snapshots.size() > o.diagnostics.size()) o.snapshots.erase(o.snapshots.begin() + o.diagnostics.size(), o.snapshots.end());
    if (c.residuals) {
      const double probe = c.dt_probe > 0.0 ? c.dt_probe : dt / 10.0;
      for (const MomentumState& s : r.snapshots) {
        if (s.blown_up || !s.m.is_finite()) continue;
        const TransportResidual v = vpm_transport_residual(s, probe, opts);
        const JxTransportReport j = jx_transport_residual(s, probe, opts, c.c0_factor);
        o.residuals.push_back({s.t, v.r_plus, v.r_minus, j.residual, j.lhs_max_excess, j.bound_holds});
      }
    }
    attach_tracking(c, o, series);
    attach_besov(c, o);
  } catch (const InvalidParameter&) {
    throw;
  } catch (const std::exception& e) {
    o.fault = e.what();
  }
  finish_monitor(o);
  return o;
}

RunOutcome run_particle(const ScenarioConfig& c, const GridFunction& m0, double theta, double dt) {
  RunOutcome o;
  o.integrator = Integrator::particle;
  o.theta = theta;
  ParticleOptions opts;
  opts.cfl = c.particle_cfl;
  opts.thresholds = c.thresholds;
  opts.continue_past_blowup = c.continue_past_blowup;
  try {
    const ParticleRun r = run_particles(init_particles(m0, theta), dt, c.t_end, c.snapshot_every, opts);
    o.blown_up = r.final_state.blown_up;
    o.blowup_time = r.final_state.blowup_time;
    o.blowup_reason = r.final_state.blowup_reason;
    o.final_t = r.final_state.t;
    o.diagnostics = r.diagnostics;
    o.monitor = r.monitor;
    const Grid& g = m0.grid();
    std::vector<USnapshot> series;
    const size_t kept = std::min(r.snapshots.size(), r.diagnostics.size());
    for (size_t i = 0; i < kept; ++i) {
      const ParticleEnsemble& e = r.snapshots[i];
      if (!e.h.allFinite() || !e.psi.allFinite()) break;
      o.snapshots.push_back({e.t, theta, reconstruct_m(e, g)});
      series.push_back({e.t, GridFunction(g, velocity_at(e, g.nodes(), opts).u)});
    }
    attach_tracking(c, o, series);
    attach_besov(c, o);
  } catch (const InvalidParameter&) {
    throw;
  } catch (const std::exception& e) {
    o.fault = e.what();
  }
  finish_monitor(o);
  return o;
}

std::vector<CrossCheckRow> cross_check(const RunOutcome& spectral, const RunOutcome& particle) {
  std::vector<CrossCheckRow> rows;
  size_t j = 0;
  for (const Snapshot& s : spectral.snapshots) {
    while (j < particle.snapshots.size() && particle.snapshots[j].t < s.t - 1e-12) ++j;
    if (j == particle.snapshots.size()) break;
    const Snapshot& p = particle.snapshots[j];
    if (std::abs(p.t - s.t) > 1e-12 || !s.m.is_finite() || !p.m.is_finite()) continue;
    const double ref = lp_norm(s.m, 2.0);
    const double d = lp_norm(s.m.with_values(s.m.values() - p.m.values()), 2.0);
    rows.push_back({s.t, ref > 0.0 ? d / ref : d});
  }
  return rows;
}

std::string run_label(const RunOutcome& o, size_t index, bool many_thetas) {
  std::string s = integrator_name(o.integrator);
  if (many_thetas) s += "_theta" + std::to_string(index);
  return s;
}

}  // namespace

std::vector<double> scenario_thetas(const ScenarioConfig& c) {
  if (c.scenario != Scenario::blowup_sweep) return {c.theta};
  if (!c.sweep_thetas.empty()) return c.sweep_thetas;
  std::vector<double> t;
  for (int k = 0; k < 8; ++k) t.push_back(k * kPi / 8);
  return t;
}

GridFunction initial_data(const ScenarioConfig& c) {
  const Grid g(c.L, c.N);
  switch (c.scenario) {
    case Scenario::peakon:
    case Scenario::breather: return mollified_peakon_momentum(peakon_params(c), c.sigma, g);
    case Scenario::gaussian: return gaussian_datum(c, g);
    case Scenario::blowup_sweep: return blowup_datum(g, c.amplitude, c.width, ramp_for(c, c.theta));
    case Scenario::custom: {
      const Snapshot s = [&] {
        try {
          return read_snapshot(c.file);
        } catch (const InvalidParameter& e) {
          throw InvalidConfig(e.what());
        }
      }();
      if (!(s.m.grid() == g)) throw InvalidConfig("initial.file grid does not match [grid] L and N");
      if (!s.m.is_finite()) throw InvalidConfig("initial.file holds non-finite samples");
      return s.m;
    }
  }
  throw InvalidConfig("unknown scenario");
}

double initial_dt_limit(const ScenarioConfig& c, const GridFunction& m0) {
  double limit = kInf;
  if (c.integrator != Integrator::particle)
    limit = std::min(limit, max_stable_dt(MomentumState(0.0, m0, c.theta), c.spectral_options()));
  if (c.integrator != Integrator::spectral) limit = std::min(limit, particle_limit(m0, c.theta, c.particle_cfl));
  return limit;
}

RunArtifact run_scenario(const ScenarioConfig& c) {
  c.validate();
  RunArtifact art;
  art.config = c;

  for (double theta : scenario_thetas(c)) {
    ScenarioConfig ct = c;
    ct.theta = theta;
    const GridFunction m0 = initial_data(ct);
    double dt = c.dt;
    const double limit = initial_dt_limit(ct, m0);
    if (c.dt_auto) {
      // |Q| bounds both the transport speed and the phase rate.
      const double qmax = assemble_fields(m0, theta).Q.abs().maxCoeff();
      const double phase_limit = qmax > 0.0 ? c.cfl * m0.grid().spacing() / qmax : kInf;
      dt = 0.5 * std::min(limit, phase_limit);
      if (!std::isfinite(dt)) dt = std::max(c.t_end, 1e-3) / 100.0;
    }
    else if (dt > limit)
      throw InvalidConfig("time.dt = " + format_double(dt) + " exceeds the initial CFL limit " + format_double(limit));

    BlowupPrediction pred;
    try {
      pred = predict_blowup(m0, theta, c.c0_factor);
    } catch (const InvalidParameter& e) {
      throw InvalidConfig(e.what());
    }
    const double ramp = c.scenario == Scenario::blowup_sweep ? ramp_for(c, theta) : 0.0;
    auto tag = [&](RunOutcome o) {
      o.prediction = pred;
      o.ramp = ramp;
      return o;
    };
    if (c.integrator != Integrator::particle) art.runs.push_back(tag(run_spectral(ct, m0, theta, dt)));
    if (c.integrator != Integrator::spectral) art.runs.push_back(tag(run_particle(ct, m0, theta, dt)));
  }
  if (c.integrator == Integrator::both && art.runs.size() >= 2) art.cross_check = cross_check(art.runs[0], art.runs[1]);
  return art;
}

Table summary_table(const RunArtifact& a, const std::string& source) {
  Table t;
  t.header = {"source", "name", "scenario", "integrator", "theta", "amplitude", "status", "reason", "t_final",
              "triggered", "margin", "T_star", "T_obs", "T_obs_within_1.05_T_star", "monitor_min", "linf_growth",
              "l1_drift", "H1_drift", "H2_drift", "max_u_over_half_l1", "max_ux_over_half_l1", "speed", "frequency",
              "crosscheck_final", "detail"};
  const ScenarioConfig& c = a.config;
  const double amp = c.scenario == Scenario::peakon || c.scenario == Scenario::breather ? c.a : c.amplitude;
  for (const RunOutcome& o : a.runs) {
    std::vector<std::string> row;
    auto num = [&](double v) { row.push_back(format_double(v)); };
    row.push_back(source);
    row.push_back(c.name);
    row.push_back(scenario_name(c.scenario));
    row.push_back(integrator_name(o.integrator));
    num(o.theta);
    num(amp);
    row.push_back(o.faulted() ? "fault" : o.blown_up ? "blown_up" : "ok");
    row.push_back(o.blowup_reason);
    num(o.final_t);
    row.push_back(o.prediction.triggered ? "true" : "false");
    num(o.prediction.margin);
    num(o.prediction.T_star);
    num(o.blown_up ? o.blowup_time : std::numeric_limits<double>::quiet_NaN());
    if (o.prediction.triggered && o.blown_up) row.push_back(o.blowup_time <= 1.05 * o.prediction.T_star ? "true" : "false");
    else row.push_back(o.prediction.triggered ? "false" : "n/a");
    num(o.monitor_min);
    num(o.linf_growth);
    double l1 = std::numeric_limits<double>::quiet_NaN(), h1 = l1, h2 = l1, ru = l1, rux = l1;
    if (!o.diagnostics.empty()) {
      const DiagnosticsRecord& f = o.diagnostics.front();
      // Drift against the last row that precedes any blow-up declaration.
      const DiagnosticsRecord* b = &f;
      for (const DiagnosticsRecord& r : o.diagnostics)
        if (!o.blown_up || r.t < o.blowup_time) b = &r;
      auto rel = [](double x, double x0) { return x0 != 0.0 ? std::abs(x - x0) / std::abs(x0) : std::abs(x - x0); };
      l1 = rel(b->l1_m, f.l1_m);
      h1 = rel(b->H1, f.H1);
      h2 = rel(b->H2, f.H2);
      ru = rux = 0.0;
      for (const DiagnosticsRecord& r : o.diagnostics) {
        if (o.blown_up && r.t >= o.blowup_time) break;
        ru = std::max(ru, r.max_abs_u / (0.5 * f.l1_m));
        rux = std::max(rux, r.max_abs_ux / (0.5 * f.l1_m));
      }
    }
    num(l1);
    num(h1);
    num(h2);
    num(ru);
    num(rux);
    num(o.tracking ? o.tracking->speed : std::numeric_limits<double>::quiet_NaN());
    num(o.tracking ? o.tracking->frequency : std::numeric_limits<double>::quiet_NaN());
    num(a.cross_check.empty() ? std::numeric_limits<double>::quiet_NaN() : a.cross_check.back().rel_l2);
    row.push_back(o.faulted() ? o.fault : o.tracking_error);
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_artifact(const RunArtifact& a, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream cfg(dir / "config.ini");
    cfg << config_echo(a.config);
  }
  write_csv(dir / "runs.csv", summary_table(a));
  bool many = false;
  for (size_t i = 1; i < a.runs.size(); ++i) many = many || a.runs[i].theta != a.runs[0].theta;
  size_t theta_index = 0;
  for (size_t i = 0; i < a.runs.size(); ++i) {
    if (i > 0 && a.runs[i].theta != a.runs[i - 1].theta) ++theta_index;
    const RunOutcome& o = a.runs[i];
    const std::string label = run_label(o, theta_index, many);
    write_diagnostics_csv(dir / ("diagnostics_" + label + ".csv"), o.diagnostics);
    if (a.config.write_snapshots)
      for (size_t k = 0; k < o.snapshots.size(); ++k)
        write_snapshot(dir / "snapshots" / (label + "_" + std::to_string(k) + ".json"), o.snapshots[k]);
    if (!o.residuals.empty()) {
      Table r;
      r.header = {"t", "r_plus", "r_minus", "jx_residual", "bound_excess", "bound_holds"};
      for (const ResidualRow& x : o.residuals)
        r.rows.push_back({format_double(x.t), format_double(x.r_plus), format_double(x.r_minus),
                          format_double(x.jx_residual), format_double(x.bound_excess), x.bound_holds ? "true" : "false"});
      write_csv(dir / ("residuals_" + label + ".csv"), r);
    }
    if (o.tracking) {
      Table r;
      r.header = {"t", "crest", "phase", "height"};
      for (size_t k = 0; k < o.tracking->times.size(); ++k)
        r.rows.push_back({format_double(o.tracking->times[k]), format_double(o.tracking->crest[k]),
                          format_double(o.tracking->phase[k]), format_double(o.tracking->height[k])});
      write_csv(dir / ("tracking_" + label + ".csv"), r);
    }
  }
  if (!a.cross_check.empty()) {
    Table r;
    r.header = {"t", "relative_l2_distance"};
    for (const CrossCheckRow& x : a.cross_check) r.rows.push_back({format_double(x.t), format_double(x.rel_l2)});
    write_csv(dir / "crosscheck.csv", r);
  }
}

Table sweep(const std::vector<std::filesystem::path>& configs, int workers) {
  std::vector<Table> parts(configs.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < configs.size(); i = next++) {
      const std::string source = configs[i].filename().string();
      try {
        const ScenarioConfig c = load_config(configs[i]);
        const RunArtifact a = run_scenario(c);
        if (!c.output_dir.empty()) write_artifact(a, c.output_dir);
        parts[i] = summary_table(a, source);
      } catch (const InvalidParameter& e) {
        parts[i].rows.push_back({source, "", "", "", "", "", "invalid", "", "", "", "", "", "", "", "", "", "", "", "",
                                 "", "", "", "", "", e.what()});
      } catch (const std::exception& e) {
        parts[i].rows.push_back({source, "", "", "", "", "", "error", "", "", "", "", "", "", "", "", "", "", "", "",
                                 "", "", "", "", "", e.what()});
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(configs.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  Table out;
  out.header = summary_table(RunArtifact{}).header;
  for (const Table& p : parts)
    for (const auto& row : p.rows) out.rows.push_back(row);
  return out;
}

}  // namespace peakon
