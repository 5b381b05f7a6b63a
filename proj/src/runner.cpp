// Copyright 2026 The eymflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eym/runner.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>

#include "eym/gauge_dynamics.hpp"
#include "eym/snapshot.hpp"

namespace eym::cli {

using namespace eym::forms;
using fluid::CoupledState;
using fluid::System;

namespace {

System system_from_name(const std::string& name) {
  if (name == "euler") return System::euler;
  if (name == "euler_maxwell") return System::euler_maxwell;
  if (name == "eym_incompressible") return System::eym_incompressible;
  return System::eym_compressible;
}

void set_uniform(GForm& f, double value) {
  double* p = f.comp(0, 0);
  for (long i = 0; i < f.points(); ++i) p[i] = value;
}

void remove_mean(GForm& f) {
  for (int c = 0; c < f.ncomp(); ++c)
    for (int a = 0; a < f.nlie(); ++a) {
      double* p = f.comp(c, a);
      double m = 0.0;
      for (long i = 0; i < f.points(); ++i) m += p[i];
      m /= static_cast<double>(f.points());
      for (long i = 0; i < f.points(); ++i) p[i] -= m;
    }
}

void apply_preset(CoupledState& st, const ScenarioConfig& cfg,
                  std::vector<std::string>& violations) {
  const auto& ini = cfg.initial;
  const Grid& g = st.rho.grid();
  set_uniform(st.rho, ini.rho0);
  set_uniform(st.s, ini.s0);

  if (ini.preset == "quiet") {
    return;
  }
  if (ini.preset == "acoustic") {
    add_mode(st.rho, 0, 0, ini.wavevector, ini.rho0 * ini.epsilon, 0.0);
    return;
  }
  if (ini.preset == "taylor_green") {
    if (g.dim() != 2) {
      violations.push_back("initial.preset: taylor_green needs a 2-d grid");
      return;
    }
    set_uniform(st.rho, 1.0);
    set_uniform(st.s, 0.0);
    double* vx = st.v.comp(0, 0);
    double* vy = st.v.comp(1, 0);
    const double a = ini.amplitude;
    for (long p = 0; p < g.points(); ++p) {
      auto x = g.coords(p);
      vx[p] = a * std::sin(x[0]) * std::cos(x[1]);
      vy[p] = -a * std::cos(x[0]) * std::sin(x[1]);
    }
    return;
  }
  if (ini.preset == "charged_blob") {
    const int n = st.Q.nlie();
    const double w2 = ini.width * ini.width;
    for (int a = 0; a < n; ++a) {
      double* q = st.Q.comp(0, a);
      std::array<double, 3> c{0.0, 0.0, 0.0};
      for (int ax = 0; ax < g.dim(); ++ax) {
        double frac = 0.5 + 0.3 * std::cos(2.0 * std::numbers::pi *
                                           (a + ax + 1) / (n + g.dim()));
        c[ax] = frac * g.length(ax);
      }
      for (long p = 0; p < g.points(); ++p) {
        auto x = g.coords(p);
        double arg = 0.0;
        for (int ax = 0; ax < g.dim(); ++ax)
          arg += std::cos(2.0 * std::numbers::pi * (x[ax] - c[ax]) / g.length(ax)) - 1.0;
        q[p] = ini.amplitude * std::exp(arg / w2);
      }
    }
    remove_mean(st.Q);
    return;
  }
  // random_smooth
  std::mt19937_64 rng(cfg.seed);
  auto u1 = st.rho.algebra_ptr();
  auto alg = st.Q.algebra_ptr();
  auto gp = st.rho.grid_ptr();
  if (ini.rho_amp > 0.0)
    st.rho += random_band_limited(gp, u1, 0, ini.kmax, ini.rho_amp, rng);
  if (ini.s_amp > 0.0)
    st.s += random_band_limited(gp, u1, 0, ini.kmax, ini.s_amp, rng);
  if (ini.v_amp > 0.0)
    st.v += random_band_limited(gp, u1, 1, ini.kmax, ini.v_amp, rng);
  if (ini.q_amp > 0.0) {
    GForm q = random_band_limited(gp, alg, 0, ini.kmax, ini.q_amp, rng);
    remove_mean(q);
    st.Q += q;
  }
  if (ini.a_amp > 0.0)
    st.A += random_band_limited(gp, alg, 1, ini.kmax, ini.a_amp, rng);
  if (ini.e_amp > 0.0)
    st.E += random_band_limited(gp, alg, 1, ini.kmax, ini.e_amp, rng);
}

void apply_modes(CoupledState& st, GForm& A0, const ScenarioConfig& cfg) {
  for (const auto& m : cfg.initial.modes) {
    GForm* target = nullptr;
    if (m.field == "rho") target = &st.rho;
    else if (m.field == "s") target = &st.s;
    else if (m.field == "v") target = &st.v;
    else if (m.field == "Q") target = &st.Q;
    else if (m.field == "A") target = &st.A;
    else if (m.field == "E") target = &st.E;
    else target = &A0;
    add_mode(*target, m.component, m.lie, m.wavevector, m.amplitude, m.phase);
  }
}

double resolve_dt(const BuiltScenario& b, const ScenarioConfig& cfg,
                  std::vector<std::string>& violations) {
  double bound;
  if (b.gauge_only) {
    // unit wave speed for the gauge pair
    bound = (cfg.cfl ? *cfg.cfl : cfg.cfl_constant) * b.state.rho.grid().min_spacing() / 2.0;
    if (cfg.dt) {
      double check = cfg.cfl_constant * b.state.rho.grid().min_spacing() / 2.0;
      if (*cfg.dt > check * (1.0 + 1e-12))
        violations.push_back("dt: exceeds the CFL bound " + std::to_string(check));
      return *cfg.dt;
    }
    return bound;
  }
  if (cfg.dt) {
    double check = fluid::cfl_dt_bound(b.state, b.eos, cfg.cfl_constant);
    if (*cfg.dt > check * (1.0 + 1e-12))
      violations.push_back("dt: exceeds the CFL bound " + std::to_string(check));
    return *cfg.dt;
  }
  return fluid::cfl_dt_bound(b.state, b.eos, *cfg.cfl);
}

std::string output_directory(const ScenarioConfig& cfg) {
  if (const char* env = std::getenv("EYMFLOW_OUTPUT_DIR")) return env;
  return cfg.output.directory;
}

void format_row(std::string& line, double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  if (!line.empty()) line += ",";
  line += buf;
}

}  // namespace

BuiltScenario build_initial_state(const ScenarioConfig& cfg) {
  std::vector<std::string> violations;
  auto grid = Grid::make(cfg.dim, cfg.n, cfg.lengths, cfg.dealias);
  auto alg = lie::LieAlgebra::make(cfg.algebra);
  auto u1 = lie::LieAlgebra::make("u1");

  BuiltScenario b{
      .state = CoupledState{GForm(grid, 0, u1), GForm(grid, 0, u1),
                            GForm(grid, 1, u1), GForm(grid, 0, alg),
                            GForm(grid, 1, alg), GForm(grid, 1, alg), 0.0},
      .params = {},
      .eos = cfg.eos,
      .dt = 0.0,
      .gauge_only = cfg.system == "ym_vacuum",
      .loop = std::nullopt,
      .particle = std::nullopt,
      .background = std::nullopt};
  b.params.system = system_from_name(cfg.system);
  b.params.q_over_m = cfg.q_over_m;
  b.params.cfl_constant = cfg.cfl_constant;

  CoupledState& st = b.state;
  GForm A0 = scalar_form(grid, alg);  // background potential, wong runs only
  apply_preset(st, cfg, violations);
  apply_modes(st, A0, cfg);

  if (cfg.system == "wong") {
    if (!violations.empty()) throw ConfigError(std::move(violations));
    const auto& wc = *cfg.wong;
    b.background.emplace(st.A, A0,
                         wc.interpolation == "trig" ? InterpMethod::trig
                                                    : InterpMethod::cubic);
    wong::WongState ws;
    ws.m = wc.mass;
    ws.q = wc.charge;
    ws.x = wc.x0;
    ws.u = wc.u0;
    b.particle = ws;
    b.dt = cfg.dt ? *cfg.dt : 0.0;
    return b;
  }

  if (min_value(st.rho) <= 0.0)
    violations.push_back("initial: preset produced a nonpositive density");

  if (cfg.system == "eym_incompressible") {
    set_uniform(st.rho, 1.0);
    set_uniform(st.s, 0.0);
    st.v = leray_project(st.v);
  }

  if (cfg.system == "euler_maxwell") {
    // Q = (q/m) rho is a definition. On the periodic box only the
    // oscillating part of the charge can source E (neutralizing background).
    st.Q = st.rho;
    st.Q *= cfg.q_over_m;
  }

  if (cfg.system != "euler" && violations.empty()) {
    GForm source = st.Q;
    if (cfg.system == "euler_maxwell") remove_mean(source);
    try {
      st.E = gauge::make_gauss_consistent(st.A, st.E, source);
    } catch (const gauge::ConstraintError& e) {
      violations.push_back(std::string("initial: ") + e.what());
    } catch (const gauge::CgError& e) {
      violations.push_back(std::string("initial: ") + e.what());
    }
    if (violations.empty() && cfg.system != "euler_maxwell") {
      double qn = l2_norm(st.Q);
      double resid = l2_norm(gauge::gauss_residual({st.A, st.E}, st.Q));
      double gate = qn > 0.0 ? 1e-9 * qn : 1e-10 * std::max(1.0, l2_norm(st.E));
      if (resid > gate)
        violations.push_back("initial: constraint residual " +
                             std::to_string(resid) + " above the gate");
    }
  }

  if (cfg.loop) {
    try {
      b.loop = diag::make_circle_loop(*grid, *alg, cfg.loop->center,
                                      cfg.loop->radius, cfg.loop->points);
    } catch (const std::exception& e) {
      violations.push_back(std::string("loop: ") + e.what());
    }
  }

  b.dt = resolve_dt(b, cfg, violations);
  if (!violations.empty()) throw ConfigError(std::move(violations));
  return b;
}

namespace {

int run_fluid(const ScenarioConfig& cfg, BuiltScenario& b, std::ostream& log) {
  namespace fs = std::filesystem;
  const std::string dir = output_directory(cfg);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    log << "cannot create output directory " << dir << "\n";
    return kExitIo;
  }

  const bool with_loop = b.loop.has_value();
  const bool with_casimir =
      b.state.Q.algebra().abelian() && b.params.system != System::euler;

  std::ofstream csv(dir + "/diagnostics.csv");
  if (!csv) {
    log << "cannot open diagnostics CSV\n";
    return kExitIo;
  }
  std::string header =
      "t,mass,energy_fluid,energy_charge,energy_internal,energy_em,"
      "energy_total,gauss_L2,s_min,s_max";
  if (with_loop) header += ",circulation,kelvin_rhs";
  if (with_casimir) header += ",casimir";
  csv << header << "\n";

  auto write_row = [&](const CoupledState& st) {
    std::string line;
    double e_fluid = diag::kinetic_energy(st);
    double e_charge = diag::charge_energy(st);
    double e_int = diag::internal_energy(st, b.eos);
    double e_em = diag::em_energy(st);
    format_row(line, st.t);
    format_row(line, diag::mass(st));
    format_row(line, e_fluid);
    format_row(line, e_charge);
    format_row(line, e_int);
    format_row(line, e_em);
    format_row(line, e_fluid + e_charge + e_int + e_em);
    format_row(line, diag::gauss_l2(st));
    format_row(line, min_value(st.s));
    format_row(line, max_value(st.s));
    if (with_loop) {
      format_row(line, diag::kelvin_quantity(*b.loop, st));
      format_row(line, diag::kelvin_rhs(*b.loop, st, b.eos));
    }
    if (with_casimir) format_row(line, diag::casimir(st.rho, st.E));
    csv << line << "\n";
  };

  auto snapshot_path = [&](int step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "/snapshot_%06d.bin", step);
    return dir + buf;
  };

  const double e0 = diag::total_energy(b.state, b.eos);
  const double m0 = diag::mass(b.state);
  try {
    write_row(b.state);
    if (cfg.output.cadence_snapshots > 0) write_snapshot(snapshot_path(0), b.state);
    for (int step = 1; step <= cfg.steps; ++step) {
      if (b.dt > fluid::cfl_dt_bound(b.state, b.eos, b.params.cfl_constant) *
                     (1.0 + 1e-12) &&
          b.params.system != System::eym_incompressible)
        throw fluid::BlowupError("cfl", b.state.t);
      auto stages = fluid::rk4_stages(b.state, b.dt, b.eos, b.params);
      if (with_loop)
        b.loop = diag::advect_loop(*b.loop, b.state, stages.s2, stages.s3,
                                   stages.s4, b.dt);
      b.state = fluid::rk4_combine(b.state, b.dt, stages);
      fluid::validate_state(b.state, b.params);
      if (step % cfg.output.cadence_diagnostics == 0) write_row(b.state);
      if (cfg.output.cadence_snapshots > 0 &&
          step % cfg.output.cadence_snapshots == 0)
        write_snapshot(snapshot_path(step), b.state);
    }
  } catch (const fluid::BlowupError& e) {
    std::ofstream report(dir + "/blowup.txt");
    report << e.what() << "\n";
    log << e.what() << "\n";
    return kExitBlowup;
  } catch (const IoError& e) {
    log << e.what() << "\n";
    return kExitIo;
  }
  csv.flush();
  if (!csv) {
    log << "diagnostics CSV write failed\n";
    return kExitIo;
  }

  const double e1 = diag::total_energy(b.state, b.eos);
  const double m1 = diag::mass(b.state);
  log << "completed " << cfg.steps << " steps, dt = " << b.dt
      << ", t = " << b.state.t << "\n";
  log << "energy_total drift = " << std::abs(e1 - e0) / std::max(1e-300, std::abs(e0))
      << " relative, mass drift = "
      << std::abs(m1 - m0) / std::max(1e-300, std::abs(m0)) << " relative\n";
  return kExitOk;
}

int run_gauge(const ScenarioConfig& cfg, BuiltScenario& b, std::ostream& log) {
  namespace fs = std::filesystem;
  const std::string dir = output_directory(cfg);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    log << "cannot create output directory " << dir << "\n";
    return kExitIo;
  }
  std::ofstream csv(dir + "/diagnostics.csv");
  if (!csv) {
    log << "cannot open diagnostics CSV\n";
    return kExitIo;
  }
  csv << "t,energy_em,gauss_residual_L2,gauss_residual_Linf\n";

  gauge::GaugeState gs{b.state.A, b.state.E};
  GForm zeroQ = b.state.Q;
  zeroQ.set_zero();
  double t = 0.0;
  auto write_row = [&]() {
    std::string line;
    GForm resid = gauge::gauss_residual(gs, zeroQ);
    format_row(line, t);
    format_row(line, gauge::field_energy(gs));
    format_row(line, l2_norm(resid));
    format_row(line, resid.linf());
    csv << line << "\n";
  };
  const double e0 = gauge::field_energy(gs);
  write_row();
  for (int step = 1; step <= cfg.steps; ++step) {
    gs = gauge::rk4_step(gs, b.dt);
    t += b.dt;
    if (!gs.A.finite() || !gs.E.finite()) {
      std::ofstream report(dir + "/blowup.txt");
      report << "gauge field blow-up at t = " << t << "\n";
      log << "gauge field blow-up at t = " << t << "\n";
      return kExitBlowup;
    }
    if (step % cfg.output.cadence_diagnostics == 0) write_row();
  }
  const double e1 = gauge::field_energy(gs);
  log << "completed " << cfg.steps << " steps, energy drift = "
      << std::abs(e1 - e0) / std::max(1e-300, std::abs(e0)) << " relative\n";
  return kExitOk;
}

int run_wong(const ScenarioConfig& cfg, BuiltScenario& b, std::ostream& log) {
  namespace fs = std::filesystem;
  const std::string dir = output_directory(cfg);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    log << "cannot create output directory " << dir << "\n";
    return kExitIo;
  }
  std::ofstream csv(dir + "/trajectory.csv");
  if (!csv) {
    log << "cannot open trajectory CSV\n";
    return kExitIo;
  }
  const int d = b.state.v.grid().dim();
  const auto& alg = b.background->algebra();
  std::string header = "t";
  for (int c = 0; c < d; ++c) header += ",x" + std::to_string(c);
  for (int c = 0; c < d; ++c) header += ",u" + std::to_string(c);
  for (int a = 0; a < alg.dim(); ++a) header += ",q" + std::to_string(a);
  header += ",charge_norm,kinetic";
  csv << header << "\n";

  wong::WongState ws = *b.particle;
  double t = 0.0;
  auto write_row = [&]() {
    std::string line;
    format_row(line, t);
    for (int c = 0; c < d; ++c) format_row(line, ws.x[c]);
    for (int c = 0; c < d; ++c) format_row(line, ws.u[c]);
    for (int a = 0; a < alg.dim(); ++a) format_row(line, ws.q[a]);
    format_row(line, wong::charge_norm(ws, alg));
    format_row(line, wong::kinetic_energy(ws));
    csv << line << "\n";
  };
  write_row();
  try {
    for (int step = 1; step <= cfg.steps; ++step) {
      ws = wong::wong_step(ws, *b.background, b.dt);
      t += b.dt;
      if (step % cfg.output.cadence_diagnostics == 0) write_row();
    }
  } catch (const std::runtime_error& e) {
    std::ofstream report(dir + "/blowup.txt");
    report << e.what() << "\n";
    log << e.what() << "\n";
    return kExitBlowup;
  }
  log << "completed " << cfg.steps << " particle steps\n";
  return kExitOk;
}

}  // namespace

int run_scenario(const ScenarioConfig& cfg, std::ostream& log) {
  BuiltScenario b = build_initial_state(cfg);
  if (cfg.system == "wong") return run_wong(cfg, b, log);
  if (b.gauge_only) return run_gauge(cfg, b, log);
  return run_fluid(cfg, b, log);
}

}  // namespace eym::cli
