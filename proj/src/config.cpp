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

#include "eym/config.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace eym::cli {

using nlohmann::json;

ConfigError::ConfigError(std::vector<std::string> violations_)
    : std::runtime_error([&violations_] {
        std::ostringstream os;
        os << "invalid configuration:";
        for (const auto& v : violations_) os << "\n  - " << v;
        return os.str();
      }()),
      violations(std::move(violations_)) {}

namespace {

const std::set<std::string> kSystems = {"euler",          "euler_maxwell",
                                        "eym_compressible", "eym_incompressible",
                                        "ym_vacuum",      "wong"};
const std::set<std::string> kAlgebras = {"u1", "su2", "su3"};
const std::set<std::string> kPresets = {"quiet", "acoustic", "taylor_green",
                                        "charged_blob", "random_smooth"};
const std::set<std::string> kFields = {"rho", "s", "v", "Q", "A", "A0", "E"};

class Checker {
 public:
  std::vector<std::string> violations;

  void add(const std::string& msg) { violations.push_back(msg); }

  void reject_unknown(const json& obj, const std::string& where,
                      const std::set<std::string>& allowed) {
    if (!obj.is_object()) return;
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!allowed.count(it.key()))
        add(where + ": unknown key \"" + it.key() + "\"");
  }

  template <typename T>
  bool fetch(const json& obj, const std::string& where, const std::string& key,
             T& out, bool required) {
    if (!obj.contains(key)) {
      if (required) add(where + ": missing required key \"" + key + "\"");
      return false;
    }
    try {
      out = obj.at(key).get<T>();
      return true;
    } catch (const json::exception&) {
      add(where + ": key \"" + key + "\" has the wrong type");
      return false;
    }
  }
};

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  Checker ck;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError({std::string("not a JSON document: ") + e.what()});
  }
  if (!root.is_object()) throw ConfigError({"top level must be a JSON object"});

  ScenarioConfig cfg;
  const double tau = 2.0 * std::numbers::pi;
  cfg.lengths = {tau, tau, tau};

  ck.reject_unknown(root, "top level",
                    {"system", "algebra", "grid", "dt", "cfl", "cfl_constant",
                     "steps", "eos", "dealias", "seed", "q_over_m", "initial",
                     "loop", "wong", "output"});

  ck.fetch(root, "top level", "system", cfg.system, true);
  if (!cfg.system.empty() && !kSystems.count(cfg.system))
    ck.add("system: \"" + cfg.system + "\" is not a known system");

  bool algebra_given = ck.fetch(root, "top level", "algebra", cfg.algebra, false);
  if (algebra_given && !kAlgebras.count(cfg.algebra))
    ck.add("algebra: \"" + cfg.algebra + "\" is not one of u1, su2, su3");
  const bool needs_algebra = cfg.system == "eym_compressible" ||
                             cfg.system == "eym_incompressible" ||
                             cfg.system == "ym_vacuum" || cfg.system == "wong";
  if (needs_algebra && !algebra_given)
    ck.add("algebra: required for system \"" + cfg.system + "\"");
  if (cfg.system == "euler_maxwell" && algebra_given && cfg.algebra != "u1")
    ck.add("algebra: euler_maxwell requires u1");

  // grid
  if (root.contains("grid")) {
    const json& g = root["grid"];
    ck.reject_unknown(g, "grid", {"d", "n", "l"});
    ck.fetch(g, "grid", "d", cfg.dim, true);
    if (cfg.dim != 2 && cfg.dim != 3) ck.add("grid.d: must be 2 or 3");
    std::vector<int> n;
    if (ck.fetch(g, "grid", "n", n, true)) {
      if (static_cast<int>(n.size()) != cfg.dim)
        ck.add("grid.n: needs one entry per dimension");
      else
        for (int a = 0; a < cfg.dim; ++a) {
          if (n[a] < 8 || (n[a] & (n[a] - 1)) != 0)
            ck.add("grid.n: entries must be powers of two, at least 8");
          cfg.n[a] = n[a];
        }
    }
    std::vector<double> l;
    if (ck.fetch(g, "grid", "l", l, false)) {
      if (static_cast<int>(l.size()) != cfg.dim)
        ck.add("grid.l: needs one entry per dimension");
      else
        for (int a = 0; a < cfg.dim; ++a) {
          if (!(l[a] > 0.0)) ck.add("grid.l: lengths must be positive");
          cfg.lengths[a] = l[a];
        }
    }
  } else {
    ck.add("grid: missing required block");
  }

  double dtv = 0.0, cflv = 0.0;
  if (ck.fetch(root, "top level", "dt", dtv, false)) {
    if (!(dtv > 0.0)) ck.add("dt: must be positive");
    cfg.dt = dtv;
  }
  if (ck.fetch(root, "top level", "cfl", cflv, false)) {
    if (!(cflv > 0.0)) ck.add("cfl: must be positive");
    cfg.cfl = cflv;
  }
  if (cfg.dt && cfg.cfl) ck.add("dt/cfl: give one or the other, not both");
  if (!cfg.dt && !cfg.cfl) cfg.cfl = 0.4;
  ck.fetch(root, "top level", "cfl_constant", cfg.cfl_constant, false);
  if (!(cfg.cfl_constant > 0.0)) ck.add("cfl_constant: must be positive");

  if (ck.fetch(root, "top level", "steps", cfg.steps, true) && cfg.steps < 0)
    ck.add("steps: must be nonnegative");

  if (root.contains("eos")) {
    const json& e = root["eos"];
    ck.reject_unknown(e, "eos", {"gamma", "kappa0", "c_v"});
    ck.fetch(e, "eos", "gamma", cfg.eos.gamma, false);
    ck.fetch(e, "eos", "kappa0", cfg.eos.kappa0, false);
    ck.fetch(e, "eos", "c_v", cfg.eos.c_v, false);
    if (!(cfg.eos.gamma > 1.0)) ck.add("eos.gamma: must exceed 1");
    if (!(cfg.eos.kappa0 > 0.0)) ck.add("eos.kappa0: must be positive");
    if (!(cfg.eos.c_v > 0.0)) ck.add("eos.c_v: must be positive");
  }

  ck.fetch(root, "top level", "dealias", cfg.dealias, false);
  ck.fetch(root, "top level", "seed", cfg.seed, false);
  ck.fetch(root, "top level", "q_over_m", cfg.q_over_m, false);

  // initial block
  const int alg_dim = cfg.algebra == "su3" ? 8 : (cfg.algebra == "su2" ? 3 : 1);
  if (root.contains("initial")) {
    const json& ini = root["initial"];
    ck.reject_unknown(ini, "initial",
                      {"preset", "rho0", "s0", "epsilon", "wavevector",
                       "amplitude", "width", "kmax", "v_amp", "rho_amp",
                       "s_amp", "q_amp", "a_amp", "e_amp", "modes"});
    ck.fetch(ini, "initial", "preset", cfg.initial.preset, false);
    if (!kPresets.count(cfg.initial.preset))
      ck.add("initial.preset: \"" + cfg.initial.preset + "\" is not a preset");
    ck.fetch(ini, "initial", "rho0", cfg.initial.rho0, false);
    ck.fetch(ini, "initial", "s0", cfg.initial.s0, false);
    ck.fetch(ini, "initial", "epsilon", cfg.initial.epsilon, false);
    ck.fetch(ini, "initial", "amplitude", cfg.initial.amplitude, false);
    ck.fetch(ini, "initial", "width", cfg.initial.width, false);
    ck.fetch(ini, "initial", "kmax", cfg.initial.kmax, false);
    ck.fetch(ini, "initial", "v_amp", cfg.initial.v_amp, false);
    ck.fetch(ini, "initial", "rho_amp", cfg.initial.rho_amp, false);
    ck.fetch(ini, "initial", "s_amp", cfg.initial.s_amp, false);
    ck.fetch(ini, "initial", "q_amp", cfg.initial.q_amp, false);
    ck.fetch(ini, "initial", "a_amp", cfg.initial.a_amp, false);
    ck.fetch(ini, "initial", "e_amp", cfg.initial.e_amp, false);
    std::vector<int> wv;
    if (ck.fetch(ini, "initial", "wavevector", wv, false)) {
      if (static_cast<int>(wv.size()) != cfg.dim)
        ck.add("initial.wavevector: needs one entry per dimension");
      else
        for (int a = 0; a < cfg.dim; ++a) cfg.initial.wavevector[a] = wv[a];
    }
    if (ini.contains("modes")) {
      if (!ini["modes"].is_array()) {
        ck.add("initial.modes: must be an array");
      } else {
        int idx = 0;
        for (const json& jm : ini["modes"]) {
          std::string where = "initial.modes[" + std::to_string(idx++) + "]";
          ck.reject_unknown(jm, where,
                            {"field", "component", "lie", "wavevector",
                             "amplitude", "phase"});
          ModeSpec m;
          ck.fetch(jm, where, "field", m.field, true);
          if (!kFields.count(m.field)) ck.add(where + ".field: unknown field");
          ck.fetch(jm, where, "component", m.component, false);
          ck.fetch(jm, where, "lie", m.lie, false);
          ck.fetch(jm, where, "amplitude", m.amplitude, true);
          ck.fetch(jm, where, "phase", m.phase, false);
          std::vector<int> mw;
          if (ck.fetch(jm, where, "wavevector", mw, true)) {
            if (static_cast<int>(mw.size()) != cfg.dim)
              ck.add(where + ".wavevector: needs one entry per dimension");
            else
              for (int a = 0; a < cfg.dim; ++a) m.wavevector[a] = mw[a];
          }
          bool is_oneform = m.field == "v" || m.field == "A" || m.field == "E";
          if (m.component < 0 || (is_oneform && m.component >= cfg.dim) ||
              (!is_oneform && m.component != 0))
            ck.add(where + ".component: out of range for field " + m.field);
          bool lie_valued = m.field == "Q" || m.field == "A" ||
                            m.field == "A0" || m.field == "E";
          int max_lie = lie_valued ? alg_dim : 1;
          if (m.lie < 0 || m.lie >= max_lie)
            ck.add(where + ".lie: out of range for field " + m.field);
          if (!std::isfinite(m.amplitude)) ck.add(where + ".amplitude: not finite");
          cfg.initial.modes.push_back(std::move(m));
        }
      }
    }
  }

  if (root.contains("loop")) {
    const json& jl = root["loop"];
    ck.reject_unknown(jl, "loop", {"center", "radius", "points"});
    LoopConfig lc;
    std::vector<double> c;
    if (ck.fetch(jl, "loop", "center", c, true)) {
      if (static_cast<int>(c.size()) != cfg.dim)
        ck.add("loop.center: needs one entry per dimension");
      else
        for (int a = 0; a < cfg.dim; ++a) lc.center[a] = c[a];
    }
    ck.fetch(jl, "loop", "radius", lc.radius, true);
    if (!(lc.radius > 0.0)) ck.add("loop.radius: must be positive");
    ck.fetch(jl, "loop", "points", lc.points, false);
    if (lc.points < 64) ck.add("loop.points: at least 64 nodes required");
    cfg.loop = lc;
  }

  if (cfg.system == "wong" && !root.contains("wong"))
    ck.add("wong: missing required block for system \"wong\"");
  if (root.contains("wong")) {
    const json& jw = root["wong"];
    ck.reject_unknown(jw, "wong",
                      {"mass", "charge", "x0", "u0", "interpolation"});
    WongConfig wc;
    ck.fetch(jw, "wong", "mass", wc.mass, true);
    if (!(wc.mass > 0.0)) ck.add("wong.mass: must be positive");
    if (jw.contains("charge")) {
      if (jw["charge"].is_number()) {
        wc.charge = {jw["charge"].get<double>()};
      } else {
        ck.fetch(jw, "wong", "charge", wc.charge, true);
      }
      if (static_cast<int>(wc.charge.size()) != alg_dim)
        ck.add("wong.charge: needs one coefficient per algebra dimension");
    } else {
      ck.add("wong: missing required key \"charge\"");
    }
    auto fetch_vec3 = [&](const char* key, std::array<double, 3>& out) {
      std::vector<double> vv;
      if (ck.fetch(jw, "wong", key, vv, true)) {
        if (static_cast<int>(vv.size()) != cfg.dim)
          ck.add(std::string("wong.") + key + ": needs one entry per dimension");
        else
          for (int a = 0; a < cfg.dim; ++a) out[a] = vv[a];
      }
    };
    fetch_vec3("x0", wc.x0);
    fetch_vec3("u0", wc.u0);
    ck.fetch(jw, "wong", "interpolation", wc.interpolation, false);
    if (wc.interpolation != "trig" && wc.interpolation != "cubic")
      ck.add("wong.interpolation: must be \"trig\" or \"cubic\"");
    cfg.wong = wc;
  }
  if (cfg.system == "wong" && !cfg.dt)
    ck.add("dt: required for system \"wong\" (no CFL rule for particles)");

  if (root.contains("output")) {
    const json& jo = root["output"];
    ck.reject_unknown(jo, "output",
                      {"directory", "cadence_diagnostics", "cadence_snapshots"});
    ck.fetch(jo, "output", "directory", cfg.output.directory, false);
    ck.fetch(jo, "output", "cadence_diagnostics", cfg.output.cadence_diagnostics,
             false);
    ck.fetch(jo, "output", "cadence_snapshots", cfg.output.cadence_snapshots,
             false);
    if (cfg.output.cadence_diagnostics < 1)
      ck.add("output.cadence_diagnostics: must be at least 1");
    if (cfg.output.cadence_snapshots < 0)
      ck.add("output.cadence_snapshots: must be nonnegative");
  }

  if (!ck.violations.empty()) throw ConfigError(std::move(ck.violations));
  return cfg;
}

std::string canonical_json(const ScenarioConfig& cfg) {
  json root;
  root["system"] = cfg.system;
  root["algebra"] = cfg.algebra;
  {
    json g;
    g["d"] = cfg.dim;
    g["n"] = std::vector<int>(cfg.n.begin(), cfg.n.begin() + cfg.dim);
    g["l"] = std::vector<double>(cfg.lengths.begin(), cfg.lengths.begin() + cfg.dim);
    root["grid"] = g;
  }
  if (cfg.dt) root["dt"] = *cfg.dt;
  if (cfg.cfl) root["cfl"] = *cfg.cfl;
  root["cfl_constant"] = cfg.cfl_constant;
  root["steps"] = cfg.steps;
  root["eos"] = {{"gamma", cfg.eos.gamma},
                 {"kappa0", cfg.eos.kappa0},
                 {"c_v", cfg.eos.c_v}};
  root["dealias"] = cfg.dealias;
  root["seed"] = cfg.seed;
  root["q_over_m"] = cfg.q_over_m;
  {
    json ini;
    ini["preset"] = cfg.initial.preset;
    ini["rho0"] = cfg.initial.rho0;
    ini["s0"] = cfg.initial.s0;
    ini["epsilon"] = cfg.initial.epsilon;
    ini["wavevector"] = std::vector<int>(cfg.initial.wavevector.begin(),
                                         cfg.initial.wavevector.begin() + cfg.dim);
    ini["amplitude"] = cfg.initial.amplitude;
    ini["width"] = cfg.initial.width;
    ini["kmax"] = cfg.initial.kmax;
    ini["v_amp"] = cfg.initial.v_amp;
    ini["rho_amp"] = cfg.initial.rho_amp;
    ini["s_amp"] = cfg.initial.s_amp;
    ini["q_amp"] = cfg.initial.q_amp;
    ini["a_amp"] = cfg.initial.a_amp;
    ini["e_amp"] = cfg.initial.e_amp;
    json modes = json::array();
    for (const auto& m : cfg.initial.modes) {
      json jm;
      jm["field"] = m.field;
      jm["component"] = m.component;
      jm["lie"] = m.lie;
      jm["wavevector"] = std::vector<int>(m.wavevector.begin(),
                                          m.wavevector.begin() + cfg.dim);
      jm["amplitude"] = m.amplitude;
      jm["phase"] = m.phase;
      modes.push_back(jm);
    }
    ini["modes"] = modes;
    root["initial"] = ini;
  }
  if (cfg.loop) {
    root["loop"] = {{"center", std::vector<double>(cfg.loop->center.begin(),
                                                   cfg.loop->center.begin() + cfg.dim)},
                    {"radius", cfg.loop->radius},
                    {"points", cfg.loop->points}};
  }
  if (cfg.wong) {
    root["wong"] = {{"mass", cfg.wong->mass},
                    {"charge", cfg.wong->charge},
                    {"x0", std::vector<double>(cfg.wong->x0.begin(),
                                               cfg.wong->x0.begin() + cfg.dim)},
                    {"u0", std::vector<double>(cfg.wong->u0.begin(),
                                               cfg.wong->u0.begin() + cfg.dim)},
                    {"interpolation", cfg.wong->interpolation}};
  }
  root["output"] = {{"directory", cfg.output.directory},
                    {"cadence_diagnostics", cfg.output.cadence_diagnostics},
                    {"cadence_snapshots", cfg.output.cadence_snapshots}};
  return root.dump(2);
}

}  // namespace eym::cli
