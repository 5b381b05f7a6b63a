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

#ifndef EYM_FLUID_HPP
#define EYM_FLUID_HPP

#include <string>
#include <utility>

#include "eym/eos.hpp"
#include "eym/forms.hpp"

namespace eym::fluid {

using forms::GForm;

/// Full phase point of the coupled systems: mass density rho, specific
/// entropy s, velocity v (all real fields), gauge-charge density Q, and
/// the temporal-gauge field pair (A, E).
struct CoupledState {
  GForm rho, s, v, Q, A, E;
  double t = 0.0;
};

struct CoupledDeriv {
  GForm rho, s, v, Q, A, E;
};

enum class System {
  euler,
  euler_maxwell,
  eym_compressible,
  eym_incompressible,
};

struct SystemParams {
  System system = System::eym_compressible;
  double q_over_m = 1.0;  // charge-to-mass ratio, euler_maxwell only
  double cfl_constant = 0.4;
};

struct BlowupError : std::runtime_error {
  BlowupError(const std::string& field_, double time_)
      : std::runtime_error("blow-up detected in field '" + field_ +
                           "' at t = " + std::to_string(time_)),
        field(field_),
        time(time_) {}
  std::string field;
  double time;
};

// p = (gamma - 1) rho e pointwise; throws on nonpositive density.
GForm pressure(const GForm& rho, const GForm& s, const EquationOfState& eos);

// e(rho, s) pointwise.
GForm specific_internal_energy(const GForm& rho, const GForm& s,
                               const EquationOfState& eos);

// Compressible adiabatic flow; Q, A, E are carried but untouched.
CoupledDeriv euler_rhs(const CoupledState& st, const EquationOfState& eos);

// Gauge-charged compressible flow (velocity-variable form): the primary
// evolution path of the simulator.
CoupledDeriv eym_rhs(const CoupledState& st, const EquationOfState& eos);

// The same dynamics evaluated through the momentum-variable route
// (transport of rho v^flat + charge-connection pairing). Used only to
// cross-validate eym_rhs; the two must agree on dv/dt and dQ/dt.
CoupledDeriv eym_momentum_form_rhs(const CoupledState& st,
                                   const EquationOfState& eos);

// Electrically charged fluid: abelian algebra, Q = (q/m) rho maintained as
// a definition (its charge equation is trivial). Written in vector-calculus
// operations as an independent path from eym_rhs.
CoupledDeriv euler_maxwell_rhs(const CoupledState& st,
                               const EquationOfState& eos, double q_over_m);

// Homogeneous incompressible variant: rho = 1, no entropy; dv/dt is
// Leray-projected and the charge transport loses its compression term.
CoupledDeriv incompressible_eym_rhs(const CoupledState& st);

CoupledDeriv system_rhs(const CoupledState& st, const EquationOfState& eos,
                        const SystemParams& params);

// dt ceiling C h_min / (max|v| + max c_sound + 1).
double cfl_dt_bound(const CoupledState& st, const EquationOfState& eos,
                    double cfl_constant);

struct Rk4Stages {
  CoupledDeriv k1, k2, k3, k4;
  CoupledState s2, s3, s4;
};

// The four classical RK4 stages; exposed so diagnostics that ride along
// with the flow (loop tracers) can be advanced with consistent stage data.
Rk4Stages rk4_stages(const CoupledState& st, double dt,
                     const EquationOfState& eos, const SystemParams& params);

CoupledState rk4_combine(const CoupledState& st, double dt, const Rk4Stages& k);

// One validated step: CFL check before, positivity/finiteness after.
// Throws BlowupError naming the first offending field.
CoupledState step(const CoupledState& st, double dt, const EquationOfState& eos,
                  const SystemParams& params);

// Post-step guard: finiteness of every field and density positivity.
// Throws BlowupError naming the first offending field.
void validate_state(const CoupledState& st, const SystemParams& params);

// Momentum 1-form rho (v^flat + gamma(Q/rho, A(.))) reconstructed on demand.
GForm momentum_one_form(const CoupledState& st);

// --- semidirect-product test surface -------------------------------------
// Transpose of the (velocity, algebra-valued function) bracket under the L2
// pairing, and the bracket itself. These two are each other's duals; tests
// quantify the defect.
std::pair<GForm, GForm> semidirect_ad_dagger(const GForm& v, const GForm& theta,
                                             const GForm& m, const GForm& nu);
std::pair<GForm, GForm> semidirect_bracket(const GForm& v, const GForm& theta,
                                           const GForm& w, const GForm& omega);

}  // namespace eym::fluid

#endif  // EYM_FLUID_HPP
