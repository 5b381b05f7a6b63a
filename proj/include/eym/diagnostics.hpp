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

#ifndef EYM_DIAGNOSTICS_HPP
#define EYM_DIAGNOSTICS_HPP

#include <optional>

#include "eym/fluid.hpp"
#include "eym/interp.hpp"

namespace eym::diag {

using fluid::CoupledState;
using fluid::EquationOfState;
using forms::GForm;
using forms::Grid;

double mass(const CoupledState& st);
double kinetic_energy(const CoupledState& st);
double charge_energy(const CoupledState& st);     // 0.5 int gamma(Q,Q)/rho
double internal_energy(const CoupledState& st, const EquationOfState& eos);
double em_energy(const CoupledState& st);         // 0.5 (|E|^2 + |B|^2)
double total_energy(const CoupledState& st, const EquationOfState& eos);
double gauss_l2(const CoupledState& st);
double gauss_linf(const CoupledState& st);

// 0.5 int (codiff E)^2 / rho for an abelian field; conserved along the
// electrically charged flow.
double casimir(const GForm& rho, const GForm& E);

/// Closed material curve lifted to the trivial bundle: positions x_k (kept
/// unwrapped so loop-index derivatives stay smooth; `winding` records the
/// net displacement across one circuit in units of the box lengths) and one
/// fiber matrix g_k per node.
struct LoopTracer {
  std::vector<std::array<double, 3>> x;
  std::vector<lie::Matrix> g;
  std::array<int, 3> winding{0, 0, 0};
  int K = 0;
};

// Circle of radius r about `center` (xy-plane in 3D), fibers at identity.
// Requires node spacing below twice the grid spacing.
LoopTracer make_circle_loop(const Grid& grid, const lie::LieAlgebra& alg,
                            const std::array<double, 3>& center, double radius,
                            int K);

// One RK4 step in a frozen background state: nodes follow the interpolated
// velocity, fibers evolve by dg/dt = theta(x) g with fiber velocity
// theta = Q/rho - A(v).
LoopTracer advect_loop(const LoopTracer& loop, const CoupledState& st, double dt);

// Same, with the four stage states of the simultaneous fluid RK4 step, so
// the loop stays 4th-order consistent with the flow that carries it.
LoopTracer advect_loop(const LoopTracer& loop, const CoupledState& s1,
                       const CoupledState& s2, const CoupledState& s3,
                       const CoupledState& s4, double dt);

// Circulation of v^flat plus the charge-connection pairing along the lifted
// loop; the fiber contribution enters through the Maurer-Cartan form of g.
double kelvin_quantity(const LoopTracer& loop, const CoupledState& st);

// Loop integral of T ds, the rate the circulation theorem predicts.
double kelvin_rhs(const LoopTracer& loop, const CoupledState& st,
                  const EquationOfState& eos);

// Abelian cross-check: direct quadrature of v^flat + (q/m) A over the base
// loop, bypassing the fiber machinery.
double circulation_direct_abelian(const LoopTracer& loop, const CoupledState& st,
                                  double q_over_m);

}  // namespace eym::diag

#endif  // EYM_DIAGNOSTICS_HPP
