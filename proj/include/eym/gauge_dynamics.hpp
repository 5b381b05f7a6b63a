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

#ifndef EYM_GAUGE_DYNAMICS_HPP
#define EYM_GAUGE_DYNAMICS_HPP

#include "eym/forms.hpp"

namespace eym::gauge {

using forms::GForm;

/// Temporal-gauge field pair: connection A and electric 1-form E = -dA/dt.
/// The magnetic 2-form is always derived as curvature(A).
struct GaugeState {
  GForm A;
  GForm E;
};

struct GaugeDeriv {
  GForm dA;
  GForm dE;
};

struct CgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// dA/dt = -E, dE/dt = codiff(A, curvature(A)) - current. Pass nullptr for
// the vacuum equations.
GaugeDeriv ym_rhs(const GaugeState& gs, const GForm* current = nullptr);

// codiff(A, E) + Q; zero on constraint-satisfying states.
GForm gauss_residual(const GaugeState& gs, const GForm& Q);

// Constrained initial data: E = cov_d(A, phi) with
// codiff(A, cov_d(A, phi)) = -Q solved by preconditioned conjugate
// gradients to relative residual `tol`. Throws ConstraintError when Q has a
// kernel component (abelian: nonzero mean), CgError on non-convergence.
GForm solve_initial_E(const GForm& A, const GForm& Q, double tol = 1e-10,
                      int max_iter = 2000);

// Remove the constraint-violating part of a trial E so that
// codiff(A, E) = -Q holds.
GForm make_gauss_consistent(const GForm& A, const GForm& E_trial, const GForm& Q,
                            double tol = 1e-10, int max_iter = 2000);

// 0.5 (|E|^2 + |B|^2) with B = curvature(A).
double field_energy(const GaugeState& gs);

// Classical RK4 step for the vacuum system.
GaugeState rk4_step(const GaugeState& gs, double dt);

}  // namespace eym::gauge

#endif  // EYM_GAUGE_DYNAMICS_HPP
