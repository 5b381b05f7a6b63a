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

#ifndef EYM_WONG_HPP
#define EYM_WONG_HPP

#include "eym/interp.hpp"

namespace eym::wong {

using forms::GForm;
using forms::Grid;

/// Point particle with a Lie-algebra-valued charge on the periodic box.
struct WongState {
  std::array<double, 3> x{0, 0, 0};
  std::array<double, 3> u{0, 0, 0};
  lie::LieVector q;
  double m = 1.0;
};

struct WongDeriv {
  std::array<double, 3> dx{0, 0, 0};
  std::array<double, 3> du{0, 0, 0};
  lie::LieVector dq;
};

/// Static background field: connection A and scalar potential A0, with the
/// derived electric 1-form cov_d(A, A0) and magnetic 2-form curvature(A).
/// Samplers are built once; the fields do not evolve.
class Background {
 public:
  Background(GForm A, GForm A0,
             forms::InterpMethod method = forms::InterpMethod::trig);

  // Prescribed electric/magnetic fields, bypassing the potentials. Useful
  // for fields with no periodic potential (uniform B on the torus).
  static Background with_fields(GForm A, GForm A0, GForm E, GForm B,
                                forms::InterpMethod method = forms::InterpMethod::trig);

  const GForm& A() const { return A_; }
  const GForm& A0() const { return A0_; }
  const GForm& E() const { return E_; }
  const GForm& B() const { return B_; }
  const Grid& grid() const { return A_.grid(); }
  const lie::LieAlgebra& algebra() const { return A_.algebra(); }

  // Field values at an off-grid point, comp-major slot order.
  void sample_A(const std::array<double, 3>& x, double* out) const;
  void sample_A0(const std::array<double, 3>& x, double* out) const;
  void sample_E(const std::array<double, 3>& x, double* out) const;
  void sample_B(const std::array<double, 3>& x, double* out) const;

 private:
  Background(GForm A, GForm A0, GForm E, GForm B, forms::InterpMethod method);

  GForm A_, A0_, E_, B_;
  forms::FormSampler sA_, sA0_, sE_, sB_;
};

// dx/dt = u, m du/dt = gamma(q, E(.) + B(., u))^sharp at x,
// dq/dt = -[A(u) + A0, q].
WongDeriv wong_rhs(const WongState& st, const Background& bg);

// Classical RK4 step; position rewrapped into the box.
WongState wong_step(const WongState& st, const Background& bg, double dt);

double kinetic_energy(const WongState& st);
double charge_norm(const WongState& st, const lie::LieAlgebra& alg);

}  // namespace eym::wong

#endif  // EYM_WONG_HPP
