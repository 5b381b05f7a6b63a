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

#include "eym/wong.hpp"

#include <cmath>
#include <stdexcept>

#include "eym/forms.hpp"

namespace eym::wong {

using namespace eym::forms;

Background::Background(GForm A, GForm A0, GForm E, GForm B, InterpMethod method)
    : A_(std::move(A)),
      A0_(std::move(A0)),
      E_(std::move(E)),
      B_(std::move(B)),
      sA_(A_, method),
      sA0_(A0_, method),
      sE_(E_, method),
      sB_(B_, method) {}

Background::Background(GForm A, GForm A0, InterpMethod method)
    : Background(
          [&] {
            if (A.degree() != 1 || A0.degree() != 0)
              throw std::invalid_argument(
                  "background needs a 1-form A and a 0-form A0");
            return A;
          }(),
          A0, cov_d(A, A0), curvature(A), method) {}

Background Background::with_fields(GForm A, GForm A0, GForm E, GForm B,
                                   InterpMethod method) {
  if (A.degree() != 1 || A0.degree() != 0 || E.degree() != 1 || B.degree() != 2)
    throw std::invalid_argument("background field degrees are (1, 0, 1, 2)");
  return Background(std::move(A), std::move(A0), std::move(E), std::move(B),
                    method);
}

void Background::sample_A(const std::array<double, 3>& x, double* out) const {
  sA_.eval(x, out);
}
void Background::sample_A0(const std::array<double, 3>& x, double* out) const {
  sA0_.eval(x, out);
}
void Background::sample_E(const std::array<double, 3>& x, double* out) const {
  sE_.eval(x, out);
}
void Background::sample_B(const std::array<double, 3>& x, double* out) const {
  sB_.eval(x, out);
}

WongDeriv wong_rhs(const WongState& st, const Background& bg) {
  for (int c = 0; c < 3; ++c)
    if (!std::isfinite(st.x[c]) || !std::isfinite(st.u[c]))
      throw std::invalid_argument("non-finite particle state");
  const auto& alg = bg.algebra();
  alg.check_dim(st.q);
  if (!(st.m > 0.0)) throw std::invalid_argument("particle mass must be positive");

  const int d = bg.grid().dim();
  const int n = alg.dim();
  std::vector<double> Ax(d * n), A0x(n), Ex(d * n), Bx(bg.B().ncomp() * n);
  bg.sample_A(st.x, Ax.data());
  bg.sample_A0(st.x, A0x.data());
  bg.sample_E(st.x, Ex.data());
  bg.sample_B(st.x, Bx.data());

  WongDeriv out;
  out.dq.assign(n, 0.0);
  for (int c = 0; c < d; ++c) out.dx[c] = st.u[c];

  // force covector f_c = gamma(q, E_c - (i_u B)_c), then raise (flat metric).
  for (int c = 0; c < d; ++c) {
    double f = 0.0;
    for (int a = 0; a < n; ++a) {
      double field = Ex[c * n + a];
      for (int i = 0; i < d; ++i) {
        if (i == c) continue;
        double sgn;
        int slot = pair_slot(d, i, c, sgn);
        field -= st.u[i] * sgn * Bx[slot * n + a];
      }
      f += st.q[a] * field;
    }
    out.du[c] = f / st.m;
  }

  // charge transport dq/dt = -[A(u) + A0, q]
  lie::LieVector hol(n);
  for (int a = 0; a < n; ++a) {
    hol[a] = A0x[a];
    for (int i = 0; i < d; ++i) hol[a] += st.u[i] * Ax[i * n + a];
  }
  lie::LieVector br = alg.bracket(hol, st.q);
  for (int a = 0; a < n; ++a) out.dq[a] = -br[a];
  return out;
}

namespace {

WongState state_plus(const WongState& st, double a, const WongDeriv& d) {
  WongState out = st;
  for (int c = 0; c < 3; ++c) {
    out.x[c] += a * d.dx[c];
    out.u[c] += a * d.du[c];
  }
  for (size_t i = 0; i < st.q.size(); ++i) out.q[i] += a * d.dq[i];
  return out;
}

}  // namespace

WongState wong_step(const WongState& st, const Background& bg, double dt) {
  if (dt < 0.0) throw std::invalid_argument("negative time step");
  if (dt == 0.0) return st;
  WongDeriv k1 = wong_rhs(st, bg);
  WongDeriv k2 = wong_rhs(state_plus(st, 0.5 * dt, k1), bg);
  WongDeriv k3 = wong_rhs(state_plus(st, 0.5 * dt, k2), bg);
  WongDeriv k4 = wong_rhs(state_plus(st, dt, k3), bg);

  WongState out = st;
  const double w = dt / 6.0;
  for (int c = 0; c < 3; ++c) {
    out.x[c] += w * (k1.dx[c] + 2.0 * k2.dx[c] + 2.0 * k3.dx[c] + k4.dx[c]);
    out.u[c] += w * (k1.du[c] + 2.0 * k2.du[c] + 2.0 * k3.du[c] + k4.du[c]);
  }
  for (size_t i = 0; i < st.q.size(); ++i)
    out.q[i] += w * (k1.dq[i] + 2.0 * k2.dq[i] + 2.0 * k3.dq[i] + k4.dq[i]);

  const Grid& g = bg.grid();
  for (int c = 0; c < g.dim(); ++c) {
    double L = g.length(c);
    out.x[c] -= L * std::floor(out.x[c] / L);
    if (!std::isfinite(out.x[c]) || !std::isfinite(out.u[c]))
      throw std::runtime_error("particle integration blew up");
  }
  return out;
}

double kinetic_energy(const WongState& st) {
  double u2 = 0.0;
  for (int c = 0; c < 3; ++c) u2 += st.u[c] * st.u[c];
  return 0.5 * st.m * u2;
}

double charge_norm(const WongState& st, const lie::LieAlgebra& alg) {
  return alg.inner(st.q, st.q);
}

}  // namespace eym::wong
