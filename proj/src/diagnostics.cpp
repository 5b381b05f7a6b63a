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

#include "eym/diagnostics.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eym/gauge_dynamics.hpp"

namespace eym::diag {

using namespace eym::forms;

double mass(const CoupledState& st) { return integral(st.rho); }

double kinetic_energy(const CoupledState& st) {
  double s = 0.0;
  const double* r = st.rho.comp(0, 0);
  for (int c = 0; c < st.v.grid().dim(); ++c) {
    const double* vc = st.v.comp(c, 0);
    for (long p = 0; p < st.v.points(); ++p) s += r[p] * vc[p] * vc[p];
  }
  return 0.5 * s * st.v.grid().cell_volume();
}

double charge_energy(const CoupledState& st) {
  double s = 0.0;
  const double* r = st.rho.comp(0, 0);
  for (int a = 0; a < st.Q.nlie(); ++a) {
    const double* qa = st.Q.comp(0, a);
    for (long p = 0; p < st.Q.points(); ++p) s += qa[p] * qa[p] / r[p];
  }
  return 0.5 * s * st.Q.grid().cell_volume();
}

double internal_energy(const CoupledState& st, const EquationOfState& eos) {
  double s = 0.0;
  const double* r = st.rho.comp(0, 0);
  const double* sv = st.s.comp(0, 0);
  for (long p = 0; p < st.rho.points(); ++p)
    s += r[p] * eos.internal_energy(r[p], sv[p]);
  return s * st.rho.grid().cell_volume();
}

double em_energy(const CoupledState& st) {
  GForm B = curvature(st.A);
  return 0.5 * (l2_inner(st.E, st.E) + l2_inner(B, B));
}

double total_energy(const CoupledState& st, const EquationOfState& eos) {
  return kinetic_energy(st) + charge_energy(st) + internal_energy(st, eos) +
         em_energy(st);
}

double gauss_l2(const CoupledState& st) {
  return l2_norm(gauge::gauss_residual({st.A, st.E}, st.Q));
}

double gauss_linf(const CoupledState& st) {
  return gauge::gauss_residual({st.A, st.E}, st.Q).linf();
}

double casimir(const GForm& rho, const GForm& E) {
  if (!E.algebra().abelian())
    throw std::invalid_argument("casimir is defined for abelian fields");
  if (min_value(rho) <= 0.0) throw std::domain_error("nonpositive mass density");
  GForm zeroA = one_form(E.grid_ptr(), E.algebra_ptr());
  GForm dE = codiff(zeroA, E);
  double s = 0.0;
  const double* r = rho.comp(0, 0);
  const double* d = dE.comp(0, 0);
  for (long p = 0; p < rho.points(); ++p) s += d[p] * d[p] / r[p];
  return 0.5 * s * rho.grid().cell_volume();
}

namespace {

// Spectral d/dsigma of a K-periodic complex sequence, sigma in [0,1).
void loop_derivative(std::vector<std::complex<double>>& seq) {
  const int K = static_cast<int>(seq.size());
  auto* raw = reinterpret_cast<fftw_complex*>(seq.data());
  fftw_plan fwd = fftw_plan_dft_1d(K, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_plan bwd = fftw_plan_dft_1d(K, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(fwd);
  const double tau = 2.0 * std::numbers::pi;
  const std::complex<double> I(0.0, 1.0);
  for (int m = 0; m < K; ++m) {
    int f = m <= K / 2 ? m : m - K;
    seq[m] *= (f == K / 2) ? 0.0 : I * tau * static_cast<double>(f);
  }
  fftw_execute(bwd);
  for (auto& c : seq) c /= static_cast<double>(K);
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(bwd);
}

// d(x_k)/dsigma per axis, winding part restored.
std::vector<std::array<double, 3>> loop_tangents(const LoopTracer& loop,
                                                 const Grid& grid) {
  const int K = loop.K;
  std::vector<std::array<double, 3>> out(K, {0.0, 0.0, 0.0});
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const double span = loop.winding[axis] * grid.length(axis);
    std::vector<std::complex<double>> seq(K);
    for (int k = 0; k < K; ++k)
      seq[k] = loop.x[k][axis] - span * (static_cast<double>(k) / K);
    loop_derivative(seq);
    for (int k = 0; k < K; ++k) out[k][axis] = seq[k].real() + span;
  }
  return out;
}

// Maurer-Cartan coefficients (dg/dsigma) g^{-1} at every node.
std::vector<lie::LieVector> loop_maurer_cartan(const LoopTracer& loop,
                                               const lie::LieAlgebra& alg) {
  const int K = loop.K;
  const int r = alg.rep_dim();
  std::vector<lie::Matrix> dg(K, lie::Matrix::Zero(r, r));
  std::vector<std::complex<double>> seq(K);
  for (int row = 0; row < r; ++row)
    for (int col = 0; col < r; ++col) {
      for (int k = 0; k < K; ++k) seq[k] = loop.g[k](row, col);
      loop_derivative(seq);
      for (int k = 0; k < K; ++k) dg[k](row, col) = seq[k];
    }
  std::vector<lie::LieVector> out;
  out.reserve(K);
  for (int k = 0; k < K; ++k)
    out.push_back(alg.from_matrix(dg[k] * loop.g[k].inverse()));
  return out;
}

void check_not_degenerate(const LoopTracer& loop, const Grid& grid) {
  const double floor_dist = grid.min_spacing() / 10.0;
  for (int k = 0; k < loop.K; ++k) {
    const auto& a = loop.x[k];
    const auto& b = loop.x[(k + 1) % loop.K];
    double d2 = 0.0;
    for (int c = 0; c < grid.dim(); ++c) {
      double dx = b[c] - a[c];
      if (k + 1 == loop.K) dx -= loop.winding[c] * grid.length(c);
      d2 += dx * dx;
    }
    if (std::sqrt(d2) < floor_dist)
      throw std::runtime_error("loop degenerated: adjacent nodes collapsed");
  }
}

// Fiber velocity theta = Q/rho - A(v) of a state.
GForm fiber_velocity(const CoupledState& st) {
  GForm theta = quotient(st.Q, st.rho);
  theta -= contract(st.A, st.v);
  return theta;
}

struct LoopDeriv {
  std::vector<std::array<double, 3>> dx;
  std::vector<lie::Matrix> dg;
};

LoopDeriv loop_rhs(const LoopTracer& loop, const FormSampler& v_s,
                   const FormSampler& theta_s, const lie::LieAlgebra& alg,
                   int dim) {
  LoopDeriv d;
  d.dx.assign(loop.K, {0.0, 0.0, 0.0});
  d.dg.assign(loop.K, lie::Matrix::Zero(alg.rep_dim(), alg.rep_dim()));
  std::vector<double> vv(dim), th(alg.dim());
  lie::LieVector theta(alg.dim());
  for (int k = 0; k < loop.K; ++k) {
    v_s.eval(loop.x[k], vv.data());
    theta_s.eval(loop.x[k], th.data());
    for (int c = 0; c < dim; ++c) d.dx[k][c] = vv[c];
    for (int a = 0; a < alg.dim(); ++a) theta[a] = th[a];
    d.dg[k] = alg.to_matrix(theta) * loop.g[k];
  }
  return d;
}

LoopTracer loop_plus(const LoopTracer& loop, double a, const LoopDeriv& d) {
  LoopTracer out = loop;
  for (int k = 0; k < loop.K; ++k) {
    for (int c = 0; c < 3; ++c) out.x[k][c] += a * d.dx[k][c];
    out.g[k] += a * d.dg[k];
  }
  return out;
}

}  // namespace

LoopTracer make_circle_loop(const Grid& grid, const lie::LieAlgebra& alg,
                            const std::array<double, 3>& center, double radius,
                            int K) {
  if (K < 64) throw std::invalid_argument("loop needs at least 64 nodes");
  if (2.0 * std::numbers::pi * radius / K >= 2.0 * grid.min_spacing())
    throw std::invalid_argument("loop nodes spaced wider than twice the grid spacing");
  LoopTracer loop;
  loop.K = K;
  loop.x.resize(K);
  loop.g.assign(K, lie::Matrix::Identity(alg.rep_dim(), alg.rep_dim()));
  for (int k = 0; k < K; ++k) {
    double a = 2.0 * std::numbers::pi * k / K;
    loop.x[k] = {center[0] + radius * std::cos(a),
                 center[1] + radius * std::sin(a), center[2]};
  }
  return loop;
}

LoopTracer advect_loop(const LoopTracer& loop, const CoupledState& st, double dt) {
  return advect_loop(loop, st, st, st, st, dt);
}

LoopTracer advect_loop(const LoopTracer& loop, const CoupledState& s1,
                       const CoupledState& s2, const CoupledState& s3,
                       const CoupledState& s4, double dt) {
  const auto& alg = s1.Q.algebra();
  const int dim = s1.v.grid().dim();
  FormSampler v1(s1.v), v2(s2.v), v3(s3.v), v4(s4.v);
  GForm th1 = fiber_velocity(s1), th2 = fiber_velocity(s2),
        th3 = fiber_velocity(s3), th4 = fiber_velocity(s4);
  FormSampler t1(th1), t2(th2), t3(th3), t4(th4);

  LoopDeriv k1 = loop_rhs(loop, v1, t1, alg, dim);
  LoopDeriv k2 = loop_rhs(loop_plus(loop, 0.5 * dt, k1), v2, t2, alg, dim);
  LoopDeriv k3 = loop_rhs(loop_plus(loop, 0.5 * dt, k2), v3, t3, alg, dim);
  LoopDeriv k4 = loop_rhs(loop_plus(loop, dt, k3), v4, t4, alg, dim);

  LoopTracer out = loop;
  const double w = dt / 6.0;
  for (int k = 0; k < loop.K; ++k) {
    for (int c = 0; c < 3; ++c)
      out.x[k][c] += w * (k1.dx[k][c] + 2.0 * k2.dx[k][c] + 2.0 * k3.dx[k][c] +
                          k4.dx[k][c]);
    out.g[k] += w * (k1.dg[k] + 2.0 * k2.dg[k] + 2.0 * k3.dg[k] + k4.dg[k]);
  }
  check_not_degenerate(out, s1.v.grid());
  return out;
}

double kelvin_quantity(const LoopTracer& loop, const CoupledState& st) {
  const Grid& grid = st.v.grid();
  const auto& alg = st.Q.algebra();
  const int dim = grid.dim();
  const int n = alg.dim();

  auto tangents = loop_tangents(loop, grid);
  auto mc = loop_maurer_cartan(loop, alg);
  FormSampler v_s(st.v), a_s(st.A), q_s(st.Q), rho_s(st.rho);

  std::vector<double> vv(dim), av(dim * n), qv(n), rv(1);
  double sum = 0.0;
  for (int k = 0; k < loop.K; ++k) {
    v_s.eval(loop.x[k], vv.data());
    a_s.eval(loop.x[k], av.data());
    q_s.eval(loop.x[k], qv.data());
    rho_s.eval(loop.x[k], rv.data());
    double base = 0.0;
    for (int c = 0; c < dim; ++c) base += vv[c] * tangents[k][c];
    double pair = 0.0;
    for (int a = 0; a < n; ++a) {
      double conn = mc[k][a];
      for (int c = 0; c < dim; ++c) conn += av[c * n + a] * tangents[k][c];
      pair += qv[a] * conn;
    }
    sum += base + pair / rv[0];
  }
  return sum / loop.K;
}

double kelvin_rhs(const LoopTracer& loop, const CoupledState& st,
                  const EquationOfState& eos) {
  FormSampler rho_s(st.rho), s_s(st.s);
  std::vector<std::complex<double>> s_seq(loop.K);
  std::vector<double> temp(loop.K), val(1);
  for (int k = 0; k < loop.K; ++k) {
    double rv, sv;
    rho_s.eval(loop.x[k], val.data());
    rv = val[0];
    s_s.eval(loop.x[k], val.data());
    sv = val[0];
    s_seq[k] = sv;
    temp[k] = eos.temperature(rv, sv);
  }
  loop_derivative(s_seq);
  double sum = 0.0;
  for (int k = 0; k < loop.K; ++k) sum += temp[k] * s_seq[k].real();
  return sum / loop.K;
}

double circulation_direct_abelian(const LoopTracer& loop, const CoupledState& st,
                                  double q_over_m) {
  if (!st.Q.algebra().abelian())
    throw std::invalid_argument("direct circulation path is abelian-only");
  const Grid& grid = st.v.grid();
  const int dim = grid.dim();
  auto tangents = loop_tangents(loop, grid);
  FormSampler v_s(st.v), a_s(st.A);
  std::vector<double> vv(dim), av(dim);
  double sum = 0.0;
  for (int k = 0; k < loop.K; ++k) {
    v_s.eval(loop.x[k], vv.data());
    a_s.eval(loop.x[k], av.data());
    for (int c = 0; c < dim; ++c)
      sum += (vv[c] + q_over_m * av[c]) * tangents[k][c];
  }
  return sum / loop.K;
}

}  // namespace eym::diag
