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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eym/gauge_dynamics.hpp"
#include "testutil.hpp"

using namespace eym::forms;
using namespace eym::gauge;
using eym::lie::LieAlgebra;
using eymtest::fill_slot;
using eymtest::set_constant;

TEST_CASE("vacuum equilibrium has zero derivative") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  GaugeState gs{GForm(grid, 1, su2), GForm(grid, 1, su2)};
  auto d = ym_rhs(gs);
  CHECK(d.dA.linf() == 0.0);
  CHECK(d.dE.linf() == 0.0);
}

TEST_CASE("abelian transverse mode oscillates at the exact wave frequency") {
  auto grid = Grid::make(2, {8, 64, 8});
  auto u1 = LieAlgebra::make("u1");
  const int kmode = 3;
  GaugeState gs{GForm(grid, 1, u1), GForm(grid, 1, u1)};
  fill_slot(gs.A, 0, 0,
            [&](double, double y, double) { return 0.01 * std::cos(kmode * y); });

  const double omega = kmode;  // transverse wave frequency |k|
  const double dt = 0.1 / omega;
  std::vector<double> ts, amps;
  for (int step = 0; step < 2000; ++step) {
    gs = rk4_step(gs, dt);
    ts.push_back((step + 1) * dt);
    amps.push_back(eymtest::mode_amplitude(gs.A, 0, 0, {0, kmode, 0}));
  }
  double measured = eymtest::measure_frequency(ts, amps);
  CHECK(std::abs(measured - omega) / omega < 1e-4);
}

TEST_CASE("constant su2 field produces the hand-computed source") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  GaugeState gs{GForm(grid, 1, su2), GForm(grid, 1, su2)};
  set_constant(gs.A, 0, 0, 1.0);  // e1 dx
  set_constant(gs.A, 1, 1, 1.0);  // e2 dy
  auto d = ym_rhs(gs);
  CHECK(d.dA.linf() == 0.0);  // E = 0
  // codiff of e3 dx^dy against this connection: e1 dx + e2 dy
  GForm expect(grid, 1, su2);
  set_constant(expect, 0, 0, 1.0);
  set_constant(expect, 1, 1, 1.0);
  GForm diff = d.dE;
  diff -= expect;
  CHECK(diff.linf() < 1e-13);
}

TEST_CASE("constraint residual on worked examples") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto u1 = LieAlgebra::make("u1");
  SUBCASE("zero fields, zero charge") {
    GaugeState gs{GForm(grid, 1, u1), GForm(grid, 1, u1)};
    GForm Q(grid, 0, u1);
    CHECK(gauss_residual(gs, Q).linf() == 0.0);
  }
  SUBCASE("single-mode pair cancels") {
    GaugeState gs{GForm(grid, 1, u1), GForm(grid, 1, u1)};
    fill_slot(gs.E, 0, 0, [](double x, double, double) { return std::sin(x); });
    GForm Q(grid, 0, u1);
    fill_slot(Q, 0, 0, [](double x, double, double) { return std::cos(x); });
    CHECK(gauss_residual(gs, Q).linf() < 1e-12);
  }
}

TEST_CASE("constrained initial electric field") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto u1 = LieAlgebra::make("u1");
  auto su2 = LieAlgebra::make("su2");
  std::mt19937_64 rng(3);

  SUBCASE("zero charge gives the zero solution") {
    GForm A = random_band_limited(grid, su2, 1, 2, 0.4, rng);
    GForm Q(grid, 0, su2);
    CHECK(solve_initial_E(A, Q).linf() == 0.0);
  }
  SUBCASE("abelian single mode is connection-independent") {
    GForm A = random_band_limited(grid, u1, 1, 3, 0.8, rng);
    GForm Q(grid, 0, u1);
    fill_slot(Q, 0, 0, [](double x, double, double) { return std::cos(x); });
    GForm E = solve_initial_E(A, Q);
    GForm expect(grid, 1, u1);
    fill_slot(expect, 0, 0, [](double x, double, double) { return std::sin(x); });
    E -= expect;
    CHECK(E.linf() < 1e-9);
  }
  SUBCASE("nonabelian solve satisfies the constraint a posteriori") {
    GForm A = random_band_limited(grid, su2, 1, 2, 0.3, rng);
    GForm Q = random_band_limited(grid, su2, 0, 2, 0.5, rng);
    // remove the per-component mean so the source is solvable
    for (int a = 0; a < 3; ++a) {
      double* q = Q.comp(0, a);
      double m = 0.0;
      for (long p = 0; p < Q.points(); ++p) m += q[p];
      m /= static_cast<double>(Q.points());
      for (long p = 0; p < Q.points(); ++p) q[p] -= m;
    }
    GForm E = solve_initial_E(A, Q);
    GaugeState gs{A, E};
    CHECK(l2_norm(gauss_residual(gs, Q)) < 1e-9 * l2_norm(Q));
  }
  SUBCASE("charge with a constant component is rejected") {
    GForm A(grid, 1, u1);
    GForm Q(grid, 0, u1);
    set_constant(Q, 0, 0, 0.7);
    CHECK_THROWS_AS(solve_initial_E(A, Q), ConstraintError);
  }
}

TEST_CASE("induction identity holds exactly for the abelian scheme") {
  // B is derived from A, so one Euler update of A shifts B by exactly
  // -dt * d(E).
  auto grid = Grid::make(2, {32, 32, 8});
  auto u1 = LieAlgebra::make("u1");
  std::mt19937_64 rng(9);
  GForm A = random_band_limited(grid, u1, 1, 4, 1.0, rng);
  GForm E = random_band_limited(grid, u1, 1, 4, 1.0, rng);
  const double dt = 0.01;
  GForm A2 = A;
  A2.axpy(-dt, E);
  GForm dB = curvature(A2);
  dB -= curvature(A);
  GForm expect = ext_d(E);
  expect *= -dt;
  dB -= expect;
  CHECK(dB.linf() < 1e-14);
}

TEST_CASE("short vacuum run preserves energy and the constraint") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  std::mt19937_64 rng(11);
  GForm A = random_band_limited(grid, su2, 1, 2, 0.05, rng);
  GForm Q0(grid, 0, su2);
  GForm E = make_gauss_consistent(
      A, random_band_limited(grid, su2, 1, 2, 0.05, rng), Q0);
  GaugeState gs{A, E};

  const double e0 = field_energy(gs);
  const double g0 = l2_norm(gauss_residual(gs, Q0));
  const double dt = 0.01;
  for (int s = 0; s < 200; ++s) gs = rk4_step(gs, dt);
  CHECK(std::abs(field_energy(gs) - e0) / e0 < 1e-6);
  CHECK(l2_norm(gauss_residual(gs, Q0)) - g0 < 1e-9);
}
