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

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "eym/forms.hpp"
#include "eym/wong.hpp"

using namespace eym::forms;
using namespace eym::wong;
using eym::lie::LieAlgebra;

namespace {

const double tau = 2.0 * std::numbers::pi;

// E = 0, B = b dx^dy uniform. A uniform field has no periodic potential, so
// it is prescribed directly.
Background uniform_b_background(std::shared_ptr<const Grid> grid, double b) {
  auto u1 = LieAlgebra::make("u1");
  GForm A(grid, 1, u1), A0(grid, 0, u1), E(grid, 1, u1), B(grid, 2, u1);
  double* bp = B.comp(0, 0);
  for (long p = 0; p < grid->points(); ++p) bp[p] = b;
  return Background::with_fields(A, A0, E, B);
}

}  // namespace

TEST_CASE("uncharged particle moves in a straight line") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  std::mt19937_64 rng(1);
  GForm A = random_band_limited(grid, su2, 1, 2, 0.5, rng);
  GForm A0 = random_band_limited(grid, su2, 0, 2, 0.5, rng);
  Background bg(A, A0);

  WongState st;
  st.q = {0.0, 0.0, 0.0};
  st.u = {1.0, 0.0, 0.0};
  st.x = {0.5, 1.0, 0.0};
  WongDeriv d = wong_rhs(st, bg);
  CHECK(std::abs(d.du[0]) < 1e-14);
  CHECK(std::abs(d.du[1]) < 1e-14);

  SUBCASE("dt = 0 leaves the state untouched") {
    WongState out = wong_step(st, bg, 0.0);
    CHECK(out.x == st.x);
    CHECK(out.u == st.u);
  }
  SUBCASE("position advances by u dt exactly") {
    WongState out = wong_step(st, bg, 0.125);
    CHECK(out.x[0] == doctest::Approx(st.x[0] + 0.125).epsilon(1e-15));
    CHECK(out.x[1] == doctest::Approx(st.x[1]).epsilon(1e-15));
  }
}

TEST_CASE("Larmor orbit radius and period match the closed form") {
  auto grid = Grid::make(2, {32, 32, 8});
  const double b0 = 1.3, q0 = 0.9, m = 1.7, speed = 0.4;
  Background bg = uniform_b_background(grid, b0);

  const double omega = q0 * b0 / m;
  const double period = tau / omega;
  const double radius = m * speed / (q0 * b0);

  WongState st;
  st.m = m;
  st.q = {q0};
  st.x = {3.0, 3.0, 0.0};
  st.u = {speed, 0.0, 0.0};

  const int nsteps = 1000;
  const double dt = period / nsteps;
  WongState cur = st;
  double min_x = st.x[0], max_x = st.x[0];
  for (int i = 0; i < nsteps; ++i) {
    cur = wong_step(cur, bg, dt);
    min_x = std::min(min_x, cur.x[0]);
    max_x = std::max(max_x, cur.x[0]);
  }
  // diameter of the circle gives the gyroradius
  CHECK(std::abs((max_x - min_x) / 2.0 - radius) / radius < 1e-6);
  // after exactly one analytic period the orbit closes; any gap is the
  // relative period error of the integrator
  double gap = std::hypot(cur.x[0] - st.x[0], cur.x[1] - st.x[1]);
  CHECK(gap / (tau * radius) < 1e-6);
  // magnetic force does no work
  CHECK(std::hypot(cur.u[0], cur.u[1]) == doctest::Approx(speed).epsilon(1e-12));
}

TEST_CASE("charge precession matches the closed-form rotation") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  // A = 0, A0 = alpha e3 uniform: dq/dt = -[A0, q] rotates (q1, q2) and the
  // force picks up the electric part cov_d(A, A0) = 0.
  const double alpha = 0.8;
  GForm A(grid, 1, su2), A0(grid, 0, su2);
  for (long p = 0; p < grid->points(); ++p) A0.comp(0, 2)[p] = alpha;
  Background bg(A, A0);

  WongState st;
  st.q = {0.3, -0.2, 0.5};
  st.u = {0.2, 0.1, 0.0};
  st.x = {1.0, 2.0, 0.0};

  const double dt = 1e-2;
  const int nsteps = 400;
  WongState cur = st;
  for (int i = 0; i < nsteps; ++i) cur = wong_step(cur, bg, dt);
  const double t = dt * nsteps;

  double c = std::cos(alpha * t), s = std::sin(alpha * t);
  CHECK(cur.q[0] == doctest::Approx(c * st.q[0] + s * st.q[1]).epsilon(1e-8));
  CHECK(cur.q[1] == doctest::Approx(-s * st.q[0] + c * st.q[1]).epsilon(1e-8));
  CHECK(cur.q[2] == doctest::Approx(st.q[2]).epsilon(1e-12));

  double n0 = st.q[0] * st.q[0] + st.q[1] * st.q[1] + st.q[2] * st.q[2];
  CHECK(charge_norm(cur, *su2) == doctest::Approx(n0).epsilon(1e-12));
}

TEST_CASE("conservation over long nonabelian runs") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  std::mt19937_64 rng(17);
  GForm A = random_band_limited(grid, su2, 1, 2, 0.3, rng);
  GForm A0(grid, 0, su2);  // static magnetic background, no electric part
  Background bg(A, A0);

  WongState st;
  st.q = {0.4, 0.1, -0.3};
  st.u = {0.25, -0.15, 0.0};
  st.x = {2.0, 4.0, 0.0};
  const double qn0 = charge_norm(st, *su2);
  const double ke0 = kinetic_energy(st);

  const double dt = 5e-3;
  WongState cur = st;
  double worst_qn = 0.0, worst_ke = 0.0;
  for (int i = 0; i < 10000; ++i) {
    cur = wong_step(cur, bg, dt);
    worst_qn = std::max(worst_qn, std::abs(charge_norm(cur, *su2) - qn0) / qn0);
    worst_ke = std::max(worst_ke, std::abs(kinetic_energy(cur) - ke0) / ke0);
  }
  // the charge equation is a pointwise rotation: its norm only moves by
  // integrator error
  CHECK(worst_qn < 1e-10);
  // with A0 = 0 the force is magnetic-only and does no work
  CHECK(worst_ke < 1e-8);
}

TEST_CASE("abelian charge is frozen at every step") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto u1 = LieAlgebra::make("u1");
  std::mt19937_64 rng(23);
  GForm A = random_band_limited(grid, u1, 1, 2, 0.5, rng);
  GForm A0 = random_band_limited(grid, u1, 0, 2, 0.5, rng);
  Background bg(A, A0);
  WongState st;
  st.q = {0.7};
  st.u = {0.3, 0.0, 0.0};
  st.x = {1.5, 2.5, 0.0};
  WongState cur = st;
  for (int i = 0; i < 100; ++i) {
    cur = wong_step(cur, bg, 1e-2);
    CHECK(cur.q[0] == 0.7);  // bracket vanishes identically, bit-exact
  }
}

TEST_CASE("order-4 self-convergence in a smooth background") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  std::mt19937_64 rng(31);
  GForm A = random_band_limited(grid, su2, 1, 2, 0.4, rng);
  GForm A0 = random_band_limited(grid, su2, 0, 2, 0.4, rng);
  Background bg(A, A0);

  WongState st;
  st.q = {0.5, 0.2, -0.1};
  st.u = {0.3, 0.2, 0.0};
  st.x = {1.0, 1.0, 0.0};

  const double T = 1.0;
  auto integrate = [&](int nsteps) {
    WongState cur = st;
    double dt = T / nsteps;
    for (int i = 0; i < nsteps; ++i) cur = wong_step(cur, bg, dt);
    return cur;
  };
  WongState ref = integrate(512);
  auto err = [&](const WongState& s) {
    double e = 0.0;
    for (int c = 0; c < 2; ++c) {
      e = std::max(e, std::abs(s.x[c] - ref.x[c]));
      e = std::max(e, std::abs(s.u[c] - ref.u[c]));
    }
    for (int a = 0; a < 3; ++a) e = std::max(e, std::abs(s.q[a] - ref.q[a]));
    return e;
  };
  double ratio = err(integrate(32)) / err(integrate(64));
  CHECK(ratio > 8.0);
  CHECK(ratio < 32.0);
}

TEST_CASE("cubic interpolation stays close to the exact sampler") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  std::mt19937_64 rng(41);
  GForm A = random_band_limited(grid, su2, 1, 2, 0.4, rng);
  GForm A0(grid, 0, su2);
  Background trig_bg(A, A0, InterpMethod::trig);
  Background cubic_bg(A, A0, InterpMethod::cubic);
  std::array<double, 3> x{1.234, 4.321, 0.0};
  std::vector<double> a(2 * 3), b(2 * 3);
  trig_bg.sample_A(x, a.data());
  cubic_bg.sample_A(x, b.data());
  for (int i = 0; i < 6; ++i) CHECK(std::abs(a[i] - b[i]) < 2e-3);
}

TEST_CASE("invalid particle states are rejected") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  GForm A(grid, 1, su2), A0(grid, 0, su2);
  Background bg(A, A0);
  WongState st;
  st.q = {0.0, 0.0, 1.0};
  st.m = -1.0;
  CHECK_THROWS_AS(wong_rhs(st, bg), std::invalid_argument);
  st.m = 1.0;
  st.x[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(wong_rhs(st, bg), std::invalid_argument);
  st.x[0] = 0.0;
  st.q = {1.0, 0.0};  // wrong dimension
  CHECK_THROWS_AS(wong_rhs(st, bg), std::invalid_argument);
}
