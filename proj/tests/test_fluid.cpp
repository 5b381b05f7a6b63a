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

#include "eym/fluid.hpp"
#include "eym/gauge_dynamics.hpp"
#include "testutil.hpp"

using namespace eym::forms;
using namespace eym::fluid;
using eym::lie::LieAlgebra;
using eymtest::fill_slot;
using eymtest::set_constant;
using eymtest::tau;

namespace {

CoupledState blank_state(std::shared_ptr<const Grid> grid,
                         std::shared_ptr<const LieAlgebra> alg) {
  auto u1 = LieAlgebra::make("u1");
  CoupledState st{GForm(grid, 0, u1), GForm(grid, 0, u1), GForm(grid, 1, u1),
                  GForm(grid, 0, alg), GForm(grid, 1, alg), GForm(grid, 1, alg),
                  0.0};
  set_constant(st.rho, 0, 0, 1.0);
  return st;
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

// Small smooth gauge-charged state with a constraint-consistent E.
CoupledState random_charged_state(std::shared_ptr<const Grid> grid,
                                  std::shared_ptr<const LieAlgebra> alg,
                                  std::mt19937_64& rng, double amp = 0.05) {
  CoupledState st = blank_state(grid, alg);
  auto u1 = st.rho.algebra_ptr();
  GForm pert = random_band_limited(grid, u1, 0, 2, amp, rng);
  st.rho += pert;
  st.s = random_band_limited(grid, u1, 0, 2, amp, rng);
  st.v = random_band_limited(grid, u1, 1, 2, 2.0 * amp, rng);
  st.Q = random_band_limited(grid, alg, 0, 2, 2.0 * amp, rng);
  remove_mean(st.Q);
  st.A = random_band_limited(grid, alg, 1, 2, 2.0 * amp, rng);
  st.E = eym::gauge::make_gauss_consistent(
      st.A, random_band_limited(grid, alg, 1, 2, amp, rng), st.Q);
  return st;
}

}  // namespace

TEST_CASE("polytropic equation of state") {
  EquationOfState eos{.gamma = 2.0, .kappa0 = 1.0, .c_v = 1.0};
  SUBCASE("plug-in values") {
    CHECK(eos.internal_energy(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eos.pressure(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eos.temperature(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("pressure scales as a power law in density") {
    double slope = std::log(eos.pressure(2.0, 0.3) / eos.pressure(1.0, 0.3)) /
                   std::log(2.0);
    CHECK(slope == doctest::Approx(eos.gamma).epsilon(1e-10));
  }
  SUBCASE("entropy enters through the exponential factor") {
    CHECK(eos.pressure(1.3, 2.0) / eos.pressure(1.3, 1.0) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  }
  SUBCASE("invalid parameters are rejected") {
    EquationOfState bad{.gamma = 0.5, .kappa0 = 1.0, .c_v = 1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }
  SUBCASE("nonpositive density is a domain error") {
    auto grid = Grid::make(2, {32, 32, 8});
    auto u1 = LieAlgebra::make("u1");
    GForm rho(grid, 0, u1), s(grid, 0, u1);
    CHECK_THROWS_AS(pressure(rho, s, eos), std::domain_error);
  }
}

TEST_CASE("uniform rest state is an equilibrium of every system") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  EquationOfState eos;
  CoupledState st = blank_state(grid, su2);
  set_constant(st.s, 0, 0, 0.2);

  auto d1 = euler_rhs(st, eos);
  CHECK(d1.v.linf() < 1e-13);
  CHECK(d1.rho.linf() < 1e-13);
  CHECK(d1.s.linf() < 1e-13);

  auto d2 = eym_rhs(st, eos);
  CHECK(d2.v.linf() < 1e-13);
  CHECK(d2.Q.linf() == 0.0);
  CHECK(d2.E.linf() == 0.0);

  SUBCASE("and the stepper holds it fixed") {
    SystemParams params{.system = System::eym_compressible};
    CoupledState cur = st;
    for (int i = 0; i < 100; ++i) cur = step(cur, 0.02, eos, params);
    GForm diff = cur.rho;
    diff -= st.rho;
    CHECK(diff.linf() < 1e-12);
    CHECK(cur.v.linf() < 1e-12);
  }
}

TEST_CASE("acoustic mode frequency matches the dispersion relation") {
  auto grid = Grid::make(2, {32, 8, 8});
  auto u1 = LieAlgebra::make("u1");
  EquationOfState eos{.gamma = 2.0, .kappa0 = 1.0, .c_v = 1.0};
  CoupledState st = blank_state(grid, u1);
  const double eps = 1e-4;
  add_mode(st.rho, 0, 0, {1, 0, 0}, eps, 0.0);

  const double cs = eos.sound_speed(1.0, 0.0);
  const double omega = cs;  // k = 1
  SystemParams params{.system = System::euler};
  const double dt = 0.8 * cfl_dt_bound(st, eos, params.cfl_constant);
  std::vector<double> ts, amps;
  CoupledState cur = st;
  const int nsteps = static_cast<int>(5.0 * tau / omega / dt);
  for (int i = 0; i < nsteps; ++i) {
    cur = step(cur, dt, eos, params);
    ts.push_back(cur.t);
    amps.push_back(eymtest::mode_amplitude(cur.rho, 0, 0, {1, 0, 0}) - 0.0);
  }
  // the density mode oscillates about its unperturbed value; remove the mean
  double mean = 0.0;
  for (double a : amps) mean += a;
  mean /= static_cast<double>(amps.size());
  for (double& a : amps) a -= mean;
  double measured = eymtest::measure_frequency(ts, amps);
  CHECK(std::abs(measured - omega) / omega < 1e-3);
}

TEST_CASE("charged systems reduce to plain hydrodynamics without charge") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  EquationOfState eos;
  std::mt19937_64 rng(5);
  CoupledState st = blank_state(grid, su2);
  st.rho += random_band_limited(grid, st.rho.algebra_ptr(), 0, 2, 0.05, rng);
  st.s = random_band_limited(grid, st.s.algebra_ptr(), 0, 2, 0.05, rng);
  st.v = random_band_limited(grid, st.v.algebra_ptr(), 1, 2, 0.1, rng);

  auto a = eym_rhs(st, eos);
  auto b = euler_rhs(st, eos);
  GForm dv = a.v;
  dv -= b.v;
  CHECK(dv.linf() == 0.0);
  GForm dr = a.rho;
  dr -= b.rho;
  CHECK(dr.linf() == 0.0);
}

TEST_CASE("electrostatic acceleration from a single charge mode") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  EquationOfState eos;
  CoupledState st = blank_state(grid, su2);
  const double q0 = 0.3;
  add_mode(st.Q, 0, 0, {1, 0, 0}, q0, 0.0);  // q0 cos(x) e1
  st.E = eym::gauge::solve_initial_E(st.A, st.Q);

  // E = q0 sin(x) dx e1 solves the constraint
  GForm expectE(grid, 1, su2);
  fill_slot(expectE, 0, 0,
            [&](double x, double, double) { return q0 * std::sin(x); });
  GForm de = st.E;
  de -= expectE;
  CHECK(de.linf() < 1e-9);

  auto d = eym_rhs(st, eos);
  CHECK(d.rho.linf() < 1e-13);
  CHECK(d.s.linf() == 0.0);
  // dv = gamma(Q, E)/rho = q0^2 sin(x) cos(x) in the x slot
  GForm expect_dv(grid, 1, st.v.algebra_ptr());
  fill_slot(expect_dv, 0, 0, [&](double x, double, double) {
    return q0 * q0 * std::sin(x) * std::cos(x);
  });
  GForm dv = d.v;
  dv -= expect_dv;
  CHECK(dv.linf() < 1e-9);
}

TEST_CASE("abelian charged-fluid path agrees with the electromagnetic path") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto u1 = LieAlgebra::make("u1");
  EquationOfState eos;
  std::mt19937_64 rng(7);
  const double q_over_m = 1.7;

  CoupledState st = blank_state(grid, u1);
  st.rho += random_band_limited(grid, u1, 0, 2, 0.05, rng);
  st.s = random_band_limited(grid, u1, 0, 2, 0.05, rng);
  st.v = random_band_limited(grid, u1, 1, 2, 0.1, rng);
  st.A = random_band_limited(grid, u1, 1, 2, 0.1, rng);
  st.E = random_band_limited(grid, u1, 1, 2, 0.1, rng);
  st.Q = st.rho;
  st.Q *= q_over_m;

  auto a = eym_rhs(st, eos);
  auto b = euler_maxwell_rhs(st, eos, q_over_m);
  auto worst = [](const GForm& x, const GForm& y) {
    GForm d = x;
    d -= y;
    return d.linf();
  };
  CHECK(worst(a.v, b.v) < 1e-13);
  CHECK(worst(a.rho, b.rho) < 1e-13);
  CHECK(worst(a.s, b.s) < 1e-13);
  CHECK(worst(a.Q, b.Q) < 1e-13);
  CHECK(worst(a.A, b.A) == 0.0);
  CHECK(worst(a.E, b.E) < 1e-13);

  SUBCASE("the electromagnetic path rejects nonabelian charge") {
    auto su2 = LieAlgebra::make("su2");
    CoupledState bad = blank_state(grid, su2);
    CHECK_THROWS_AS(euler_maxwell_rhs(bad, eos, 1.0), std::invalid_argument);
  }
}

TEST_CASE("momentum-route evaluation matches the velocity route") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  EquationOfState eos;
  std::mt19937_64 rng(11);
  CoupledState st = random_charged_state(grid, su2, rng);

  auto a = eym_rhs(st, eos);
  auto b = eym_momentum_form_rhs(st, eos);
  GForm dv = a.v;
  dv -= b.v;
  CHECK(dv.linf() < 1e-9);
  GForm dq = a.Q;
  dq -= b.Q;
  CHECK(dq.linf() < 1e-10);

  SUBCASE("uncharged limit collapses to the hydrodynamic momentum form") {
    CoupledState plain = blank_state(grid, su2);
    plain.rho += random_band_limited(grid, plain.rho.algebra_ptr(), 0, 2, 0.05, rng);
    plain.s = random_band_limited(grid, plain.s.algebra_ptr(), 0, 2, 0.05, rng);
    plain.v = random_band_limited(grid, plain.v.algebra_ptr(), 1, 2, 0.1, rng);
    auto c = eym_momentum_form_rhs(plain, eos);
    auto d = euler_rhs(plain, eos);
    GForm diff = c.v;
    diff -= d.v;
    CHECK(diff.linf() < 1e-12);
  }
}

TEST_CASE("incompressible variant") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  std::mt19937_64 rng(13);

  SUBCASE("steady cellular flow has zero projected derivative") {
    CoupledState st = blank_state(grid, su2);
    fill_slot(st.v, 0, 0,
              [](double x, double y, double) { return std::sin(x) * std::cos(y); });
    fill_slot(st.v, 1, 0,
              [](double x, double y, double) { return -std::cos(x) * std::sin(y); });
    auto d = incompressible_eym_rhs(st);
    CHECK(d.v.linf() < 1e-10);
  }
  SUBCASE("projected derivative is solenoidal for random admissible states") {
    CoupledState st = blank_state(grid, su2);
    st.v = leray_project(random_band_limited(grid, st.v.algebra_ptr(), 1, 3, 0.3, rng));
    st.Q = random_band_limited(grid, su2, 0, 2, 0.3, rng);
    remove_mean(st.Q);
    st.A = random_band_limited(grid, su2, 1, 2, 0.3, rng);
    st.E = eym::gauge::make_gauss_consistent(
        st.A, random_band_limited(grid, su2, 1, 2, 0.1, rng), st.Q);
    auto d = incompressible_eym_rhs(st);
    CHECK(divergence(d.v).linf() < 1e-10);
  }
  SUBCASE("uncharged limit is the projected advection") {
    CoupledState st = blank_state(grid, su2);
    st.v = leray_project(random_band_limited(grid, st.v.algebra_ptr(), 1, 3, 0.3, rng));
    auto d = incompressible_eym_rhs(st);
    GForm adv = advect(st.v, st.v);
    adv *= -1.0;
    GForm expect = leray_project(adv);
    expect -= d.v;
    CHECK(expect.linf() < 1e-13);
  }
  SUBCASE("compressive initial data is rejected") {
    CoupledState st = blank_state(grid, su2);
    fill_slot(st.v, 0, 0, [](double x, double, double) { return std::sin(x); });
    CHECK_THROWS_AS(incompressible_eym_rhs(st), std::invalid_argument);
  }
}

TEST_CASE("stepper guards") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  EquationOfState eos;
  SystemParams params{.system = System::eym_compressible};
  CoupledState st = blank_state(grid, su2);

  SUBCASE("zero step returns the input") {
    CoupledState out = step(st, 0.0, eos, params);
    CHECK(out.t == st.t);
  }
  SUBCASE("time step above the advisory bound is refused") {
    double bound = cfl_dt_bound(st, eos, params.cfl_constant);
    CHECK_THROWS_AS(step(st, 2.0 * bound, eos, params), std::invalid_argument);
  }
  SUBCASE("blow-up names the offending field") {
    CoupledState bad = st;
    bad.v.comp(0, 0)[5] = std::numeric_limits<double>::quiet_NaN();
    try {
      validate_state(bad, params);
      CHECK(false);
    } catch (const BlowupError& e) {
      CHECK(e.field == "v");
    }
    CoupledState neg = st;
    set_constant(neg.rho, 0, 0, -1.0);
    CHECK_THROWS_AS(validate_state(neg, params), BlowupError);
  }
}

TEST_CASE("order-4 self-convergence of the coupled step") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  EquationOfState eos;
  SystemParams params{.system = System::eym_compressible};
  std::mt19937_64 rng(17);
  CoupledState st = random_charged_state(grid, su2, rng);

  const double T = 0.2;
  auto integrate = [&](int nsteps) {
    CoupledState cur = st;
    double dt = T / nsteps;
    for (int i = 0; i < nsteps; ++i) cur = step(cur, dt, eos, params);
    return cur;
  };
  CoupledState ref = integrate(64);
  auto err = [&](const CoupledState& s) {
    double e = 0.0;
    auto acc = [&](const GForm& x, const GForm& y) {
      GForm d = x;
      d -= y;
      e = std::max(e, d.linf());
    };
    acc(s.rho, ref.rho);
    acc(s.v, ref.v);
    acc(s.Q, ref.Q);
    acc(s.E, ref.E);
    return e;
  };
  double ratio = err(integrate(8)) / err(integrate(16));
  CHECK(ratio > 8.0);
  CHECK(ratio < 32.0);
}

TEST_CASE("short conservation run for the coupled system") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  EquationOfState eos;
  SystemParams params{.system = System::eym_compressible};
  std::mt19937_64 rng(19);
  // gentle fields: the range bound below assumes the transported scalar
  // stays fully resolved, so the advecting velocity must not fold it down
  // to the filter scale within the run
  CoupledState st = random_charged_state(grid, su2, rng, 0.02);

  double mass0 = integral(st.rho);
  double smin0 = min_value(st.s), smax0 = max_value(st.s);
  CoupledState cur = st;
  const double dt = 5e-3;
  for (int i = 0; i < 100; ++i) cur = step(cur, dt, eos, params);
  CHECK(std::abs(integral(cur.rho) - mass0) / std::abs(mass0) < 1e-10);
  // transported scalar stays inside its initial range up to filter ripple
  CHECK(min_value(cur.s) > smin0 - 1e-6);
  CHECK(max_value(cur.s) < smax0 + 1e-6);
}

TEST_CASE("semidirect transpose pairs against the bracket") {
  auto grid = Grid::make(2, {32, 32, 8});
  auto su2 = LieAlgebra::make("su2");
  auto u1 = LieAlgebra::make("u1");
  std::mt19937_64 rng(23);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    GForm v = random_band_limited(grid, u1, 1, 2, 0.7, rng);
    GForm theta = random_band_limited(grid, su2, 0, 2, 0.7, rng);
    GForm w = random_band_limited(grid, u1, 1, 2, 0.7, rng);
    GForm omega = random_band_limited(grid, su2, 0, 2, 0.7, rng);
    GForm m = random_band_limited(grid, u1, 1, 2, 0.7, rng);
    GForm nu = random_band_limited(grid, su2, 0, 2, 0.7, rng);
    auto [am, anu] = semidirect_ad_dagger(v, theta, m, nu);
    auto [bv, btheta] = semidirect_bracket(v, theta, w, omega);
    double lhs = l2_inner(am, w) + l2_inner(anu, omega);
    double rhs = l2_inner(m, bv) + l2_inner(nu, btheta);
    double scale = (l2_norm(m) + l2_norm(nu)) * (l2_norm(w) + l2_norm(omega)) *
                   (l2_norm(v) + l2_norm(theta));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  CHECK(worst < 1e-9);
}
