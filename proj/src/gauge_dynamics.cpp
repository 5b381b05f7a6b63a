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

#include "eym/gauge_dynamics.hpp"

#include <cmath>

namespace eym::gauge {

using namespace eym::forms;

GaugeDeriv ym_rhs(const GaugeState& gs, const GForm* current) {
  GForm dA = gs.E;
  dA *= -1.0;
  GForm dE = codiff(gs.A, curvature(gs.A));
  if (current) dE -= *current;
  return {std::move(dA), std::move(dE)};
}

GForm gauss_residual(const GaugeState& gs, const GForm& Q) {
  GForm r = codiff(gs.A, gs.E);
  r += Q;
  return r;
}

namespace {

// Preconditioner: inverse flat Laplacian per Lie component, mean untouched.
GForm precondition(const GForm& r) {
  GForm z = r;
  const Spectral& sp = r.grid().spectral();
  for (int a = 0; a < r.nlie(); ++a) sp.invert_minus_laplacian(z.comp(0, a));
  return z;
}

double mean_fraction(const GForm& q) {
  // Size of the constant (per-component mean) part relative to the field.
  double num = 0.0;
  for (int a = 0; a < q.nlie(); ++a) {
    double m = 0.0;
    const double* f = q.comp(0, a);
    for (long p = 0; p < q.points(); ++p) m += f[p];
    m /= static_cast<double>(q.points());
    num = std::max(num, std::abs(m));
  }
  double scale = q.linf();
  return scale > 0.0 ? num / scale : 0.0;
}

}  // namespace

GForm solve_initial_E(const GForm& A, const GForm& Q, double tol, int max_iter) {
  if (Q.degree() != 0) throw std::invalid_argument("charge density must be a 0-form");
  A.require_grid(Q);

  GForm phi = zero_like(Q);
  double qnorm = l2_norm(Q);
  if (qnorm == 0.0) return cov_d(A, phi);  // E = 0

  // The covariant Laplacian annihilates covariantly constant sections; for
  // an abelian algebra (or A = 0) these are the constants, so a mean in Q is
  // unsolvable and must be rejected rather than silently projected.
  bool abelian_like = Q.algebra().abelian() || A.linf() == 0.0;
  if (abelian_like && mean_fraction(Q) > 1e-12)
    throw ConstraintError("charge density has a component in the constraint kernel");

  auto apply = [&](const GForm& x) { return codiff(A, cov_d(A, x)); };

  GForm b = Q;
  b *= -1.0;
  GForm r = b;  // r = b - L(0)
  GForm z = precondition(r);
  GForm p = z;
  double rz = l2_inner(r, z);
  double bnorm = l2_norm(b);

  for (int it = 0; it < max_iter; ++it) {
    if (l2_norm(r) <= tol * bnorm) break;
    GForm lp = apply(p);
    double plp = l2_inner(p, lp);
    if (!(plp > 0.0))
      throw CgError("conjugate gradients lost positive definiteness");
    double alpha = rz / plp;
    phi.axpy(alpha, p);
    r.axpy(-alpha, lp);
    z = precondition(r);
    double rz_next = l2_inner(r, z);
    double beta = rz_next / rz;
    rz = rz_next;
    GForm pn = z;
    pn.axpy(beta, p);
    p = std::move(pn);
  }
  if (l2_norm(r) > tol * bnorm)
    throw CgError("conjugate gradients did not converge in the iteration budget");
  return cov_d(A, phi);
}

GForm make_gauss_consistent(const GForm& A, const GForm& E_trial, const GForm& Q,
                            double tol, int max_iter) {
  // Want codiff(A, E) = -Q. The defect of the trial field is itself a
  // compatible source for the longitudinal correction.
  GForm defect = codiff(A, E_trial);
  defect += Q;  // = codiff(A,E_trial) - (-Q)
  if (l2_norm(defect) == 0.0) return E_trial;
  GForm correction = solve_initial_E(A, defect, tol, max_iter);
  GForm out = E_trial;
  out += correction;  // codiff(correction) = -defect
  return out;
}

double field_energy(const GaugeState& gs) {
  GForm B = curvature(gs.A);
  return 0.5 * (l2_inner(gs.E, gs.E) + l2_inner(B, B));
}

GaugeState rk4_step(const GaugeState& gs, double dt) {
  auto k1 = ym_rhs(gs);
  GaugeState s2{gs.A, gs.E};
  s2.A.axpy(0.5 * dt, k1.dA);
  s2.E.axpy(0.5 * dt, k1.dE);
  auto k2 = ym_rhs(s2);
  GaugeState s3{gs.A, gs.E};
  s3.A.axpy(0.5 * dt, k2.dA);
  s3.E.axpy(0.5 * dt, k2.dE);
  auto k3 = ym_rhs(s3);
  GaugeState s4{gs.A, gs.E};
  s4.A.axpy(dt, k3.dA);
  s4.E.axpy(dt, k3.dE);
  auto k4 = ym_rhs(s4);

  GaugeState out{gs.A, gs.E};
  const double w = dt / 6.0;
  out.A.axpy(w, k1.dA);
  out.A.axpy(2.0 * w, k2.dA);
  out.A.axpy(2.0 * w, k3.dA);
  out.A.axpy(w, k4.dA);
  out.E.axpy(w, k1.dE);
  out.E.axpy(2.0 * w, k2.dE);
  out.E.axpy(2.0 * w, k3.dE);
  out.E.axpy(w, k4.dE);
  return out;
}

}  // namespace eym::gauge
