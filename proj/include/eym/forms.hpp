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

#ifndef EYM_FORMS_HPP
#define EYM_FORMS_HPP

#include <random>

#include "eym/gform.hpp"

namespace eym::forms {

// Test fixture only: flips the sign of codiff() so the bundled invariant
// checks can demonstrate they catch a wrong adjoint. Never set in production.
extern bool codiff_sign_flip_for_tests;

// Exterior derivative; spectral, exact for band-limited fields.
GForm ext_d(const GForm& w);

// Covariant exterior derivative d + [A wedge .] for a connection 1-form A.
GForm cov_d(const GForm& A, const GForm& w);

// Curvature 2-form of A: (dA)_ij + [A_i, A_j].
GForm curvature(const GForm& A);

// Covariant codifferential, the exact l2_inner-adjoint of cov_d(A, .).
// Supported input degrees: 1 and 2.
GForm codiff(const GForm& A, const GForm& w);

// <a, b> = integral of the pointwise (metric x gamma) pairing.
double l2_inner(const GForm& a, const GForm& b);

// (i_v w)(u) = w(v, u) for a 2-form w and velocity v.
GForm interior_product(const GForm& v, const GForm& w);

// L2-orthogonal projection onto divergence-free fields.
GForm leray_project(const GForm& v);

// Group-valued lattice field, one representation matrix per grid point.
using GroupField = std::vector<eym::lie::Matrix>;

// Connection transformation A -> Ad_{tau^-1} A + tau^-1 d tau.
GForm gauge_transform(const GForm& A, const GroupField& tau);

// Pointwise Ad_{tau^-1} applied to every component of a form.
GForm ad_inverse_transform(const GForm& w, const GroupField& tau);

// --- plumbing on sampled fields -----------------------------------------

GForm zero_like(const GForm& w);
GForm scalar_form(std::shared_ptr<const Grid> g,
                  std::shared_ptr<const LieAlgebra> alg);
GForm one_form(std::shared_ptr<const Grid> g,
               std::shared_ptr<const LieAlgebra> alg);

// Sum_i d(v_i)/dx_i per Lie component.
GForm divergence(const GForm& v);

// v . grad f for a 0- or 1-form f (componentwise transport).
GForm advect(const GForm& v, const GForm& f);

// (grad v)^T . m, both u1 1-forms: out_i = Sum_j m_j d(v_j)/dx_i.
GForm transpose_grad_apply(const GForm& v, const GForm& m);

// Pointwise gamma(q, w) with q a 0-form; contracts the Lie index of each
// component of w. Result is a real-valued form of w's degree.
GForm gamma_pair(const GForm& q, const GForm& w);

// Pointwise Lie bracket of two 0-forms.
GForm bracket_pointwise(const GForm& x, const GForm& y);

// Pointwise product by a real scalar field.
GForm mult(const GForm& s, const GForm& x);

// Pointwise quotient x / s.
GForm quotient(const GForm& x, const GForm& s);

// q tensor v^flat: 1-form with components q v_i.
GForm tensor_with_covector(const GForm& q, const GForm& v);

// w(v) = Sum_i v_i w_i for a 1-form w.
GForm contract(const GForm& w, const GForm& v);

// Integral of a real scalar field over the grid.
double integral(const GForm& f);

double l2_norm(const GForm& w);
double min_value(const GForm& f);
double max_value(const GForm& f);

void dealias_inplace(GForm& w);

// Same, but honoring the grid's dealias flag (the rule applied after each
// pointwise product inside the operations above).
void dealias_inplace_if(GForm& w);

// Real random field with modes |k_i| <= kmax per axis, Linf-normalized to
// `amplitude`. Deterministic in rng.
GForm random_band_limited(std::shared_ptr<const Grid> g,
                          std::shared_ptr<const LieAlgebra> alg, int degree,
                          int kmax, double amplitude, std::mt19937_64& rng);

// Add amplitude * cos(k.x + phase) to one (comp, lie) slot.
void add_mode(GForm& w, int comp, int lie, const std::array<int, 3>& wavevec,
              double amplitude, double phase);

}  // namespace eym::forms

#endif  // EYM_FORMS_HPP
