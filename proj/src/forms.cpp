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

#include "eym/forms.hpp"

#include <cmath>
#include <stdexcept>

namespace eym::forms {

bool codiff_sign_flip_for_tests = false;

namespace {

void maybe_dealias(GForm& w) {
  if (!w.grid().dealias()) return;
  const Spectral& sp = w.grid().spectral();
  for (int c = 0; c < w.ncomp(); ++c)
    for (int a = 0; a < w.nlie(); ++a) sp.truncate(w.comp(c, a));
}

// out_slot += sign * [x_slot, y_slot] pointwise, all slots scalar lattices.
void bracket_accum(const LieAlgebra& alg, const GForm& x, int xc,
                   const GForm& y, int yc, GForm& out, int oc, double sign) {
  const long np = out.points();
  for (const auto& e : alg.structure_sparse()) {
    const double* xa = x.comp(xc, e.a);
    const double* yb = y.comp(yc, e.b);
    double* o = out.comp(oc, e.c);
    const double w = sign * e.coef;
    for (long p = 0; p < np; ++p) o[p] += w * xa[p] * yb[p];
  }
}

void require_connection(const GForm& A) {
  if (A.degree() != 1) throw std::invalid_argument("connection must be a 1-form");
}

}  // namespace

GForm zero_like(const GForm& w) {
  return GForm(w.grid_ptr(), w.degree(), w.algebra_ptr());
}

GForm scalar_form(std::shared_ptr<const Grid> g,
                  std::shared_ptr<const LieAlgebra> alg) {
  return GForm(std::move(g), 0, std::move(alg));
}

GForm one_form(std::shared_ptr<const Grid> g,
               std::shared_ptr<const LieAlgebra> alg) {
  return GForm(std::move(g), 1, std::move(alg));
}

GForm ext_d(const GForm& w) {
  const int d = w.grid().dim();
  const int k = w.degree();
  if (k >= d) throw std::invalid_argument("ext_d: form degree must be below grid dim");
  const Spectral& sp = w.grid().spectral();
  GForm out(w.grid_ptr(), k + 1, w.algebra_ptr());
  std::vector<double> tmp(w.points());

  if (k == 0) {
    for (int i = 0; i < d; ++i)
      for (int a = 0; a < w.nlie(); ++a)
        sp.derivative(w.comp(0, a), out.comp(i, a), i);
    return out;
  }
  if (k == 1) {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        double sgn;
        int slot = pair_slot(d, i, j, sgn);
        for (int a = 0; a < w.nlie(); ++a) {
          double* o = out.comp(slot, a);
          sp.derivative(w.comp(j, a), tmp.data(), i);
          for (long p = 0; p < w.points(); ++p) o[p] += tmp[p];
          sp.derivative(w.comp(i, a), tmp.data(), j);
          for (long p = 0; p < w.points(); ++p) o[p] -= tmp[p];
        }
      }
    return out;
  }
  // k == 2, d == 3: single top-degree component d0 w_12 - d1 w_02 + d2 w_01.
  const int slots[3] = {2, 1, 0};  // (1,2), (0,2), (0,1)
  const double sgns[3] = {1.0, -1.0, 1.0};
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < w.nlie(); ++a) {
      sp.derivative(w.comp(slots[i], a), tmp.data(), i);
      double* o = out.comp(0, a);
      for (long p = 0; p < w.points(); ++p) o[p] += sgns[i] * tmp[p];
    }
  return out;
}

GForm cov_d(const GForm& A, const GForm& w) {
  require_connection(A);
  A.require_grid(w);
  if (A.algebra().name() != w.algebra().name())
    throw std::invalid_argument("cov_d: algebra mismatch");
  const int d = w.grid().dim();
  const int k = w.degree();
  if (k >= d) throw std::invalid_argument("cov_d: form degree must be below grid dim");

  GForm out = ext_d(w);
  if (A.algebra().abelian()) return out;

  GForm br(w.grid_ptr(), k + 1, w.algebra_ptr());
  const auto& alg = w.algebra();
  if (k == 0) {
    for (int i = 0; i < d; ++i) bracket_accum(alg, A, i, w, 0, br, i, 1.0);
  } else if (k == 1) {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        double sgn;
        int slot = pair_slot(d, i, j, sgn);
        bracket_accum(alg, A, i, w, j, br, slot, 1.0);
        bracket_accum(alg, A, j, w, i, br, slot, -1.0);
      }
  } else {
    // graded term on a 2-form in 3D: [A_0, w_12] - [A_1, w_02] + [A_2, w_01]
    bracket_accum(alg, A, 0, w, 2, br, 0, 1.0);
    bracket_accum(alg, A, 1, w, 1, br, 0, -1.0);
    bracket_accum(alg, A, 2, w, 0, br, 0, 1.0);
  }
  maybe_dealias(br);
  out += br;
  return out;
}

GForm curvature(const GForm& A) {
  require_connection(A);
  GForm out = ext_d(A);
  if (A.algebra().abelian()) return out;
  const int d = A.grid().dim();
  GForm br(A.grid_ptr(), 2, A.algebra_ptr());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      double sgn;
      int slot = pair_slot(d, i, j, sgn);
      bracket_accum(A.algebra(), A, i, A, j, br, slot, 1.0);
    }
  maybe_dealias(br);
  out += br;
  return out;
}

GForm codiff(const GForm& A, const GForm& w) {
  require_connection(A);
  A.require_grid(w);
  const int d = w.grid().dim();
  const int k = w.degree();
  if (k != 1 && k != 2)
    throw std::invalid_argument("codiff: supported input degrees are 1 and 2");
  const Spectral& sp = w.grid().spectral();
  const auto& alg = w.algebra();
  const bool brackets = !alg.abelian() && A.algebra().name() == alg.name();
  if (!alg.abelian() && A.algebra().name() != alg.name())
    throw std::invalid_argument("codiff: algebra mismatch");

  GForm out(w.grid_ptr(), k - 1, w.algebra_ptr());
  GForm br(w.grid_ptr(), k - 1, w.algebra_ptr());
  std::vector<double> tmp(w.points());

  if (k == 1) {
    for (int i = 0; i < d; ++i) {
      for (int a = 0; a < w.nlie(); ++a) {
        sp.derivative(w.comp(i, a), tmp.data(), i);
        double* o = out.comp(0, a);
        for (long p = 0; p < w.points(); ++p) o[p] -= tmp[p];
      }
      if (brackets) bracket_accum(alg, A, i, w, i, br, 0, -1.0);
    }
  } else {
    for (int m = 0; m < d; ++m)
      for (int i = 0; i < d; ++i) {
        if (i == m) continue;
        double sgn;
        int slot = pair_slot(d, i, m, sgn);
        for (int a = 0; a < w.nlie(); ++a) {
          sp.derivative(w.comp(slot, a), tmp.data(), i);
          double* o = out.comp(m, a);
          for (long p = 0; p < w.points(); ++p) o[p] -= sgn * tmp[p];
        }
        if (brackets) {
          // -( [A_i, w_im] ) with w_im = sgn * stored slot
          bracket_accum(alg, A, i, w, slot, br, m, -sgn);
        }
      }
  }
  if (brackets) {
    maybe_dealias(br);
    out += br;
  }
  if (codiff_sign_flip_for_tests) out *= -1.0;
  return out;
}

double l2_inner(const GForm& a, const GForm& b) {
  a.require_like(b);
  double s = 0.0;
  const auto& av = a.raw();
  const auto& bv = b.raw();
  for (size_t i = 0; i < av.size(); ++i) s += av[i] * bv[i];
  return s * a.grid().cell_volume();
}

GForm interior_product(const GForm& v, const GForm& w) {
  if (w.degree() != 2) throw std::invalid_argument("interior_product expects a 2-form");
  if (v.degree() != 1 || !v.algebra().abelian())
    throw std::invalid_argument("interior_product expects a velocity 1-form");
  v.require_grid(w);
  const int d = w.grid().dim();
  GForm out(w.grid_ptr(), 1, w.algebra_ptr());
  for (int m = 0; m < d; ++m)
    for (int i = 0; i < d; ++i) {
      if (i == m) continue;
      double sgn;
      int slot = pair_slot(d, i, m, sgn);
      const double* vi = v.comp(i, 0);
      for (int a = 0; a < w.nlie(); ++a) {
        const double* wim = w.comp(slot, a);
        double* o = out.comp(m, a);
        for (long p = 0; p < w.points(); ++p) o[p] += sgn * vi[p] * wim[p];
      }
    }
  maybe_dealias(out);
  return out;
}

GForm leray_project(const GForm& v) {
  if (v.degree() != 1) throw std::invalid_argument("leray_project expects a 1-form");
  GForm out = v;
  const Spectral& sp = v.grid().spectral();
  for (int a = 0; a < v.nlie(); ++a) {
    std::array<double*, 3> c{nullptr, nullptr, nullptr};
    for (int i = 0; i < v.grid().dim(); ++i) c[i] = out.comp(i, a);
    sp.leray(c);
  }
  return out;
}

GForm ad_inverse_transform(const GForm& w, const GroupField& tau) {
  if (static_cast<long>(tau.size()) != w.points())
    throw std::invalid_argument("group field size mismatch");
  const auto& alg = w.algebra();
  GForm out = zero_like(w);
  lie::LieVector xi(alg.dim());
  for (long p = 0; p < w.points(); ++p) {
    lie::Matrix inv = tau[p].inverse();
    for (int c = 0; c < w.ncomp(); ++c) {
      for (int a = 0; a < alg.dim(); ++a) xi[a] = w.comp(c, a)[p];
      lie::LieVector r = alg.from_matrix(inv * alg.to_matrix(xi) * tau[p]);
      for (int a = 0; a < alg.dim(); ++a) out.comp(c, a)[p] = r[a];
    }
  }
  maybe_dealias(out);
  return out;
}

GForm gauge_transform(const GForm& A, const GroupField& tau) {
  require_connection(A);
  if (static_cast<long>(tau.size()) != A.points())
    throw std::invalid_argument("group field size mismatch");
  const auto& alg = A.algebra();
  const int d = A.grid().dim();
  const int r = alg.rep_dim();
  const Spectral& sp = A.grid().spectral();
  const long np = A.points();

  // Entrywise spectral derivative of tau along each axis.
  std::vector<double> re(np), im(np), dre(np), dim_(np);
  std::vector<std::vector<lie::Matrix>> dtau(d);
  for (int axis = 0; axis < d; ++axis) {
    dtau[axis].assign(np, lie::Matrix::Zero(r, r));
    for (int row = 0; row < r; ++row)
      for (int col = 0; col < r; ++col) {
        for (long p = 0; p < np; ++p) {
          re[p] = tau[p](row, col).real();
          im[p] = tau[p](row, col).imag();
        }
        sp.derivative(re.data(), dre.data(), axis);
        sp.derivative(im.data(), dim_.data(), axis);
        for (long p = 0; p < np; ++p)
          dtau[axis][p](row, col) = std::complex<double>(dre[p], dim_[p]);
      }
  }

  GForm out = zero_like(A);
  lie::LieVector xi(alg.dim());
  for (long p = 0; p < np; ++p) {
    lie::Matrix inv = tau[p].inverse();
    for (int i = 0; i < d; ++i) {
      for (int a = 0; a < alg.dim(); ++a) xi[a] = A.comp(i, a)[p];
      lie::Matrix m = inv * alg.to_matrix(xi) * tau[p] + inv * dtau[i][p];
      lie::LieVector rvec = alg.from_matrix(m);
      for (int a = 0; a < alg.dim(); ++a) out.comp(i, a)[p] = rvec[a];
    }
  }
  maybe_dealias(out);
  return out;
}

GForm divergence(const GForm& v) {
  if (v.degree() != 1) throw std::invalid_argument("divergence expects a 1-form");
  const Spectral& sp = v.grid().spectral();
  GForm out(v.grid_ptr(), 0, v.algebra_ptr());
  std::vector<double> tmp(v.points());
  for (int i = 0; i < v.grid().dim(); ++i)
    for (int a = 0; a < v.nlie(); ++a) {
      sp.derivative(v.comp(i, a), tmp.data(), i);
      double* o = out.comp(0, a);
      for (long p = 0; p < v.points(); ++p) o[p] += tmp[p];
    }
  return out;
}

GForm advect(const GForm& v, const GForm& f) {
  if (v.degree() != 1 || !v.algebra().abelian())
    throw std::invalid_argument("advect expects a velocity 1-form");
  v.require_grid(f);
  const Spectral& sp = f.grid().spectral();
  GForm out = zero_like(f);
  std::vector<double> tmp(f.points());
  for (int c = 0; c < f.ncomp(); ++c)
    for (int a = 0; a < f.nlie(); ++a) {
      double* o = out.comp(c, a);
      for (int i = 0; i < f.grid().dim(); ++i) {
        sp.derivative(f.comp(c, a), tmp.data(), i);
        const double* vi = v.comp(i, 0);
        for (long p = 0; p < f.points(); ++p) o[p] += vi[p] * tmp[p];
      }
    }
  maybe_dealias(out);
  return out;
}

GForm transpose_grad_apply(const GForm& v, const GForm& m) {
  if (v.degree() != 1 || m.degree() != 1)
    throw std::invalid_argument("transpose_grad_apply expects 1-forms");
  v.require_grid(m);
  const Spectral& sp = v.grid().spectral();
  GForm out = zero_like(m);
  std::vector<double> tmp(v.points());
  for (int i = 0; i < v.grid().dim(); ++i) {
    double* o = out.comp(i, 0);
    for (int j = 0; j < v.grid().dim(); ++j) {
      sp.derivative(v.comp(j, 0), tmp.data(), i);
      const double* mj = m.comp(j, 0);
      for (long p = 0; p < v.points(); ++p) o[p] += mj[p] * tmp[p];
    }
  }
  maybe_dealias(out);
  return out;
}

GForm gamma_pair(const GForm& q, const GForm& w) {
  if (q.degree() != 0) throw std::invalid_argument("gamma_pair expects a 0-form first");
  q.require_grid(w);
  if (q.algebra().name() != w.algebra().name())
    throw std::invalid_argument("gamma_pair: algebra mismatch");
  GForm out(w.grid_ptr(), w.degree(), LieAlgebra::make("u1"));
  for (int c = 0; c < w.ncomp(); ++c) {
    double* o = out.comp(c, 0);
    for (int a = 0; a < w.nlie(); ++a) {
      const double* qa = q.comp(0, a);
      const double* wa = w.comp(c, a);
      for (long p = 0; p < w.points(); ++p) o[p] += qa[p] * wa[p];
    }
  }
  maybe_dealias(out);
  return out;
}

GForm bracket_pointwise(const GForm& x, const GForm& y) {
  if (x.degree() != 0 || y.degree() != 0)
    throw std::invalid_argument("bracket_pointwise expects 0-forms");
  x.require_like(y);
  GForm out = zero_like(x);
  bracket_accum(x.algebra(), x, 0, y, 0, out, 0, 1.0);
  maybe_dealias(out);
  return out;
}

GForm mult(const GForm& s, const GForm& x) {
  if (s.degree() != 0 || !s.algebra().abelian())
    throw std::invalid_argument("mult expects a real scalar field first");
  s.require_grid(x);
  GForm out = x;
  const double* sv = s.comp(0, 0);
  for (int c = 0; c < x.ncomp(); ++c)
    for (int a = 0; a < x.nlie(); ++a) {
      double* o = out.comp(c, a);
      for (long p = 0; p < x.points(); ++p) o[p] *= sv[p];
    }
  maybe_dealias(out);
  return out;
}

GForm quotient(const GForm& x, const GForm& s) {
  if (s.degree() != 0 || !s.algebra().abelian())
    throw std::invalid_argument("quotient expects a real scalar divisor");
  s.require_grid(x);
  GForm out = x;
  const double* sv = s.comp(0, 0);
  for (int c = 0; c < x.ncomp(); ++c)
    for (int a = 0; a < x.nlie(); ++a) {
      double* o = out.comp(c, a);
      for (long p = 0; p < x.points(); ++p) o[p] /= sv[p];
    }
  maybe_dealias(out);
  return out;
}

GForm tensor_with_covector(const GForm& q, const GForm& v) {
  if (q.degree() != 0 || v.degree() != 1)
    throw std::invalid_argument("tensor_with_covector expects (0-form, 1-form)");
  q.require_grid(v);
  GForm out(q.grid_ptr(), 1, q.algebra_ptr());
  for (int i = 0; i < q.grid().dim(); ++i) {
    const double* vi = v.comp(i, 0);
    for (int a = 0; a < q.nlie(); ++a) {
      const double* qa = q.comp(0, a);
      double* o = out.comp(i, a);
      for (long p = 0; p < q.points(); ++p) o[p] = qa[p] * vi[p];
    }
  }
  maybe_dealias(out);
  return out;
}

GForm contract(const GForm& w, const GForm& v) {
  if (w.degree() != 1 || v.degree() != 1)
    throw std::invalid_argument("contract expects 1-forms");
  w.require_grid(v);
  GForm out(w.grid_ptr(), 0, w.algebra_ptr());
  for (int i = 0; i < w.grid().dim(); ++i) {
    const double* vi = v.comp(i, 0);
    for (int a = 0; a < w.nlie(); ++a) {
      const double* wi = w.comp(i, a);
      double* o = out.comp(0, a);
      for (long p = 0; p < w.points(); ++p) o[p] += vi[p] * wi[p];
    }
  }
  maybe_dealias(out);
  return out;
}

double integral(const GForm& f) {
  if (f.degree() != 0 || !f.algebra().abelian())
    throw std::invalid_argument("integral expects a real scalar field");
  double s = 0.0;
  const double* fv = f.comp(0, 0);
  for (long p = 0; p < f.points(); ++p) s += fv[p];
  return s * f.grid().cell_volume();
}

double l2_norm(const GForm& w) { return std::sqrt(std::max(0.0, l2_inner(w, w))); }

double min_value(const GForm& f) {
  double m = f.raw()[0];
  for (double x : f.raw()) m = std::min(m, x);
  return m;
}

double max_value(const GForm& f) {
  double m = f.raw()[0];
  for (double x : f.raw()) m = std::max(m, x);
  return m;
}

void dealias_inplace(GForm& w) {
  const Spectral& sp = w.grid().spectral();
  for (int c = 0; c < w.ncomp(); ++c)
    for (int a = 0; a < w.nlie(); ++a) sp.truncate(w.comp(c, a));
}

void dealias_inplace_if(GForm& w) { maybe_dealias(w); }

void add_mode(GForm& w, int comp, int lie, const std::array<int, 3>& wavevec,
              double amplitude, double phase) {
  const Grid& g = w.grid();
  double* f = w.comp(comp, lie);
  const double tau = 2.0 * M_PI;
  for (long p = 0; p < g.points(); ++p) {
    auto x = g.coords(p);
    double arg = phase;
    for (int a = 0; a < g.dim(); ++a) arg += tau / g.length(a) * wavevec[a] * x[a];
    f[p] += amplitude * std::cos(arg);
  }
}

GForm random_band_limited(std::shared_ptr<const Grid> g,
                          std::shared_ptr<const LieAlgebra> alg, int degree,
                          int kmax, double amplitude, std::mt19937_64& rng) {
  GForm out(g, degree, alg);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
  for (int c = 0; c < out.ncomp(); ++c)
    for (int a = 0; a < out.nlie(); ++a)
      for (int k0 = -kmax; k0 <= kmax; ++k0)
        for (int k1 = -kmax; k1 <= kmax; ++k1)
          for (int k2 = (g->dim() == 3 ? -kmax : 0); k2 <= (g->dim() == 3 ? kmax : 0); ++k2) {
            if (k0 == 0 && k1 == 0 && k2 == 0) continue;
            add_mode(out, c, a, {k0, k1, k2}, amp(rng), ph(rng));
          }
  double m = out.linf();
  if (m > 0.0) out *= amplitude / m;
  return out;
}

}  // namespace eym::forms
