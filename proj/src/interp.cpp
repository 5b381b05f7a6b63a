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

#include "eym/interp.hpp"

#include <cmath>

namespace eym::forms {

namespace {

// Catmull-Rom weights for local coordinate t in [0,1).
void cr_weights(double t, double w[4]) {
  w[0] = 0.5 * (-t + 2.0 * t * t - t * t * t);
  w[1] = 0.5 * (2.0 - 5.0 * t * t + 3.0 * t * t * t);
  w[2] = 0.5 * (t + 4.0 * t * t - 3.0 * t * t * t);
  w[3] = 0.5 * (-t * t + t * t * t);
}

int wrap(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

}  // namespace

FormSampler::FormSampler(const GForm& w, InterpMethod method)
    : grid_(&w.grid()),
      method_(method),
      ncomp_(w.ncomp()),
      nlie_(w.nlie()),
      nslots_(w.ncomp() * w.nlie()) {
  if (method_ == InterpMethod::trig) {
    const Spectral& sp = grid_->spectral();
    hat_.reserve(nslots_);
    for (int c = 0; c < ncomp_; ++c)
      for (int a = 0; a < nlie_; ++a) hat_.push_back(sp.coefficients(w.comp(c, a)));
  } else {
    lattice_.reserve(nslots_);
    for (int c = 0; c < ncomp_; ++c)
      for (int a = 0; a < nlie_; ++a)
        lattice_.emplace_back(w.comp(c, a), w.comp(c, a) + w.points());
  }
}

void FormSampler::eval(const std::array<double, 3>& x, double* out) const {
  const int d = grid_->dim();
  if (method_ == InterpMethod::trig) {
    const Spectral& sp = grid_->spectral();
    // Per-axis phase tables shared by all slots.
    std::array<std::vector<std::complex<double>>, 3> ph;
    for (int a = 0; a < d; ++a) {
      int n = grid_->n(a);
      ph[a].resize(n);
      for (int i = 0; i < n; ++i) {
        double arg = sp.wavenumber(a, i) * x[a];
        ph[a][i] = std::complex<double>(std::cos(arg), std::sin(arg));
      }
    }
    if (d == 2) {
      const int n1 = grid_->n(1);
      for (int s = 0; s < nslots_; ++s) {
        const auto& h = hat_[s];
        std::complex<double> total = 0.0;
        for (int i0 = 0; i0 < grid_->n(0); ++i0) {
          std::complex<double> row = 0.0;
          const std::complex<double>* hp = h.data() + static_cast<long>(i0) * n1;
          for (int i1 = 0; i1 < n1; ++i1) row += hp[i1] * ph[1][i1];
          total += row * ph[0][i0];
        }
        out[s] = total.real();
      }
    } else {
      const int n1 = grid_->n(1), n2 = grid_->n(2);
      for (int s = 0; s < nslots_; ++s) {
        const auto& h = hat_[s];
        std::complex<double> total = 0.0;
        for (int i0 = 0; i0 < grid_->n(0); ++i0) {
          std::complex<double> plane = 0.0;
          for (int i1 = 0; i1 < n1; ++i1) {
            std::complex<double> row = 0.0;
            const std::complex<double>* hp =
                h.data() + (static_cast<long>(i0) * n1 + i1) * n2;
            for (int i2 = 0; i2 < n2; ++i2) row += hp[i2] * ph[2][i2];
            plane += row * ph[1][i1];
          }
          total += plane * ph[0][i0];
        }
        out[s] = total.real();
      }
    }
    return;
  }

  // Cubic path: tensor-product Catmull-Rom on the periodic lattice.
  int base[3];
  double wts[3][4];
  for (int a = 0; a < d; ++a) {
    double u = x[a] / grid_->spacing(a);
    double fl = std::floor(u);
    base[a] = static_cast<int>(fl);
    cr_weights(u - fl, wts[a]);
  }
  for (int s = 0; s < nslots_; ++s) {
    const auto& f = lattice_[s];
    double acc = 0.0;
    if (d == 2) {
      for (int i = 0; i < 4; ++i) {
        int i0 = wrap(base[0] - 1 + i, grid_->n(0));
        for (int j = 0; j < 4; ++j) {
          int i1 = wrap(base[1] - 1 + j, grid_->n(1));
          acc += wts[0][i] * wts[1][j] * f[grid_->index(i0, i1)];
        }
      }
    } else {
      for (int i = 0; i < 4; ++i) {
        int i0 = wrap(base[0] - 1 + i, grid_->n(0));
        for (int j = 0; j < 4; ++j) {
          int i1 = wrap(base[1] - 1 + j, grid_->n(1));
          for (int k = 0; k < 4; ++k) {
            int i2 = wrap(base[2] - 1 + k, grid_->n(2));
            acc += wts[0][i] * wts[1][j] * wts[2][k] * f[grid_->index(i0, i1, i2)];
          }
        }
      }
    }
    out[s] = acc;
  }
}

double FormSampler::eval_slot(const std::array<double, 3>& x, int comp,
                              int lie) const {
  std::vector<double> all(nslots_);
  eval(x, all.data());
  return all[comp * nlie_ + lie];
}

}  // namespace eym::forms
