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

#include "eym/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eym::forms {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

std::shared_ptr<const Grid> Grid::make(int dim, std::array<int, 3> n,
                                       std::array<double, 3> lengths,
                                       bool dealias) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("grid dim must be 2 or 3");
  auto g = std::shared_ptr<Grid>(new Grid());
  g->dim_ = dim;
  g->np_ = 1;
  g->mu_ = 1.0;
  for (int a = 0; a < dim; ++a) {
    if (!power_of_two(n[a]) || n[a] < 8)
      throw std::invalid_argument("points per axis must be a power of two >= 8");
    if (!(lengths[a] > 0.0)) throw std::invalid_argument("axis length must be positive");
    g->n_[a] = n[a];
    g->len_[a] = lengths[a];
    g->h_[a] = lengths[a] / n[a];
    g->np_ *= n[a];
    g->mu_ *= g->h_[a];
  }
  g->dealias_ = dealias;
  return g;
}

std::shared_ptr<const Grid> Grid::make(int dim, std::array<int, 3> n, bool dealias) {
  const double tau = 2.0 * std::numbers::pi;
  return make(dim, n, {tau, tau, tau}, dealias);
}

Grid::~Grid() = default;

double Grid::min_spacing() const {
  double h = h_[0];
  for (int a = 1; a < dim_; ++a) h = std::min(h, h_[a]);
  return h;
}

std::array<double, 3> Grid::coords(long p) const {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  if (dim_ == 2) {
    x[1] = h_[1] * (p % n_[1]);
    x[0] = h_[0] * (p / n_[1]);
  } else {
    x[2] = h_[2] * (p % n_[2]);
    long q = p / n_[2];
    x[1] = h_[1] * (q % n_[1]);
    x[0] = h_[0] * (q / n_[1]);
  }
  return x;
}

bool Grid::same(const Grid& o) const {
  if (dim_ != o.dim_) return false;
  for (int a = 0; a < dim_; ++a)
    if (n_[a] != o.n_[a] || len_[a] != o.len_[a]) return false;
  return true;
}

const Spectral& Grid::spectral() const {
  if (!spectral_) spectral_ = std::make_unique<Spectral>(*this);
  return *spectral_;
}

Spectral::Spectral(const Grid& g) : g_(g), np_(g.points()) {
  const double tau = 2.0 * std::numbers::pi;
  for (int a = 0; a < g.dim(); ++a) {
    int n = g.n(a);
    freq_[a].resize(n);
    k_[a].resize(n);
    for (int i = 0; i < n; ++i) {
      int f = i <= n / 2 ? i : i - n;
      freq_[a][i] = f;
      k_[a][i] = tau / g.length(a) * f;
    }
  }
  mask_.assign(np_, 1);
  for (long p = 0; p < np_; ++p) {
    int idx[3];
    if (g.dim() == 2) {
      idx[0] = static_cast<int>(p / g.n(1));
      idx[1] = static_cast<int>(p % g.n(1));
      idx[2] = 0;
    } else {
      idx[2] = static_cast<int>(p % g.n(2));
      long q = p / g.n(2);
      idx[1] = static_cast<int>(q % g.n(1));
      idx[0] = static_cast<int>(q / g.n(1));
    }
    for (int a = 0; a < g.dim(); ++a)
      if (std::abs(freq_[a][idx[a]]) > g.n(a) / 3) mask_[p] = 0;
  }
  buf_.resize(np_);
  auto* raw = reinterpret_cast<fftw_complex*>(buf_.data());
  if (g.dim() == 2) {
    plan_fwd_ = fftw_plan_dft_2d(g.n(0), g.n(1), raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_2d(g.n(0), g.n(1), raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  } else {
    plan_fwd_ = fftw_plan_dft_3d(g.n(0), g.n(1), g.n(2), raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_3d(g.n(0), g.n(1), g.n(2), raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
}

Spectral::~Spectral() {
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void Spectral::forward(const double* in) const {
  for (long p = 0; p < np_; ++p) buf_[p] = in[p];
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
}

void Spectral::backward(double* out) const {
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  const double scale = 1.0 / static_cast<double>(np_);
  for (long p = 0; p < np_; ++p) out[p] = buf_[p].real() * scale;
}

void Spectral::derivative(const double* in, double* out, int axis) const {
  forward(in);
  const std::complex<double> I(0.0, 1.0);
  const int nyq = g_.n(axis) / 2;
  for (long p = 0; p < np_; ++p) {
    int i;
    if (g_.dim() == 2) {
      i = axis == 0 ? static_cast<int>(p / g_.n(1)) : static_cast<int>(p % g_.n(1));
    } else {
      if (axis == 2) i = static_cast<int>(p % g_.n(2));
      else if (axis == 1) i = static_cast<int>((p / g_.n(2)) % g_.n(1));
      else i = static_cast<int>(p / (static_cast<long>(g_.n(1)) * g_.n(2)));
    }
    // The Nyquist mode has no well-defined odd derivative; drop it.
    buf_[p] *= (freq_[axis][i] == nyq) ? 0.0 : I * k_[axis][i];
  }
  backward(out);
}

void Spectral::truncate(double* f) const {
  forward(f);
  for (long p = 0; p < np_; ++p)
    if (!mask_[p]) buf_[p] = 0.0;
  backward(f);
}

void Spectral::leray(std::array<double*, 3> comp) const {
  const int d = g_.dim();
  std::vector<std::vector<std::complex<double>>> hat(d);
  for (int c = 0; c < d; ++c) {
    forward(comp[c]);
    hat[c].assign(buf_.begin(), buf_.end());
  }
  for (long p = 0; p < np_; ++p) {
    double k[3] = {0, 0, 0};
    if (d == 2) {
      k[0] = k_[0][p / g_.n(1)];
      k[1] = k_[1][p % g_.n(1)];
    } else {
      k[2] = k_[2][p % g_.n(2)];
      long q = p / g_.n(2);
      k[1] = k_[1][q % g_.n(1)];
      k[0] = k_[0][q / g_.n(1)];
    }
    double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if (k2 == 0.0) continue;  // mean flow is divergence-free
    std::complex<double> kv = 0.0;
    for (int c = 0; c < d; ++c) kv += k[c] * hat[c][p];
    kv /= k2;
    for (int c = 0; c < d; ++c) hat[c][p] -= k[c] * kv;
  }
  for (int c = 0; c < d; ++c) {
    std::copy(hat[c].begin(), hat[c].end(), buf_.begin());
    backward(comp[c]);
  }
}

void Spectral::invert_minus_laplacian(double* f) const {
  forward(f);
  for (long p = 0; p < np_; ++p) {
    double k2 = 0.0;
    if (g_.dim() == 2) {
      double ka = k_[0][p / g_.n(1)], kb = k_[1][p % g_.n(1)];
      k2 = ka * ka + kb * kb;
    } else {
      double kc = k_[2][p % g_.n(2)];
      long q = p / g_.n(2);
      double kb = k_[1][q % g_.n(1)];
      double ka = k_[0][q / g_.n(1)];
      k2 = ka * ka + kb * kb + kc * kc;
    }
    if (k2 > 0.0) buf_[p] /= k2;
  }
  backward(f);
}

std::vector<std::complex<double>> Spectral::coefficients(const double* f) const {
  forward(f);
  std::vector<std::complex<double>> out(buf_.begin(), buf_.end());
  const double scale = 1.0 / static_cast<double>(np_);
  for (auto& c : out) c *= scale;
  return out;
}

}  // namespace eym::forms
