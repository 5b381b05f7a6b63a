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

#ifndef EYM_GRID_HPP
#define EYM_GRID_HPP

#include <array>
#include <complex>
#include <memory>
#include <vector>

namespace eym::forms {

class Spectral;

/// Flat periodic grid on [0,L_0) x ... x [0,L_{d-1}), d in {2,3}.
/// Points per axis must be powers of two, at least 8. Row-major storage,
/// last axis contiguous. `dealias` selects the 2/3-rule treatment of
/// pointwise products everywhere this grid is used.
class Grid : public std::enable_shared_from_this<Grid> {
 public:
  static std::shared_ptr<const Grid> make(int dim, std::array<int, 3> n,
                                          std::array<double, 3> lengths,
                                          bool dealias = true);
  // All lengths default to 2*pi.
  static std::shared_ptr<const Grid> make(int dim, std::array<int, 3> n,
                                          bool dealias = true);
  ~Grid();

  int dim() const { return dim_; }
  int n(int axis) const { return n_[axis]; }
  double length(int axis) const { return len_[axis]; }
  double spacing(int axis) const { return h_[axis]; }
  double min_spacing() const;
  long points() const { return np_; }
  double cell_volume() const { return mu_; }
  bool dealias() const { return dealias_; }

  // Flattened index of the lattice site (i0, i1[, i2]).
  long index(int i0, int i1, int i2 = 0) const {
    return dim_ == 2 ? static_cast<long>(i0) * n_[1] + i1
                     : (static_cast<long>(i0) * n_[1] + i1) * n_[2] + i2;
  }
  std::array<double, 3> coords(long p) const;

  bool same(const Grid& other) const;

  const Spectral& spectral() const;

 private:
  Grid() = default;
  int dim_ = 0;
  std::array<int, 3> n_{1, 1, 1};
  std::array<double, 3> len_{0, 0, 0};
  std::array<double, 3> h_{0, 0, 0};
  long np_ = 0;
  double mu_ = 0.0;
  bool dealias_ = true;
  mutable std::unique_ptr<Spectral> spectral_;
};

/// FFT workspace bound to one grid: spectral derivatives, 2/3-rule
/// truncation, Leray projection, Fourier coefficients for interpolation.
/// Plans and scratch are owned here; operations copy through the scratch
/// buffer, so a single instance is not safe for concurrent use.
class Spectral {
 public:
  explicit Spectral(const Grid& g);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  // out = d(in)/dx_axis, exact for band-limited input (Nyquist zeroed).
  void derivative(const double* in, double* out, int axis) const;

  // In-place 2/3-rule truncation.
  void truncate(double* f) const;

  // Remove the gradient part of a d-component vector field in place.
  void leray(std::array<double*, 3> comp) const;

  // In-place solve of -Laplace(u) = f; the mean is passed through unchanged.
  void invert_minus_laplacian(double* f) const;

  // Fourier coefficients normalized so f(x) = sum_k c_k exp(i k.x).
  std::vector<std::complex<double>> coefficients(const double* f) const;

  // Integer frequency of index i along axis (0..N/2, then negative).
  int freq(int axis, int i) const { return freq_[axis][i]; }
  double wavenumber(int axis, int i) const { return k_[axis][i]; }
  bool kept_by_dealias(long p) const { return mask_[p] != 0; }

 private:
  void forward(const double* in) const;
  void backward(double* out) const;

  const Grid& g_;
  long np_;
  std::array<std::vector<int>, 3> freq_;
  std::array<std::vector<double>, 3> k_;
  std::vector<unsigned char> mask_;
  mutable std::vector<std::complex<double>> buf_;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

}  // namespace eym::forms

#endif  // EYM_GRID_HPP
