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

#include "eym/gform.hpp"

#include <cmath>
#include <stdexcept>

namespace eym::forms {

int form_components(int dim, int degree) {
  if (degree < 0 || degree > dim) throw std::invalid_argument("form degree out of range");
  if (degree == 0 || degree == dim) return degree == 0 ? 1 : (dim == 2 ? 1 : 1);
  if (degree == 1) return dim;
  return dim == 3 ? 3 : 1;  // degree 2
}

int pair_slot(int dim, int i, int j, double& sign) {
  if (i == j) throw std::invalid_argument("degenerate 2-form index pair");
  sign = 1.0;
  int a = i, b = j;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  if (dim == 2) return 0;  // only (0,1)
  if (a == 0) return b == 1 ? 0 : 1;
  return 2;  // (1,2)
}

GForm::GForm(std::shared_ptr<const Grid> grid, int degree,
             std::shared_ptr<const LieAlgebra> alg)
    : grid_(std::move(grid)), alg_(std::move(alg)), degree_(degree) {
  ncomp_ = form_components(grid_->dim(), degree);
  data_.assign(static_cast<long>(ncomp_) * alg_->dim() * grid_->points(), 0.0);
}

GForm& GForm::operator+=(const GForm& o) {
  require_like(o);
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

GForm& GForm::operator-=(const GForm& o) {
  require_like(o);
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

GForm& GForm::operator*=(double a) {
  for (double& x : data_) x *= a;
  return *this;
}

void GForm::axpy(double a, const GForm& o) {
  require_like(o);
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += a * o.data_[i];
}

void GForm::set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

bool GForm::finite() const {
  for (double x : data_)
    if (!std::isfinite(x)) return false;
  return true;
}

double GForm::linf() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

void GForm::require_like(const GForm& o) const {
  if (!grid_->same(*o.grid_) || degree_ != o.degree_ ||
      alg_->name() != o.alg_->name())
    throw std::invalid_argument("form shape mismatch");
}

void GForm::require_grid(const GForm& o) const {
  if (!grid_->same(*o.grid_)) throw std::invalid_argument("grid mismatch");
}

}  // namespace eym::forms
