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

#ifndef EYM_GFORM_HPP
#define EYM_GFORM_HPP

#include <memory>
#include <vector>

#include "eym/grid.hpp"
#include "eym/lie.hpp"

namespace eym::forms {

using eym::lie::LieAlgebra;

// Independent components of a degree-k form: C(d,k).
int form_components(int dim, int degree);

// Slot of the (i,j) component of a 2-form (i != j); sign is -1 when the
// stored order is (j,i).
int pair_slot(int dim, int i, int j, double& sign);

/// Lie-algebra-valued differential k-form sampled on a periodic grid.
/// Storage is component-major: data[(c * n_lie + a) * points + p].
/// Velocity fields and plain scalars are the u1 special case.
class GForm {
 public:
  GForm() = default;
  GForm(std::shared_ptr<const Grid> grid, int degree,
        std::shared_ptr<const LieAlgebra> alg);

  const Grid& grid() const { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }
  const LieAlgebra& algebra() const { return *alg_; }
  const std::shared_ptr<const LieAlgebra>& algebra_ptr() const { return alg_; }
  int degree() const { return degree_; }
  int ncomp() const { return ncomp_; }
  int nlie() const { return alg_->dim(); }
  long points() const { return grid_->points(); }

  double* comp(int c, int a) {
    return data_.data() + (static_cast<long>(c) * nlie() + a) * points();
  }
  const double* comp(int c, int a) const {
    return data_.data() + (static_cast<long>(c) * nlie() + a) * points();
  }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  GForm& operator+=(const GForm& o);
  GForm& operator-=(const GForm& o);
  GForm& operator*=(double a);
  // this += a * o
  void axpy(double a, const GForm& o);
  void set_zero();

  bool finite() const;
  double linf() const;

  // Shape checks; throw std::invalid_argument on mismatch.
  void require_like(const GForm& o) const;
  void require_grid(const GForm& o) const;

 private:
  std::shared_ptr<const Grid> grid_;
  std::shared_ptr<const LieAlgebra> alg_;
  int degree_ = 0;
  int ncomp_ = 0;
  std::vector<double> data_;
};

}  // namespace eym::forms

#endif  // EYM_GFORM_HPP
