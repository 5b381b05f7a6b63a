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

#ifndef EYM_INTERP_HPP
#define EYM_INTERP_HPP

#include <array>
#include <complex>
#include <vector>

#include "eym/gform.hpp"

namespace eym::forms {

enum class InterpMethod { trig, cubic };

/// Off-grid evaluation of every (component, Lie) slot of one sampled form.
/// trig: exact trigonometric interpolation from the Fourier coefficients.
/// cubic: periodic Catmull-Rom, cheaper and local.
class FormSampler {
 public:
  FormSampler(const GForm& w, InterpMethod method = InterpMethod::trig);

  int nslots() const { return nslots_; }
  int ncomp() const { return ncomp_; }
  int nlie() const { return nlie_; }

  // out must hold nslots() values, ordered comp-major like GForm storage.
  void eval(const std::array<double, 3>& x, double* out) const;

  double eval_slot(const std::array<double, 3>& x, int comp, int lie) const;

 private:
  const Grid* grid_;
  InterpMethod method_;
  int ncomp_, nlie_, nslots_;
  // trig: per-slot Fourier coefficients; cubic: per-slot copy of the lattice.
  std::vector<std::vector<std::complex<double>>> hat_;
  std::vector<std::vector<double>> lattice_;
};

}  // namespace eym::forms

#endif  // EYM_INTERP_HPP
