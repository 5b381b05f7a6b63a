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

#ifndef EYM_LIE_HPP
#define EYM_LIE_HPP

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace eym::lie {

using Matrix = Eigen::MatrixXcd;

/// Coefficients of a Lie-algebra element in the orthonormal basis of its
/// algebra. Plain value type; the owning LieAlgebra fixes the meaning.
using LieVector = std::vector<double>;

/// A group element in the defining (matrix) representation.
struct GroupElement {
  Matrix m;
};

struct StructureEntry {
  int a, b, c;
  double coef;  // coefficient of [e_a, e_b] along e_c
};

/// Finite-dimensional compact Lie algebra with an orthonormal Ad-invariant
/// inner product. Supported: u1, su2 (Pauli basis), su3 (Gell-Mann basis,
/// rescaled so gamma is the identity). Immutable after construction.
class LieAlgebra {
 public:
  static std::shared_ptr<const LieAlgebra> make(const std::string& name);

  const std::string& name() const { return name_; }
  int dim() const { return n_; }
  int rep_dim() const { return rep_dim_; }
  bool abelian() const { return name_ == "u1"; }

  // c^c_{ab}, dense accessor; sparse entries for hot loops.
  double structure(int a, int b, int c) const {
    return structure_[(a * n_ + b) * n_ + c];
  }
  const std::vector<StructureEntry>& structure_sparse() const {
    return sparse_;
  }

  const Matrix& basis_matrix(int a) const { return basis_[a]; }

  // [xi, eta] in basis coefficients.
  LieVector bracket(const LieVector& xi, const LieVector& eta) const;

  // gamma(xi, eta); the basis is orthonormal so this is the dot product.
  double inner(const LieVector& xi, const LieVector& eta) const;

  // Matrix of the algebra element Sum_a xi^a T_a.
  Matrix to_matrix(const LieVector& xi) const;

  // Orthogonal projection of a rep matrix onto the algebra basis.
  LieVector from_matrix(const Matrix& x) const;

  // exp(t xi) in the defining representation.
  GroupElement exp(const LieVector& xi, double t) const;

  // Ad_g xi, computed as g xi g^{-1} in the representation and projected
  // back to basis coefficients.
  LieVector ad_action(const GroupElement& g, const LieVector& xi) const;

  // Unitarity / determinant checks for a candidate group element.
  bool is_group_element(const GroupElement& g, double tol = 1e-10) const;

  void check_dim(const LieVector& xi) const {
    if (static_cast<int>(xi.size()) != n_)
      throw std::invalid_argument("LieVector dimension mismatch for " + name_);
  }

 private:
  LieAlgebra() = default;

  std::string name_;
  int n_ = 0;
  int rep_dim_ = 0;
  std::vector<double> structure_;       // n^3 dense
  std::vector<StructureEntry> sparse_;  // nonzero entries only
  std::vector<Matrix> basis_;           // T_a, anti-Hermitian
  std::vector<double> gram_;            // tr(T_a T_a^dagger)
};

// Matrix exponential by scaling-and-squaring with a truncated series.
Matrix matrix_exp(const Matrix& x);

// The gamma-dual of the coadjoint action: in an orthonormal basis with
// Ad-invariant gamma, the transpose of ad_xi is -ad_xi, i.e. the dual pairing
// identifies ad^*_xi with -bracket(xi, .). Stated here once; callers use
// bracket() with the sign written out.

}  // namespace eym::lie

#endif  // EYM_LIE_HPP
