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

#include "eym/lie.hpp"

#include <cmath>

namespace eym::lie {

namespace {

const std::complex<double> I(0.0, 1.0);

std::vector<Matrix> pauli_basis() {
  // T_a = -(i/2) sigma_a, so [T_a, T_b] = eps_abc T_c and tr(T_a T_b^+) = delta_ab / 2.
  Matrix s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  return {-0.5 * I * s1, -0.5 * I * s2, -0.5 * I * s3};
}

std::vector<Matrix> gellmann_basis() {
  // T_a = -(i/2) lambda_a; [T_a, T_b] = f_abc T_c with the standard f.
  std::vector<Matrix> l(8, Matrix::Zero(3, 3));
  l[0] << 0, 1, 0, 1, 0, 0, 0, 0, 0;
  l[1] << 0, -I, 0, I, 0, 0, 0, 0, 0;
  l[2] << 1, 0, 0, 0, -1, 0, 0, 0, 0;
  l[3] << 0, 0, 1, 0, 0, 0, 1, 0, 0;
  l[4] << 0, 0, -I, 0, 0, 0, I, 0, 0;
  l[5] << 0, 0, 0, 0, 0, 1, 0, 1, 0;
  l[6] << 0, 0, 0, 0, 0, -I, 0, I, 0;
  const double r3 = 1.0 / std::sqrt(3.0);
  l[7] << r3, 0, 0, 0, r3, 0, 0, 0, -2.0 * r3;
  std::vector<Matrix> t;
  t.reserve(8);
  for (const auto& m : l) t.push_back(-0.5 * I * m);
  return t;
}

}  // namespace

Matrix matrix_exp(const Matrix& x) {
  // Scale so the series converges fast, then square back.
  double norm = x.cwiseAbs().maxCoeff() * x.rows();
  int squarings = 0;
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  Matrix xs = x / std::pow(2.0, squarings);
  Matrix term = Matrix::Identity(x.rows(), x.cols());
  Matrix sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = (term * xs) / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

std::shared_ptr<const LieAlgebra> LieAlgebra::make(const std::string& name) {
  auto alg = std::shared_ptr<LieAlgebra>(new LieAlgebra());
  alg->name_ = name;
  if (name == "u1") {
    alg->n_ = 1;
    alg->rep_dim_ = 1;
    alg->basis_ = {Matrix::Constant(1, 1, I)};
  } else if (name == "su2") {
    alg->n_ = 3;
    alg->rep_dim_ = 2;
    alg->basis_ = pauli_basis();
  } else if (name == "su3") {
    alg->n_ = 8;
    alg->rep_dim_ = 3;
    alg->basis_ = gellmann_basis();
  } else {
    throw std::invalid_argument("unknown Lie algebra: " + name);
  }

  const int n = alg->n_;
  alg->gram_.resize(n);
  for (int a = 0; a < n; ++a)
    alg->gram_[a] =
        (alg->basis_[a] * alg->basis_[a].adjoint()).trace().real();

  // Structure constants from the representation commutators; the bases above
  // make gamma the identity and the constants totally antisymmetric.
  alg->structure_.assign(static_cast<size_t>(n) * n * n, 0.0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Matrix comm = alg->basis_[a] * alg->basis_[b] -
                    alg->basis_[b] * alg->basis_[a];
      for (int c = 0; c < n; ++c) {
        double coef =
            (comm * alg->basis_[c].adjoint()).trace().real() / alg->gram_[c];
        if (std::abs(coef) < 1e-14) coef = 0.0;
        alg->structure_[(a * n + b) * n + c] = coef;
        if (coef != 0.0) alg->sparse_.push_back({a, b, c, coef});
      }
    }
  }
  return alg;
}

LieVector LieAlgebra::bracket(const LieVector& xi, const LieVector& eta) const {
  check_dim(xi);
  check_dim(eta);
  LieVector out(n_, 0.0);
  for (const auto& e : sparse_) out[e.c] += e.coef * xi[e.a] * eta[e.b];
  return out;
}

double LieAlgebra::inner(const LieVector& xi, const LieVector& eta) const {
  check_dim(xi);
  check_dim(eta);
  double s = 0.0;
  for (int a = 0; a < n_; ++a) s += xi[a] * eta[a];
  return s;
}

Matrix LieAlgebra::to_matrix(const LieVector& xi) const {
  check_dim(xi);
  Matrix m = Matrix::Zero(rep_dim_, rep_dim_);
  for (int a = 0; a < n_; ++a) m += xi[a] * basis_[a];
  return m;
}

LieVector LieAlgebra::from_matrix(const Matrix& x) const {
  LieVector out(n_);
  for (int a = 0; a < n_; ++a)
    out[a] = (x * basis_[a].adjoint()).trace().real() / gram_[a];
  return out;
}

GroupElement LieAlgebra::exp(const LieVector& xi, double t) const {
  return GroupElement{matrix_exp(to_matrix(xi) * t)};
}

LieVector LieAlgebra::ad_action(const GroupElement& g, const LieVector& xi) const {
  return from_matrix(g.m * to_matrix(xi) * g.m.inverse());
}

bool LieAlgebra::is_group_element(const GroupElement& g, double tol) const {
  if (g.m.rows() != rep_dim_ || g.m.cols() != rep_dim_) return false;
  Matrix should_be_id = g.m * g.m.adjoint();
  if ((should_be_id - Matrix::Identity(rep_dim_, rep_dim_)).cwiseAbs().maxCoeff() > tol)
    return false;
  std::complex<double> det = g.m.determinant();
  if (name_ == "u1") return std::abs(std::abs(det) - 1.0) <= tol;
  return std::abs(det - 1.0) <= tol;
}

}  // namespace eym::lie
