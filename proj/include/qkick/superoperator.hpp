// Copyright 2026 The qkick Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Linear maps on d x d operators as d^2 x d^2 matrices acting on
// column-stacked operators: vec(X) stacks the columns of X left to right, so
// vec(A X B) = (B^T kron A) vec(X).

#include <utility>
#include <vector>

#include "qkick/matops.hpp"

namespace qkick {

inline Vector vec(const Matrix& x) { return Eigen::Map<const Vector>(x.data(), x.size()); }

inline Matrix unvec(const Vector& v, Eigen::Index d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

struct Superoperator {
  Eigen::Index dim = 0;
  Matrix matrix;

  Superoperator() = default;
  Superoperator(Eigen::Index d, Matrix m) : dim(d), matrix(std::move(m)) {
    if (matrix.rows() != d * d || matrix.cols() != d * d)
      throw ValidationError("Superoperator: matrix must be d^2 x d^2");
  }

  static Superoperator identity(Eigen::Index d) { return {d, qkick::identity(d * d)}; }
  static Superoperator zero(Eigen::Index d) { return {d, Matrix::Zero(d * d, d * d)}; }

  // X -> A X B
  static Superoperator sandwich(const Matrix& a, const Matrix& b) { return {a.rows(), kron(b.transpose(), a)}; }

  // Tabulates an arbitrary linear map from its action on matrix units E_ij.
  template <class F>
  static Superoperator from_map(Eigen::Index d, F&& map) {
    Matrix m(d * d, d * d);
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) {
        Matrix unit = Matrix::Zero(d, d);
        unit(i, j) = 1.0;
        m.col(i + j * d) = vec(map(unit));
      }
    return {d, std::move(m)};
  }

  Matrix apply(const Matrix& x) const {
    if (x.rows() != dim || x.cols() != dim) throw ValidationError("Superoperator::apply: dimension mismatch");
    return unvec(matrix * vec(x), dim);
  }

  Superoperator operator+(const Superoperator& o) const { return {dim, matrix + o.matrix}; }
  Superoperator operator-(const Superoperator& o) const { return {dim, matrix - o.matrix}; }
  Superoperator operator*(const Superoperator& o) const { return {dim, matrix * o.matrix}; }
  Superoperator operator*(cplx s) const { return {dim, s * matrix}; }
};

// Heisenberg-picture Lindblad generator
//   X -> i[H, X] + sum_k (J_k^dag X J_k - 1/2 {J_k^dag J_k, X}).
inline Superoperator heisenberg_lindbladian(const Matrix& hamiltonian, const std::vector<Matrix>& jumps) {
  const Eigen::Index d = hamiltonian.rows();
  const Matrix id = identity(d);
  Superoperator out = Superoperator::sandwich(kI * hamiltonian, id) + Superoperator::sandwich(id, -kI * hamiltonian);
  for (const Matrix& j : jumps) {
    const Matrix jdj = j.adjoint() * j;
    out = out + Superoperator::sandwich(j.adjoint(), j) + Superoperator::sandwich(-0.5 * jdj, id) +
          Superoperator::sandwich(id, -0.5 * jdj);
  }
  return out;
}

}  // namespace qkick
