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

// Seeded model generation. The generator is SplitMix64 so that models can be
// reproduced bit-for-bit from a seed in any language; the exact recipe is
// documented in INTERFACES.md.

#include <cmath>
#include <cstdint>

#include "qkick/matops.hpp"

namespace qkick {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // [-1, 1)
  double symmetric() { return 2.0 * uniform() - 1.0; }

 private:
  std::uint64_t state_;
};

// Entries filled column by column, real part drawn before imaginary part.
inline Matrix random_matrix(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = rng.symmetric();
      const double im = rng.symmetric();
      m(i, j) = cplx(re, im);
    }
  return m;
}

// Rescaled so that the spectral norm equals `norm` (unless the draw is zero).
inline Matrix random_general(SplitMix64& rng, Eigen::Index d, double norm) {
  Matrix m = random_matrix(rng, d, d);
  const double s = spectral_norm(m);
  return s > 0.0 ? Matrix(m * (norm / s)) : m;
}

inline Matrix random_hermitian(SplitMix64& rng, Eigen::Index d, double norm) {
  Matrix m = hermitian_part(random_matrix(rng, d, d));
  const double s = spectral_norm(m);
  return s > 0.0 ? Matrix(m * (norm / s)) : m;
}

inline Vector random_unit_vector(SplitMix64& rng, Eigen::Index d) {
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double re = rng.symmetric();
    const double im = rng.symmetric();
    v(i) = cplx(re, im);
  }
  return v / v.norm();
}

inline Matrix random_pure_state(SplitMix64& rng, Eigen::Index d) {
  const Vector v = random_unit_vector(rng, d);
  return v * v.adjoint();
}

// G G^dagger / tr(G G^dagger), full rank almost surely.
inline Matrix random_density(SplitMix64& rng, Eigen::Index d) {
  const Matrix g = random_matrix(rng, d, d);
  const Matrix rho = g * g.adjoint();
  return hermitian_part(rho / rho.trace().real());
}

}  // namespace qkick
