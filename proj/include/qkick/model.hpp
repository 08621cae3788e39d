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

// Two-level atom algebra and the kick Hamiltonian
//
//   H = (1/tau) H11 x s+s- + (1/sqrt tau) H10 x s+ + (1/sqrt tau) H01 x s- + H00 x 1
//
// on system x atom (system factor left, atom basis (e0, e1)).

#include <array>
#include <cmath>
#include <string>

#include "qkick/errors.hpp"
#include "qkick/matops.hpp"

namespace qkick {

struct AtomAlgebra {
  // |e1><e0|
  static Matrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
  }
  static Matrix sigma_minus() { return sigma_plus().adjoint(); }
  // s+ s- = |e1><e1|
  static Matrix number() { return sigma_plus() * sigma_minus(); }
  // 2 s+ s- - 1 = diag(-1, 1)
  static Matrix sigma_z() { return 2.0 * number() - identity(2); }
};

// The four system operators of one kick. Only H00, H10 and H11 are stored;
// H01 is always H10^dagger.
class HamiltonianBlocks {
 public:
  HamiltonianBlocks(Matrix free, Matrix raising, Matrix scattering, double tol = 1e-10)
      : free_(std::move(free)), raising_(std::move(raising)), scattering_(std::move(scattering)) {
    const Eigen::Index d = free_.rows();
    if (!is_square(free_) || !is_square(raising_) || !is_square(scattering_) || raising_.rows() != d ||
        scattering_.rows() != d)
      throw ValidationError("HamiltonianBlocks: H00, H10, H11 must be square with equal dimension");
    if (!all_finite(free_) || !all_finite(raising_) || !all_finite(scattering_))
      throw ValidationError("HamiltonianBlocks: non-finite entry");
    if (!is_hermitian(free_, tol * std::max(1.0, free_.norm())))
      throw ValidationError("HamiltonianBlocks: H00 is not Hermitian");
    if (!is_hermitian(scattering_, tol * std::max(1.0, scattering_.norm())))
      throw ValidationError("HamiltonianBlocks: H11 is not Hermitian");
    free_ = hermitian_part(free_);
    scattering_ = hermitian_part(scattering_);
  }

  static HamiltonianBlocks zero(Eigen::Index d) {
    return {Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d)};
  }

  Eigen::Index dim() const { return free_.rows(); }

  const Matrix& free() const { return free_; }              // H00
  const Matrix& raising() const { return raising_; }        // H10, paired with s+
  Matrix lowering() const { return raising_.adjoint(); }    // H01, paired with s-
  const Matrix& scattering() const { return scattering_; }  // H11, paired with s+s-

  Matrix block(int alpha, int beta) const {
    if (alpha == 0 && beta == 0) return free_;
    if (alpha == 1 && beta == 0) return raising_;
    if (alpha == 0 && beta == 1) return lowering();
    if (alpha == 1 && beta == 1) return scattering_;
    throw ValidationError("HamiltonianBlocks::block: indices must be 0 or 1");
  }

  // C = max ||H_ab|| (spectral norm).
  double max_norm() const {
    return std::max({spectral_norm(free_), spectral_norm(raising_), spectral_norm(scattering_)});
  }

 private:
  Matrix free_;
  Matrix raising_;
  Matrix scattering_;
};

inline void require_positive_tau(double tau, const char* where) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError(std::string(where) + ": tau must be > 0");
}

inline Matrix build_hamiltonian(const HamiltonianBlocks& blocks, double tau) {
  require_positive_tau(tau, "build_hamiltonian");
  const double root = std::sqrt(tau);
  return kron(blocks.scattering(), AtomAlgebra::number()) / tau +
         kron(blocks.raising(), AtomAlgebra::sigma_plus()) / root +
         kron(blocks.lowering(), AtomAlgebra::sigma_minus()) / root + kron(blocks.free(), identity(2));
}

// V = exp(-i tau H)
inline Matrix floquet(const HamiltonianBlocks& blocks, double tau) {
  return expm(-kI * tau * build_hamiltonian(blocks, tau));
}

// ---------------------------------------------------------------------------
// Rotated atom basis
// ---------------------------------------------------------------------------

struct RotationSpec {
  double p0 = 1.0;
  double p1 = 0.0;
  cplx theta = 1.0;
  double gamma = 0.0;

  static RotationSpec from_phase(double p0, double p1, double theta_phase, double gamma) {
    return {p0, p1, std::polar(1.0, theta_phase), gamma};
  }

  void validate() const {
    if (!(p0 >= 0.0 && p0 <= 1.0 && p1 >= 0.0 && p1 <= 1.0))
      throw ValidationError("RotationSpec: p0 and p1 must lie in [0, 1]");
    if (std::abs(p0 + p1 - 1.0) > 1e-12) throw ValidationError("RotationSpec: p0 + p1 must equal 1");
    if (std::abs(std::abs(theta) - 1.0) > 1e-12) throw ValidationError("RotationSpec: |theta| must equal 1");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ValidationError("RotationSpec: gamma must be >= 0");
  }
};

// Columns are the tilde basis in (e0, e1) coordinates:
//   e~0 = theta sqrt(p0) e0 + theta* sqrt(p1) e1
//   e~1 = -theta^3 sqrt(p1) e0 + theta sqrt(p0) e1
// e~1 is the unitary completion of e~0 whose e1 coefficient is theta sqrt(p0).
inline Matrix rotation_matrix(const RotationSpec& spec) {
  spec.validate();
  const double r0 = std::sqrt(spec.p0);
  const double r1 = std::sqrt(spec.p1);
  const cplx th = spec.theta;
  Matrix r(2, 2);
  r(0, 0) = th * r0;
  r(1, 0) = std::conj(th) * r1;
  r(0, 1) = -th * th * th * r1;
  r(1, 1) = th * r0;
  return r;
}

// Blocks of the same joint Hamiltonian written in the basis given by the
// columns of the 2x2 unitary `basis`: build_hamiltonian(blocks) equals
// (1 x R) build_hamiltonian(result) (1 x R^dagger).
inline HamiltonianBlocks rotate_blocks_by(const HamiltonianBlocks& blocks, const Matrix& basis, double tau) {
  require_positive_tau(tau, "rotate_blocks");
  if (basis.rows() != 2 || !is_unitary(basis, 1e-12))
    throw ValidationError("rotate_blocks: atom basis change must be a 2x2 unitary");
  const Eigen::Index d = blocks.dim();
  const Matrix lift = kron(identity(d), basis);
  const Matrix g = lift.adjoint() * build_hamiltonian(blocks, tau) * lift;
  const Matrix g00 = trailing_block(g, 2, 0, 0);
  const Matrix g10 = trailing_block(g, 2, 1, 0);
  const Matrix g11 = trailing_block(g, 2, 1, 1);
  return {hermitian_part(g00), std::sqrt(tau) * g10, hermitian_part(tau * (g11 - g00))};
}

inline HamiltonianBlocks rotate_blocks(const HamiltonianBlocks& blocks, const RotationSpec& spec, double tau) {
  return rotate_blocks_by(blocks, rotation_matrix(spec), tau);
}

// tau -> 0 limit of rotate_blocks with p1 = gamma^2 tau.
inline HamiltonianBlocks asymptotic_blocks(const HamiltonianBlocks& blocks, const RotationSpec& spec) {
  spec.validate();
  const cplx th2 = spec.theta * spec.theta;
  const double g = spec.gamma;
  const Matrix& h00 = blocks.free();
  const Matrix& h10 = blocks.raising();
  const Matrix h01 = blocks.lowering();
  const Matrix& h11 = blocks.scattering();
  Matrix free = h00 + (g * th2) * h10 + (g * std::conj(th2)) * h01 + (g * g) * h11;
  Matrix raising = h10 + (g * std::conj(th2)) * h11;
  return {hermitian_part(free), raising, h11};
}

}  // namespace qkick
