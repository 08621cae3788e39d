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

// Ito coefficients of the limiting quantum stochastic differential equation
//
//   dU = (L00 dt + L10 dA+ + L01 dA- + L11 dLambda) U
//
// and their relation to the kick Hamiltonian blocks H_ab.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qkick/errors.hpp"
#include "qkick/matops.hpp"
#include "qkick/model.hpp"
#include "qkick/superoperator.hpp"

namespace qkick {

struct ItoCoefficients {
  Matrix drift;         // L00, dt
  Matrix annihilation;  // L01, dA-
  Matrix creation;      // L10, dA+
  Matrix scattering;    // L11, dLambda

  static ItoCoefficients zero(Eigen::Index d) {
    return {Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d), Matrix::Zero(d, d)};
  }

  Eigen::Index dim() const { return drift.rows(); }

  const Matrix& at(int alpha, int beta) const {
    if (alpha == 0 && beta == 0) return drift;
    if (alpha == 0 && beta == 1) return annihilation;
    if (alpha == 1 && beta == 0) return creation;
    if (alpha == 1 && beta == 1) return scattering;
    throw ValidationError("ItoCoefficients::at: indices must be 0 or 1");
  }
};

// Residuals of the three relations that make the solution unitary:
//   W = 1 + L11 unitary,  L01 = -L10^dag W,  L00 + L00^dag + L10^dag L10 = 0.
struct UnitarityResiduals {
  double scattering_unitary = 0.0;
  double annihilation_relation = 0.0;
  double drift_relation = 0.0;

  double max() const { return std::max({scattering_unitary, annihilation_relation, drift_relation}); }
};

inline UnitarityResiduals unitarity_residuals(const ItoCoefficients& l) {
  const Eigen::Index d = l.dim();
  const Matrix w = identity(d) + l.scattering;
  return {residual_norm(w.adjoint() * w - identity(d)),
          residual_norm(l.annihilation + l.creation.adjoint() * w),
          residual_norm(l.drift + l.drift.adjoint() + l.creation.adjoint() * l.creation)};
}

//   L11 = e^{-iH11} - 1
//   L10 = phi1(H11) H10
//   L01 = H01 phi1(H11)
//   L00 = -i H00 + H01 phi2(H11) H10
inline ItoCoefficients ito_from_holevo(const HamiltonianBlocks& blocks) {
  const Eigen::Index d = blocks.dim();
  const Matrix& h11 = blocks.scattering();
  const EigenSystem es = herm_eig(h11);
  const auto through = [&](SpectralKind kind) {
    Vector f(d);
    for (Eigen::Index k = 0; k < d; ++k) f(k) = spectral_scalar(kind, es.values(k));
    return Matrix(es.vectors * f.asDiagonal() * es.vectors.adjoint());
  };
  Vector phases(d);
  for (Eigen::Index k = 0; k < d; ++k) phases(k) = std::exp(-kI * es.values(k));
  const Matrix w = es.vectors * phases.asDiagonal() * es.vectors.adjoint();
  const Matrix p1 = through(SpectralKind::phi1);
  const Matrix p2 = through(SpectralKind::phi2);

  ItoCoefficients l;
  l.scattering = w - identity(d);
  l.creation = p1 * blocks.raising();
  l.annihilation = blocks.lowering() * p1;
  l.drift = -kI * blocks.free() + blocks.lowering() * p2 * blocks.raising();
  return l;
}

// H = H00 - H01 g(H11) H10 with g(x) = (x - sin x) / x^2.
inline Matrix effective_hamiltonian(const HamiltonianBlocks& blocks) {
  const Matrix g = spectral_fun(blocks.scattering(), SpectralKind::g);
  return hermitian_part(blocks.free() - blocks.lowering() * g * blocks.raising());
}

struct UnitarityDecomposition {
  Matrix scattering_unitary;  // W
  Matrix coupling;            // L
  Matrix hamiltonian;         // H
};

// W = 1 + L11, L = L10, H = i (L00 + L10^dag L10 / 2).
inline UnitarityDecomposition unitarity_decomposition(const ItoCoefficients& l, double tol = 1e-8) {
  const UnitarityResiduals r = unitarity_residuals(l);
  if (r.scattering_unitary > tol) throw InvariantViolation("W = 1 + L11 unitary", r.scattering_unitary);
  if (r.annihilation_relation > tol) throw InvariantViolation("L01 = -L10^dag W", r.annihilation_relation);
  if (r.drift_relation > tol) throw InvariantViolation("L00 + L00^dag + L10^dag L10 = 0", r.drift_relation);
  const Eigen::Index d = l.dim();
  const Matrix h = kI * (l.drift + 0.5 * l.creation.adjoint() * l.creation);
  const double skew = residual_norm(h - h.adjoint());
  if (skew > tol) throw InvariantViolation("H = H^dag", skew);
  return {identity(d) + l.scattering, l.creation, hermitian_part(h)};
}

// Inverse of ito_from_holevo. H11 = i Log(W) with eigenphases of W in
// (-pi, pi); the branch cut at pi is rejected within `branch_tol`. Only L11,
// L10 and L00 are read; the drift relation shows up as Hermiticity of H00.
inline HamiltonianBlocks holevo_from_ito(const ItoCoefficients& l, double branch_tol = 1e-6, double tol = 1e-8) {
  const Eigen::Index d = l.dim();
  const double unitary_residual = unitarity_residuals(l).scattering_unitary;
  if (unitary_residual > tol) throw InvariantViolation("W = 1 + L11 unitary", unitary_residual);

  const Matrix w = identity(d) + l.scattering;
  const Matrix one_plus_w = identity(d) + w;
  // Singular values of 1 + W are 2|cos(phi/2)|, phi the eigenphases of W.
  const double gap = std::sqrt(std::max(0.0, herm_eigenvalues(hermitian_part(one_plus_w.adjoint() * one_plus_w), 1.0)(0)));
  if (gap < 2.0 * std::sin(branch_tol / 2.0))
    throw BranchError("holevo_from_ito: W has an eigenphase within " + std::to_string(branch_tol) +
                      " of pi; the matrix logarithm is ambiguous there");

  // Cayley transform K = i (1 - W)(1 + W)^{-1} is Hermitian with eigenvalues
  // tan(phi/2) and shares the eigenvectors of W.
  const Matrix cayley = kI * (identity(d) - w) * one_plus_w.inverse();
  const EigenSystem es = herm_eig(hermitian_part(cayley), 1.0);
  Vector h11_values(d), inv_phi1(d), phi2(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double x = -2.0 * std::atan(es.values(k));  // eigenvalue of H11
    h11_values(k) = x;
    inv_phi1(k) = 1.0 / spectral_scalar(SpectralKind::phi1, x);
    phi2(k) = spectral_scalar(SpectralKind::phi2, x);
  }
  const Matrix& u = es.vectors;
  const Matrix h11 = hermitian_part(u * h11_values.asDiagonal() * u.adjoint());
  const Matrix h10 = u * inv_phi1.asDiagonal() * u.adjoint() * l.creation;
  const Matrix h01 = h10.adjoint();
  const Matrix h00 = kI * (l.drift - h01 * (u * phi2.asDiagonal() * u.adjoint()) * h10);
  const double skew = residual_norm(h00 - h00.adjoint());
  if (skew > tol * std::max(1.0, h00.norm()))
    throw InvariantViolation("L00 + L00^dag + L10^dag L10 = 0 (H00 = H00^dag)", skew);
  return {hermitian_part(h00), h10, h11};
}

// Reads the coefficients off one Floquet unitary through its atom blocks
// V_ab = (1 x <e_a|) V (1 x |e_b>):
//   L11 ~ V_11 - 1,  L10 ~ V_10 / sqrt(tau),  L01 ~ V_01 / sqrt(tau),  L00 ~ (V_00 - 1) / tau.
inline ItoCoefficients extract_coefficients(const Matrix& v, double tau) {
  require_positive_tau(tau, "extract_coefficients");
  if (!is_square(v) || v.rows() % 2 != 0)
    throw ValidationError("extract_coefficients: V must be square with even dimension");
  const Eigen::Index d = v.rows() / 2;
  const double root = std::sqrt(tau);
  ItoCoefficients l;
  l.scattering = trailing_block(v, 2, 1, 1) - identity(d);
  l.creation = trailing_block(v, 2, 1, 0) / root;
  l.annihilation = trailing_block(v, 2, 0, 1) / root;
  l.drift = (trailing_block(v, 2, 0, 0) - identity(d)) / tau;
  return l;
}

// Spectral-norm distance per block, ordered (00, 01, 10, 11).
inline std::array<double, 4> coefficient_errors(const ItoCoefficients& a, const ItoCoefficients& b) {
  return {spectral_norm(a.drift - b.drift), spectral_norm(a.annihilation - b.annihilation),
          spectral_norm(a.creation - b.creation), spectral_norm(a.scattering - b.scattering)};
}

// Heisenberg generator 1/2 [L^dag, X] L + 1/2 L^dag [X, L] - i [X, H] of the
// reduced semigroup, with (L, H) from the unitarity decomposition.
inline Superoperator lindblad_generator(const ItoCoefficients& l, double tol = 1e-8) {
  const UnitarityDecomposition u = unitarity_decomposition(l, tol);
  return heisenberg_lindbladian(u.hamiltonian, {u.coupling});
}

// X -> L_{beta alpha}^dag X + X L_{alpha beta} + L_{1 alpha}^dag X L_{1 beta}
inline Superoperator generator_table(const ItoCoefficients& l, int alpha, int beta) {
  if (alpha < 0 || alpha > 1 || beta < 0 || beta > 1)
    throw ValidationError("generator_table: indices must be 0 or 1");
  const Matrix id = identity(l.dim());
  return Superoperator::sandwich(l.at(beta, alpha).adjoint(), id) + Superoperator::sandwich(id, l.at(alpha, beta)) +
         Superoperator::sandwich(l.at(1, alpha).adjoint(), l.at(1, beta));
}

// Heisenberg generator for thermal atoms (H11 = 0):
//   -i[X, H00] + p0 (H01 X H10 - {H01 H10, X}/2) + p1 (H10 X H01 - {H10 H01, X}/2).
inline Superoperator thermal_generator(const Matrix& free, const Matrix& raising, double p0, double p1) {
  if (!(p0 >= 0.0 && p1 >= 0.0) || std::abs(p0 + p1 - 1.0) > 1e-12)
    throw ValidationError("thermal_generator: p0, p1 must be nonnegative with p0 + p1 = 1");
  if (!is_hermitian(free, 1e-10 * std::max(1.0, free.norm())))
    throw ValidationError("thermal_generator: H00 is not Hermitian");
  return heisenberg_lindbladian(hermitian_part(free),
                                {-kI * std::sqrt(p0) * raising, -kI * std::sqrt(p1) * raising.adjoint()});
}

}  // namespace qkick
