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

// Finite-chain realisations of the collective creation, annihilation and
// number operators built from one two-level atom per time slot of width tau.
// Site k (1-based) is the k-th tensor factor, so it owns bit n - k of a basis
// index; index 0 is the all-ground vacuum.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "qkick/collision.hpp"
#include "qkick/errors.hpp"
#include "qkick/matops.hpp"

namespace qkick {

inline constexpr int kMaxChainSites = 12;

enum class ChainKind { creation, annihilation, number };

inline const char* to_string(ChainKind kind) {
  switch (kind) {
    case ChainKind::creation: return "A+";
    case ChainKind::annihilation: return "A-";
    case ChainKind::number: return "Lambda";
  }
  return "?";
}

using SparseMatrix = Eigen::SparseMatrix<cplx>;

struct ChainOperator {
  int n_sites = 0;
  Matrix matrix;
  std::string label;

  Eigen::Index dim() const { return matrix.rows(); }
  SparseMatrix sparse() const { return matrix.sparseView(); }
};

inline Eigen::Index chain_dim(int n_sites) {
  if (n_sites < 1 || n_sites > kMaxChainSites)
    throw ValidationError("chain length must be in [1, " + std::to_string(kMaxChainSites) + "]");
  return Eigen::Index{1} << n_sites;
}

inline Vector chain_vacuum(int n_sites) {
  Vector v = Vector::Zero(chain_dim(n_sites));
  v(0) = 1.0;
  return v;
}

// Weighted single-site sum  sum_k w_k op_k  for op in {s+, s-, s+s-}.
inline SparseMatrix chain_sum(ChainKind kind, std::span<const cplx> weights, int n_sites) {
  const Eigen::Index dim = chain_dim(n_sites);
  if (weights.size() > static_cast<std::size_t>(n_sites))
    throw ValidationError("chain too short: " + std::to_string(weights.size()) + " slots on " +
                          std::to_string(n_sites) + " sites");
  std::vector<Eigen::Triplet<cplx>> entries;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] == cplx(0.0)) continue;
    const Eigen::Index bit = Eigen::Index{1} << (n_sites - 1 - static_cast<int>(k));
    for (Eigen::Index b = 0; b < dim; ++b) {
      const bool excited = (b & bit) != 0;
      switch (kind) {
        case ChainKind::creation:
          if (!excited) entries.emplace_back(b | bit, b, weights[k]);
          break;
        case ChainKind::annihilation:
          if (excited) entries.emplace_back(b & ~bit, b, weights[k]);
          break;
        case ChainKind::number:
          if (excited) entries.emplace_back(b, b, weights[k]);
          break;
      }
    }
  }
  SparseMatrix m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

// A+(f) = sqrt(tau) sum f(k tau) s+_k,  A-(f) = sqrt(tau) sum conj f(k tau) s-_k,
// Lambda(f) = sum f(k tau) s+_k s-_k, with samples[k - 1] = f(k tau).
inline ChainOperator build_smeared(ChainKind kind, std::span<const cplx> samples, double tau, int n_sites) {
  require_positive_tau(tau, "build_smeared");
  std::vector<cplx> weights(samples.begin(), samples.end());
  for (cplx& w : weights) {
    if (kind == ChainKind::annihilation) w = std::conj(w);
    if (kind != ChainKind::number) w *= std::sqrt(tau);
  }
  return {n_sites, Matrix(chain_sum(kind, weights, n_sites)),
          std::string(to_string(kind)) + "(f;" + std::to_string(tau) + ")"};
}

inline ChainOperator build_collective(ChainKind kind, double t, double tau, int n_sites) {
  const std::vector<cplx> ones(kick_count(t, tau), cplx(1.0));
  ChainOperator op = build_smeared(kind, ones, tau, n_sites);
  op.label = std::string(to_string(kind)) + "(" + std::to_string(t) + ";" + std::to_string(tau) + ")";
  return op;
}

// Residuals (Frobenius, hence bounds on the spectral norm) of
//   [A-(t), A+(s)] = tau floor(t^s / tau) - 2 tau Lambda(t^s)
//   [Lambda(t), A+(s)] = A+(t^s)
//   [A-(t), Lambda(s)] = A-(t^s)
inline std::array<double, 3> check_commutators(double t, double s, double tau, int n_sites) {
  const double m = std::min(t, s);
  const auto sp = [&](ChainKind kind, double time) { return build_collective(kind, time, tau, n_sites).sparse(); };
  const SparseMatrix am_t = sp(ChainKind::annihilation, t), ap_s = sp(ChainKind::creation, s);
  const SparseMatrix lam_t = sp(ChainKind::number, t), lam_s = sp(ChainKind::number, s);
  const SparseMatrix lam_m = sp(ChainKind::number, m);
  const double count = tau * static_cast<double>(kick_count(m, tau));

  SparseMatrix scalar(am_t.rows(), am_t.cols());
  scalar.setIdentity();
  scalar *= count;

  const SparseMatrix r1 = SparseMatrix(am_t * ap_s) - SparseMatrix(ap_s * am_t) - (scalar - 2.0 * tau * lam_m);
  const SparseMatrix r2 = SparseMatrix(lam_t * ap_s) - SparseMatrix(ap_s * lam_t) - sp(ChainKind::creation, m);
  const SparseMatrix r3 = SparseMatrix(am_t * lam_s) - SparseMatrix(lam_s * am_t) - sp(ChainKind::annihilation, m);
  return {r1.norm(), r2.norm(), r3.norm()};
}

// <vac| A-(t) A+(s) |vac>
inline cplx vacuum_second_moment(double t, double s, double tau, int n_sites) {
  const Vector vac = chain_vacuum(n_sites);
  const Vector right = build_collective(ChainKind::creation, s, tau, n_sites).sparse() * vac;
  return vac.dot(build_collective(ChainKind::annihilation, t, tau, n_sites).sparse() * right);
}

// ---------------------------------------------------------------------------
// Single-site increments dA^{ab} = tau (s+/sqrt tau)^a (s-/sqrt tau)^b
// ---------------------------------------------------------------------------

inline Matrix increment(int alpha, int beta, double tau) {
  require_positive_tau(tau, "increment");
  if ((alpha != 0 && alpha != 1) || (beta != 0 && beta != 1)) throw ValidationError("increment indices must be 0 or 1");
  // Prefactor tau^{(2 - a - b) / 2} taken directly so products round exactly.
  const int order = alpha + beta;
  const double scale = order == 0 ? tau : order == 1 ? std::sqrt(tau) : 1.0;
  Matrix m = identity(2);
  if (alpha == 1) m = m * AtomAlgebra::sigma_plus();
  if (beta == 1) m = m * AtomAlgebra::sigma_minus();
  return scale * m;
}

// Coefficients of a 2x2 operator in the basis {dA11, dA10, dA01, dA00}.
struct IncrementDecomposition {
  std::array<cplx, 4> c{};  // order 11, 10, 01, 00

  cplx at(int alpha, int beta) const { return c[static_cast<std::size_t>(3 - (2 * alpha + beta))]; }

  Matrix reconstruct(double tau) const {
    return c[0] * increment(1, 1, tau) + c[1] * increment(1, 0, tau) + c[2] * increment(0, 1, tau) +
           c[3] * increment(0, 0, tau);
  }
};

inline IncrementDecomposition decompose_increment(const Matrix& p, double tau) {
  if (p.rows() != 2 || p.cols() != 2) throw ValidationError("decompose_increment: expected a 2x2 matrix");
  require_positive_tau(tau, "decompose_increment");
  // p = a s+s- + b s+ + c s- + e 1
  const cplx e = p(0, 0), a = p(1, 1) - p(0, 0), b = p(1, 0), c = p(0, 1);
  const double root = std::sqrt(tau);
  return {{a, b / root, c / root, e / tau}};
}

inline IncrementDecomposition discrete_ito_product(int alpha, int beta, int mu, int nu, double tau) {
  return decompose_increment(increment(alpha, beta, tau) * increment(mu, nu, tau), tau);
}

// ---------------------------------------------------------------------------
// Ordered exponential vacuum moments
//   <vac| prod_j exp{i Lambda(T_j) + i A+(phi_j) + i A-(psi_j)} |vac>
// ---------------------------------------------------------------------------

struct FieldTriple {
  std::function<cplx(double)> number;      // T
  std::function<cplx(double)> creation;    // phi
  std::function<cplx(double)> annihilation;  // psi
};

namespace detail {

inline Matrix site_exponent(const FieldTriple& f, double time, double tau) {
  const double root = std::sqrt(tau);
  return f.number(time) * AtomAlgebra::number() + root * f.creation(time) * AtomAlgebra::sigma_plus() +
         root * std::conj(f.annihilation(time)) * AtomAlgebra::sigma_minus();
}

}  // namespace detail

// Exponents are sums of single-site terms, so each factor is a tensor product
// over sites and the moment is a product of 2x2 vacuum elements.
inline cplx ordered_moment(std::span<const FieldTriple> fields, double tau, std::size_t sites) {
  require_positive_tau(tau, "ordered_moment");
  cplx total = 1.0;
  for (std::size_t k = 1; k <= sites; ++k) {
    const double time = static_cast<double>(k) * tau;
    Matrix site = identity(2);
    for (const FieldTriple& f : fields) site = site * expm(kI * detail::site_exponent(f, time, tau));
    total *= site(0, 0);
  }
  return total;
}

// Same moment through dense chain exponentials; limited to short chains.
inline cplx ordered_moment_dense(std::span<const FieldTriple> fields, double tau, int n_sites) {
  require_positive_tau(tau, "ordered_moment_dense");
  const Vector vac = chain_vacuum(n_sites);
  Vector state = vac;
  // Apply the rightmost factor first.
  for (auto it = fields.rbegin(); it != fields.rend(); ++it) {
    std::vector<cplx> t(n_sites), phi(n_sites), psi(n_sites);
    for (int k = 1; k <= n_sites; ++k) {
      const double time = static_cast<double>(k) * tau;
      t[k - 1] = it->number(time);
      phi[k - 1] = it->creation(time);
      psi[k - 1] = it->annihilation(time);
    }
    const Matrix exponent = build_smeared(ChainKind::number, t, tau, n_sites).matrix +
                            build_smeared(ChainKind::creation, phi, tau, n_sites).matrix +
                            build_smeared(ChainKind::annihilation, psi, tau, n_sites).matrix;
    state = expm(kI * exponent) * state;
  }
  return vac.dot(state);
}

}  // namespace qkick
