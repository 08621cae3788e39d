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

// Continuous-time reference dynamics for the kicked model: Schrodinger duals
// of the Heisenberg generators, RK4 master-equation integration, exact
// semigroups and the discrete-vs-continuous comparison.

#include <algorithm>
#include <cmath>
#include <string>

#include "qkick/coefficients.hpp"
#include "qkick/collision.hpp"
#include "qkick/random.hpp"
#include "qkick/superoperator.hpp"

namespace qkick {

// Trace-pairing adjoint: tr(S*(rho) X) = tr(rho S(X)). With P the
// vec-transpose permutation this is P S^T P.
inline Superoperator adjoint_superoperator(const Superoperator& s) {
  const Eigen::Index d = s.dim;
  const auto swap = [d](Eigen::Index k) { return (k / d) + (k % d) * d; };
  Matrix m(d * d, d * d);
  for (Eigen::Index b = 0; b < d * d; ++b)
    for (Eigen::Index a = 0; a < d * d; ++a) m(a, b) = s.matrix(swap(b), swap(a));
  return {d, std::move(m)};
}

inline Superoperator semigroup_map(const Superoperator& s, double t) {
  if (!(t >= 0.0)) throw ValidationError("semigroup_map: t must be >= 0");
  return {s.dim, expm(t * s.matrix)};
}

// Sum_ij E_ij x S(E_ij).
inline Matrix choi_matrix(const Superoperator& s) {
  const Eigen::Index d = s.dim;
  Matrix c = Matrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      Matrix unit = Matrix::Zero(d, d);
      unit(i, j) = 1.0;
      c.block(i * d, j * d, d, d) = s.apply(unit);
    }
  return c;
}

inline bool is_completely_positive(const Superoperator& s, double tol = 1e-8) {
  return min_eigenvalue(choi_matrix(s), 1e-8) >= -tol;
}

inline double superoperator_norm(const Superoperator& s) { return spectral_norm(s.matrix); }

struct MasterEquationSetup {
  Superoperator generator;  // Schrodinger picture
  double dt = 1e-3;

  Eigen::Index dim() const { return generator.dim; }

  static MasterEquationSetup from_heisenberg(const Superoperator& heisenberg, double dt = 1e-3) {
    MasterEquationSetup setup{adjoint_superoperator(heisenberg), dt};
    setup.validate();
    return setup;
  }

  void validate() const {
    if (!(dt > 0.0)) throw ValidationError("MasterEquationSetup: dt must be > 0");
    const Eigen::Index d = dim();
    const double unital = residual_norm(adjoint_superoperator(generator).apply(identity(d)));
    if (unital > 1e-10) throw InvariantViolation("dual generator annihilates the identity", unital);
    SplitMix64 rng(0x5eedULL);
    const Matrix probe = random_hermitian(rng, d, 1.0);
    const Matrix image = generator.apply(probe);
    const double skew = residual_norm(image - image.adjoint());
    if (skew > 1e-12 * std::max(1.0, generator.matrix.norm()))
      throw InvariantViolation("generator preserves Hermiticity", skew);
  }
};

// Classical RK4 with a fixed step, shrunk so the last step lands on t_final.
inline Trajectory evolve_master(const MasterEquationSetup& setup, const Matrix& rho0, double t_final,
                                std::size_t stride = 1) {
  const Eigen::Index d = setup.dim();
  if (rho0.rows() != d || !is_density(rho0, 1e-8)) throw ValidationError("evolve_master: rho0 is not a density matrix");
  if (!(t_final >= 0.0)) throw ValidationError("evolve_master: t_final must be >= 0");
  if (stride == 0) throw ValidationError("evolve_master: stride must be >= 1");

  const std::size_t steps =
      t_final == 0.0 ? 0 : static_cast<std::size_t>(std::max(1.0, std::ceil(t_final / setup.dt - 1e-9)));
  const double h = steps == 0 ? 0.0 : t_final / static_cast<double>(steps);

  Trajectory traj;
  traj.tau = h;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);
  const double stiffness = superoperator_norm(setup.generator) * h;
  traj.metadata["stiffness"] = stiffness;
  if (stiffness > 0.1)
    traj.warnings.push_back("evolve_master: ||generator|| * dt = " + std::to_string(stiffness) + " exceeds 0.1");

  const Matrix& g = setup.generator.matrix;
  Vector y = vec(rho0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const Vector k1 = g * y;
    const Vector k2 = g * (y + 0.5 * h * k1);
    const Vector k3 = g * (y + 0.5 * h * k2);
    const Vector k4 = g * (y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (k % stride == 0 || k == steps) {
      traj.times.push_back(static_cast<double>(k) * h);
      traj.states.push_back(unvec(y, d));
    }
  }
  traj.metadata["dt"] = h;
  traj.metadata["steps"] = static_cast<double>(steps);
  return traj;
}

// Heisenberg one-kick map X -> Tr_atom[(1 x atom) V^dag (X x 1) V].
inline Superoperator kick_map(const Matrix& v, const Matrix& atom) {
  const Eigen::Index d = v.rows() / atom.rows();
  return Superoperator::from_map(d, [&](const Matrix& x) { return heisenberg_step(x, v, atom); });
}

inline Superoperator power(const Superoperator& s, std::size_t n) {
  Superoperator result = Superoperator::identity(s.dim);
  Superoperator base = s;
  while (n > 0) {
    if (n & 1U) result = result * base;
    base = base * base;
    n >>= 1U;
  }
  return result;
}

// || (one-kick map)^n - exp(n tau L00) || with vacuum atoms and n = floor(t / tau).
inline double discrete_vs_semigroup(const HamiltonianBlocks& blocks, double tau, double t) {
  const std::size_t n = kick_count(t, tau);
  const Superoperator kicks = power(kick_map(floquet(blocks, tau), AtomStateSpec::vacuum().density()), n);
  const Superoperator limit = semigroup_map(lindblad_generator(ito_from_holevo(blocks)), static_cast<double>(n) * tau);
  return superoperator_norm(kicks - limit);
}

// Null vector of a Schrodinger generator, normalised to unit trace.
inline Matrix stationary_state(const Superoperator& schrodinger) {
  const Matrix gram = schrodinger.matrix.adjoint() * schrodinger.matrix;
  const EigenSystem es = herm_eig(hermitian_part(gram), 1.0);
  Matrix rho = unvec(es.vectors.col(0), schrodinger.dim);
  rho /= rho.trace();
  return hermitian_part(rho);
}

}  // namespace qkick
