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

// Discrete repeated-interaction dynamics: each kick couples the system to a
// fresh atom through the same Floquet unitary V, after which the atom is
// traced out.

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qkick/errors.hpp"
#include "qkick/matops.hpp"
#include "qkick/model.hpp"

namespace qkick {

// Diagonal atom preparation p1 s+s- + p0 s-s+ = diag(p0, p1).
struct AtomStateSpec {
  double p0 = 1.0;
  double p1 = 0.0;

  static AtomStateSpec vacuum() { return {1.0, 0.0}; }

  void validate() const {
    if (!(p0 >= 0.0 && p1 >= 0.0)) throw ValidationError("AtomStateSpec: p0 and p1 must be nonnegative");
    if (std::abs(p0 + p1 - 1.0) > 1e-12) throw ValidationError("AtomStateSpec: p0 + p1 must equal 1");
  }

  Matrix density() const {
    validate();
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = p0;
    m(1, 1) = p1;
    return m;
  }
};

struct Trajectory {
  double tau = 0.0;
  std::vector<double> times;
  std::vector<Matrix> states;
  std::map<std::string, double> metadata;
  std::vector<std::string> warnings;

  const Matrix& final_state() const { return states.back(); }
};

// floor(t / tau) with a relative guard so t = 1, tau = 0.02 gives 50.
inline std::size_t kick_count(double t, double tau) {
  require_positive_tau(tau, "kick_count");
  if (!(t >= 0.0)) throw ValidationError("kick_count: time must be >= 0");
  return static_cast<std::size_t>(std::floor(t / tau + 1e-9));
}

// rho -> Tr_atom[V (rho x atom) V^dag]
inline Matrix collision_step(const Matrix& rho, const Matrix& v, const Matrix& atom) {
  if (!is_square(rho) || !is_square(atom) || v.rows() != rho.rows() * atom.rows() || !is_square(v))
    throw ValidationError("collision_step: dim(V) must equal dim(rho) * dim(atom)");
  if (!is_density(rho, 1e-6)) throw ValidationError("collision_step: rho is not a density matrix");
  return hermitian_part(partial_trace_last(v * kron(rho, atom) * v.adjoint(), atom.rows()));
}

inline Matrix collision_step(const Matrix& rho, const Matrix& v, const AtomStateSpec& atom) {
  return collision_step(rho, v, atom.density());
}

// X -> Tr_atom[(1 x atom) V^dag (X x 1) V]
inline Matrix heisenberg_step(const Matrix& x, const Matrix& v, const Matrix& atom) {
  if (!is_square(x) || !is_square(atom) || v.rows() != x.rows() * atom.rows() || !is_square(v))
    throw ValidationError("heisenberg_step: dim(V) must equal dim(X) * dim(atom)");
  const Matrix lifted = kron(identity(x.rows()), atom) * v.adjoint() * kron(x, identity(atom.rows())) * v;
  return partial_trace_last(lifted, atom.rows());
}

inline Matrix heisenberg_step(const Matrix& x, const Matrix& v, const AtomStateSpec& atom) {
  return heisenberg_step(x, v, atom.density());
}

inline void check_trajectory_state(const Matrix& rho, std::size_t step) {
  const double trace_error = std::abs(rho.trace() - cplx(1.0));
  if (trace_error > 1e-10)
    throw InvariantViolation("trace preservation at step " + std::to_string(step), trace_error);
  const double lowest = min_eigenvalue(rho, 1.0);
  if (lowest < -1e-9) throw InvariantViolation("positivity at step " + std::to_string(step), -lowest);
}

// Applies `steps` kicks with a fixed V and atom preparation. States are kept
// every `stride` kicks; the last state is always kept.
inline Trajectory iterate_kicks(const Matrix& v, const Matrix& atom, const Matrix& rho0, double tau, std::size_t steps,
                                std::size_t stride = 1) {
  if (stride == 0) throw ValidationError("stride must be >= 1");
  if (!is_density(rho0, 1e-6)) throw ValidationError("rho0 is not a density matrix");
  Trajectory traj;
  traj.tau = tau;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);
  Matrix rho = rho0;
  for (std::size_t k = 1; k <= steps; ++k) {
    rho = collision_step(rho, v, atom);
    check_trajectory_state(rho, k);
    if (k % stride == 0 || k == steps) {
      traj.times.push_back(static_cast<double>(k) * tau);
      traj.states.push_back(rho);
    }
  }
  traj.metadata["tau"] = tau;
  traj.metadata["steps"] = static_cast<double>(steps);
  traj.metadata["dim"] = static_cast<double>(rho0.rows());
  return traj;
}

inline Trajectory simulate(const HamiltonianBlocks& blocks, double tau, double t_final, const Matrix& rho0,
                           const AtomStateSpec& atom, std::size_t stride = 1) {
  if (rho0.rows() != blocks.dim()) throw ValidationError("simulate: rho0 dimension does not match the blocks");
  const std::size_t steps = kick_count(t_final, tau);
  Trajectory traj = iterate_kicks(floquet(blocks, tau), atom.density(), rho0, tau, steps, stride);
  traj.metadata["p0"] = atom.p0;
  traj.metadata["p1"] = atom.p1;
  return traj;
}

// ---------------------------------------------------------------------------
// Doubled representation of a thermal atom
// ---------------------------------------------------------------------------

// s^+ = sqrt(p0) s+ x 1 + sqrt(p1) s_z x s- on C^2 x C^2. With the pure state
// e0 x e0 its moments reproduce those of s+ in the state diag(p0, p1).
inline Matrix doubled_raising(const AtomStateSpec& atom) {
  atom.validate();
  return std::sqrt(atom.p0) * kron(AtomAlgebra::sigma_plus(), identity(2)) +
         std::sqrt(atom.p1) * kron(AtomAlgebra::sigma_z(), AtomAlgebra::sigma_minus());
}

inline Matrix doubled_floquet(const HamiltonianBlocks& blocks, const AtomStateSpec& atom, double tau) {
  require_positive_tau(tau, "doubled_floquet");
  if (blocks.scattering().norm() > 0.0)
    throw ValidationError("simulate_doubled: requires H11 = 0 (Gaussian atoms)");
  const Matrix raise = doubled_raising(atom);
  const double root = std::sqrt(tau);
  const Matrix h = kron(blocks.raising(), raise) / root + kron(blocks.lowering(), Matrix(raise.adjoint())) / root +
                   kron(blocks.free(), identity(4));
  return expm(-kI * tau * h);
}

inline Trajectory simulate_doubled(const HamiltonianBlocks& blocks, double tau, double t_final, const Matrix& rho0,
                                   const AtomStateSpec& atom, std::size_t stride = 1) {
  if (rho0.rows() != blocks.dim()) throw ValidationError("simulate_doubled: rho0 dimension does not match the blocks");
  const Matrix v = doubled_floquet(blocks, atom, tau);
  Matrix vacuum = Matrix::Zero(4, 4);
  vacuum(0, 0) = 1.0;
  Trajectory traj = iterate_kicks(v, vacuum, rho0, tau, kick_count(t_final, tau), stride);
  traj.metadata["p0"] = atom.p0;
  traj.metadata["p1"] = atom.p1;
  return traj;
}

// ---------------------------------------------------------------------------
// Coherent atoms with excitation probability gamma^2 tau
// ---------------------------------------------------------------------------

// Atom preparation |e~0><e~0| for the rotated basis with p1 = gamma^2 tau.
// Only spec.theta and spec.gamma are read.
inline Matrix asymptotic_atom_state(const RotationSpec& spec, double tau) {
  require_positive_tau(tau, "asymptotic_atom_state");
  const double p1 = spec.gamma * spec.gamma * tau;
  if (p1 > 1.0) throw ValidationError("simulate_asymptotic: gamma^2 tau must be <= 1");
  const Matrix r = rotation_matrix(RotationSpec{1.0 - p1, p1, spec.theta, spec.gamma});
  return r.col(0) * r.col(0).adjoint();
}

inline Trajectory simulate_asymptotic(const HamiltonianBlocks& blocks, const RotationSpec& spec, double tau,
                                      double t_final, const Matrix& rho0, std::size_t stride = 1) {
  if (rho0.rows() != blocks.dim())
    throw ValidationError("simulate_asymptotic: rho0 dimension does not match the blocks");
  const Matrix atom = asymptotic_atom_state(spec, tau);
  Trajectory traj = iterate_kicks(floquet(blocks, tau), atom, rho0, tau, kick_count(t_final, tau), stride);
  traj.metadata["p1"] = spec.gamma * spec.gamma * tau;
  traj.metadata["gamma"] = spec.gamma;
  return traj;
}

}  // namespace qkick
