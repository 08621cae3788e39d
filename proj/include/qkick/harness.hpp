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

// tau-sweeps comparing kicked trajectories against their continuous limits.
// Each row is computed independently; rows come back in input order.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "qkick/coefficients.hpp"
#include "qkick/collision.hpp"
#include "qkick/lindblad.hpp"

namespace qkick {

struct ConvergenceRow {
  double tau = 0.0;
  std::size_t steps = 0;
  double p1 = 0.0;
  double trace_distance = 0.0;  // kicked vs limit state at t = steps * tau
  double superop_gap = 0.0;     // vacuum only: ||(one-kick map)^n - exp(n tau L00)||
  double coeff_error = 0.0;     // vacuum only: max block error of the extracted coefficients
};

inline double default_dt(std::span<const double> taus) {
  const double smallest = taus.empty() ? 1e-2 : *std::min_element(taus.begin(), taus.end());
  return std::min(1e-3, smallest / 10.0);
}

// Lindblad state at time t from a Heisenberg generator, by RK4.
inline Matrix limit_state(const Superoperator& heisenberg, const Matrix& rho0, double t, double dt) {
  return evolve_master(MasterEquationSetup::from_heisenberg(heisenberg, dt), rho0, t).final_state();
}

inline std::vector<ConvergenceRow> vacuum_convergence(const HamiltonianBlocks& blocks, const Matrix& rho0,
                                                      std::span<const double> taus, double t_final, double dt) {
  const ItoCoefficients exact = ito_from_holevo(blocks);
  const Superoperator generator = lindblad_generator(exact);
  std::vector<ConvergenceRow> rows;
  for (double tau : taus) {
    ConvergenceRow row;
    row.tau = tau;
    row.steps = kick_count(t_final, tau);
    const double t = static_cast<double>(row.steps) * tau;
    const Matrix kicked = simulate(blocks, tau, t_final, rho0, AtomStateSpec::vacuum()).final_state();
    row.trace_distance = trace_distance(kicked, limit_state(generator, rho0, t, dt));
    row.superop_gap = discrete_vs_semigroup(blocks, tau, t_final);
    const auto errors = coefficient_errors(extract_coefficients(floquet(blocks, tau), tau), exact);
    row.coeff_error = *std::max_element(errors.begin(), errors.end());
    rows.push_back(row);
  }
  return rows;
}

// Mixed atoms diag(p0, p1) against the thermal generator; requires H11 = 0.
inline std::vector<ConvergenceRow> thermal_convergence(const HamiltonianBlocks& blocks, const AtomStateSpec& atom,
                                                       const Matrix& rho0, std::span<const double> taus,
                                                       double t_final, double dt) {
  if (blocks.scattering().norm() > 0.0) throw ValidationError("thermal convergence requires H11 = 0");
  const Superoperator generator = thermal_generator(blocks.free(), blocks.raising(), atom.p0, atom.p1);
  std::vector<ConvergenceRow> rows;
  for (double tau : taus) {
    ConvergenceRow row;
    row.tau = tau;
    row.p1 = atom.p1;
    row.steps = kick_count(t_final, tau);
    const double t = static_cast<double>(row.steps) * tau;
    const Matrix kicked = simulate(blocks, tau, t_final, rho0, atom).final_state();
    row.trace_distance = trace_distance(kicked, limit_state(generator, rho0, t, dt));
    rows.push_back(row);
  }
  return rows;
}

// Coherent atoms with p1 = gamma^2 tau against the vacuum limit of the
// asymptotic blocks.
inline std::vector<ConvergenceRow> asymptotic_convergence(const HamiltonianBlocks& blocks, const RotationSpec& spec,
                                                          const Matrix& rho0, std::span<const double> taus,
                                                          double t_final, double dt) {
  const RotationSpec limit{1.0, 0.0, spec.theta, spec.gamma};
  const Superoperator generator = lindblad_generator(ito_from_holevo(asymptotic_blocks(blocks, limit)));
  std::vector<ConvergenceRow> rows;
  for (double tau : taus) {
    ConvergenceRow row;
    row.tau = tau;
    row.p1 = spec.gamma * spec.gamma * tau;
    row.steps = kick_count(t_final, tau);
    const double t = static_cast<double>(row.steps) * tau;
    const Matrix kicked = simulate_asymptotic(blocks, spec, tau, t_final, rho0).final_state();
    row.trace_distance = trace_distance(kicked, limit_state(generator, rho0, t, dt));
    rows.push_back(row);
  }
  return rows;
}

// Residual of (1 x R)^dag H (1 x R) against the Hamiltonian rebuilt from the
// rotated blocks.
inline double rotation_identity_residual(const HamiltonianBlocks& blocks, const RotationSpec& spec, double tau) {
  const Matrix r = kron(identity(blocks.dim()), rotation_matrix(spec));
  const Matrix conjugated = r.adjoint() * build_hamiltonian(blocks, tau) * r;
  return spectral_norm(conjugated - build_hamiltonian(rotate_blocks(blocks, spec, tau), tau));
}

}  // namespace qkick
