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

// One function per subcommand. Each returns a CSV table: header row, data
// rows, then '#'-prefixed footer lines. Floats carry 17 significant digits.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qkick/cli/config.hpp"
#include "qkick/coefficients.hpp"
#include "qkick/collective.hpp"
#include "qkick/collision.hpp"
#include "qkick/estimates.hpp"
#include "qkick/fit.hpp"
#include "qkick/harness.hpp"
#include "qkick/lindblad.hpp"

namespace qkick::cli {

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string fmt(std::size_t n) { return std::to_string(n); }

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footer;

  void add_footer(const std::string& key, const std::string& value) { footer.push_back(key + "=" + value); }
  void add_footer(const std::string& key, double value) { add_footer(key, fmt(value)); }

  std::string str() const {
    std::ostringstream out;
    const auto line = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    for (const auto& f : footer) out << "# " << f << '\n';
    return out.str();
  }
};

using Command = std::function<CsvTable(const ModelConfig&)>;

namespace detail {

// Sweeps are emitted in ascending tau whatever the config order.
inline std::vector<double> require_sweep(const ModelConfig& cfg) {
  if (cfg.run.tau_list.size() < 3) throw ValidationError("config field 'run.tau_list': needs at least 3 values");
  std::vector<double> taus = cfg.run.tau_list;
  std::sort(taus.begin(), taus.end());
  if (std::adjacent_find(taus.begin(), taus.end()) != taus.end())
    throw ValidationError("config field 'run.tau_list': values must be distinct");
  return taus;
}

inline double require_tau(const ModelConfig& cfg) {
  if (!cfg.run.tau) throw ValidationError("config field 'run.tau': missing");
  return *cfg.run.tau;
}

// Fitted log-log slope, or "exact" when some value sits at round-off level.
inline std::string slope_or_exact(const std::vector<double>& taus, const std::vector<double>& ys) {
  for (double y : ys)
    if (!(y >= kRemainderFloor)) return "exact";
  return fmt(loglog_slope(taus, ys));
}

inline void add_matrix_rows(CsvTable& t, const std::string& label, const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      t.rows.push_back({label, fmt(static_cast<std::size_t>(r)), fmt(static_cast<std::size_t>(c)), fmt(m(r, c).real()),
                        fmt(m(r, c).imag())});
}

inline SeededModel gaussian_model(const ModelConfig& cfg) {
  ModelConfig copy = cfg;
  copy.gaussian = true;
  SeededModel model = realize(copy);
  if (model.blocks.scattering().norm() > 0.0) throw ValidationError("config field 'blocks.H11': must be zero here");
  return model;
}

inline double dt_for(const ModelConfig& cfg, const std::vector<double>& taus) {
  return cfg.run.dt.value_or(default_dt(taus));
}

}  // namespace detail

inline CsvTable cmd_coeffs(const ModelConfig& cfg) {
  const SeededModel model = realize(cfg);
  const ItoCoefficients l = ito_from_holevo(model.blocks);
  CsvTable t{{"block", "row", "col", "re", "im"}, {}, {}};
  detail::add_matrix_rows(t, "L00", l.drift);
  detail::add_matrix_rows(t, "L01", l.annihilation);
  detail::add_matrix_rows(t, "L10", l.creation);
  detail::add_matrix_rows(t, "L11", l.scattering);
  detail::add_matrix_rows(t, "H", effective_hamiltonian(model.blocks));
  const UnitarityResiduals r = unitarity_residuals(l);
  t.add_footer("residual_scattering_unitary", r.scattering_unitary);
  t.add_footer("residual_annihilation", r.annihilation_relation);
  t.add_footer("residual_drift", r.drift_relation);
  return t;
}

inline CsvTable cmd_simulate(const ModelConfig& cfg) {
  const SeededModel model = realize(cfg);
  const double tau = detail::require_tau(cfg);
  const Trajectory traj = simulate(model.blocks, tau, cfg.run.t_final, model.rho0, cfg.atom, cfg.run.stride);
  CsvTable t{{"step", "time", "trace", "min_eigenvalue", "purity"}, {}, {}};
  const Eigen::Index d = model.blocks.dim();
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) {
      t.header.push_back("re_" + std::to_string(r) + std::to_string(c));
      t.header.push_back("im_" + std::to_string(r) + std::to_string(c));
    }
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const Matrix& rho = traj.states[k];
    std::vector<std::string> row{fmt(static_cast<std::size_t>(std::llround(traj.times[k] / tau))), fmt(traj.times[k]),
                                 fmt(rho.trace().real()), fmt(min_eigenvalue(rho)), fmt((rho * rho).trace().real())};
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) {
        row.push_back(fmt(rho(r, c).real()));
        row.push_back(fmt(rho(r, c).imag()));
      }
    t.rows.push_back(std::move(row));
  }
  t.add_footer("tau", tau);
  t.add_footer("steps", fmt(kick_count(cfg.run.t_final, tau)));
  t.add_footer("p1", cfg.atom.p1);
  return t;
}

inline CsvTable cmd_converge(const ModelConfig& cfg) {
  const auto taus = detail::require_sweep(cfg);
  const SeededModel model = realize(cfg);
  const double dt = detail::dt_for(cfg, taus);
  const auto rows = vacuum_convergence(model.blocks, model.rho0, taus, cfg.run.t_final, dt);
  CsvTable t{{"tau", "steps", "trace_distance", "superop_gap", "coeff_error"}, {}, {}};
  std::vector<double> td, gap, coeff;
  for (const auto& r : rows) {
    t.rows.push_back({fmt(r.tau), fmt(r.steps), fmt(r.trace_distance), fmt(r.superop_gap), fmt(r.coeff_error)});
    td.push_back(r.trace_distance);
    gap.push_back(r.superop_gap);
    coeff.push_back(r.coeff_error);
  }
  t.add_footer("slope_trace_distance", detail::slope_or_exact(taus, td));
  t.add_footer("slope_superop_gap", detail::slope_or_exact(taus, gap));
  t.add_footer("slope_coeff_error", detail::slope_or_exact(taus, coeff));
  t.add_footer("dt", dt);
  return t;
}

inline CsvTable cmd_thermal(const ModelConfig& cfg) {
  const auto taus = detail::require_sweep(cfg);
  const SeededModel model = detail::gaussian_model(cfg);
  const double dt = detail::dt_for(cfg, taus);
  const auto rows = thermal_convergence(model.blocks, cfg.atom, model.rho0, taus, cfg.run.t_final, dt);
  CsvTable t{{"tau", "steps", "p1", "trace_distance"}, {}, {}};
  std::vector<double> td;
  for (const auto& r : rows) {
    t.rows.push_back({fmt(r.tau), fmt(r.steps), fmt(r.p1), fmt(r.trace_distance)});
    td.push_back(r.trace_distance);
  }
  t.add_footer("slope_trace_distance", detail::slope_or_exact(taus, td));
  t.add_footer("dt", dt);
  return t;
}

inline CsvTable cmd_doubled(const ModelConfig& cfg) {
  const SeededModel model = detail::gaussian_model(cfg);
  const double tau = detail::require_tau(cfg);
  const Trajectory mixed = simulate(model.blocks, tau, cfg.run.t_final, model.rho0, cfg.atom, cfg.run.stride);
  const Trajectory doubled =
      simulate_doubled(model.blocks, tau, cfg.run.t_final, model.rho0, cfg.atom, cfg.run.stride);
  CsvTable t{{"step", "time", "trace_distance"}, {}, {}};
  double worst = 0.0;
  for (std::size_t k = 0; k < mixed.states.size(); ++k) {
    const double dist = trace_distance(mixed.states[k], doubled.states[k]);
    worst = std::max(worst, dist);
    t.rows.push_back({fmt(static_cast<std::size_t>(std::llround(mixed.times[k] / tau))), fmt(mixed.times[k]), fmt(dist)});
  }
  const Matrix up = doubled_raising(cfg.atom);
  const Matrix down = up.adjoint();
  t.add_footer("max_discrepancy", worst);
  t.add_footer("anticommutator_residual", residual_norm(anticommutator(up, down) - identity(4)));
  t.add_footer("nilpotency_residual", std::max(residual_norm(up * up), residual_norm(down * down)));
  t.add_footer("vacuum_moment", (up * down)(0, 0).real());
  t.add_footer("p1", cfg.atom.p1);
  return t;
}

inline CsvTable cmd_asymptotic(const ModelConfig& cfg) {
  const auto taus = detail::require_sweep(cfg);
  const SeededModel model = realize(cfg);
  const double dt = detail::dt_for(cfg, taus);
  const auto rows = asymptotic_convergence(model.blocks, cfg.rotation, model.rho0, taus, cfg.run.t_final, dt);
  CsvTable t{{"tau", "steps", "p1", "trace_distance"}, {}, {}};
  std::vector<double> td;
  for (const auto& r : rows) {
    t.rows.push_back({fmt(r.tau), fmt(r.steps), fmt(r.p1), fmt(r.trace_distance)});
    td.push_back(r.trace_distance);
  }
  const double tau_min = *std::min_element(taus.begin(), taus.end());
  t.add_footer("rotation_identity_residual", rotation_identity_residual(model.blocks, cfg.rotation, tau_min));
  t.add_footer("slope_trace_distance", detail::slope_or_exact(taus, td));
  t.add_footer("dt", dt);
  return t;
}

inline CsvTable cmd_collective(const ModelConfig& cfg) {
  const CollectiveSettings& c = cfg.collective;
  CsvTable t{{"quantity", "value"}, {}, {}};
  const auto add = [&t](const std::string& name, double v) { t.rows.push_back({name, fmt(v)}); };
  add("norm_Aplus_t", build_collective(ChainKind::creation, c.t, c.tau, c.sites).matrix.norm());
  add("norm_Aminus_t", build_collective(ChainKind::annihilation, c.t, c.tau, c.sites).matrix.norm());
  add("norm_Lambda_t", build_collective(ChainKind::number, c.t, c.tau, c.sites).matrix.norm());
  const auto residuals = check_commutators(c.t, c.s, c.tau, c.sites);
  add("residual_Aminus_Aplus", residuals[0]);
  add("residual_Lambda_Aplus", residuals[1]);
  add("residual_Aminus_Lambda", residuals[2]);
  const double m = std::min(c.t, c.s);
  add("vacuum_second_moment", vacuum_second_moment(c.t, c.s, c.tau, c.sites).real());
  add("tau_floor_min", c.tau * static_cast<double>(kick_count(m, c.tau)));
  add("min_t_s", m);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const IncrementDecomposition d = discrete_ito_product(a, 1, 1, b, c.tau);
      double dev = 0.0;
      for (int g = 0; g < 2; ++g)
        for (int h = 0; h < 2; ++h) dev += std::norm(d.at(g, h) - cplx(g == a && h == b ? 1.0 : 0.0));
      add("ito_contraction_deviation_" + std::to_string(a) + std::to_string(b), std::sqrt(dev));
    }
  t.add_footer("sites", fmt(static_cast<std::size_t>(c.sites)));
  t.add_footer("tau", c.tau);
  return t;
}

inline CsvTable cmd_estimates(const ModelConfig& cfg) {
  const EstimateSettings& e = cfg.estimates;
  CsvTable t{{"quantity", "value"}, {}, {}};
  const auto add = [&t](const std::string& name, double v) { t.rows.push_back({name, fmt(v)}); };
  add("bound_series", bound_series(e.c, e.tau, e.series_order));
  add("bound_closed_form", bound_closed_form(e.c, e.tau));
  add("stirling_4_2", static_cast<double>(stirling2(4, 2)));
  add("bell_5", static_cast<double>(StirlingTable(5).bell(5)));

  SplitMix64 rng(cfg.run.seed);
  std::vector<HamiltonianBlocks> models;
  for (int k = 0; k < e.models; ++k) {
    SeededModel m = draw_model(rng, cfg.dim, cfg.model_norm, cfg.gaussian, cfg.closed);
    models.push_back(k == 0 && cfg.blocks ? *cfg.blocks : m.blocks);
  }
  for (int k = 0; k < e.models; ++k) {
    const HamiltonianBlocks& b = models[static_cast<std::size_t>(k)];
    const double c = b.max_norm();
    const std::string s = std::to_string(k);
    add("model_" + s + "_C", c);
    add("model_" + s + "_term_norm_sum", term_norm_sum(b, e.tau, e.word_length));
    add("model_" + s + "_term_bound", bound_closed_form(c, e.tau) + bound_tail(c, e.tau, e.word_length));
    add("model_" + s + "_heisenberg_series", heisenberg_double_series(b, identity(b.dim()), e.tau, e.heisenberg_length));
    add("model_" + s + "_heisenberg_bound", std::exp(2.0 * e.tau * std::expm1(c)));
  }
  const std::vector<double> taus{1e-2, 5e-3, 2.5e-3};
  const RemainderReport rem = remainder_order(models.front(), taus);
  const char* names[] = {"00", "01", "10", "11"};
  for (std::size_t b = 0; b < 4; ++b)
    t.add_footer(std::string("remainder_slope_") + names[b], rem.slopes[b] ? fmt(*rem.slopes[b]) : "exact");
  t.add_footer("tau", e.tau);
  return t;
}

inline const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{
      {"coeffs", cmd_coeffs},       {"simulate", cmd_simulate},     {"converge", cmd_converge},
      {"thermal", cmd_thermal},     {"doubled", cmd_doubled},       {"asymptotic", cmd_asymptotic},
      {"collective", cmd_collective}, {"estimates", cmd_estimates},
  };
  return table;
}

}  // namespace qkick::cli
