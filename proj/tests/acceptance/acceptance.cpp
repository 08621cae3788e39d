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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qkick/cli/commands.hpp"
#include "qkick/coefficients.hpp"
#include "qkick/collective.hpp"
#include "qkick/collision.hpp"
#include "qkick/estimates.hpp"
#include "qkick/harness.hpp"
#include "qkick/lindblad.hpp"
#include "qkick/seeded.hpp"

using namespace qkick;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Report {
 public:
  void check(int id, const std::string& name, double time_limit, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit > 0.0 && seconds > time_limit) {
      out.pass = false;
      out.detail += "; over time limit";
    }
    std::printf("[%s] %2d %s: %s (%.3f s)\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), out.detail.c_str(),
                seconds);
    std::fflush(stdout);
    failures_ += out.pass ? 0 : 1;
  }

  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<SeededModel> seeded_models(std::uint64_t seed, int count, Eigen::Index d, bool gaussian = false,
                                       bool closed = false) {
  SplitMix64 rng(seed);
  std::vector<SeededModel> models;
  for (int k = 0; k < count; ++k) models.push_back(draw_model(rng, d, 1.0, gaussian, closed));
  return models;
}

// Every successive ratio column[i+1] / column[i] inside [lo, hi].
bool ratios_within(const std::vector<double>& column, double lo, double hi, double& worst_lo, double& worst_hi) {
  bool ok = true;
  for (std::size_t i = 1; i < column.size(); ++i) {
    const double r = column[i] / column[i - 1];
    worst_lo = std::min(worst_lo, r);
    worst_hi = std::max(worst_hi, r);
    ok = ok && r >= lo && r <= hi;
  }
  return ok;
}

const std::vector<double> kHalvingTaus{0.02, 0.01, 0.005, 0.0025};

}  // namespace

int main() {
  Report report;

  report.check(1, "coefficient correctness", 1.0, [] {
    double worst = 0.0;
    for (const auto& m : seeded_models(101, 20, 2)) worst = std::max(worst, unitarity_residuals(ito_from_holevo(m.blocks)).max());
    return Outcome{worst <= 1e-10, "max invariant residual " + sci(worst) + " over 20 models (tol 1e-10)"};
  });

  report.check(2, "two-form consistency", 0.0, [] {
    double worst = 0.0;
    for (const auto& m : seeded_models(101, 20, 2)) {
      const ItoCoefficients l = ito_from_holevo(m.blocks);
      const Matrix h = effective_hamiltonian(m.blocks);
      const Matrix expected = -kI * h - 0.5 * l.creation.adjoint() * l.creation;
      worst = std::max(worst, spectral_norm(l.drift - expected));
      worst = std::max(worst, spectral_norm(unitarity_decomposition(l).hamiltonian - h));
    }
    double g_min = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 2000; ++k) g_min = std::min(g_min, spectral_scalar(SpectralKind::g, k * 0.025).real());
    return Outcome{worst <= 1e-10 && g_min > 0.0,
                   "max residual " + sci(worst) + " (tol 1e-10); min g on (0, 50] = " + sci(g_min)};
  });

  report.check(3, "remainder order", 5.0, [] {
    const std::vector<double> taus{1e-2, 5e-3, 2.5e-3, 1.25e-3};
    double lo = 9.0, hi = -9.0;
    bool ok = true;
    for (const auto& m : seeded_models(303, 5, 2)) {
      const RemainderReport r = remainder_order(m.blocks, taus);
      for (const auto& s : r.slopes) {
        if (!s) {
          ok = false;
          continue;
        }
        lo = std::min(lo, *s);
        hi = std::max(hi, *s);
        ok = ok && std::abs(*s - 1.0) <= 0.3;
      }
    }
    return Outcome{ok, "per-block slopes in [" + sci(lo) + ", " + sci(hi) + "] (want 1 +/- 0.3) over 5 models"};
  });

  std::vector<std::vector<ConvergenceRow>> vacuum_rows;
  report.check(4, "vacuum limit", 30.0, [&] {
    double lo = 9.0, hi = -9.0;
    bool ok = true;
    for (const auto& m : seeded_models(404, 5, 2)) {
      vacuum_rows.push_back(vacuum_convergence(m.blocks, m.rho0, kHalvingTaus, 1.0, default_dt(kHalvingTaus)));
      std::vector<double> td;
      for (const auto& r : vacuum_rows.back()) td.push_back(r.trace_distance);
      ok = ratios_within(td, 0.4, 0.65, lo, hi) && ok;
    }
    return Outcome{ok, "trace-distance halving ratios in [" + sci(lo) + ", " + sci(hi) + "] (want [0.4, 0.65])"};
  });

  report.check(5, "semigroup identity", 0.0, [&] {
    double lo = 9.0, hi = -9.0;
    bool ok = !vacuum_rows.empty();
    for (const auto& rows : vacuum_rows) {
      std::vector<double> gap;
      for (const auto& r : rows) gap.push_back(r.superop_gap);
      ok = ratios_within(gap, 0.4, 0.65, lo, hi) && ok;
    }
    double closed = 0.0;
    for (const auto& m : seeded_models(505, 5, 2, false, true))
      for (double tau : kHalvingTaus) closed = std::max(closed, discrete_vs_semigroup(m.blocks, tau, 1.0));
    ok = ok && closed <= 1e-9;
    return Outcome{ok, "gap ratios in [" + sci(lo) + ", " + sci(hi) + "]; closed-system max gap " + sci(closed) +
                           " (tol 1e-9)"};
  });

  report.check(6, "thermal limit", 30.0, [] {
    double lo = 9.0, hi = -9.0;
    bool ok = true;
    for (double p1 : {0.2, 0.5})
      for (const auto& m : seeded_models(606, 5, 2, true)) {
        const auto rows = thermal_convergence(m.blocks, AtomStateSpec{1.0 - p1, p1}, m.rho0, kHalvingTaus, 1.0,
                                              default_dt(kHalvingTaus));
        std::vector<double> td;
        for (const auto& r : rows) td.push_back(r.trace_distance);
        ok = ratios_within(td, 0.4, 0.65, lo, hi) && ok;
      }
    return Outcome{ok, "ratios in [" + sci(lo) + ", " + sci(hi) + "] for p1 in {0.2, 0.5} (want [0.4, 0.65])"};
  });

  report.check(7, "doubling isomorphism", 0.0, [] {
    double worst = 0.0, algebra = 0.0;
    for (double p1 : {0.0, 0.2, 0.5, 0.9}) {
      const AtomStateSpec atom{1.0 - p1, p1};
      for (const auto& m : seeded_models(707, 3, 2, true)) {
        const double tau = 0.01;
        const Trajectory mixed = simulate(m.blocks, tau, 200 * tau, m.rho0, atom);
        const Trajectory doubled = simulate_doubled(m.blocks, tau, 200 * tau, m.rho0, atom);
        if (mixed.states.size() != 201 || doubled.states.size() != 201) return Outcome{false, "wrong step count"};
        for (std::size_t k = 0; k < mixed.states.size(); ++k)
          worst = std::max(worst, trace_distance(mixed.states[k], doubled.states[k]));
      }
      const Matrix up = doubled_raising(atom);
      const Matrix down = up.adjoint();
      algebra = std::max({algebra, residual_norm(anticommutator(up, down) - identity(4)), residual_norm(up * up),
                          residual_norm(down * down)});
    }
    return Outcome{worst <= 1e-10 && algebra <= 1e-15,
                   "max per-step distance " + sci(worst) + " (tol 1e-10); algebra residual " + sci(algebra)};
  });

  report.check(8, "collective algebra", 0.0, [] {
    double residual = 0.0, moment_error = 0.0, limit_error = 0.0;
    bool limit_ok = true;
    for (int n = 1; n <= 10; ++n) {
      const double tau = 0.1;
      const double horizon = n * tau;
      for (double t : {0.25 * horizon, 0.6 * horizon, horizon})
        for (double s : {0.1 * horizon, 0.5 * horizon, horizon}) {
          for (double r : check_commutators(t, s, tau, n)) residual = std::max(residual, r);
          const double m = std::min(t, s);
          const double moment = vacuum_second_moment(t, s, tau, n).real();
          moment_error = std::max(moment_error, std::abs(moment - tau * std::floor(m / tau + 1e-9)));
          limit_error = std::max(limit_error, std::abs(moment - m));
          limit_ok = limit_ok && std::abs(moment - m) <= tau;
        }
    }
    return Outcome{residual <= 1e-12 && moment_error <= 1e-15 && limit_ok,
                   "commutator residual " + sci(residual) + " (tol 1e-12); moment vs tau*floor " +
                       sci(moment_error) + "; |moment - min(t,s)| <= " + sci(limit_error) + " (<= tau)"};
  });

  report.check(9, "discrete Ito table", 0.0, [] {
    double reconstruction = 0.0, exact_cases = 0.0, corrected = 0.0;
    for (double tau : {0.1, 0.01, 0.001}) {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) {
              const Matrix p = increment(a, b, tau) * increment(c, d, tau);
              reconstruction =
                  std::max(reconstruction, residual_norm(discrete_ito_product(a, b, c, d, tau).reconstruct(tau) - p));
            }
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const IncrementDecomposition dec = discrete_ito_product(a, 1, 1, b, tau);
          IncrementDecomposition expected;
          expected.c[static_cast<std::size_t>(3 - (2 * a + b))] = 1.0;
          if (a == 0 && b == 0) expected.c[0] = -tau;  // dA01 dA10 = dA00 - tau dA11
          double dev = 0.0;
          for (std::size_t k = 0; k < 4; ++k) dev = std::max(dev, std::abs(dec.c[k] - expected.c[k]));
          double& slot = (a == 0 && b == 0) ? corrected : exact_cases;
          slot = std::max(slot, dev);
        }
    }
    return Outcome{reconstruction <= 1e-15 && exact_cases == 0.0 && corrected <= 1e-15,
                   "reconstruction " + sci(reconstruction) + "; contraction cases off by " + sci(exact_cases) +
                       "; (0,0) with -tau dA11 correction off by " + sci(corrected)};
  });

  report.check(10, "estimates", 0.0, [] {
    const double series = bound_series(1.0, 0.5, 30);
    const double closed = bound_closed_form(1.0, 0.5);
    const bool series_ok = std::abs(series - closed) <= 1e-8;
    const double tau = 0.5;
    const int words = 8, pairs = 6;
    double worst_term = 0.0, worst_heis = 0.0;
    int term_ok = 0, heis_ok = 0;
    for (const auto& m : seeded_models(1010, 5, 2)) {
      const double c = m.blocks.max_norm();
      const double term = term_norm_sum(m.blocks, tau, words);
      const double allowance = bound_closed_form(c, tau) + bound_tail(c, tau, words);
      const double heis = heisenberg_double_series(m.blocks, identity(2), tau, pairs);
      const double heis_bound = std::exp(2.0 * tau * std::expm1(c));
      worst_term = std::max(worst_term, term / allowance);
      worst_heis = std::max(worst_heis, heis / heis_bound);
      term_ok += term <= allowance;
      heis_ok += heis <= heis_bound;
    }
    return Outcome{series_ok && term_ok == 5 && heis_ok == 5,
                   "series gap " + sci(std::abs(series - closed)) + " (tol 1e-8); word-norm sum within bound for " +
                       std::to_string(term_ok) + "/5 models (worst ratio " + sci(worst_term) +
                       "); Heisenberg double series within bound for " + std::to_string(heis_ok) +
                       "/5 (worst ratio " + sci(worst_heis) + ")"};
  });

  report.check(11, "asymptotic case", 0.0, [] {
    const RotationSpec rotation = RotationSpec::from_phase(0.7, 0.3, std::numbers::pi / 5, 1.0);
    double identity_residual = 0.0;
    bool monotone = true;
    std::string distances;
    const std::vector<double> taus{0.02, 0.01, 0.005};
    for (const auto& m : seeded_models(1111, 3, 2)) {
      for (double tau : {0.1, 0.01, 0.001})
        identity_residual = std::max(identity_residual, rotation_identity_residual(m.blocks, rotation, tau));
      const auto rows = asymptotic_convergence(m.blocks, rotation, m.rho0, taus, 1.0, default_dt(taus));
      for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i].trace_distance < rows[i - 1].trace_distance;
      distances += (distances.empty() ? "" : " | ") + sci(rows[0].trace_distance) + " > " + sci(rows[1].trace_distance) +
                   " > " + sci(rows[2].trace_distance);
    }
    return Outcome{identity_residual <= 1e-12 && monotone,
                   "rotation identity residual " + sci(identity_residual) + " (tol 1e-12); distances " + distances};
  });

  report.check(12, "determinism", 0.0, [] {
    int identical = 0, total = 0;
    for (const auto& [name, command] : cli::commands()) {
      std::ifstream in(std::string(QKICK_CONFIG_DIR) + "/" + name + ".json");
      std::stringstream text;
      text << in.rdbuf();
      const cli::ModelConfig cfg = cli::parse_config_text(text.str());
      ++total;
      identical += command(cfg).str() == command(cfg).str();
    }
    return Outcome{total == 8 && identical == total,
                   std::to_string(identical) + "/" + std::to_string(total) + " subcommands byte-identical across runs"};
  });

  std::printf("%d criterion(s) failed\n", report.failures());
  return report.failures() == 0 ? 0 : 1;
}
