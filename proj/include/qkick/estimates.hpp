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

// Combinatorics and norm sums behind the uniform bounds on the kicked
// evolution, plus the empirical remainder order of the coefficient
// extraction.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qkick/coefficients.hpp"
#include "qkick/errors.hpp"
#include "qkick/fit.hpp"
#include "qkick/matops.hpp"
#include "qkick/model.hpp"

namespace qkick {

// Stirling numbers of the second kind in 64-bit integers. Every entry up to
// n = 25 fits; anything that would overflow is refused at construction.
class StirlingTable {
 public:
  explicit StirlingTable(int max_n) : max_n_(max_n) {
    if (max_n < 0) throw ValidationError("StirlingTable: max_n must be >= 0");
    rows_.assign(static_cast<std::size_t>(max_n) + 1, {});
    rows_[0] = {1};
    for (int n = 1; n <= max_n; ++n) {
      auto& row = rows_[static_cast<std::size_t>(n)];
      const auto& prev = rows_[static_cast<std::size_t>(n - 1)];
      row.assign(static_cast<std::size_t>(n) + 1, 0);
      for (int m = 1; m <= n; ++m) {
        const std::uint64_t keep = m < n ? prev[static_cast<std::size_t>(m)] : 0;
        std::uint64_t scaled = 0, sum = 0;
        if (__builtin_mul_overflow(static_cast<std::uint64_t>(m), keep, &scaled) ||
            __builtin_add_overflow(scaled, prev[static_cast<std::size_t>(m - 1)], &sum))
          throw ValidationError("StirlingTable: S(" + std::to_string(n) + ", " + std::to_string(m) +
                                ") overflows 64 bits");
        row[static_cast<std::size_t>(m)] = sum;
      }
    }
  }

  int max_n() const { return max_n_; }

  std::uint64_t operator()(int n, int m) const {
    if (n < 0 || n > max_n_ || m < 0 || m > n)
      throw ValidationError("stirling2: indices (" + std::to_string(n) + ", " + std::to_string(m) + ") out of range");
    return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
  }

  std::uint64_t bell(int n) const {
    std::uint64_t total = 0;
    for (int m = 0; m <= n; ++m)
      if (__builtin_add_overflow(total, (*this)(n, m), &total)) throw ValidationError("bell: overflow");
    return total;
  }

 private:
  int max_n_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

inline constexpr int kStirlingExactMax = 25;

inline std::uint64_t stirling2(int n, int m) {
  static const StirlingTable table(kStirlingExactMax);
  if (n < 1 || m < 1 || m > n) throw ValidationError("stirling2: need 1 <= m <= n");
  return table(n, m);
}

inline constexpr int kSeriesMaxOrder = 150;

// Floating-point Stirling rows for the generating series, where exactness
// past 2^53 does not matter.
inline const std::vector<std::vector<double>>& stirling_rows_double() {
  static const std::vector<std::vector<double>> rows = [] {
    std::vector<std::vector<double>> r(kSeriesMaxOrder + 1);
    r[0] = {1.0};
    for (int n = 1; n <= kSeriesMaxOrder; ++n) {
      r[n].assign(static_cast<std::size_t>(n) + 1, 0.0);
      for (int m = 1; m <= n; ++m) r[n][m] = (m < n ? m * r[n - 1][m] : 0.0) + r[n - 1][m - 1];
    }
    return r;
  }();
  return rows;
}

// sum_{n <= N} C^n / n! sum_m tau^m S(n, m), which tends to exp{tau (e^C - 1)}.
inline double bound_series(double c, double tau, int n_max) {
  if (!(c >= 0.0)) throw ValidationError("bound_series: C must be >= 0");
  require_positive_tau(tau, "bound_series");
  if (n_max < 0 || n_max > kSeriesMaxOrder) throw ValidationError("bound_series: truncation out of range");
  const auto& s = stirling_rows_double();
  double total = 1.0, weight = 1.0;  // weight = C^n / n!
  for (int n = 1; n <= n_max; ++n) {
    weight *= c / n;
    double inner = 0.0, power = 1.0;
    for (int m = 1; m <= n; ++m) {
      power *= tau;
      inner += power * s[n][m];
    }
    total += weight * inner;
  }
  return total;
}

inline double bound_closed_form(double c, double tau) { return std::exp(tau * std::expm1(c)); }

// sum_{n > N} (C max(1, tau))^n Bell(n) / n!, truncated once terms vanish.
inline double bound_tail(double c, double tau, int n_max) {
  const auto& s = stirling_rows_double();
  const double base = c * std::max(1.0, tau);
  double tail = 0.0;
  for (int n = n_max + 1; n <= kSeriesMaxOrder; ++n) {
    double bell = 0.0;
    for (double v : s[n]) bell += v;
    double term = bell;
    for (int k = 1; k <= n; ++k) term *= base / k;
    tail += term;
    if (term < 1e-18 * std::max(tail, 1e-300)) break;
  }
  return tail;
}

// ---------------------------------------------------------------------------
// Word expansion of the Floquet unitary
//   V = sum_n (-i tau)^n / n! sum_{words} H_{a_n b_n}...H_{a_1 b_1} x s_{a_n b_n}...s_{a_1 b_1}
// with s_{ab} = (s+/sqrt tau)^a (s-/sqrt tau)^b.
// ---------------------------------------------------------------------------

inline constexpr int kMaxWordLength = 8;

struct Word {
  int length = 0;
  Matrix system;  // H_{a_n b_n} ... H_{a_1 b_1}
  Matrix atom;    // s_{a_n b_n} ... s_{a_1 b_1}
};

inline Matrix atom_letter(int alpha, int beta, double tau) {
  const double root = std::sqrt(tau);
  Matrix m = identity(2);
  if (alpha == 1) m = m * AtomAlgebra::sigma_plus() / root;
  if (beta == 1) m = m * AtomAlgebra::sigma_minus() / root;
  return m;
}

// All words of length <= n_max, grouped by length, in lexicographic order of
// (a_1 b_1, a_2 b_2, ...).
inline std::vector<std::vector<Word>> enumerate_words(const HamiltonianBlocks& blocks, double tau, int n_max) {
  require_positive_tau(tau, "enumerate_words");
  if (n_max < 0 || n_max > kMaxWordLength)
    throw ValidationError("word enumeration is capped at length " + std::to_string(kMaxWordLength));
  std::vector<std::vector<Word>> words(static_cast<std::size_t>(n_max) + 1);
  words[0].push_back({0, identity(blocks.dim()), identity(2)});
  for (int n = 1; n <= n_max; ++n) {
    words[n].reserve(words[n - 1].size() * 4);
    for (const Word& w : words[n - 1])
      for (int letter = 0; letter < 4; ++letter) {
        const int alpha = letter >> 1, beta = letter & 1;
        words[n].push_back({n, blocks.block(alpha, beta) * w.system, atom_letter(alpha, beta, tau) * w.atom});
      }
  }
  return words;
}

inline double small_norm(const Matrix& m) { return m.size() == 0 ? 0.0 : spectral_norm(m); }

// sum_{n <= N} tau^n / n! sum_words ||H-word|| ||s-word||.
inline double term_norm_sum(const HamiltonianBlocks& blocks, double tau, int n_max) {
  const auto words = enumerate_words(blocks, tau, n_max);
  double total = 0.0, weight = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) weight *= tau / n;
    double level = 0.0;
    for (const Word& w : words[n]) level += small_norm(w.system) * small_norm(w.atom);
    total += weight * level;
  }
  return total;
}

// Norm sum of the double expansion of V^dag (X x 1) V over word pairs with
// combined length <= N:
//   sum tau^{n+m} / (n! m!) ||H_w^dag X H_w'|| ||s_w^dag s_w'||.
inline double heisenberg_double_series(const HamiltonianBlocks& blocks, const Matrix& x, double tau, int n_max) {
  if (x.rows() != blocks.dim() || !is_square(x)) throw ValidationError("heisenberg_double_series: X has wrong size");
  const auto words = enumerate_words(blocks, tau, n_max);
  std::vector<double> weight(static_cast<std::size_t>(n_max) + 1, 1.0);
  for (int n = 1; n <= n_max; ++n) weight[n] = weight[n - 1] * tau / n;
  double total = 0.0;
  for (int n = 0; n <= n_max; ++n)
    for (const Word& left : words[n]) {
      const Matrix lx = left.system.adjoint() * x;
      const Matrix la = left.atom.adjoint();
      for (int m = 0; n + m <= n_max; ++m) {
        double level = 0.0;
        for (const Word& right : words[m]) {
          const double atom = small_norm(la * right.atom);
          if (atom == 0.0) continue;
          level += small_norm(lx * right.system) * atom;
        }
        total += weight[n] * weight[m] * level;
      }
    }
  return total;
}

// ---------------------------------------------------------------------------
// Remainder order of the coefficient extraction
// ---------------------------------------------------------------------------

inline constexpr double kRemainderFloor = 1e-13;

struct RemainderReport {
  std::vector<double> taus;
  std::vector<std::array<double, 4>> errors;  // per tau, blocks ordered (00, 01, 10, 11)
  std::array<std::optional<double>, 4> slopes;  // empty means "exact"
};

inline RemainderReport remainder_order(const HamiltonianBlocks& blocks, std::span<const double> taus) {
  if (taus.size() < 3) throw ValidationError("remainder_order: need at least three step sizes");
  for (std::size_t i = 1; i < taus.size(); ++i)
    if (!(taus[i] < taus[i - 1])) throw ValidationError("remainder_order: step sizes must be decreasing");
  RemainderReport report;
  report.taus.assign(taus.begin(), taus.end());
  const ItoCoefficients exact = ito_from_holevo(blocks);
  for (double tau : taus) report.errors.push_back(coefficient_errors(extract_coefficients(floquet(blocks, tau), tau), exact));
  for (std::size_t b = 0; b < 4; ++b) {
    std::vector<double> ys;
    bool resolved = true;
    for (const auto& e : report.errors) {
      if (e[b] < kRemainderFloor) resolved = false;
      ys.push_back(e[b]);
    }
    if (resolved) report.slopes[b] = loglog_slope(taus, ys);
  }
  return report;
}

}  // namespace qkick
