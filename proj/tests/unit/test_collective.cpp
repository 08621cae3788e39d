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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "qkick/collective.hpp"

using namespace qkick;

namespace {

// Site operator embedded with explicit Kronecker products (independent of the
// bit-twiddling constructor).
Matrix embed(const Matrix& op, int site, int n) {
  Matrix m = identity(1);
  for (int k = 1; k <= n; ++k) m = kron(m, k == site ? op : identity(2));
  return m;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Collective, EmptySumIsZero) {
  const ChainOperator op = build_collective(ChainKind::creation, 0.05, 0.1, 3);
  EXPECT_EQ(op.dim(), 8);
  EXPECT_EQ(op.matrix.norm(), 0.0);
}

TEST(Collective, SingleSite) {
  const double tau = 0.25;
  const ChainOperator op = build_collective(ChainKind::creation, tau, tau, 1);
  EXPECT_LT(residual_norm(op.matrix - std::sqrt(tau) * AtomAlgebra::sigma_plus()), 1e-16);
}

TEST(Collective, MatchesKroneckerConstruction) {
  const double tau = 0.1;
  const int n = 4;
  Matrix plus = Matrix::Zero(16, 16), number = Matrix::Zero(16, 16);
  for (int k = 1; k <= 3; ++k) {
    plus += std::sqrt(tau) * embed(AtomAlgebra::sigma_plus(), k, n);
    number += embed(AtomAlgebra::number(), k, n);
  }
  EXPECT_LT(residual_norm(build_collective(ChainKind::creation, 0.3, tau, n).matrix - plus), 1e-15);
  EXPECT_LT(residual_norm(build_collective(ChainKind::annihilation, 0.3, tau, n).matrix - plus.adjoint()), 1e-15);
  EXPECT_LT(residual_norm(build_collective(ChainKind::number, 0.3, tau, n).matrix - number), 1e-15);
}

TEST(Collective, NumberSpectrumIsBinomial) {
  const int n = 6;
  const RealVector ev = herm_eigenvalues(build_collective(ChainKind::number, n * 0.1, 0.1, n).matrix);
  std::map<long, int> counts;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    EXPECT_NEAR(ev(i), std::round(ev(i)), 1e-12);
    ++counts[std::lround(ev(i))];
  }
  for (int k = 0; k <= n; ++k) EXPECT_EQ(counts[k], binomial(n, k)) << k;
}

TEST(Collective, ChainTooShortOrTooLong) {
  EXPECT_THROW(build_collective(ChainKind::creation, 0.5, 0.1, 3), ValidationError);
  EXPECT_THROW(chain_dim(13), ValidationError);
  EXPECT_THROW(chain_dim(0), ValidationError);
}

TEST(Smeared, ConstantAndZeroWeights) {
  const double tau = 0.2;
  const std::vector<cplx> ones(3, 1.0), zeros(3, 0.0);
  for (ChainKind kind : {ChainKind::creation, ChainKind::annihilation, ChainKind::number}) {
    EXPECT_EQ(build_smeared(kind, ones, tau, 4).matrix, build_collective(kind, 0.6, tau, 4).matrix);
    EXPECT_EQ(build_smeared(kind, zeros, tau, 4).matrix.norm(), 0.0);
  }
}

TEST(Smeared, AnnihilationUsesConjugateWeights) {
  const std::vector<cplx> w{{0.3, 0.7}, {-1.0, 0.2}};
  const Matrix plus = build_smeared(ChainKind::creation, w, 0.1, 2).matrix;
  const Matrix minus = build_smeared(ChainKind::annihilation, w, 0.1, 2).matrix;
  EXPECT_LT(residual_norm(minus - plus.adjoint()), 1e-16);
}

TEST(Smeared, VacuumMomentIsRiemannSum) {
  // <vac|A-(psi)A+(phi)|vac> = tau sum conj(psi) phi -> int_0^1 conj(psi) phi
  const auto phi = [](double x) { return cplx(std::cos(x), x); };
  const auto psi = [](double x) { return cplx(1.0 + x * x, 0.5); };
  // int_0^1 (1 + x^2 - 0.5 i)(cos x + i x) dx
  const double re = 2.0 * std::cos(1.0) + 0.25;
  const double im = 0.5 + 0.25 - 0.5 * std::sin(1.0);
  const cplx exact(re, im);
  double previous = 1.0;
  for (int n : {4, 8}) {
    const double tau = 1.0 / n;
    std::vector<cplx> f(n), g(n);
    for (int k = 1; k <= n; ++k) f[k - 1] = phi(k * tau), g[k - 1] = psi(k * tau);
    const Vector vac = chain_vacuum(n);
    const cplx moment = vac.dot(build_smeared(ChainKind::annihilation, g, tau, n).matrix *
                                (build_smeared(ChainKind::creation, f, tau, n).matrix * vac));
    cplx riemann = 0.0;
    for (int k = 0; k < n; ++k) riemann += tau * std::conj(g[k]) * f[k];
    EXPECT_LT(std::abs(moment - riemann), 1e-14);
    const double err = std::abs(moment - exact);
    EXPECT_LT(err, previous * 0.65);
    EXPECT_LT(err, 2.0 * tau);
    previous = err;
  }
}

TEST(Commutators, SingleSiteExact) {
  for (double r : check_commutators(0.3, 0.3, 0.3, 1)) EXPECT_LE(r, 1e-15);
}

TEST(Commutators, ExactOnChains) {
  const struct { double t, s, tau; int n; } cases[] = {
      {0.5, 0.3, 0.1, 8}, {0.3, 0.5, 0.1, 8}, {0.7, 0.7, 0.1, 8}, {0.95, 0.41, 0.1, 10}, {0.2, 1.0, 0.1, 10},
  };
  for (const auto& c : cases)
    for (double r : check_commutators(c.t, c.s, c.tau, c.n)) EXPECT_LE(r, 1e-12) << c.t << " " << c.s;
}

TEST(Collective, VacuumIsAnnihilated) {
  const Vector vac = chain_vacuum(6);
  EXPECT_EQ((build_collective(ChainKind::annihilation, 0.6, 0.1, 6).matrix * vac).norm(), 0.0);
  EXPECT_EQ((build_collective(ChainKind::number, 0.6, 0.1, 6).matrix * vac).norm(), 0.0);
}

TEST(Collective, VacuumSecondMoment) {
  const double tau = 0.1;
  for (auto [t, s] : {std::pair{0.55, 0.32}, {0.9, 0.9}, {0.15, 0.99}}) {
    const double m = std::min(t, s);
    const cplx moment = vacuum_second_moment(t, s, tau, 10);
    // sqrt(tau)^2 differs from tau by rounding only
    EXPECT_LE(std::abs(moment - tau * std::floor(m / tau)), 1e-15);
    EXPECT_LE(std::abs(moment.real() - m), tau);
  }
}

TEST(ItoTable, Projector) {
  const IncrementDecomposition d = discrete_ito_product(1, 1, 1, 1, 0.01);
  EXPECT_LE(std::abs(d.at(1, 1) - 1.0), 1e-15);
  EXPECT_EQ(d.at(1, 0), cplx(0.0));
  EXPECT_EQ(d.at(0, 1), cplx(0.0));
  EXPECT_EQ(d.at(0, 0), cplx(0.0));
}

TEST(ItoTable, GroundStateProductCarriesCorrection) {
  for (double tau : {0.1, 0.01}) {
    const IncrementDecomposition d = discrete_ito_product(0, 1, 1, 0, tau);
    EXPECT_NEAR(std::abs(d.at(0, 0) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(d.at(1, 1) + tau), 0.0, 1e-16);
    const IncrementDecomposition e = discrete_ito_product(1, 0, 0, 1, tau);
    EXPECT_NEAR(std::abs(e.at(1, 1) - tau), 0.0, 1e-16);
  }
}

TEST(ItoTable, DecompositionReconstructsEveryProduct) {
  const double tau = 0.05;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
          const Matrix p = increment(a, b, tau) * increment(m, n, tau);
          EXPECT_LT(residual_norm(discrete_ito_product(a, b, m, n, tau).reconstruct(tau) - p), 1e-15);
        }
}

TEST(ItoTable, ContractionRule) {
  // dA^{a1} dA^{1b} = dA^{ab}, except for (0,0) which is off by -tau dA^{11}.
  const double tau = 0.03;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const IncrementDecomposition d = discrete_ito_product(a, 1, 1, b, tau);
      double deviation = 0.0;
      for (int g = 0; g < 2; ++g)
        for (int h = 0; h < 2; ++h) deviation += std::norm(d.at(g, h) - cplx(g == a && h == b ? 1.0 : 0.0));
      deviation = std::sqrt(deviation);
      if (a == 0 && b == 0)
        EXPECT_NEAR(deviation, tau, 1e-15);
      else
        EXPECT_EQ(deviation, 0.0) << a << b;
    }
}

TEST(OrderedMoment, FactorizedMatchesDense) {
  const std::vector<FieldTriple> fields{
      {[](double x) { return cplx(0.5 * x); }, [](double x) { return cplx(1.0, x); },
       [](double x) { return cplx(1.0, x); }},
      {[](double) { return cplx(-0.3); }, [](double x) { return cplx(std::sin(3 * x)); },
       [](double) { return cplx(0.2, -0.4); }},
  };
  for (double tau : {0.25, 0.125}) {
    const int n = static_cast<int>(kick_count(1.0, tau));
    EXPECT_LT(std::abs(ordered_moment(fields, tau, n) - ordered_moment_dense(fields, tau, n)), 1e-12) << tau;
  }
}

TEST(OrderedMoment, CauchyInTau) {
  const std::vector<FieldTriple> fields{
      {[](double x) { return cplx(x); }, [](double x) { return cplx(std::cos(x)); },
       [](double x) { return cplx(std::cos(x)); }},
      {[](double) { return cplx(0.4); }, [](double x) { return cplx(0.0, x); }, [](double x) { return cplx(0.0, x); }},
  };
  std::vector<cplx> values;
  for (double tau = 0.1; tau > 1e-3; tau /= 2) values.push_back(ordered_moment(fields, tau, kick_count(1.0, tau)));
  for (std::size_t i = 2; i < values.size(); ++i)
    EXPECT_LT(std::abs(values[i] - values[i - 1]), std::abs(values[i - 1] - values[i - 2])) << i;
}
