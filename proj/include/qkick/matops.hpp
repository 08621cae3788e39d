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

// Dense complex matrix kernel. Every operator in the library (states,
// unitaries, observables, superoperators) is an Eigen::MatrixXcd; this header
// adds the pieces Eigen does not ship in the form we need: a Jacobi
// eigensolver for Hermitian matrices, a scaling-and-squaring exponential,
// spectral functions with removable singularities, partial traces and the
// trace distance.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "qkick/errors.hpp"

namespace qkick {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
inline Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

// Frobenius norm. Used for all residuals; it bounds the spectral norm from above.
inline double residual_norm(const Matrix& a) { return a.norm(); }

inline bool is_square(const Matrix& a) { return a.rows() == a.cols() && a.rows() > 0; }

inline bool all_finite(const Matrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

inline bool is_hermitian(const Matrix& a, double tol = 1e-10) {
  return is_square(a) && residual_norm(a - a.adjoint()) <= tol;
}

inline bool is_unitary(const Matrix& a, double tol = 1e-10) {
  return is_square(a) && residual_norm(a.adjoint() * a - identity(a.rows())) <= tol;
}

inline Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic Jacobi)
// ---------------------------------------------------------------------------

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns are eigenvectors, unitary
};

// Cyclic complex Jacobi. Each rotation first removes the phase of the pivot
// a_pq, then applies the classical real rotation; the combined 2x2 unitary is
//   [ c        s      ]
//   [ -s e*    c e*   ]   with e = a_pq / |a_pq|.
inline EigenSystem herm_eig(const Matrix& input, double herm_tol = 1e-10) {
  if (!is_square(input)) throw ValidationError("herm_eig: matrix is not square");
  const double scale = std::max(1.0, input.norm());
  if (residual_norm(input - input.adjoint()) > herm_tol * scale)
    throw ValidationError("herm_eig: matrix is not Hermitian");

  const Eigen::Index n = input.rows();
  Matrix a = hermitian_part(input);
  Matrix v = identity(n);

  const double target = 1e-30 * scale * scale;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index q = 1; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) off += std::norm(a(p, q));
    if (off <= target) break;

    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r <= 1e-300) continue;
        const cplx e = a(p, q) / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx ec = std::conj(e);

        const Vector col_p = a.col(p);
        const Vector col_q = a.col(q);
        a.col(p) = c * col_p - (s * ec) * col_q;
        a.col(q) = s * col_p + (c * ec) * col_q;

        const Eigen::RowVectorXcd row_p = a.row(p);
        const Eigen::RowVectorXcd row_q = a.row(q);
        a.row(p) = c * row_p - (s * e) * row_q;
        a.row(q) = s * row_p + (c * e) * row_q;

        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        const Vector vp = v.col(p);
        const Vector vq = v.col(q);
        v.col(p) = c * vp - (s * ec) * vq;
        v.col(q) = s * vp + (c * ec) * vq;
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

inline RealVector herm_eigenvalues(const Matrix& a, double herm_tol = 1e-10) {
  return herm_eig(a, herm_tol).values;
}

inline double min_eigenvalue(const Matrix& a, double herm_tol = 1e-8) {
  return herm_eigenvalues(hermitian_part(a), herm_tol)(0);
}

inline bool is_density(const Matrix& a, double tol = 1e-8) {
  if (!is_hermitian(a, tol)) return false;
  if (std::abs(a.trace() - cplx(1.0)) > tol) return false;
  return min_eigenvalue(a, 1.0) >= -tol;
}

// Largest singular value. Small matrices go through the Jacobi solver on
// A^dagger A; large ones use power iteration on the same Gram matrix.
inline double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const double fro = a.norm();
  if (fro == 0.0) return 0.0;
  if (a.cols() <= 128) {
    const Matrix gram = a.adjoint() * a;
    return std::sqrt(std::max(0.0, herm_eigenvalues(hermitian_part(gram), 1.0)(a.cols() - 1)));
  }
  Vector x = Vector::Ones(a.cols()) / std::sqrt(static_cast<double>(a.cols()));
  double sigma = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vector y = a.adjoint() * (a * x);
    const double ny = y.norm();
    if (ny == 0.0) return 0.0;
    const double next = std::sqrt(ny);
    x = y / ny;
    if (std::abs(next - sigma) <= 1e-14 * next) {
      sigma = next;
      break;
    }
    sigma = next;
  }
  return std::min(sigma, fro);
}

// ---------------------------------------------------------------------------
// Matrix exponential
// ---------------------------------------------------------------------------

inline double one_norm(const Matrix& a) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) best = std::max(best, a.col(j).cwiseAbs().sum());
  return best;
}

// Scaling and squaring with a degree-18 Taylor polynomial once ||A/2^s||_1 <= 1/2.
inline Matrix expm(const Matrix& a) {
  if (!is_square(a)) throw ValidationError("expm: matrix is not square");
  const Eigen::Index n = a.rows();
  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix b = a / std::ldexp(1.0, squarings);

  constexpr int kDegree = 18;
  Matrix result = identity(n);
  for (int k = kDegree; k >= 1; --k) result = identity(n) + (b * result) / static_cast<double>(k);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

// ---------------------------------------------------------------------------
// Spectral functions
// ---------------------------------------------------------------------------

enum class SpectralKind {
  phi1,  // (e^{-ix} - 1) / x
  phi2,  // (e^{-ix} - 1 + ix) / x^2
  g,     // (x - sin x) / x^2
};

inline constexpr double kSeriesThreshold = 1e-4;

inline cplx spectral_scalar(SpectralKind kind, double x, double threshold = kSeriesThreshold) {
  const bool series = std::abs(x) < threshold;
  switch (kind) {
    case SpectralKind::phi1:
      if (series) return cplx(-x / 2.0, -1.0 + x * x / 6.0);
      return (std::exp(-kI * x) - 1.0) / x;
    case SpectralKind::phi2:
      if (series) return cplx(-0.5 + x * x / 24.0, x / 6.0);
      return (std::exp(-kI * x) - 1.0 + kI * x) / (x * x);
    case SpectralKind::g:
      if (series) return x / 6.0 - x * x * x / 120.0;
      return (x - std::sin(x)) / (x * x);
  }
  return 0.0;
}

// f(H) = U diag(f(lambda)) U^dagger for any scalar function f: double -> cplx.
template <class F>
Matrix apply_spectral(const Matrix& h, F&& f, double herm_tol = 1e-10) {
  const EigenSystem es = herm_eig(h, herm_tol);
  Vector fvals(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) fvals(k) = f(es.values(k));
  return es.vectors * fvals.asDiagonal() * es.vectors.adjoint();
}

inline Matrix spectral_fun(const Matrix& h, SpectralKind kind, double threshold = kSeriesThreshold) {
  if (!is_square(h)) throw ValidationError("spectral_fun: matrix is not square");
  return apply_spectral(h, [&](double x) { return spectral_scalar(kind, x, threshold); });
}

// ---------------------------------------------------------------------------
// Tensor products and partial traces
// ---------------------------------------------------------------------------

// Row index (i_A, i_B) -> i_A * rows(B) + i_B.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix partial_trace_last(const Matrix& m, Eigen::Index dim_last) {
  if (!is_square(m)) throw ValidationError("partial_trace_last: matrix is not square");
  if (dim_last <= 0 || m.rows() % dim_last != 0)
    throw ValidationError("partial_trace_last: dimension " + std::to_string(m.rows()) +
                          " is not divisible by " + std::to_string(dim_last));
  const Eigen::Index d = m.rows() / dim_last;
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index k = 0; k < dim_last; ++k) out(i, j) += m(i * dim_last + k, j * dim_last + k);
  return out;
}

// Block (a, b) of the trailing factor: (1 x <e_a|) M (1 x |e_b>).
inline Matrix trailing_block(const Matrix& m, Eigen::Index dim_last, Eigen::Index a, Eigen::Index b) {
  const Eigen::Index d = m.rows() / dim_last;
  Matrix out(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) out(i, j) = m(i * dim_last + a, j * dim_last + b);
  return out;
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

inline double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw ValidationError("trace_distance: dimension mismatch");
  if (!is_hermitian(rho, 1e-8) || !is_hermitian(sigma, 1e-8))
    throw ValidationError("trace_distance: arguments must be Hermitian");
  // Canonical argument order makes the result exactly symmetric.
  const bool swap = std::lexicographical_compare(
      sigma.data(), sigma.data() + sigma.size(), rho.data(), rho.data() + rho.size(),
      [](const cplx& x, const cplx& y) { return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag()); });
  const Matrix diff = swap ? Matrix(sigma - rho) : Matrix(rho - sigma);
  const RealVector lambda = herm_eigenvalues(hermitian_part(diff), 1.0);
  return 0.5 * lambda.cwiseAbs().sum();
}

}  // namespace qkick
