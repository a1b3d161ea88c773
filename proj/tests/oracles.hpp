// Copyright 2026 The cddsim Authors
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

// Test-only reference implementations.  Everything here is deliberately
// naive and independent of the library's computation paths: truncated
// series instead of eigendecompositions, explicit index loops instead of
// block operations, fixed-step integration instead of exact propagators.

#pragma once

#include <complex>
#include <random>
#include <vector>

#include "cddsim/field.hpp"
#include "cddsim/sequence.hpp"

namespace oracles {

using cddsim::Matrix;
using cddsim::Vector;

// Truncated Taylor series for exp(-i h t).
inline Matrix<double> expm_taylor(const Matrix<double>& h, double t, int terms = 30) {
  const Eigen::Index n = h.rows();
  Matrix<double> acc = Matrix<double>::Identity(n, n);
  Matrix<double> term = Matrix<double>::Identity(n, n);
  const std::complex<double> mit(0, -t);
  for (int k = 1; k <= terms; ++k) {
    term = term * h * (mit / double(k));
    acc += term;
  }
  return acc;
}

// Element-indexing Kronecker product: out(i*rb+k, j*cb+l) = a(i,j) b(k,l).
inline Matrix<double> kron_indexed(const Matrix<double>& a, const Matrix<double>& b) {
  Matrix<double> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Double-index summation partial trace over the trailing bath slots.
inline Matrix<double> partial_trace_indexed(const Matrix<double>& rho, int ds, int db) {
  Matrix<double> out = Matrix<double>::Zero(ds, ds);
  for (int r = 0; r < ds; ++r)
    for (int c = 0; c < ds; ++c)
      for (int k = 0; k < db; ++k) out(r, c) += rho(r * db + k, c * db + k);
  return out;
}

inline Matrix<double> random_hermitian(Eigen::Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0, 1);
  Matrix<double> a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = std::complex<double>(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

inline Matrix<double> random_unitary(Eigen::Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0, 1);
  Matrix<double> a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = std::complex<double>(g(rng), g(rng));
  const Eigen::HouseholderQR<Matrix<double>> qr(a);
  Matrix<double> q = qr.householderQ();
  return q;
}

inline Vector<double> random_state(Eigen::Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0, 1);
  Vector<double> v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = std::complex<double>(g(rng), g(rng));
  v /= v.norm();
  return v;
}

// Classical RK4 on i d|psi>/dt = H |psi| with piecewise-constant H: steps
// fixed-width substeps per segment.  Ideal zero-width pulses apply their
// unitary directly.
inline Vector<double> integrate_schedule_rk4(const cddsim::Schedule<double>& schedule,
                                             Vector<double> psi, int steps_per_segment) {
  const std::complex<double> mi(0, -1);
  for (const auto& seg : schedule.segments()) {
    if (seg.kind == cddsim::SegmentKind::pulse && seg.ideal) {
      psi = (*seg.ideal) * psi;
      continue;
    }
    const Matrix<double>& h = *seg.generator;
    const double dt = seg.duration / steps_per_segment;
    for (int s = 0; s < steps_per_segment; ++s) {
      const Vector<double> k1 = mi * (h * psi);
      const Vector<double> k2 = mi * (h * (psi + 0.5 * dt * k1));
      const Vector<double> k3 = mi * (h * (psi + 0.5 * dt * k2));
      const Vector<double> k4 = mi * (h * (psi + dt * k3));
      psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  return psi;
}

// Recursive enumeration of CDD segment counts, independent of the schedule
// builder: returns (intervals, pulses) at a given level.
inline std::pair<long, long> cdd_counts(int level) {
  if (level == 0) return {1, 0};
  const auto inner = cdd_counts(level - 1);
  return {4 * inner.first, 4 * inner.second + 4};
}

}  // namespace oracles
