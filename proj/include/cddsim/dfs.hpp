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

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "cddsim/errors.hpp"
#include "cddsim/field.hpp"
#include "cddsim/model.hpp"
#include "cddsim/operator_core.hpp"

namespace cddsim {

// One logical qubit lives in the two total-spin-zero states of four
// spin-1/2 particles.  Basis kets are indexed with qubit 1 as the most
// significant bit and spin-up as 0.
template <typename Real>
struct LogicalBasis {
  Vector<Real> zero_l;  // |s>_AB (x) |s>_CD
  Vector<Real> one_l;   // triplet combination, unit-normalized
};

template <typename Real>
LogicalBasis<Real> logical_basis() {
  LogicalBasis<Real> b;
  b.zero_l = Vector<Real>::Zero(16);
  b.one_l = Vector<Real>::Zero(16);
  const Real half = Real(1) / Real(2);
  // 0b0101 etc.: up-down-up-down patterns of the two singlets.
  b.zero_l(5) = half;
  b.zero_l(10) = half;
  b.zero_l(6) = -half;
  b.zero_l(9) = -half;
  // The printed 1/sqrt(3) prefactor with amplitudes (2,2,-1,-1,-1,-1) is
  // unnormalized; 1/(2 sqrt(3)) makes the state unit norm.
  const Real q = Real(1) / (Real(2) * std::sqrt(Real(3)));
  b.one_l(3) = Real(2) * q;
  b.one_l(12) = Real(2) * q;
  b.one_l(6) = -q;
  b.one_l(9) = -q;
  b.one_l(5) = -q;
  b.one_l(10) = -q;
  return b;
}

template <typename Real>
Vector<Real> kron_vec(const Vector<Real>& a, const Vector<Real>& b) {
  Vector<Real> out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// Logical computational basis on the system space: 2 states for one block,
// 4 (block A slow index) for two.
template <typename Real>
std::vector<Vector<Real>> logical_basis_vectors(int blocks) {
  const LogicalBasis<Real> b = logical_basis<Real>();
  if (blocks == 1) return {b.zero_l, b.one_l};
  if (blocks == 2)
    return {kron_vec(b.zero_l, b.zero_l), kron_vec(b.zero_l, b.one_l),
            kron_vec(b.one_l, b.zero_l), kron_vec(b.one_l, b.one_l)};
  throw DimensionMismatchError("logical_basis_vectors: blocks must be 1 or 2");
}

// Encoded initial state: per-block logical amplitudes tensored with the
// uniform-superposition bath state.
template <typename Real>
Vector<Real> encode(const std::vector<std::array<Complex<Real>, 2>>& amps,
                    int blocks, int bath_count) {
  if (int(amps.size()) != blocks)
    throw DimensionMismatchError("encode: need one amplitude pair per block");
  const LogicalBasis<Real> b = logical_basis<Real>();
  Vector<Real> sys;
  for (int k = 0; k < blocks; ++k) {
    const Real norm2 =
        std::norm(amps[k][0]) + std::norm(amps[k][1]);
    if (std::abs(norm2 - Real(1)) > Real(1e-12))
      throw NotNormalizedError("encode: block " + std::to_string(k) +
                               " amplitudes not normalized");
    Vector<Real> blk = amps[k][0] * b.zero_l + amps[k][1] * b.one_l;
    sys = (k == 0) ? blk : kron_vec(sys, blk);
  }
  if (bath_count == 0) return sys;
  const Eigen::Index bath_dim = Eigen::Index(1) << bath_count;
  Vector<Real> bath = Vector<Real>::Constant(
      bath_dim, Complex<Real>(Real(1) / std::sqrt(Real(bath_dim)), 0));
  return kron_vec(sys, bath);
}

// Global decoupling pulse on the system space: X-bar or Z-bar over all 4
// or 8 system qubits.  Acts as the identity on the code space.
template <typename Real>
Matrix<Real> global_pulse_operator(Axis axis, int blocks) {
  if (axis == Axis::y)
    throw ValidationError("global_pulse_operator: pulses are x or z");
  const int n = 4 * blocks;
  std::vector<std::pair<int, Axis>> factors;
  factors.reserve(n);
  for (int j = 0; j < n; ++j) factors.emplace_back(j, axis);
  return pauli_string<Real>(n, factors);
}

template <typename Real>
struct ProjectionResult {
  Matrix<Real> logical;  // <basis_r| u |basis_c>
  Real leakage = 0;      // worst-column norm outside the logical span
};

// Project a system-only unitary onto the logical basis and measure how much
// of each evolved basis state escapes the code space.
template <typename Real>
ProjectionResult<Real> project_logical(const Matrix<Real>& u, int blocks) {
  const Eigen::Index dim = Eigen::Index(1) << (4 * blocks);
  if (u.rows() != dim || u.cols() != dim)
    throw DimensionMismatchError("project_logical: operator dim " +
                                 std::to_string(u.rows()) + " != " +
                                 std::to_string(dim));
  const auto basis = logical_basis_vectors<Real>(blocks);
  const Eigen::Index nb = Eigen::Index(basis.size());
  Matrix<Real> b(dim, nb);
  for (Eigen::Index c = 0; c < nb; ++c) b.col(c) = basis[c];
  ProjectionResult<Real> out;
  Matrix<Real> evolved = u * b;
  out.logical = b.adjoint() * evolved;
  out.leakage = Real(0);
  for (Eigen::Index c = 0; c < nb; ++c) {
    const Vector<Real> residual = evolved.col(c) - b * out.logical.col(c);
    out.leakage = std::max(out.leakage, Real(residual.norm()));
  }
  return out;
}

// One elementary Heisenberg exchange operation: evolution
// exp(-i angle sigma_a . sigma_b) between two system qubits (0-based).
template <typename Real>
struct ExchangeOp {
  int a = 0;
  int b = 1;
  Real angle = 0;
};

// A named encoded gate: its exchange decomposition and the ideal logical
// target (2x2 single block, 4x4 two blocks).
template <typename Real>
struct LogicalGate {
  std::string name;
  std::vector<ExchangeOp<Real>> ops;
  int blocks = 1;
  Matrix<Real> target;
  std::string cphase_source;  // "" except for the controlled-phase gate
};

template <typename Real>
Matrix<Real> memory_target() {
  return identity_op<Real>(2);
}

template <typename Real>
Matrix<Real> pi8_target() {
  Matrix<Real> t = identity_op<Real>(2);
  const Real pi = std::acos(Real(-1));
  t(1, 1) = std::exp(Complex<Real>(0, pi / Real(4)));
  return t;
}

template <typename Real>
Matrix<Real> hadamard_target() {
  Matrix<Real> t(2, 2);
  const Real s = Real(1) / std::sqrt(Real(2));
  t << s, s, s, -s;
  return t;
}

template <typename Real>
Matrix<Real> cphase_target() {
  Matrix<Real> t = identity_op<Real>(4);
  t(3, 3) = Real(-1);
  return t;
}

// Bath-free, pulse-free composition of an exchange sequence on the system
// space, applied to the logical basis columns.  Uses the exact identity
// exp(-i phi sigma.sigma) = e^{i phi} (cos 2phi - i sin 2phi SWAP), so no
// eigensolver is involved.
template <typename Real>
void apply_exchange(const ExchangeOp<Real>& op, int system_count,
                    Matrix<Real>& columns) {
  const int bit_a = system_count - 1 - op.a;
  const int bit_b = system_count - 1 - op.b;
  const Complex<Real> phase = std::exp(Complex<Real>(0, op.angle));
  const Real c = std::cos(Real(2) * op.angle);
  const Real s = std::sin(Real(2) * op.angle);
  const Complex<Real> cp = phase * c;
  const Complex<Real> msp = phase * Complex<Real>(0, -s);
  const Eigen::Index dim = columns.rows();
  for (Eigen::Index col = 0; col < columns.cols(); ++col) {
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
      const Eigen::Index swapped =
          (idx & ~((Eigen::Index(1) << bit_a) | (Eigen::Index(1) << bit_b))) |
          (((idx >> bit_a) & 1) << bit_b) | (((idx >> bit_b) & 1) << bit_a);
      if (swapped < idx) continue;  // handle each orbit once
      const Complex<Real> vi = columns(idx, col);
      if (swapped == idx) {
        columns(idx, col) = (cp + msp) * vi;
      } else {
        const Complex<Real> vj = columns(swapped, col);
        columns(idx, col) = cp * vi + msp * vj;
        columns(swapped, col) = cp * vj + msp * vi;
      }
    }
  }
}

// Logical matrix and leakage of a bath-free exchange sequence, computed by
// evolving the code basis columns directly.
template <typename Real>
ProjectionResult<Real> exchange_sequence_logical(
    const std::vector<ExchangeOp<Real>>& ops, int blocks) {
  const int n = 4 * blocks;
  const auto basis = logical_basis_vectors<Real>(blocks);
  const Eigen::Index dim = Eigen::Index(1) << n;
  const Eigen::Index nb = Eigen::Index(basis.size());
  Matrix<Real> b(dim, nb);
  for (Eigen::Index c = 0; c < nb; ++c) b.col(c) = basis[c];
  Matrix<Real> evolved = b;
  for (const auto& op : ops) apply_exchange(op, n, evolved);
  ProjectionResult<Real> out;
  out.logical = b.adjoint() * evolved;
  out.leakage = Real(0);
  for (Eigen::Index c = 0; c < nb; ++c) {
    const Vector<Real> residual = evolved.col(c) - b * out.logical.col(c);
    out.leakage = std::max(out.leakage, Real(residual.norm()));
  }
  return out;
}

}  // namespace cddsim
