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

#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "cddsim/errors.hpp"
#include "cddsim/field.hpp"
#include "cddsim/geometry.hpp"
#include "cddsim/operator_core.hpp"

namespace cddsim {

// Product of single-qubit Paulis at the given (0-based) register positions,
// identity elsewhere.
template <typename Real>
Matrix<Real> pauli_string(int total,
                          const std::vector<std::pair<int, Axis>>& factors) {
  Matrix<Real> out = identity_op<Real>(1);
  int at = 0;
  for (const auto& [q, axis] : factors) {
    if (q < at || q >= total)
      throw IndexOutOfRangeError("pauli_string: qubit out of order or range");
    if (q > at) out = kron(out, identity_op<Real>(Eigen::Index(1) << (q - at)));
    out = kron(out, pauli<Real>(axis));
    at = q + 1;
  }
  if (at < total)
    out = kron(out, identity_op<Real>(Eigen::Index(1) << (total - at)));
  return out;
}

// System-bath coupling restricted to one Pauli sector:
//   sum_j sigma_j^axis (x) (J sum_i sigma_i^axis / 2^{d_ij}).
template <typename Real>
Matrix<Real> build_h_sb_sector(const Geometry& g, Real coupling, Axis axis) {
  const int total = g.total_count();
  const Eigen::Index dim = Eigen::Index(1) << total;
  Matrix<Real> h = Matrix<Real>::Zero(dim, dim);
  for (int j = 0; j < g.system_count; ++j)
    for (int i = 0; i < g.bath_count; ++i) {
      const int bq = g.system_count + i;
      const Real w =
          coupling / std::pow(Real(2), Real(g.distance(j, bq)));
      h += w * pauli_string<Real>(total, {{j, axis}, {bq, axis}});
    }
  return h;
}

// 1-local system-bath Hamiltonian: every system factor is a single Pauli,
// with bath operators of exponentially decreasing strength in distance.
template <typename Real>
Matrix<Real> build_h_sb(const Geometry& g, Real coupling) {
  Matrix<Real> h = build_h_sb_sector(g, coupling, Axis::x);
  h += build_h_sb_sector(g, coupling, Axis::y);
  h += build_h_sb_sector(g, coupling, Axis::z);
  return h;
}

// Intrabath dipolar coupling beta * sum_{i<j} (YY + ZZ - 2XX) / d^3,
// identity on the system slots.  Single-qubit baths have no internal
// dynamics, so the operator is zero.
template <typename Real>
Matrix<Real> build_h_b(const Geometry& g, Real beta) {
  const int total = g.total_count();
  const Eigen::Index dim = Eigen::Index(1) << total;
  Matrix<Real> h = Matrix<Real>::Zero(dim, dim);
  for (int i = 0; i < g.bath_count; ++i)
    for (int j = i + 1; j < g.bath_count; ++j) {
      const int qa = g.system_count + i;
      const int qb = g.system_count + j;
      const Real d = Real(g.distance(qa, qb));
      const Real w = beta / (d * d * d);
      h += w * pauli_string<Real>(total, {{qa, Axis::y}, {qb, Axis::y}});
      h += w * pauli_string<Real>(total, {{qa, Axis::z}, {qb, Axis::z}});
      h -= Real(2) * w * pauli_string<Real>(total, {{qa, Axis::x}, {qb, Axis::x}});
    }
  return h;
}

// Heisenberg dot product sigma_a . sigma_b on a register of `total` qubits.
template <typename Real>
Matrix<Real> exchange_term(int a, int b, int total) {
  if (a == b || a < 0 || b < 0 || a >= total || b >= total)
    throw IndexOutOfRangeError("exchange_term: bad qubit pair (" +
                               std::to_string(a) + "," + std::to_string(b) + ")");
  const int lo = std::min(a, b), hi = std::max(a, b);
  Matrix<Real> h = pauli_string<Real>(total, {{lo, Axis::x}, {hi, Axis::x}});
  h += pauli_string<Real>(total, {{lo, Axis::y}, {hi, Axis::y}});
  h += pauli_string<Real>(total, {{lo, Axis::z}, {hi, Axis::z}});
  return h;
}

// Weighted sum of exchange couplings between system qubits, embedded on the
// full system (x) bath register (identity on the bath).  Commutes with the
// global Pauli pulses for every pair list.
template <typename Real>
Matrix<Real> build_exchange_generator(
    const std::vector<std::pair<std::pair<int, int>, Real>>& pairs_with_weights,
    int system_count, int bath_count) {
  const int total = system_count + bath_count;
  const Eigen::Index dim = Eigen::Index(1) << total;
  Matrix<Real> h = Matrix<Real>::Zero(dim, dim);
  for (const auto& [pair, w] : pairs_with_weights) {
    if (pair.first < 0 || pair.first >= system_count || pair.second < 0 ||
        pair.second >= system_count || pair.first == pair.second)
      throw IndexOutOfRangeError("build_exchange_generator: pair outside system range");
    h += w * exchange_term<Real>(pair.first, pair.second, total);
  }
  return h;
}

// A decoupling pulse on the system qubits.  Zero width carries the ideal
// unitary P = (x)_j sigma_j^axis; positive width carries the generator
// H_DD = Omega sum_j sigma_j^axis with Omega = pi/(2 delta), so the pulse
// alone implements P up to a global phase over its duration.  Both live on
// the system space; the schedule layer embeds them next to the bath.
template <typename Real>
struct PulseDescriptor {
  Axis axis = Axis::x;
  Real width = 0;
  int system_count = 4;
  Real amplitude = 0;      // Omega, 0 for ideal pulses
  Matrix<Real> ideal;      // (x)_j sigma_j^axis, dim 2^system_count
  Matrix<Real> generator;  // empty when width == 0
};

template <typename Real>
PulseDescriptor<Real> build_pulse(Axis axis, Real width, int system_count) {
  if (width < Real(0)) throw NegativeWidthError("build_pulse: negative width");
  PulseDescriptor<Real> p;
  p.axis = axis;
  p.width = width;
  p.system_count = system_count;
  std::vector<std::pair<int, Axis>> all;
  all.reserve(system_count);
  for (int j = 0; j < system_count; ++j) all.emplace_back(j, axis);
  p.ideal = pauli_string<Real>(system_count, all);
  if (width > Real(0)) {
    const Real pi = std::acos(Real(-1));
    p.amplitude = pi / (Real(2) * width);
    const Eigen::Index dim = Eigen::Index(1) << system_count;
    p.generator = Matrix<Real>::Zero(dim, dim);
    for (int j = 0; j < system_count; ++j)
      p.generator += p.amplitude * embed_pauli<Real>(axis, j, system_count);
  }
  return p;
}

// The physical model a run propagates under: geometry, couplings, and the
// always-on Hamiltonians.  bath_scaling multiplies J to stand in for the
// larger bath a small simulation truncates away; see calibrate_bath_scaling.
template <typename Real>
struct SystemModel {
  Geometry geometry;
  Real J = 0;
  Real beta = 0;
  Real bath_scaling = 1;
  std::shared_ptr<const Matrix<Real>> h_sb;
  std::shared_ptr<const Matrix<Real>> h_b;
  std::shared_ptr<const Matrix<Real>> h_env;  // h_sb + h_b, shared by every segment

  int blocks() const { return geometry.system_count / 4; }
  int system_qubits() const { return geometry.system_count; }
  int bath_qubits() const { return geometry.bath_count; }
  Eigen::Index system_dim() const { return Eigen::Index(1) << system_qubits(); }
  Eigen::Index total_dim() const {
    return Eigen::Index(1) << (system_qubits() + bath_qubits());
  }
};

template <typename Real>
SystemModel<Real> build_model(const Geometry& g, Real J, Real beta,
                              Real bath_scaling = Real(1)) {
  SystemModel<Real> m;
  m.geometry = g;
  m.J = J;
  m.beta = beta;
  m.bath_scaling = bath_scaling;
  m.h_sb = std::make_shared<Matrix<Real>>(build_h_sb(g, J * bath_scaling));
  m.h_b = std::make_shared<Matrix<Real>>(build_h_b(g, beta));
  m.h_env = std::make_shared<Matrix<Real>>(*m.h_sb + *m.h_b);
  return m;
}

}  // namespace cddsim
