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

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>
#include <vector>

#include "cddsim/errors.hpp"
#include "cddsim/field.hpp"

namespace cddsim {

enum class Axis { x, y, z };

inline char axis_char(Axis a) {
  switch (a) {
    case Axis::x: return 'x';
    case Axis::y: return 'y';
    case Axis::z: return 'z';
  }
  return '?';
}

template <typename Real>
Matrix<Real> identity_op(Eigen::Index dim) {
  return Matrix<Real>::Identity(dim, dim);
}

template <typename Real>
Matrix<Real> pauli(Axis axis) {
  Matrix<Real> p(2, 2);
  const Complex<Real> i(0, 1);
  switch (axis) {
    case Axis::x:
      p << Real(0), Real(1), Real(1), Real(0);
      break;
    case Axis::y:
      p << Complex<Real>(0), -i, i, Complex<Real>(0);
      break;
    case Axis::z:
      p << Real(1), Real(0), Real(0), Real(-1);
      break;
  }
  return p;
}

// Kronecker product with a's index as the slow (most significant) index.
template <typename Real>
Matrix<Real> kron(const Matrix<Real>& a, const Matrix<Real>& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  Matrix<Real> out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j)
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

// Single-qubit Pauli embedded at position `qubit` (0-based; qubit 0 is the
// most significant tensor slot) of a register of `total` qubits.
template <typename Real>
Matrix<Real> embed_pauli(Axis axis, int qubit, int total) {
  if (qubit < 0 || qubit >= total)
    throw IndexOutOfRangeError("embed_pauli: qubit " + std::to_string(qubit) +
                               " outside register of " + std::to_string(total));
  const Eigen::Index left = Eigen::Index(1) << qubit;
  const Eigen::Index right = Eigen::Index(1) << (total - qubit - 1);
  return kron(kron(identity_op<Real>(left), pauli<Real>(axis)),
              identity_op<Real>(right));
}

template <typename Real>
Real max_abs(const Matrix<Real>& m) {
  return m.cwiseAbs().maxCoeff();
}

template <typename Real>
Real max_abs_diff(const Matrix<Real>& a, const Matrix<Real>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatchError("max_abs_diff: shape mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

template <typename Real>
Real hermiticity_defect(const Matrix<Real>& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Real>
Real unitarity_defect(const Matrix<Real>& u) {
  return (u * u.adjoint() - identity_op<Real>(u.rows())).cwiseAbs().maxCoeff();
}

template <typename Real>
bool is_hermitian(const Matrix<Real>& h) {
  const Real scale = std::max(Real(1), max_abs(h));
  return hermiticity_defect(h) < scaled_tol<Real>(1e-12) * scale;
}

template <typename Real>
void require_hermitian(const Matrix<Real>& h, const char* where) {
  if (h.rows() != h.cols())
    throw DimensionMismatchError(std::string(where) + ": matrix not square");
  if (!is_hermitian(h))
    throw NotHermitianError(std::string(where) + ": matrix fails Hermiticity check");
}

// e^{-i h t} via full Hermitian eigendecomposition.  Exact unitarity up to
// eigensolver error; the propagator layer caches results so each distinct
// generator is decomposed once per run.
template <typename Real>
Matrix<Real> expm_hermitian(const Matrix<Real>& h, Real t) {
  require_hermitian(h, "expm_hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(h);
  const RealVector<Real>& evals = es.eigenvalues();
  const Matrix<Real>& evecs = es.eigenvectors();
  Vector<Real> phases(evals.size());
  const Complex<Real> mi(0, -1);
  for (Eigen::Index k = 0; k < evals.size(); ++k)
    phases(k) = std::exp(mi * evals(k) * t);
  return evecs * phases.asDiagonal() * evecs.adjoint();
}

// Reduced system density operator; bath qubits occupy the trailing tensor
// slots, so the trace is a contiguous block sum.
template <typename Real>
Matrix<Real> partial_trace_bath(const Matrix<Real>& rho, int system_qubits,
                                int bath_qubits) {
  const Eigen::Index ds = Eigen::Index(1) << system_qubits;
  const Eigen::Index db = Eigen::Index(1) << bath_qubits;
  if (rho.rows() != rho.cols() || rho.rows() != ds * db)
    throw DimensionMismatchError(
        "partial_trace_bath: rho dim " + std::to_string(rho.rows()) +
        " != 2^(" + std::to_string(system_qubits) + "+" +
        std::to_string(bath_qubits) + ")");
  Matrix<Real> out = Matrix<Real>::Zero(ds, ds);
  for (Eigen::Index r = 0; r < ds; ++r)
    for (Eigen::Index c = 0; c < ds; ++c) {
      Complex<Real> sum(0);
      for (Eigen::Index k = 0; k < db; ++k) sum += rho(r * db + k, c * db + k);
      out(r, c) = sum;
    }
  return out;
}

// Same reduction taken directly from a pure joint state; avoids forming the
// joint density matrix.
template <typename Real>
Matrix<Real> reduced_density_from_state(const Vector<Real>& psi,
                                        int system_qubits, int bath_qubits) {
  const Eigen::Index ds = Eigen::Index(1) << system_qubits;
  const Eigen::Index db = Eigen::Index(1) << bath_qubits;
  if (psi.size() != ds * db)
    throw DimensionMismatchError("reduced_density_from_state: state dim");
  Eigen::Map<const Matrix<Real>> a(psi.data(), db, ds);  // column-major: psi[s*db+b] = a(b,s)
  return (a.adjoint() * a).conjugate();
}

template <typename Real>
Real spectral_norm(const Matrix<Real>& h) {
  require_hermitian(h, "spectral_norm");
  Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Right-to-left product: ops.back() acts first.  An empty list composes to
// the identity of `empty_dim`.
template <typename Real>
Matrix<Real> compose(const std::vector<Matrix<Real>>& ops,
                     Eigen::Index empty_dim = 1) {
  if (ops.empty()) return identity_op<Real>(empty_dim);
  for (const auto& m : ops)
    if (m.rows() != ops.front().rows() || m.cols() != ops.front().cols())
      throw DimensionMismatchError("compose: operand dims differ");
  Matrix<Real> acc = ops.back();
  for (auto it = ops.rbegin() + 1; it != ops.rend(); ++it) acc = (*it) * acc;
  return acc;
}

// min over a global phase e^{i gamma} of max-entry |u - e^{i gamma} v|.
// Seeded from the Frobenius-optimal phase, then refined by golden-section
// search on the max-entry metric.
template <typename Real>
Real phase_stripped_distance(const Matrix<Real>& u, const Matrix<Real>& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw DimensionMismatchError("phase_stripped_distance: shape mismatch");
  auto dist = [&](Real gamma) {
    const Complex<Real> ph = std::exp(Complex<Real>(0, gamma));
    return (u - ph * v).cwiseAbs().maxCoeff();
  };
  const Complex<Real> overlap = (v.adjoint() * u).trace();
  Real best_gamma = std::abs(overlap) > Real(0) ? std::arg(overlap) : Real(0);
  Real best = dist(best_gamma);
  const Real pi = std::acos(Real(-1));
  for (int k = 0; k < 64; ++k) {
    const Real g = -pi + Real(2) * pi * Real(k) / Real(64);
    const Real d = dist(g);
    if (d < best) {
      best = d;
      best_gamma = g;
    }
  }
  Real lo = best_gamma - pi / Real(16), hi = best_gamma + pi / Real(16);
  const Real gr = (std::sqrt(Real(5)) - 1) / 2;
  Real a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  Real fa = dist(a), fb = dist(b);
  for (int it = 0; it < 200 && hi - lo > Real(1e-18); ++it) {
    if (fa < fb) {
      hi = b; b = a; fb = fa;
      a = hi - gr * (hi - lo); fa = dist(a);
    } else {
      lo = a; a = b; fa = fb;
      b = lo + gr * (hi - lo); fb = dist(b);
    }
  }
  return std::min(best, std::min(fa, fb));
}

}  // namespace cddsim
