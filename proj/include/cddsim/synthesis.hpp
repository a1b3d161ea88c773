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

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "cddsim/dfs.hpp"
#include "cddsim/errors.hpp"
#include "cddsim/field.hpp"

namespace cddsim {
namespace detail {

// Derivative of exp(-i phi sigma.sigma) applied to columns:
//   dU/dphi = e^{i phi} [ (i cos 2phi - 2 sin 2phi) I
//                       + (sin 2phi - 2 i cos 2phi) SWAP ].
template <typename Real>
void apply_swap_combo(int bit_a, int bit_b, Complex<Real> ci, Complex<Real> cs,
                      const Matrix<Real>& in, Matrix<Real>& out) {
  const Eigen::Index dim = in.rows();
  out.resize(dim, in.cols());
  for (Eigen::Index col = 0; col < in.cols(); ++col)
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
      const Eigen::Index swapped =
          (idx & ~((Eigen::Index(1) << bit_a) | (Eigen::Index(1) << bit_b))) |
          (((idx >> bit_a) & 1) << bit_b) | (((idx >> bit_b) & 1) << bit_a);
      out(idx, col) = ci * in(idx, col) + cs * in(swapped, col);
    }
}

template <typename Real>
struct SequenceWork {
  // Forward states F_k = U_k ... U_1 B and backward rows G_k = B^dag U_L ... U_{k+1}.
  std::vector<Matrix<Real>> forward;
  std::vector<Matrix<Real>> backward;
};

// Logical matrix of the sequence plus per-angle derivatives, for the damped
// least squares solver below.
template <typename Real>
Matrix<Real> sequence_logical_with_grad(
    const std::vector<std::pair<int, int>>& pairs,
    const std::vector<Real>& angles, int blocks,
    std::vector<Matrix<Real>>* grads) {
  const int n = 4 * blocks;
  const auto basis = logical_basis_vectors<Real>(blocks);
  const Eigen::Index dim = Eigen::Index(1) << n;
  const Eigen::Index nb = Eigen::Index(basis.size());
  Matrix<Real> b(dim, nb);
  for (Eigen::Index c = 0; c < nb; ++c) b.col(c) = basis[c];

  const size_t L = pairs.size();
  std::vector<Matrix<Real>> fwd(L + 1);
  fwd[0] = b;
  for (size_t k = 0; k < L; ++k) {
    ExchangeOp<Real> op{pairs[k].first, pairs[k].second, angles[k]};
    fwd[k + 1] = fwd[k];
    apply_exchange(op, n, fwd[k + 1]);
  }
  Matrix<Real> logical = b.adjoint() * fwd[L];
  if (!grads) return logical;

  grads->assign(L, Matrix<Real>());
  // bwd = B^dag U_L ... U_{k+1}, built by applying ops to the bra side.
  Matrix<Real> bwd = b.adjoint();
  for (size_t kk = L; kk-- > 0;) {
    const int bit_a = n - 1 - pairs[kk].first;
    const int bit_b = n - 1 - pairs[kk].second;
    const Real phi = angles[kk];
    const Real c2 = std::cos(Real(2) * phi), s2 = std::sin(Real(2) * phi);
    const Complex<Real> phase = std::exp(Complex<Real>(0, phi));
    // d/dphi applied to the forward state F_{kk}.
    Matrix<Real> dcols;
    apply_swap_combo<Real>(bit_a, bit_b,
                           phase * Complex<Real>(-Real(2) * s2, c2),
                           phase * Complex<Real>(s2, -Real(2) * c2), fwd[kk],
                           dcols);
    (*grads)[kk] = bwd * dcols;
    if (kk > 0) {
      // Fold U_kk into the bra side: bwd <- bwd * U_kk, i.e. apply U_kk^T
      // to bwd^T.  U is symmetric in this basis (SWAP and I are), so
      // right-multiplication equals applying the same combo to rows.
      Matrix<Real> t = bwd.transpose();
      Matrix<Real> tt;
      apply_swap_combo<Real>(bit_a, bit_b, phase * c2,
                             phase * Complex<Real>(0, -s2), t, tt);
      bwd = tt.transpose();
    }
  }
  return logical;
}

struct LeastSquaresOptions {
  int max_iterations = 400;
  double cost_tol = 1e-28;   // squared residual norm
  double stall_tol = 1e-30;  // minimum improvement per accepted step
};

// Damped least squares (Levenberg-Marquardt) fit of an exchange sequence to
// a logical target up to a global phase.  Parameters are the angles plus
// the phase gamma.  Returns the final max-entry phase-stripped distance.
template <typename Real>
Real fit_sequence(const std::vector<std::pair<int, int>>& pairs,
                  const Matrix<Real>& target, int blocks,
                  std::vector<Real>& angles, const LeastSquaresOptions& opt) {
  const size_t L = pairs.size();
  const Eigen::Index nb = target.rows();
  const Eigen::Index nres = 2 * nb * nb;
  const Eigen::Index npar = Eigen::Index(L) + 1;

  Matrix<Real> m = sequence_logical_with_grad<Real>(pairs, angles, blocks, nullptr);
  const Complex<Real> ov0 = (target.adjoint() * m).trace();
  Real gamma = std::abs(ov0) > Real(0) ? std::arg(ov0) : Real(0);

  auto residual_of = [&](const Matrix<Real>& logical, Real g,
                         RealVector<Real>& r) {
    const Complex<Real> ph = std::exp(Complex<Real>(0, g));
    r.resize(nres);
    Eigen::Index at = 0;
    for (Eigen::Index c = 0; c < nb; ++c)
      for (Eigen::Index rr = 0; rr < nb; ++rr) {
        const Complex<Real> d = logical(rr, c) - ph * target(rr, c);
        r(at++) = d.real();
        r(at++) = d.imag();
      }
  };

  RealVector<Real> r;
  residual_of(m, gamma, r);
  Real cost = r.squaredNorm();
  Real lambda = Real(1e-3);

  std::vector<Matrix<Real>> grads;
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (cost < Real(opt.cost_tol)) break;
    m = sequence_logical_with_grad<Real>(pairs, angles, blocks, &grads);
    residual_of(m, gamma, r);
    cost = r.squaredNorm();

    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> jac(nres, npar);
    const Complex<Real> ph = std::exp(Complex<Real>(0, gamma));
    for (size_t k = 0; k < L; ++k) {
      Eigen::Index at = 0;
      for (Eigen::Index c = 0; c < nb; ++c)
        for (Eigen::Index rr = 0; rr < nb; ++rr) {
          const Complex<Real> d = grads[k](rr, c);
          jac(at++, Eigen::Index(k)) = d.real();
          jac(at++, Eigen::Index(k)) = d.imag();
        }
    }
    {
      Eigen::Index at = 0;
      for (Eigen::Index c = 0; c < nb; ++c)
        for (Eigen::Index rr = 0; rr < nb; ++rr) {
          const Complex<Real> d = -Complex<Real>(0, 1) * ph * target(rr, c);
          jac(at++, npar - 1) = d.real();
          jac(at++, npar - 1) = d.imag();
        }
    }

    const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> jtj =
        jac.transpose() * jac;
    const RealVector<Real> jtr = jac.transpose() * r;
    bool accepted = false;
    for (int tries = 0; tries < 40 && lambda < Real(1e12); ++tries) {
      Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> a = jtj;
      a.diagonal().array() += lambda;
      const RealVector<Real> step = a.ldlt().solve(-jtr);
      std::vector<Real> trial = angles;
      for (size_t k = 0; k < L; ++k) trial[k] += step(Eigen::Index(k));
      const Real trial_gamma = gamma + step(npar - 1);
      const Matrix<Real> mt =
          sequence_logical_with_grad<Real>(pairs, trial, blocks, nullptr);
      RealVector<Real> rt;
      residual_of(mt, trial_gamma, rt);
      const Real trial_cost = rt.squaredNorm();
      if (trial_cost < cost) {
        const Real gain = cost - trial_cost;
        angles = trial;
        gamma = trial_gamma;
        cost = trial_cost;
        lambda = std::max(lambda / Real(3), Real(1e-14));
        accepted = true;
        if (gain < Real(opt.stall_tol)) it = opt.max_iterations;  // converged
        break;
      }
      lambda *= Real(4);
    }
    if (!accepted) break;
  }

  std::vector<ExchangeOp<Real>> ops(L);
  for (size_t k = 0; k < L; ++k)
    ops[k] = ExchangeOp<Real>{pairs[k].first, pairs[k].second, angles[k]};
  const auto projected = exchange_sequence_logical(ops, blocks);
  return phase_stripped_distance<Real>(projected.logical, target);
}

// The logical action of one exchange is periodic in the angle with period
// pi/2 up to a global phase; fold into (-pi/4, pi/4] for reproducible output.
template <typename Real>
Real normalize_exchange_angle(Real phi) {
  const Real pi = std::acos(Real(-1));
  const Real period = pi / Real(2);
  Real folded = phi - period * std::round(phi / period);
  if (folded <= -period / Real(2)) folded += period;
  return folded;
}

}  // namespace detail

// Exchange-only synthesis of a logical single-block gate: at most three
// operations alternating the (1,2) and (2,3) physical pairs (0-based (0,1)
// and (1,2)).  Deterministic: fixed start lattices, first hit wins.
template <typename Real>
std::vector<ExchangeOp<Real>> synthesize_single_qubit_gate(
    const Matrix<Real>& target, double tolerance = 1e-10) {
  if (target.rows() != 2 || target.cols() != 2)
    throw DimensionMismatchError("synthesize_single_qubit_gate: target must be 2x2");
  if (unitarity_defect(target) > Real(1e-12))
    throw ValidationError("synthesize_single_qubit_gate: target not unitary");

  if (phase_stripped_distance<Real>(identity_op<Real>(2), target) < Real(tolerance))
    return {};

  const std::vector<std::vector<std::pair<int, int>>> patterns_by_count[3] = {
      {{{0, 1}}, {{1, 2}}},
      {{{0, 1}, {1, 2}}, {{1, 2}, {0, 1}}},
      {{{0, 1}, {1, 2}, {0, 1}}, {{1, 2}, {0, 1}, {1, 2}}},
  };
  const Real start_lattice[5] = {Real(-0.9), Real(-0.45), Real(0.15),
                                 Real(0.45), Real(0.9)};

  detail::LeastSquaresOptions opt;
  for (int count = 1; count <= 3; ++count) {
    for (const auto& pairs : patterns_by_count[count - 1]) {
      const int npts = 5;
      int total = 1;
      for (int k = 0; k < count; ++k) total *= npts;
      for (int idx = 0; idx < total; ++idx) {
        std::vector<Real> angles(count);
        int rem = idx;
        for (int k = 0; k < count; ++k) {
          angles[k] = start_lattice[rem % npts];
          rem /= npts;
        }
        const Real dist =
            detail::fit_sequence<Real>(pairs, target, 1, angles, opt);
        if (dist < Real(tolerance)) {
          std::vector<ExchangeOp<Real>> ops(count);
          for (int k = 0; k < count; ++k)
            ops[k] = ExchangeOp<Real>{
                pairs[k].first, pairs[k].second,
                detail::normalize_exchange_angle(angles[k])};
          const auto check = exchange_sequence_logical(ops, 1);
          if (phase_stripped_distance<Real>(check.logical, target) <
              Real(tolerance))
            return ops;
        }
      }
    }
  }
  throw SynthesisFailedError(
      "synthesize_single_qubit_gate: no exchange sequence of <= 3 ops reached tolerance");
}

struct CphaseSynthesisOptions {
  int length = 42;         // number of elementary exchange operations
  unsigned seed = 12345;   // start-vector stream
  int max_starts = 64;
  double accept_tolerance = 1e-8;  // first sequence below this is kept...
  double verify_tolerance = 1e-10; // ...then polished to at least this
};

// Numerical search for a controlled-phase exchange sequence on two code
// blocks.  Operations cycle through the nearest-neighbor chain pairs of the
// eight system qubits; angles are fit by damped least squares from seeded
// random starts and polished once a basin below accept_tolerance is found.
template <typename Real>
std::vector<ExchangeOp<Real>> synthesize_cphase(const CphaseSynthesisOptions& options) {
  if (options.length < 1)
    throw SynthesisFailedError("synthesize_cphase: length must be positive");
  const std::vector<std::pair<int, int>> chain = {{0, 1}, {1, 2}, {2, 3}, {3, 4},
                                                  {4, 5}, {5, 6}, {6, 7}};
  std::vector<std::pair<int, int>> pairs(options.length);
  for (int k = 0; k < options.length; ++k) pairs[k] = chain[k % chain.size()];

  const Matrix<Real> target = cphase_target<Real>();
  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);

  detail::LeastSquaresOptions coarse;
  coarse.max_iterations = 250;
  detail::LeastSquaresOptions polish;
  polish.max_iterations = 200;
  polish.cost_tol = 1e-30;

  for (int start = 0; start < options.max_starts; ++start) {
    std::vector<Real> angles(options.length);
    for (auto& a : angles) a = Real(dist(rng));
    Real d = detail::fit_sequence<Real>(pairs, target, 2, angles, coarse);
    if (d >= Real(options.accept_tolerance)) continue;
    d = detail::fit_sequence<Real>(pairs, target, 2, angles, polish);
    if (d >= Real(options.verify_tolerance)) continue;
    std::vector<ExchangeOp<Real>> ops(options.length);
    for (int k = 0; k < options.length; ++k)
      ops[k] = ExchangeOp<Real>{pairs[k].first, pairs[k].second,
                                detail::normalize_exchange_angle(angles[k])};
    const auto check = exchange_sequence_logical(ops, 2);
    if (phase_stripped_distance<Real>(check.logical, target) <
            Real(options.verify_tolerance) &&
        check.leakage < Real(options.verify_tolerance))
      return ops;
  }
  throw SynthesisFailedError(
      "synthesize_cphase: no sequence of length " +
      std::to_string(options.length) + " converged after " +
      std::to_string(options.max_starts) + " starts");
}

}  // namespace cddsim
