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

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cddsim/dfs.hpp"
#include "cddsim/errors.hpp"
#include "cddsim/field.hpp"
#include "cddsim/model.hpp"
#include "cddsim/records.hpp"
#include "cddsim/sequence.hpp"

namespace cddsim {

enum class Strategy { while_compute, then_compute, free_evolution };

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::while_compute: return "while";
    case Strategy::then_compute: return "then";
    case Strategy::free_evolution: return "free";
  }
  return "?";
}

inline Strategy strategy_from_string(const std::string& s) {
  if (s == "while") return Strategy::while_compute;
  if (s == "then") return Strategy::then_compute;
  if (s == "free") return Strategy::free_evolution;
  throw ValidationError("unknown strategy '" + s + "'");
}

// Unitaries memoized over the schedule's interned ids: leaves (segment
// prototypes) and recursion nodes alike.  Identical generators with
// identical durations share a leaf id by construction, so each distinct
// generator is diagonalized exactly once per run.
template <typename Real>
struct PropagatorCache {
  std::vector<std::optional<Matrix<Real>>> by_id;
  int eigendecompositions = 0;

  void reset(size_t ids) {
    by_id.assign(ids, std::nullopt);
    eigendecompositions = 0;
  }
};

namespace detail {

// Left-multiply by an ideal global pulse without a matrix product: X-bar
// permutes rows (all system bits flip), Z-bar scales rows by the parity of
// the system bits.  Exact, and identical to the dense product.
template <typename Real>
void apply_ideal_pulse_left(Axis axis, int system_qubits, int bath_qubits,
                            Matrix<Real>& m) {
  const Eigen::Index ds = Eigen::Index(1) << system_qubits;
  const Eigen::Index db = Eigen::Index(1) << bath_qubits;
  if (m.rows() != ds * db)
    throw DimensionMismatchError("apply_ideal_pulse_left: dim mismatch");
  if (axis == Axis::x) {
    for (Eigen::Index s = 0; s < ds; ++s) {
      const Eigen::Index partner = (~s) & (ds - 1);
      if (partner <= s) continue;
      for (Eigen::Index b = 0; b < db; ++b)
        m.row(s * db + b).swap(m.row(partner * db + b));
    }
  } else if (axis == Axis::z) {
    for (Eigen::Index s = 0; s < ds; ++s) {
      if (__builtin_popcountll((unsigned long long)s) % 2 == 0) continue;
      for (Eigen::Index b = 0; b < db; ++b) m.row(s * db + b) *= Real(-1);
    }
  } else {
    throw ValidationError("apply_ideal_pulse_left: pulses are x or z");
  }
}

template <typename Real>
Matrix<Real> leaf_unitary(const Segment<Real>& seg, int* eig_count) {
  if (seg.kind == SegmentKind::pulse && seg.ideal) return *seg.ideal;
  if (!seg.generator)
    throw DimensionMismatchError("leaf_unitary: segment has no generator");
  if (eig_count) ++*eig_count;
  return expm_hermitian<Real>(*seg.generator, seg.duration);
}

inline std::optional<Axis> ideal_pulse_axis(const std::string& label) {
  if (label == "pulse:x") return Axis::x;
  if (label == "pulse:z") return Axis::z;
  return std::nullopt;
}

}  // namespace detail

// Time-ordered propagator of the schedule, exploiting the recursion DAG: a
// level-n block is computed once and reused wherever it repeats, so memory
// and single-operation gates cost O(n) block products.  Ideal zero-width
// pulses are applied as row operations rather than dense products.
template <typename Real>
Matrix<Real> propagate(const Schedule<Real>& schedule,
                       const SystemModel<Real>& model,
                       PropagatorCache<Real>* cache = nullptr,
                       int workers = 1) {
  const Eigen::Index dim = model.total_dim();
  if (schedule.structure.root < 0) return identity_op<Real>(dim);
  for (const auto& p : schedule.prototypes)
    if (p.generator && p.generator->rows() != dim)
      throw DimensionMismatchError("propagate: segment generator dim != model dim");

  PropagatorCache<Real> local;
  PropagatorCache<Real>& memo = cache ? *cache : local;
  const size_t ids = schedule.prototypes.size() + schedule.structure.nodes.size();
  if (memo.by_id.size() != ids) memo.reset(ids);

  // Populate leaf unitaries first (optionally in parallel: leaves are
  // independent, so the result is identical to the serial fill).
  std::vector<int> leaf_ids;
  for (int id : schedule.expand_ids())
    if (!memo.by_id[id]) {
      if (std::find(leaf_ids.begin(), leaf_ids.end(), id) == leaf_ids.end())
        leaf_ids.push_back(id);
    }
  if (workers > 1 && leaf_ids.size() > 1 && dim >= 256) {
    std::vector<Matrix<Real>> results(leaf_ids.size());
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        for (size_t at = next.fetch_add(1); at < leaf_ids.size();
             at = next.fetch_add(1))
          results[at] = detail::leaf_unitary(schedule.prototypes[leaf_ids[at]], nullptr);
      });
    for (auto& t : pool) t.join();
    for (size_t at = 0; at < leaf_ids.size(); ++at) {
      memo.by_id[leaf_ids[at]] = std::move(results[at]);
      if (schedule.prototypes[leaf_ids[at]].generator) ++memo.eigendecompositions;
    }
  } else {
    for (int id : leaf_ids)
      memo.by_id[id] = detail::leaf_unitary(schedule.prototypes[id],
                                            &memo.eigendecompositions);
  }

  std::function<const Matrix<Real>&(int)> unitary_of = [&](int id) -> const Matrix<Real>& {
    if (memo.by_id[id]) return *memo.by_id[id];
    const auto& children = schedule.structure.children(id);
    Matrix<Real> acc;
    bool started = false;
    for (int child : children) {
      const bool child_is_ideal_pulse =
          schedule.structure.is_leaf(child) &&
          schedule.prototypes[child].kind == SegmentKind::pulse &&
          schedule.prototypes[child].ideal != nullptr;
      if (!started) {
        acc = unitary_of(child);
        started = true;
        continue;
      }
      if (child_is_ideal_pulse) {
        const auto axis = detail::ideal_pulse_axis(schedule.prototypes[child].label);
        detail::apply_ideal_pulse_left(*axis, model.system_qubits(),
                                       model.bath_qubits(), acc);
      } else {
        acc = unitary_of(child) * acc;
      }
    }
    if (!started) acc = identity_op<Real>(dim);
    memo.by_id[id] = std::move(acc);
    return *memo.by_id[id];
  };
  return unitary_of(schedule.structure.root);
}

// Reference path: plain sequential product over the expanded segment list,
// no recursion reuse.  Kept for the recursion-equivalence checks.
template <typename Real>
Matrix<Real> propagate_sequential(const Schedule<Real>& schedule,
                                  const SystemModel<Real>& model) {
  const Eigen::Index dim = model.total_dim();
  std::vector<std::optional<Matrix<Real>>> leaf_cache(schedule.prototypes.size());
  Matrix<Real> acc = identity_op<Real>(dim);
  for (int id : schedule.expand_ids()) {
    const auto& seg = schedule.prototypes[id];
    if (seg.kind == SegmentKind::pulse && seg.ideal) {
      const auto axis = detail::ideal_pulse_axis(seg.label);
      detail::apply_ideal_pulse_left(*axis, model.system_qubits(),
                                     model.bath_qubits(), acc);
      continue;
    }
    if (!leaf_cache[id])
      leaf_cache[id] = detail::leaf_unitary(seg, nullptr);
    acc = *leaf_cache[id] * acc;
  }
  return acc;
}

// Ideal output state on the system space: the gate target applied to the
// initial logical amplitudes, re-embedded through the code basis.
template <typename Real>
Vector<Real> target_system_state(const LogicalGate<Real>& gate,
                                 const std::vector<std::array<Complex<Real>, 2>>& amps) {
  if (int(amps.size()) != gate.blocks)
    throw DimensionMismatchError("target_system_state: amplitude count");
  Vector<Real> logical(gate.blocks == 1 ? 2 : 4);
  if (gate.blocks == 1) {
    logical << amps[0][0], amps[0][1];
  } else {
    logical << amps[0][0] * amps[1][0], amps[0][0] * amps[1][1],
        amps[0][1] * amps[1][0], amps[0][1] * amps[1][1];
  }
  const Vector<Real> rotated = gate.target * logical;
  const auto basis = logical_basis_vectors<Real>(gate.blocks);
  Vector<Real> out = Vector<Real>::Zero(basis[0].size());
  for (size_t k = 0; k < basis.size(); ++k) out += rotated(Eigen::Index(k)) * basis[k];
  return out;
}

template <typename Real>
struct FidelityValue {
  Real fidelity;
  Real one_minus_f;
};

// F = sqrt(|<psi| rho |psi>|) against the reduced system state of the
// evolved joint state, computed without forming rho.
template <typename Real>
FidelityValue<Real> state_fidelity(const Vector<Real>& joint_out,
                                   const Vector<Real>& system_target,
                                   int bath_qubits) {
  const Eigen::Index db = Eigen::Index(1) << bath_qubits;
  const Eigen::Index ds = system_target.size();
  if (joint_out.size() != ds * db)
    throw DimensionMismatchError("state_fidelity: dims");
  Real overlap = 0;
  for (Eigen::Index b = 0; b < db; ++b) {
    Complex<Real> amp(0);
    for (Eigen::Index s = 0; s < ds; ++s)
      amp += std::conj(system_target(s)) * joint_out(s * db + b);
    overlap += std::norm(amp);
  }
  FidelityValue<Real> f;
  f.fidelity = std::sqrt(std::abs(overlap));
  f.one_minus_f = Real(1) - f.fidelity;
  return f;
}

template <typename Real>
Schedule<Real> build_schedule(const LogicalGate<Real>& gate, Strategy strategy,
                              int n, Real tau0, Real delta,
                              const SystemModel<Real>& model) {
  switch (strategy) {
    case Strategy::while_compute:
      return decouple_while_compute(gate, n, tau0, delta, model);
    case Strategy::then_compute:
      return decouple_then_compute(gate, n, tau0, delta, model);
    case Strategy::free_evolution:
      return free_evolution_schedule(gate, Real(std::pow(4.0, n)) * tau0, model);
  }
  throw ValidationError("build_schedule: bad strategy");
}

// Full pipeline for one parameter point: schedule, propagate, apply to the
// encoded initial state, reduce over the bath, compare with the ideal
// target.  Default initial state is logical one in every block.
template <typename Real>
FidelityRecord simulate(const LogicalGate<Real>& gate, Strategy strategy, int n,
                        Real tau0, Real delta, const SystemModel<Real>& model,
                        const std::vector<std::array<Complex<Real>, 2>>& amps,
                        int workers = 1) {
  const auto t0 = std::chrono::steady_clock::now();
  const Schedule<Real> schedule = build_schedule(gate, strategy, n, tau0, delta, model);
  PropagatorCache<Real> cache;
  const Matrix<Real> u = propagate(schedule, model, &cache, workers);
  const Vector<Real> psi0 = encode(amps, gate.blocks, model.bath_qubits());
  const Vector<Real> psi_out = u * psi0;
  const Vector<Real> psi_target = target_system_state(gate, amps);
  const FidelityValue<Real> f =
      state_fidelity(psi_out, psi_target, model.bath_qubits());
  if (f.fidelity < Real(0) || f.fidelity > Real(1) + Real(1e-12))
    throw ValidationError("simulate: fidelity outside [0, 1+1e-12]");

  FidelityRecord rec;
  rec.gate = gate.name;
  rec.strategy = to_string(strategy);
  rec.n = n;
  rec.tau0_s = double(tau0);
  rec.delta_s = double(delta);
  rec.j_rads = double(model.J);
  rec.beta_rads = double(model.beta);
  rec.fidelity = double(f.fidelity);
  rec.one_minus_f = double(f.one_minus_f);
  const Real floor = fidelity_floor<Real>();
  if (f.one_minus_f < floor) {
    rec.floor_clamped = true;
    rec.log10_one_minus_f = double(std::log10(floor));
  } else {
    rec.floor_clamped = false;
    rec.log10_one_minus_f = double(std::log10(f.one_minus_f));
  }
  rec.precision = precision_name<Real>();
  rec.cphase_source = gate.cphase_source;
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

template <typename Real>
std::vector<std::array<Complex<Real>, 2>> logical_one_amplitudes(int blocks) {
  return std::vector<std::array<Complex<Real>, 2>>(
      blocks, {Complex<Real>(0), Complex<Real>(1)});
}

// Unprotected evolution over time T (the dashed-line baseline).
template <typename Real>
FidelityRecord baseline_free(const LogicalGate<Real>& gate, Real total_time, Real tau0,
                             const SystemModel<Real>& model,
                             const std::vector<std::array<Complex<Real>, 2>>& amps) {
  if (total_time <= Real(0))
    throw ValidationError("baseline_free: total time must be positive");
  const int n = int(std::lround(std::log(double(total_time / tau0)) / std::log(4.0)));
  return simulate(gate, Strategy::free_evolution, n, tau0, Real(0), model, amps);
}

// Average of the pulse-conjugated couplings, measured in spectral norm.
// Zero (to roundoff) means the pulse set satisfies the first-order
// decoupling condition for this coupling operator.
template <typename Real>
Real decoupling_condition_residual(const std::vector<Matrix<Real>>& pulses,
                                   const Matrix<Real>& h_sb) {
  if (pulses.empty()) throw ValidationError("decoupling_condition_residual: no pulses");
  Matrix<Real> avg = Matrix<Real>::Zero(h_sb.rows(), h_sb.cols());
  for (const auto& p : pulses) {
    if (p.rows() != h_sb.rows() || p.cols() != h_sb.cols())
      throw DimensionMismatchError("decoupling_condition_residual: dims");
    avg += p.adjoint() * h_sb * p;
  }
  avg /= Real(pulses.size());
  return spectral_norm<Real>(avg);
}

struct CalibrationPoint {
  int bath_count = 0;
  double one_minus_f = 0;
  bool floor_clamped = false;
};

struct CalibrationReport {
  std::vector<CalibrationPoint> points;
  double slope = 0;      // d log10(1-F) / d N_n
  double intercept = 0;
  double multiplier = 1;  // apply as bath_scaling on the smallest-bath model
};

// Fits log10(1-F) of a short memory run against bath size and reports the
// J multiplier that would make the smallest bath reproduce the largest
// simulated one (quadratic small-coupling scaling of 1-F in J).  The
// multiplier is only reported, never silently applied.
template <typename Real>
CalibrationReport calibrate_bath_scaling(GeometryKind kind, Real coupling_j,
                                         Real coupling_beta, Real tau0,
                                         int min_bath, int max_bath) {
  if (min_bath < 1 || max_bath < min_bath)
    throw ValidationError("calibrate_bath_scaling: bad bath range");
  if (4 + max_bath > 12)
    throw BudgetExceededError("calibrate_bath_scaling: system+bath exceeds 12 qubits");
  LogicalGate<Real> memory{"memory", {}, 1, memory_target<Real>(), ""};
  CalibrationReport report;
  for (int nb = min_bath; nb <= max_bath; ++nb) {
    const Geometry g = build_geometry(kind, 4, nb);
    const SystemModel<Real> model = build_model<Real>(g, coupling_j, coupling_beta);
    const FidelityRecord rec =
        simulate<Real>(memory, Strategy::while_compute, 1, tau0, Real(0), model,
                       logical_one_amplitudes<Real>(1));
    report.points.push_back({nb, rec.one_minus_f, rec.floor_clamped});
  }
  // Linear least squares on log10(1-F) vs bath size.
  const int m = int(report.points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : report.points) {
    const double x = p.bath_count;
    const double y = p.floor_clamped ? std::log10(double(fidelity_floor<Real>()))
                                     : std::log10(p.one_minus_f);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  report.slope = denom != 0 ? (m * sxy - sx * sy) / denom : 0;
  report.intercept = (sy - report.slope * sx) / m;
  const double fitted_small = report.intercept + report.slope * report.points.front().bath_count;
  const double fitted_large = report.intercept + report.slope * report.points.back().bath_count;
  report.multiplier = std::sqrt(std::pow(10.0, fitted_large - fitted_small));
  return report;
}

}  // namespace cddsim
