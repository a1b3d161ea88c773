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
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "cddsim/dfs.hpp"
#include "cddsim/errors.hpp"
#include "cddsim/field.hpp"
#include "cddsim/model.hpp"

namespace cddsim {

enum class SegmentKind { interval, pulse };

// One timed slice of the run.  Intervals evolve under a gate-plus-coupling
// generator; pulses either carry the control generator (finite width) or an
// ideal unitary (zero width).  The label names physically identical
// segments so propagators can be cached and reused.
template <typename Real>
struct Segment {
  SegmentKind kind = SegmentKind::interval;
  Real duration = 0;
  std::shared_ptr<const Matrix<Real>> generator;  // null for ideal pulses
  std::shared_ptr<const Matrix<Real>> ideal;      // null unless zero-width pulse
  std::string label;
};

// Interned recursion DAG over segment prototypes.  Ids below leaf_count
// refer to prototypes; the rest index `nodes`, whose entries list child ids
// in time order (first child earliest).  Identical subtrees intern to the
// same id, which is what lets the propagator compute a level-n block once
// and reuse it four times per level.
struct ScheduleStructure {
  int leaf_count = 0;
  std::vector<std::vector<int>> nodes;
  int root = -1;

  bool is_leaf(int id) const { return id < leaf_count; }
  const std::vector<int>& children(int id) const { return nodes[id - leaf_count]; }
  int node_count() const { return int(nodes.size()); }
};

namespace detail {

class StructureInterner {
 public:
  explicit StructureInterner(int leaf_count) { structure_.leaf_count = leaf_count; }

  int intern(const std::vector<int>& children) {
    auto it = cache_.find(children);
    if (it != cache_.end()) return it->second;
    const int id = structure_.leaf_count + int(structure_.nodes.size());
    structure_.nodes.push_back(children);
    cache_.emplace(children, id);
    return id;
  }

  ScheduleStructure take(int root) {
    structure_.root = root;
    return std::move(structure_);
  }

 private:
  ScheduleStructure structure_;
  std::map<std::vector<int>, int> cache_;
};

}  // namespace detail

template <typename Real>
struct Schedule {
  std::vector<Segment<Real>> prototypes;  // one per leaf id
  ScheduleStructure structure;
  int level = -1;  // concatenation level; -1 for free evolution
  Real tau0 = 0;
  Real total_time = 0;

  // Flat leaf ids in time order (earliest first).
  std::vector<int> expand_ids() const {
    std::vector<int> out;
    std::function<void(int)> walk = [&](int id) {
      if (structure.is_leaf(id)) {
        out.push_back(id);
        return;
      }
      for (int child : structure.children(id)) walk(child);
    };
    if (structure.root >= 0) walk(structure.root);
    return out;
  }

  std::vector<Segment<Real>> segments() const {
    std::vector<Segment<Real>> out;
    for (int id : expand_ids()) out.push_back(prototypes[id]);
    return out;
  }

  int interval_count() const {
    int n = 0;
    for (int id : expand_ids())
      if (prototypes[id].kind == SegmentKind::interval) ++n;
    return n;
  }

  int pulse_count() const {
    int n = 0;
    for (int id : expand_ids())
      if (prototypes[id].kind == SegmentKind::pulse) ++n;
    return n;
  }

  Real total_interval_time() const {
    Real t = 0;
    for (int id : expand_ids())
      if (prototypes[id].kind == SegmentKind::interval) t += prototypes[id].duration;
    return t;
  }
};

// Hamilton (largest remainder) apportionment of `total` slots over
// nonnegative weights, with every entry guaranteed at least one slot.
// Deterministic: ties resolve to the lowest index.
inline std::vector<int> largest_remainder_allocation(
    int total, const std::vector<double>& weights) {
  const int k = int(weights.size());
  if (k == 0) return {};
  if (total < k)
    throw TooFewIntervalsError("largest_remainder_allocation: " +
                               std::to_string(total) + " slots for " +
                               std::to_string(k) + " entries");
  double sum = 0;
  for (double w : weights) {
    if (w < 0) throw ValidationError("allocation weights must be nonnegative");
    sum += w;
  }
  std::vector<int> alloc(k, 0);
  if (sum <= 0) {
    // Degenerate: spread evenly.
    for (int i = 0; i < k; ++i) alloc[i] = total / k + (i < total % k ? 1 : 0);
    return alloc;
  }
  std::vector<double> frac(k);
  int assigned = 0;
  for (int i = 0; i < k; ++i) {
    const double quota = double(total) * weights[i] / sum;
    alloc[i] = int(std::floor(quota));
    frac[i] = quota - std::floor(quota);
    assigned += alloc[i];
  }
  int rem = total - assigned;
  while (rem > 0) {
    int best = 0;
    for (int i = 1; i < k; ++i)
      if (frac[i] > frac[best]) best = i;
    alloc[best] += 1;
    frac[best] = -1;
    --rem;
  }
  // Minimum one slot each: an op is never dropped, only its share shrinks.
  for (int i = 0; i < k; ++i) {
    while (alloc[i] == 0) {
      int donor = 0;
      for (int j = 1; j < k; ++j)
        if (alloc[j] > alloc[donor]) donor = j;
      alloc[donor] -= 1;
      alloc[i] += 1;
    }
  }
  return alloc;
}

namespace detail {

template <typename Real>
struct PulseLeaves {
  int x = -1;
  int z = -1;
};

// Make the two pulse prototypes for this run: ideal Pauli products for
// zero width, finite rectangular pulses under H_DD + H_SB + H_B otherwise.
template <typename Real>
PulseLeaves<Real> make_pulse_prototypes(std::vector<Segment<Real>>& prototypes,
                                        const SystemModel<Real>& model,
                                        Real delta) {
  const Eigen::Index bath_dim = Eigen::Index(1) << model.bath_qubits();
  PulseLeaves<Real> leaves;
  for (Axis axis : {Axis::x, Axis::z}) {
    Segment<Real> seg;
    seg.kind = SegmentKind::pulse;
    seg.duration = delta;
    seg.label = std::string("pulse:") + axis_char(axis);
    const auto pulse = build_pulse<Real>(axis, delta, model.system_qubits());
    if (delta == Real(0)) {
      seg.ideal = std::make_shared<Matrix<Real>>(
          kron(pulse.ideal, identity_op<Real>(bath_dim)));
    } else {
      seg.generator = std::make_shared<Matrix<Real>>(
          kron(pulse.generator, identity_op<Real>(bath_dim)) + *model.h_env);
    }
    const int id = int(prototypes.size());
    prototypes.push_back(std::move(seg));
    (axis == Axis::x ? leaves.x : leaves.z) = id;
  }
  return leaves;
}

// Recursive CDD structure: a level-(m+1) node wraps four level-m blocks as
// [block, X, block, Z, block, X, block, Z] in time order, which reads
// right-to-left as the product Z[.]X[.]Z[.]X[.].
inline int build_cdd_structure(int level, const std::function<int(long)>& interval_leaf,
                               int px, int pz, StructureInterner& interner,
                               long& cursor) {
  if (level == 0) return interval_leaf(cursor++);
  std::vector<int> children;
  children.reserve(8);
  for (int quarter = 0; quarter < 4; ++quarter) {
    children.push_back(
        build_cdd_structure(level - 1, interval_leaf, px, pz, interner, cursor));
    children.push_back(quarter % 2 == 0 ? px : pz);
  }
  return interner.intern(children);
}

}  // namespace detail

// CDD schedule with one uniform interval generator (quantum memory when the
// generator is just the always-on couplings).
template <typename Real>
Schedule<Real> cdd_schedule(int level,
                            std::shared_ptr<const Matrix<Real>> interval_generator,
                            Real tau0, Real delta, const SystemModel<Real>& model,
                            const std::string& interval_label = "iv:mem") {
  if (level < 0) throw NegativeLevelError("cdd_schedule: negative level");
  if (delta < Real(0)) throw NegativeWidthError("cdd_schedule: negative pulse width");
  Schedule<Real> s;
  s.level = level;
  s.tau0 = tau0;
  Segment<Real> interval{SegmentKind::interval, tau0, std::move(interval_generator),
                         nullptr, interval_label};
  s.prototypes.push_back(std::move(interval));
  const int interval_id = 0;
  detail::PulseLeaves<Real> pulses;
  if (level > 0) pulses = detail::make_pulse_prototypes(s.prototypes, model, delta);
  detail::StructureInterner interner(int(s.prototypes.size()));
  long cursor = 0;
  const int root = detail::build_cdd_structure(
      level, [&](long) { return interval_id; }, pulses.x, pulses.z, interner, cursor);
  s.structure = interner.take(root);
  const double intervals = std::pow(4.0, level);
  const double pulse_count = level == 0 ? 0.0 : (std::pow(4.0, level + 1) - 4.0) / 3.0;
  s.total_time = Real(intervals) * tau0 + Real(pulse_count) * delta;
  return s;
}

// Periodic DD: the level-1 base block repeated k times, no nesting.
template <typename Real>
Schedule<Real> pdd_schedule(int repetitions,
                            std::shared_ptr<const Matrix<Real>> interval_generator,
                            Real tau0, Real delta, const SystemModel<Real>& model,
                            const std::string& interval_label = "iv:mem") {
  if (repetitions < 1)
    throw NonPositiveRepetitionsError("pdd_schedule: repetitions must be >= 1");
  if (delta < Real(0)) throw NegativeWidthError("pdd_schedule: negative pulse width");
  Schedule<Real> s;
  s.level = 1;
  s.tau0 = tau0;
  Segment<Real> interval{SegmentKind::interval, tau0, std::move(interval_generator),
                         nullptr, interval_label};
  s.prototypes.push_back(std::move(interval));
  auto pulses = detail::make_pulse_prototypes(s.prototypes, model, delta);
  detail::StructureInterner interner(int(s.prototypes.size()));
  long cursor = 0;
  const int base = detail::build_cdd_structure(
      1, [&](long) { return 0; }, pulses.x, pulses.z, interner, cursor);
  const int root = interner.intern(std::vector<int>(repetitions, base));
  s.structure = interner.take(root);
  s.total_time = Real(4 * repetitions) * tau0 + Real(4 * repetitions) * delta;
  return s;
}

// Unprotected evolution over total time T: the gate's elementary operations
// run back to back (time shares proportional to their angles, couplings
// scaled so each accumulated angle is exact) with the bath couplings on and
// no pulses.  Memory reduces to a single interval.
template <typename Real>
Schedule<Real> free_evolution_schedule(const LogicalGate<Real>& gate, Real total_time,
                                       const SystemModel<Real>& model) {
  if (total_time <= Real(0))
    throw ValidationError("free_evolution_schedule: total time must be positive");
  Schedule<Real> s;
  s.level = -1;
  s.tau0 = total_time;
  std::vector<int> chain;
  if (gate.ops.empty()) {
    s.prototypes.push_back(Segment<Real>{SegmentKind::interval, total_time,
                                         model.h_env, nullptr, "free:mem"});
    chain.push_back(0);
  } else {
    Real weight_sum = 0;
    for (const auto& op : gate.ops) weight_sum += std::abs(op.angle);
    const int k = int(gate.ops.size());
    for (int i = 0; i < k; ++i) {
      const auto& op = gate.ops[i];
      const Real share = weight_sum > Real(0)
                             ? std::abs(op.angle) / weight_sum
                             : Real(1) / Real(k);
      const Real duration = total_time * share;
      if (duration == Real(0)) continue;  // zero-angle op contributes nothing
      const Real coupling = op.angle / duration;
      auto gen = std::make_shared<Matrix<Real>>(
          coupling * exchange_term<Real>(
                         op.a, op.b, model.system_qubits() + model.bath_qubits()) +
          *model.h_env);
      s.prototypes.push_back(Segment<Real>{SegmentKind::interval, duration,
                                           std::move(gen), nullptr,
                                           "free:" + std::to_string(i)});
      chain.push_back(int(s.prototypes.size()) - 1);
    }
    if (chain.empty()) {  // all angles zero: plain exposure
      s.prototypes.push_back(Segment<Real>{SegmentKind::interval, total_time,
                                           model.h_env, nullptr, "free:mem"});
      chain.push_back(0);
    }
  }
  detail::StructureInterner interner(int(s.prototypes.size()));
  s.structure = interner.take(interner.intern(chain));
  s.total_time = total_time;
  return s;
}

// Decouple while compute: the gate is spread over the whole CDD-n sequence.
// The 4^n intervals are apportioned to the gate's elementary operations by
// largest-remainder allocation on their angles; within an operation's block
// the exchange coupling is scaled so the accumulated angle is exact.  An
// operation is never split across a pulse.  Level 0 is bare evolution for
// tau0 (no pulses), which for multi-operation gates runs the operations
// back to back inside the single interval.
template <typename Real>
Schedule<Real> decouple_while_compute(const LogicalGate<Real>& gate, int level,
                                      Real tau0, Real delta,
                                      const SystemModel<Real>& model) {
  if (level < 0) throw NegativeLevelError("decouple_while_compute: negative level");
  if (4 * gate.blocks != model.system_qubits())
    throw DimensionMismatchError("decouple_while_compute: gate blocks vs model");
  if (level == 0) {
    Schedule<Real> s = free_evolution_schedule(gate, tau0, model);
    s.level = 0;
    s.tau0 = tau0;
    return s;
  }
  const long intervals = 1L << (2 * level);
  const int k = int(gate.ops.size());
  if (k == 0)
    return cdd_schedule<Real>(level, model.h_env, tau0, delta, model);
  if (long(k) > intervals)
    throw TooFewIntervalsError(
        "decouple_while_compute: gate has " + std::to_string(k) +
        " operations but CDD-" + std::to_string(level) + " has only " +
        std::to_string(intervals) + " intervals; raise the level");

  std::vector<double> weights(k);
  for (int i = 0; i < k; ++i) weights[i] = std::abs(double(gate.ops[i].angle));
  const std::vector<int> alloc = largest_remainder_allocation(int(intervals), weights);

  Schedule<Real> s;
  s.level = level;
  s.tau0 = tau0;
  const int total_q = model.system_qubits() + model.bath_qubits();
  std::vector<int> op_leaf(k);
  for (int i = 0; i < k; ++i) {
    const Real coupling = gate.ops[i].angle / (Real(alloc[i]) * tau0);
    auto gen = std::make_shared<Matrix<Real>>(
        coupling * exchange_term<Real>(gate.ops[i].a, gate.ops[i].b, total_q) +
        *model.h_env);
    s.prototypes.push_back(Segment<Real>{SegmentKind::interval, tau0, std::move(gen),
                                         nullptr, "iv:op" + std::to_string(i)});
    op_leaf[i] = int(s.prototypes.size()) - 1;
  }
  auto pulses = detail::make_pulse_prototypes(s.prototypes, model, delta);

  // Interval index -> owning operation, contiguous blocks in op order.
  std::vector<int> owner(intervals);
  {
    long at = 0;
    for (int i = 0; i < k; ++i)
      for (int c = 0; c < alloc[i]; ++c) owner[at++] = i;
  }
  detail::StructureInterner interner(int(s.prototypes.size()));
  long cursor = 0;
  const int root = detail::build_cdd_structure(
      level, [&](long idx) { return op_leaf[owner[idx]]; }, pulses.x, pulses.z,
      interner, cursor);
  s.structure = interner.take(root);
  const double pulse_count = (std::pow(4.0, level + 1) - 4.0) / 3.0;
  s.total_time = Real(double(intervals)) * tau0 + Real(pulse_count) * delta;
  return s;
}

// Decouple then compute: a CDD-n quantum-memory sequence followed by the
// gate at full strength, one tau0 interval per elementary operation, with
// the bath couplings still on.
template <typename Real>
Schedule<Real> decouple_then_compute(const LogicalGate<Real>& gate, int level,
                                     Real tau0, Real delta,
                                     const SystemModel<Real>& model) {
  if (level < 0) throw NegativeLevelError("decouple_then_compute: negative level");
  if (delta < Real(0))
    throw NegativeWidthError("decouple_then_compute: negative pulse width");
  if (4 * gate.blocks != model.system_qubits())
    throw DimensionMismatchError("decouple_then_compute: gate blocks vs model");
  if (gate.ops.empty())
    return cdd_schedule<Real>(level, model.h_env, tau0, delta, model);

  Schedule<Real> s;
  s.level = level;
  s.tau0 = tau0;
  s.prototypes.push_back(
      Segment<Real>{SegmentKind::interval, tau0, model.h_env, nullptr, "iv:mem"});
  const int mem_id = 0;
  detail::PulseLeaves<Real> pulses;
  if (level > 0) pulses = detail::make_pulse_prototypes(s.prototypes, model, delta);
  const int total_q = model.system_qubits() + model.bath_qubits();
  std::vector<int> gate_ids;
  for (int i = 0; i < int(gate.ops.size()); ++i) {
    const auto& op = gate.ops[i];
    const Real coupling = op.angle / tau0;
    auto gen = std::make_shared<Matrix<Real>>(
        coupling * exchange_term<Real>(op.a, op.b, total_q) + *model.h_env);
    s.prototypes.push_back(Segment<Real>{SegmentKind::interval, tau0, std::move(gen),
                                         nullptr, "gate:" + std::to_string(i)});
    gate_ids.push_back(int(s.prototypes.size()) - 1);
  }
  detail::StructureInterner interner(int(s.prototypes.size()));
  long cursor = 0;
  const int cdd_root = detail::build_cdd_structure(
      level, [&](long) { return mem_id; }, pulses.x, pulses.z, interner, cursor);
  std::vector<int> chain;
  chain.push_back(cdd_root);
  for (int id : gate_ids) chain.push_back(id);
  s.structure = interner.take(interner.intern(chain));
  const double intervals = std::pow(4.0, level);
  const double pulse_count = level == 0 ? 0.0 : (std::pow(4.0, level + 1) - 4.0) / 3.0;
  s.total_time = Real(intervals) * tau0 + Real(pulse_count) * delta +
                 Real(int(gate.ops.size())) * tau0;
  return s;
}

}  // namespace cddsim
