/*
Copyright 2026 The subring Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "subring/sim.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "subring/pattern.hpp"

namespace subring {
namespace {

constexpr int kMaxEnumeratedBits = 16;

void phase_plan(int n, CollectiveKind phase, const Schedule& bits,
                Topology& current, std::vector<Topology>& out) {
  const int s = log2_exact(n);
  if (phase == CollectiveKind::kAllGather) {
    int first = 0;
    for (int len : bits.segments()) {
      const int last = first + len - 1;
      // Offset of the period's last step: 2^(s-1-last).
      current = apply_reconfiguration(current, s - 1 - last);
      for (int k = first; k <= last; ++k) out.push_back(current);
      first = last + 1;
    }
    return;
  }
  for (int k = 0; k < s; ++k) {
    if (bits.at(k)) current = apply_reconfiguration(current, k);
    out.push_back(current);
  }
}

}  // namespace

Topology Topology::ring(int n) { return with_offset(n, 1); }

Topology Topology::with_offset(int n, std::int64_t offset) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    out[static_cast<std::size_t>(u)] = static_cast<int>((u + offset) % n);
  }
  return Topology(std::move(out));
}

Topology Topology::from_links(std::vector<int> out_links) {
  std::vector<bool> seen(out_links.size(), false);
  for (int v : out_links) {
    if (v < 0 || v >= static_cast<int>(out_links.size()) ||
        seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("out-links must form a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  return Topology(std::move(out_links));
}

std::vector<int> Topology::cycle_from(int u) const {
  std::vector<int> cycle{u};
  for (int v = out_link(u); v != u; v = out_link(v)) cycle.push_back(v);
  return cycle;
}

Topology apply_reconfiguration(const Topology& t, int k) {
  const int s = log2_exact(t.size());
  if (k < 0 || k >= s) {
    throw Error(ErrorCode::kStepOutOfRange, "k",
                "step " + std::to_string(k) + " outside [0, s)");
  }
  return Topology::with_offset(t.size(), std::int64_t{1} << k);
}

std::optional<std::int64_t> route_hops(const Topology& t, int src, int dst) {
  std::int64_t hops = 0;
  int v = src;
  while (v != dst) {
    v = t.out_link(v);
    ++hops;
    if (v == src) return std::nullopt;
  }
  return hops;
}

ReachabilityViolation::ReachabilityViolation(int step, int node)
    : Error(ErrorCode::kReachabilityViolation, "schedule",
            "node " + std::to_string(node) + " cannot reach its peer in step " +
                std::to_string(step)),
      step_(step),
      node_(node) {}

std::vector<Topology> topology_plan(int n, CollectiveKind kind,
                                    const Schedule& schedule) {
  const int s = log2_exact(n);
  if (schedule.size() != collective_steps(n, kind)) {
    throw Error(ErrorCode::kLengthMismatch, "schedule",
                "schedule length does not match the collective");
  }
  std::vector<Topology> plan;
  plan.reserve(static_cast<std::size_t>(schedule.size()));
  auto current = Topology::ring(n);
  if (kind == CollectiveKind::kAllReduce) {
    phase_plan(n, CollectiveKind::kReduceScatter, schedule.slice(0, s), current,
               plan);
    phase_plan(n, CollectiveKind::kAllGather, schedule.slice(s, s), current,
               plan);
  } else {
    phase_plan(n, kind, schedule, current, plan);
  }
  return plan;
}

std::vector<StepMeasurement> measure_steps(int n, CollectiveKind kind,
                                           const Schedule& schedule,
                                           std::span<const Topology> plan) {
  const int total = collective_steps(n, kind);
  if (static_cast<int>(plan.size()) != total || schedule.size() != total) {
    throw Error(ErrorCode::kLengthMismatch, "plan",
                "one topology per step is required");
  }
  std::vector<StepMeasurement> out;
  out.reserve(plan.size());
  std::vector<std::int64_t> load(static_cast<std::size_t>(n));
  for (int k = 0; k < total; ++k) {
    const auto& topo = plan[static_cast<std::size_t>(k)];
    StepMeasurement m;
    m.step = k;
    m.reconfigured = schedule.at(k);
    m.per_node_hops.resize(static_cast<std::size_t>(n));
    std::fill(load.begin(), load.end(), 0);
    for (int u = 0; u < n; ++u) {
      const int dst = peer(u, k, n, kind);
      std::int64_t hops = 0;
      // Each flow occupies every link on its route; load is indexed by the
      // link's source node.
      for (int v = u; v != dst; v = topo.out_link(v)) {
        ++load[static_cast<std::size_t>(v)];
        ++hops;
        if (topo.out_link(v) == u) throw ReachabilityViolation(k, u);
      }
      m.per_node_hops[static_cast<std::size_t>(u)] = hops;
    }
    m.max_link_load = *std::max_element(load.begin(), load.end());
    m.min_link_load = std::numeric_limits<std::int64_t>::max();
    for (auto l : load) {
      if (l > 0) m.min_link_load = std::min(m.min_link_load, l);
    }
    if (m.max_link_load == 0) m.min_link_load = 0;
    out.push_back(std::move(m));
  }
  return out;
}

CostTrace trace_from_measurements(const CostParams& params, CollectiveKind kind,
                                  const Schedule& schedule,
                                  std::span<const StepMeasurement> measured) {
  std::vector<std::int64_t> hops;
  std::vector<std::int64_t> loads;
  for (const auto& m : measured) {
    hops.push_back(*std::max_element(m.per_node_hops.begin(),
                                     m.per_node_hops.end()));
    loads.push_back(m.max_link_load);
  }
  return trace_from_steps(params, kind, schedule, hops, loads);
}

SimResult run_with_topologies(const CostParams& params, CollectiveKind kind,
                              const Schedule& schedule,
                              std::span<const Topology> plan) {
  validate_params(params);
  SimResult result;
  result.measurements = measure_steps(params.n, kind, schedule, plan);
  result.trace =
      trace_from_measurements(params, kind, schedule, result.measurements);
  return result;
}

SimResult run_schedule(const CostParams& params, CollectiveKind kind,
                       const Schedule& schedule) {
  validate_params(params);
  if (!params.full_ports()) {
    throw Error(ErrorCode::kPortRange, "z",
                "the simulator models full reconfigurability only (z = 2n)");
  }
  const auto plan = topology_plan(params.n, kind, schedule);
  return run_with_topologies(params, kind, schedule, plan);
}

ScheduleEnumerator::ScheduleEnumerator(int n, CollectiveKind kind)
    : n_(n), kind_(kind) {
  const int s = log2_exact(n);
  const int bits = collective_steps(n, kind);
  if (bits > kMaxEnumeratedBits) {
    throw Error(ErrorCode::kTooManySteps, "n",
                "brute force is limited to " +
                    std::to_string(kMaxEnumeratedBits) + " schedule bits");
  }
  // Bit 0 of every phase stays clear.
  std::vector<int> free_positions;
  for (int k = 0; k < bits; ++k) {
    if (k % s != 0) free_positions.push_back(k);
  }
  const auto count = std::size_t{1} << free_positions.size();
  schedules_.reserve(count);
  measured_.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<bool> x(static_cast<std::size_t>(bits), false);
    for (std::size_t j = 0; j < free_positions.size(); ++j) {
      if (mask & (std::size_t{1} << j)) {
        x[static_cast<std::size_t>(free_positions[j])] = true;
      }
    }
    auto schedule = Schedule::from_bits(std::move(x));
    const auto plan = topology_plan(n, kind, schedule);
    measured_.push_back(measure_steps(n, kind, schedule, plan));
    schedules_.push_back(std::move(schedule));
  }
}

std::vector<BruteForceResult> ScheduleEnumerator::all(
    const CostParams& params) const {
  std::vector<BruteForceResult> out;
  out.reserve(schedules_.size());
  for (std::size_t i = 0; i < schedules_.size(); ++i) {
    const auto trace =
        trace_from_measurements(params, kind_, schedules_[i], measured_[i]);
    out.push_back({schedules_[i], trace.total_s});
  }
  return out;
}

std::optional<BruteForceResult> ScheduleEnumerator::optimum(
    const CostParams& params, std::optional<int> reconfigs) const {
  if (params.n != n_) {
    throw Error(ErrorCode::kLengthMismatch, "n",
                "parameters do not match the enumerated network size");
  }
  std::optional<BruteForceResult> best;
  for (std::size_t i = 0; i < schedules_.size(); ++i) {
    const auto& schedule = schedules_[i];
    if (reconfigs && schedule.reconfigurations() != *reconfigs) continue;
    const double total =
        trace_from_measurements(params, kind_, schedule, measured_[i]).total_s;
    if (!best || total < best->total_s ||
        (total == best->total_s && positions_before(schedule, best->schedule))) {
      best = BruteForceResult{schedule, total};
    }
  }
  return best;
}

BruteForceResult brute_force_optimum(const CostParams& params,
                                     CollectiveKind kind,
                                     std::optional<int> reconfigs) {
  validate_params(params);
  const ScheduleEnumerator enumerator(params.n, kind);
  auto best = enumerator.optimum(params, reconfigs);
  if (!best) {
    throw Error(ErrorCode::kRTooLarge, "R",
                "no schedule has exactly " + std::to_string(*reconfigs) +
                    " reconfigurations");
  }
  return *best;
}

}  // namespace subring
