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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "subring/cost.hpp"
#include "subring/model.hpp"

namespace subring {

/// OCS configuration: every node has exactly one outgoing optical link.
class Topology {
 public:
  /// out_link(u) = (u + 1) mod n.
  static Topology ring(int n);
  /// out_link(u) = (u + offset) mod n.
  static Topology with_offset(int n, std::int64_t offset);
  /// Arbitrary out-link map. Throws std::invalid_argument unless it is a
  /// permutation of [0, n).
  static Topology from_links(std::vector<int> out_links);

  int size() const { return static_cast<int>(out_.size()); }
  int out_link(int u) const { return out_[static_cast<std::size_t>(u)]; }
  const std::vector<int>& out_links() const { return out_; }
  /// Nodes visited from u by following out-links until u is seen again.
  std::vector<int> cycle_from(int u) const;

  bool operator==(const Topology&) const = default;

 private:
  explicit Topology(std::vector<int> out) : out_(std::move(out)) {}
  std::vector<int> out_;
};

/// Links every node u to u + 2^k. The input topology is left unchanged.
Topology apply_reconfiguration(const Topology& t, int k);

/// Out-link applications needed from src to dst, or nullopt when dst is on a
/// different cycle.
std::optional<std::int64_t> route_hops(const Topology& t, int src, int dst);

struct StepMeasurement {
  int step = 0;
  std::vector<std::int64_t> per_node_hops;
  std::int64_t max_link_load = 0;
  std::int64_t min_link_load = 0;  // over links carrying any flow
  bool reconfigured = false;
};

class ReachabilityViolation : public Error {
 public:
  ReachabilityViolation(int step, int node);
  int step() const noexcept { return step_; }
  int node() const noexcept { return node_; }

 private:
  int step_;
  int node_;
};

/// Topology in force during each step of `schedule`. All-to-All and
/// Reduce-Scatter switch to offset 2^k at every set bit. AllGather switches
/// to the offset of the last step of the upcoming period so distances shrink
/// to one at the period end; its first period is set up before step 0.
std::vector<Topology> topology_plan(int n, CollectiveKind kind,
                                    const Schedule& schedule);

/// Routes every node's flow to its peer on the given per-step topologies and
/// counts hops and per-link loads. Throws ReachabilityViolation when a peer
/// sits on another cycle.
std::vector<StepMeasurement> measure_steps(int n, CollectiveKind kind,
                                           const Schedule& schedule,
                                           std::span<const Topology> plan);

struct SimResult {
  std::vector<StepMeasurement> measurements;
  CostTrace trace;
};

/// Executes the schedule on an explicit topology. Requires z = 2n.
SimResult run_schedule(const CostParams& params, CollectiveKind kind,
                       const Schedule& schedule);

/// As run_schedule, but on caller-provided per-step topologies.
SimResult run_with_topologies(const CostParams& params, CollectiveKind kind,
                              const Schedule& schedule,
                              std::span<const Topology> plan);

/// Cost trace from measured hops and loads.
CostTrace trace_from_measurements(const CostParams& params, CollectiveKind kind,
                                  const Schedule& schedule,
                                  std::span<const StepMeasurement> measured);

struct BruteForceResult {
  Schedule schedule;
  double total_s = 0.0;
};

/// Every schedule with no reconfiguration before the first step of a phase,
/// simulated once. Measurements do not depend on cost parameters, so one
/// enumerator serves any number of parameter points.
class ScheduleEnumerator {
 public:
  /// Throws Error{kTooManySteps} beyond 16 schedule bits.
  ScheduleEnumerator(int n, CollectiveKind kind);

  /// Cheapest schedule, optionally restricted to exactly R reconfigurations.
  /// Exact ties resolve to the lexicographically earliest positions.
  std::optional<BruteForceResult> optimum(const CostParams& params,
                                          std::optional<int> reconfigs) const;

  /// Every schedule's total cost under `params`, in enumeration order.
  std::vector<BruteForceResult> all(const CostParams& params) const;

  int n() const { return n_; }
  CollectiveKind kind() const { return kind_; }

 private:
  int n_;
  CollectiveKind kind_;
  std::vector<Schedule> schedules_;
  std::vector<std::vector<StepMeasurement>> measured_;
};

BruteForceResult brute_force_optimum(const CostParams& params,
                                     CollectiveKind kind,
                                     std::optional<int> reconfigs);

}  // namespace subring
