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

#include <functional>
#include <string>
#include <vector>

#include "subring/cost.hpp"
#include "subring/model.hpp"

namespace subring {

struct ScheduleReport {
  Schedule schedule;
  CollectiveKind kind = CollectiveKind::kAllToAll;
  double total_s = 0.0;
  std::vector<StepCost> trace;
  int r_chosen = 0;
  std::string objective_note;  // periodic | dp-exact | reversed-dp | composed
};

/// Balanced All-to-All schedule: R+1 segments whose lengths differ by at
/// most one, longer segments first. Throws Error{kRTooLarge} unless R < s.
Schedule optimal_a2a_schedule(int steps, int reconfigs);

/// Cost of one segment [first, last] (inclusive) as a function of its
/// endpoints. Reconfiguration charges are the caller's concern.
using SegmentCost = std::function<double(int first, int last)>;

/// Partitions [0, steps) into exactly parts contiguous segments minimizing
/// the summed segment cost. Near-equal costs (relative 1e-13) resolve to the
/// lexicographically earliest reconfiguration positions.
Schedule min_cost_partition(int steps, int parts, const SegmentCost& cost);

/// Reduce-Scatter schedule minimizing only the transmission objective
/// sum over segments [a, b] of (b - a + 1) / 2^a.
Schedule transmission_optimal_rs_schedule(int steps, int reconfigs);

/// The transmission objective of a Reduce-Scatter schedule.
double rs_transmission_objective(const Schedule& schedule);

/// Reduce-Scatter schedule with exactly R reconfigurations minimizing the
/// full cost (startup, hops, transmission, reconfiguration).
Schedule optimal_rs_schedule(const CostParams& params, int reconfigs);

/// Reverse of the optimal Reduce-Scatter segments. The topology in place
/// before step 0 is set up outside the collective and is not charged.
Schedule optimal_ag_schedule(const CostParams& params, int reconfigs);

/// Best 2s-bit AllReduce schedule with R reconfigurations split between the
/// Reduce-Scatter and AllGather phases.
Schedule optimal_allreduce_schedule(const CostParams& params, int reconfigs);

/// Optimal schedule for a fixed R; dispatches on kind.
Schedule optimal_schedule(const CostParams& params, CollectiveKind kind,
                          int reconfigs);

/// Largest R searched: s - 1, or 2(s - 1) for AllReduce.
int max_reconfigs(const CostParams& params, CollectiveKind kind);

/// Evaluates `schedule` and packages it.
ScheduleReport make_report(const CostParams& params, CollectiveKind kind,
                           const Schedule& schedule);

/// Searches every feasible R and returns the cheapest schedule; ties go to
/// the smaller R.
ScheduleReport optimal_r(const CostParams& params, CollectiveKind kind);

}  // namespace subring
