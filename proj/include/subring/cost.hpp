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
#include <span>
#include <vector>

#include "subring/model.hpp"

namespace subring {

struct CostTrace {
  std::vector<StepCost> steps;
  double total_s = 0.0;
  int r = 0;
};

/// Inclusive step range [first, last] served by one topology.
struct Period {
  int first = 0;
  int last = 0;
};

/// Period containing step k of a single-phase schedule.
Period period_of(int k, const Schedule& schedule);

/// Hop distance of step k inside `period` for a single-phase collective
/// (All-to-All, Reduce-Scatter or AllGather).
///
/// All-to-All and Reduce-Scatter distances restart at one when the period
/// begins and double each step. AllGather distances halve each step and reach
/// one at the end of the period. With fewer than 2n ports a reconfigured
/// distance only shrinks to B = ceil(2n / z) hops and never exceeds the
/// static ring distance.
std::int64_t segment_hops(int k, Period period, const CostParams& params,
                          CollectiveKind kind);

/// Hop distance of step k under `schedule`. For AllReduce the schedule has
/// 2s bits: Reduce-Scatter phase first, AllGather phase second.
std::int64_t hop_distance(int k, const Schedule& schedule,
                          const CostParams& params, CollectiveKind kind);

/// Flows sharing the most loaded link. Bruck's cyclic pattern on a
/// (sub)ring loads every link on a route equally, so this is the hop count.
std::int64_t congestion(int k, std::int64_t hops);

/// Per-step costs of `schedule`. Throws Error{kLengthMismatch} when the
/// schedule does not have collective_steps(n, kind) bits.
CostTrace evaluate_schedule(const CostParams& params, CollectiveKind kind,
                            const Schedule& schedule);

/// AllReduce as Reduce-Scatter followed by AllGather, each with its own
/// schedule. Equivalent to evaluate_schedule on the concatenated schedule.
CostTrace evaluate_allreduce(const CostParams& params, const Schedule& rs,
                             const Schedule& ag);

/// Builds a trace from explicit per-step (hops, congestion) pairs, charging
/// delta at every set bit. Shared by the analytical evaluator and the
/// simulator so both produce traces from the same arithmetic.
CostTrace trace_from_steps(const CostParams& params, CollectiveKind kind,
                           const Schedule& schedule,
                           std::span<const std::int64_t> hops,
                           std::span<const std::int64_t> congestion);

/// s*alpha_s + (R+1) * c * (n^(1/(R+1)) - 1) + R*delta with
/// c = alpha_h + beta*m/2. Only exact when (R+1) divides s and z = 2n;
/// throws Error{kIndivisibleR} otherwise.
double a2a_cost_closed_form(const CostParams& params, int reconfigs);

struct CumulativeTable {
  std::vector<Schedule> schedules;
  /// cumulative[j][k] is the running total of schedules[j] after step k.
  std::vector<std::vector<double>> cumulative;
};

CumulativeTable cumulative_comparison(const CostParams& params,
                                      CollectiveKind kind,
                                      std::span<const Schedule> schedules);

}  // namespace subring
