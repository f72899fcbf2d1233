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

#include "subring/cost.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subring/exact_sum.hpp"
#include "subring/pattern.hpp"

namespace subring {
namespace {

void check_length(const Schedule& schedule, int expected) {
  if (schedule.size() != expected) {
    throw Error(ErrorCode::kLengthMismatch, "schedule",
                "schedule has " + std::to_string(schedule.size()) +
                    " bits, expected " + std::to_string(expected));
  }
}

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

}  // namespace

Period period_of(int k, const Schedule& schedule) {
  if (k < 0 || k >= schedule.size()) {
    throw Error(ErrorCode::kStepOutOfRange, "k",
                "step " + std::to_string(k) + " outside schedule");
  }
  Period p{k, k};
  while (p.first > 0 && !schedule.at(p.first)) --p.first;
  while (p.last + 1 < schedule.size() && !schedule.at(p.last + 1)) ++p.last;
  return p;
}

std::int64_t segment_hops(int k, Period period, const CostParams& params,
                          CollectiveKind kind) {
  const int s = params.steps();
  if (k < period.first || k > period.last || period.first < 0 ||
      period.last >= s) {
    throw Error(ErrorCode::kStepOutOfRange, "k",
                "step " + std::to_string(k) + " outside its period");
  }
  const std::int64_t block = params.block_size();
  switch (kind) {
    case CollectiveKind::kAllToAll:
    case CollectiveKind::kReduceScatter:
      return std::min(pow2(k), block * pow2(k - period.first));
    case CollectiveKind::kAllGather:
      return std::min(pow2(s - 1 - k), block * pow2(period.last - k));
    case CollectiveKind::kAllReduce:
      break;
  }
  throw Error(ErrorCode::kUnsupportedCombination, "kind",
              "segment_hops takes a single-phase collective");
}

std::int64_t hop_distance(int k, const Schedule& schedule,
                          const CostParams& params, CollectiveKind kind) {
  const int s = params.steps();
  check_length(schedule, collective_steps(params.n, kind));
  if (kind == CollectiveKind::kAllReduce) {
    if (k < 0 || k >= 2 * s) {
      throw Error(ErrorCode::kStepOutOfRange, "k",
                  "step " + std::to_string(k) + " outside [0, 2s)");
    }
    if (k < s) {
      return hop_distance(k, schedule.slice(0, s), params,
                          CollectiveKind::kReduceScatter);
    }
    return hop_distance(k - s, schedule.slice(s, s), params,
                        CollectiveKind::kAllGather);
  }
  return segment_hops(k, period_of(k, schedule), params, kind);
}

std::int64_t congestion(int /*k*/, std::int64_t hops) { return hops; }

CostTrace trace_from_steps(const CostParams& params, CollectiveKind kind,
                           const Schedule& schedule,
                           std::span<const std::int64_t> hops,
                           std::span<const std::int64_t> congestion) {
  const int total_steps = collective_steps(params.n, kind);
  check_length(schedule, total_steps);
  if (static_cast<int>(hops.size()) != total_steps ||
      static_cast<int>(congestion.size()) != total_steps) {
    throw Error(ErrorCode::kLengthMismatch, "hops",
                "per-step measurements do not cover every step");
  }
  const int s = params.steps();
  CostTrace trace;
  trace.steps.reserve(static_cast<std::size_t>(total_steps));
  ExactSum running;
  for (int k = 0; k < total_steps; ++k) {
    StepCost step;
    step.step = k;
    step.phase = kind;
    if (kind == CollectiveKind::kAllReduce) {
      step.phase = k < s ? CollectiveKind::kReduceScatter
                         : CollectiveKind::kAllGather;
    }
    step.hops = hops[static_cast<std::size_t>(k)];
    step.congestion = congestion[static_cast<std::size_t>(k)];
    step.bytes = step_bytes(k, params, kind);
    step.startup_s = params.alpha_s;
    step.hop_s = static_cast<double>(step.hops) * params.alpha_h;
    step.tx_s = step.bytes * static_cast<double>(step.congestion) * params.beta;
    step.reconfig_s = schedule.at(k) ? params.delta : 0.0;
    running.add(step.startup_s);
    running.add(step.hop_s);
    running.add(step.tx_s);
    running.add(step.reconfig_s);
    step.cumulative_s = running.value();
    trace.steps.push_back(step);
  }
  trace.total_s = running.value();
  trace.r = schedule.reconfigurations();
  return trace;
}

CostTrace evaluate_schedule(const CostParams& params, CollectiveKind kind,
                            const Schedule& schedule) {
  const int total_steps = collective_steps(params.n, kind);
  check_length(schedule, total_steps);
  std::vector<std::int64_t> hops(static_cast<std::size_t>(total_steps));
  std::vector<std::int64_t> loads(hops.size());
  for (int k = 0; k < total_steps; ++k) {
    const auto h = hop_distance(k, schedule, params, kind);
    hops[static_cast<std::size_t>(k)] = h;
    loads[static_cast<std::size_t>(k)] = congestion(k, h);
  }
  return trace_from_steps(params, kind, schedule, hops, loads);
}

CostTrace evaluate_allreduce(const CostParams& params, const Schedule& rs,
                             const Schedule& ag) {
  const int s = params.steps();
  check_length(rs, s);
  check_length(ag, s);
  return evaluate_schedule(params, CollectiveKind::kAllReduce,
                           Schedule::concat(rs, ag));
}

double a2a_cost_closed_form(const CostParams& params, int reconfigs) {
  const int s = params.steps();
  if (reconfigs < 0 || reconfigs >= s) {
    throw Error(ErrorCode::kRTooLarge, "R",
                "R = " + std::to_string(reconfigs) + " must be in [0, s)");
  }
  if (s % (reconfigs + 1) != 0 || !params.full_ports()) {
    throw Error(ErrorCode::kIndivisibleR, "R",
                "closed form needs (R+1) | s and z = 2n");
  }
  const double c = params.alpha_h + params.beta * params.m / 2.0;
  const double root = std::exp2(s / (reconfigs + 1));
  return s * params.alpha_s + (reconfigs + 1) * c * (root - 1.0) +
         reconfigs * params.delta;
}

CumulativeTable cumulative_comparison(const CostParams& params,
                                      CollectiveKind kind,
                                      std::span<const Schedule> schedules) {
  CumulativeTable table;
  const int total_steps = collective_steps(params.n, kind);
  for (const auto& schedule : schedules) {
    check_length(schedule, total_steps);
    const auto trace = evaluate_schedule(params, kind, schedule);
    std::vector<double> column;
    column.reserve(trace.steps.size());
    for (const auto& step : trace.steps) column.push_back(step.cumulative_s);
    table.schedules.push_back(schedule);
    table.cumulative.push_back(std::move(column));
  }
  return table;
}

}  // namespace subring
