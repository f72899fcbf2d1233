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

#include "subring/optimizer.hpp"

#include <cmath>
#include <limits>

#include "subring/exact_sum.hpp"
#include "subring/pattern.hpp"

namespace subring {
namespace {

constexpr double kTieTolerance = 1e-13;

void check_reconfigs(int steps, int reconfigs) {
  if (reconfigs < 0 || reconfigs >= steps) {
    throw Error(ErrorCode::kRTooLarge, "R",
                "R = " + std::to_string(reconfigs) + " must be in [0, " +
                    std::to_string(steps) + ")");
  }
}

bool clearly_less(double a, double b) {
  return a < b - kTieTolerance * std::max(std::fabs(a), std::fabs(b));
}

std::string_view note_for(CollectiveKind kind) {
  switch (kind) {
    case CollectiveKind::kAllToAll: return "periodic";
    case CollectiveKind::kReduceScatter: return "dp-exact";
    case CollectiveKind::kAllGather: return "reversed-dp";
    case CollectiveKind::kAllReduce: return "composed";
  }
  return "";
}

}  // namespace

Schedule optimal_a2a_schedule(int steps, int reconfigs) {
  check_reconfigs(steps, reconfigs);
  const int parts = reconfigs + 1;
  std::vector<int> segments(static_cast<std::size_t>(parts), steps / parts);
  for (int j = 0; j < steps % parts; ++j) ++segments[static_cast<std::size_t>(j)];
  return Schedule::from_segments(segments);
}

Schedule min_cost_partition(int steps, int parts, const SegmentCost& cost) {
  check_reconfigs(steps, parts - 1);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto width = static_cast<std::size_t>(parts + 1);
  // best[i * width + j]: cheapest cover of [i, steps) by j segments.
  std::vector<double> best(static_cast<std::size_t>(steps + 1) * width, kInf);
  std::vector<int> cut(best.size(), -1);
  auto at = [width](int i, int j) {
    return static_cast<std::size_t>(i) * width + static_cast<std::size_t>(j);
  };
  best[at(steps, 0)] = 0.0;
  for (int i = steps - 1; i >= 0; --i) {
    for (int j = 1; j <= parts && j <= steps - i; ++j) {
      // Scan ascending so the first segment stays as short as ties allow.
      for (int last = i; last <= steps - j; ++last) {
        const double rest = best[at(last + 1, j - 1)];
        if (rest == kInf) continue;
        const double candidate = cost(i, last) + rest;
        if (cut[at(i, j)] < 0 || clearly_less(candidate, best[at(i, j)])) {
          best[at(i, j)] = candidate;
          cut[at(i, j)] = last;
        }
      }
    }
  }
  std::vector<int> segments;
  for (int i = 0, j = parts; j > 0; --j) {
    const int last = cut[at(i, j)];
    segments.push_back(last - i + 1);
    i = last + 1;
  }
  return Schedule::from_segments(segments);
}

Schedule transmission_optimal_rs_schedule(int steps, int reconfigs) {
  return min_cost_partition(steps, reconfigs + 1, [](int first, int last) {
    return std::ldexp(static_cast<double>(last - first + 1), -first);
  });
}

double rs_transmission_objective(const Schedule& schedule) {
  double total = 0.0;
  int first = 0;
  for (int len : schedule.segments()) {
    total += std::ldexp(static_cast<double>(len), -first);
    first += len;
  }
  return total;
}

Schedule optimal_rs_schedule(const CostParams& params, int reconfigs) {
  const int s = params.steps();
  check_reconfigs(s, reconfigs);
  const auto kind = CollectiveKind::kReduceScatter;
  return min_cost_partition(s, reconfigs + 1, [&](int first, int last) {
    ExactSum sum;
    for (int k = first; k <= last; ++k) {
      const auto h = segment_hops(k, Period{first, last}, params, kind);
      sum.add(params.alpha_s);
      sum.add(static_cast<double>(h) * params.alpha_h);
      sum.add(step_bytes(k, params, kind) *
              static_cast<double>(congestion(k, h)) * params.beta);
    }
    if (first > 0) sum.add(params.delta);
    return sum.value();
  });
}

Schedule optimal_ag_schedule(const CostParams& params, int reconfigs) {
  return optimal_rs_schedule(params, reconfigs).reversed_segments();
}

Schedule optimal_allreduce_schedule(const CostParams& params, int reconfigs) {
  const int s = params.steps();
  if (reconfigs < 0 || reconfigs > 2 * (s - 1)) {
    throw Error(ErrorCode::kRTooLarge, "R",
                "AllReduce R must be in [0, 2(s-1)]");
  }
  Schedule best;
  double best_total = std::numeric_limits<double>::infinity();
  for (int r_rs = std::min(reconfigs, s - 1); r_rs >= 0; --r_rs) {
    const int r_ag = reconfigs - r_rs;
    if (r_ag > s - 1) break;
    const auto candidate = Schedule::concat(optimal_rs_schedule(params, r_rs),
                                            optimal_ag_schedule(params, r_ag));
    const double total =
        evaluate_schedule(params, CollectiveKind::kAllReduce, candidate)
            .total_s;
    if (best.size() == 0 || total < best_total ||
        (total == best_total && positions_before(candidate, best))) {
      best = candidate;
      best_total = total;
    }
  }
  return best;
}

Schedule optimal_schedule(const CostParams& params, CollectiveKind kind,
                          int reconfigs) {
  switch (kind) {
    case CollectiveKind::kAllToAll:
      return optimal_a2a_schedule(params.steps(), reconfigs);
    case CollectiveKind::kReduceScatter:
      return optimal_rs_schedule(params, reconfigs);
    case CollectiveKind::kAllGather:
      return optimal_ag_schedule(params, reconfigs);
    case CollectiveKind::kAllReduce:
      return optimal_allreduce_schedule(params, reconfigs);
  }
  return {};
}

int max_reconfigs(const CostParams& params, CollectiveKind kind) {
  const int s = params.steps();
  return kind == CollectiveKind::kAllReduce ? 2 * (s - 1) : s - 1;
}

ScheduleReport make_report(const CostParams& params, CollectiveKind kind,
                           const Schedule& schedule) {
  auto trace = evaluate_schedule(params, kind, schedule);
  ScheduleReport report;
  report.schedule = schedule;
  report.kind = kind;
  report.total_s = trace.total_s;
  report.trace = std::move(trace.steps);
  report.r_chosen = schedule.reconfigurations();
  report.objective_note = std::string(note_for(kind));
  return report;
}

ScheduleReport optimal_r(const CostParams& params, CollectiveKind kind) {
  validate_params(params);
  std::vector<ScheduleReport> candidates;
  for (int r = 0; r <= max_reconfigs(params, kind); ++r) {
    candidates.push_back(
        make_report(params, kind, optimal_schedule(params, kind, r)));
  }
  std::size_t chosen = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].total_s < candidates[chosen].total_s) chosen = i;
  }
  return std::move(candidates[chosen]);
}

}  // namespace subring
