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

#include "subring/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "subring/exact_sum.hpp"
#include "subring/pattern.hpp"

namespace subring {
namespace {

void require_support(CollectiveKind kind, BaselineAlgorithm algorithm,
                     const std::string& name) {
  if (!baseline_supports(kind, algorithm)) {
    throw Error(ErrorCode::kUnsupportedCombination, "baseline",
                name + " is not defined for " + std::string(to_string(kind)));
  }
}

CostTrace ring_trace(const CostParams& params, CollectiveKind kind) {
  const int phases = kind == CollectiveKind::kAllReduce ? 2 : 1;
  const int per_phase = params.n - 1;
  const double chunk = params.m / params.n;
  CostTrace trace;
  ExactSum running;
  for (int k = 0; k < phases * per_phase; ++k) {
    StepCost step;
    step.step = k;
    step.phase = kind;
    if (kind == CollectiveKind::kAllReduce) {
      step.phase = k < per_phase ? CollectiveKind::kReduceScatter
                                 : CollectiveKind::kAllGather;
    }
    step.hops = 1;
    step.congestion = 1;
    step.bytes = chunk;
    step.startup_s = params.alpha_s;
    step.hop_s = params.alpha_h;
    step.tx_s = chunk * params.beta;
    running.add(step.startup_s);
    running.add(step.hop_s);
    running.add(step.tx_s);
    step.cumulative_s = running.value();
    trace.steps.push_back(step);
  }
  trace.total_s = running.value();
  return trace;
}

}  // namespace

std::string BaselineKind::name() const {
  switch (algorithm) {
    case BaselineAlgorithm::kSBruck: return "sbruck";
    case BaselineAlgorithm::kGBruck: return "gbruck";
    case BaselineAlgorithm::kRing: return "ring";
    case BaselineAlgorithm::kHDStatic: return "hd";
    case BaselineAlgorithm::kRHD: return "rhd";
  }
  return "unknown";
}

bool baseline_supports(CollectiveKind kind, BaselineAlgorithm algorithm) {
  switch (algorithm) {
    case BaselineAlgorithm::kSBruck:
    case BaselineAlgorithm::kGBruck:
      return true;
    case BaselineAlgorithm::kRing:
    case BaselineAlgorithm::kHDStatic:
    case BaselineAlgorithm::kRHD:
      return kind != CollectiveKind::kAllToAll;
  }
  return false;
}

Schedule greedy_schedule(const CostParams& params, CollectiveKind kind) {
  const int s = params.steps();
  std::vector<bool> phase(static_cast<std::size_t>(s), true);
  phase.front() = false;
  const auto one = Schedule::from_bits(phase);
  return kind == CollectiveKind::kAllReduce ? Schedule::concat(one, one) : one;
}

int max_rhd_reconfigs(const CostParams& params, CollectiveKind kind) {
  return collective_steps(params.n, kind);
}

std::vector<int> rhd_reconfigured_steps(const CostParams& params,
                                        CollectiveKind kind, int reconfigs) {
  require_support(kind, BaselineAlgorithm::kRHD, "rhd");
  const int total = collective_steps(params.n, kind);
  if (reconfigs < 0 || reconfigs > total) {
    throw Error(ErrorCode::kRTooLarge, "R",
                "R-HD reconfigures at most every step");
  }
  const auto static_schedule = Schedule::none(total);
  const std::int64_t block = params.block_size();
  struct Candidate {
    int step;
    std::int64_t static_hops;
    double saving;
  };
  std::vector<Candidate> candidates;
  for (int k = 0; k < total; ++k) {
    const auto h = hop_distance(k, static_schedule, params, kind);
    const auto direct = std::min(h, block);
    const double saving = static_cast<double>(h - direct) *
                          (params.alpha_h + params.beta * step_bytes(k, params, kind));
    candidates.push_back({k, h, saving});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.saving != b.saving) return a.saving > b.saving;
                     return a.static_hops > b.static_hops;
                   });
  std::vector<int> chosen;
  for (int i = 0; i < reconfigs; ++i) {
    chosen.push_back(candidates[static_cast<std::size_t>(i)].step);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

CostTrace baseline_cost(const CostParams& params, CollectiveKind kind,
                        BaselineKind baseline) {
  validate_params(params);
  require_support(kind, baseline.algorithm, baseline.name());
  const int total = collective_steps(params.n, kind);
  switch (baseline.algorithm) {
    case BaselineAlgorithm::kSBruck:
    case BaselineAlgorithm::kHDStatic:
      // HD's XOR peers sit at ring distance 2^k with the same load, so its
      // trace is the static Bruck trace.
      return evaluate_schedule(params, kind, Schedule::none(total));
    case BaselineAlgorithm::kGBruck:
      return evaluate_schedule(params, kind, greedy_schedule(params, kind));
    case BaselineAlgorithm::kRing:
      return ring_trace(params, kind);
    case BaselineAlgorithm::kRHD: {
      const auto steps = rhd_reconfigured_steps(params, kind, baseline.reconfigs);
      std::vector<bool> bits(static_cast<std::size_t>(total), false);
      for (int k : steps) bits[static_cast<std::size_t>(k)] = true;
      const auto schedule = Schedule::from_bits(bits);
      const auto static_schedule = Schedule::none(total);
      const std::int64_t block = params.block_size();
      std::vector<std::int64_t> hops(static_cast<std::size_t>(total));
      for (int k = 0; k < total; ++k) {
        auto h = hop_distance(k, static_schedule, params, kind);
        if (schedule.at(k)) h = std::min(h, block);
        hops[static_cast<std::size_t>(k)] = h;
      }
      return trace_from_steps(params, kind, schedule, hops, hops);
    }
  }
  return {};
}

std::pair<int, CostTrace> best_rhd(const CostParams& params,
                                   CollectiveKind kind) {
  std::pair<int, CostTrace> best{0, baseline_cost(params, kind, BaselineKind::rhd(0))};
  for (int r = 1; r <= max_rhd_reconfigs(params, kind); ++r) {
    auto trace = baseline_cost(params, kind, BaselineKind::rhd(r));
    if (trace.total_s < best.second.total_s) best = {r, std::move(trace)};
  }
  return best;
}

}  // namespace subring
