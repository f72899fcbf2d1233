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

#include <string>
#include <vector>

#include "subring/cost.hpp"
#include "subring/model.hpp"

namespace subring {

enum class BaselineAlgorithm { kSBruck, kGBruck, kRing, kHDStatic, kRHD };

struct BaselineKind {
  BaselineAlgorithm algorithm = BaselineAlgorithm::kSBruck;
  int reconfigs = 0;  // RHD only

  static BaselineKind sbruck() { return {BaselineAlgorithm::kSBruck, 0}; }
  static BaselineKind gbruck() { return {BaselineAlgorithm::kGBruck, 0}; }
  static BaselineKind ring() { return {BaselineAlgorithm::kRing, 0}; }
  static BaselineKind hd() { return {BaselineAlgorithm::kHDStatic, 0}; }
  static BaselineKind rhd(int r) { return {BaselineAlgorithm::kRHD, r}; }

  std::string name() const;
};

/// Greedy Bruck: reconfigure before every step except the first, whose
/// offset-1 peer is already adjacent on the ring. For AllReduce both phases.
Schedule greedy_schedule(const CostParams& params, CollectiveKind kind);

/// Steps that R-HD turns into direct connections, chosen greedily by the
/// per-step saving over static HD. Ascending.
std::vector<int> rhd_reconfigured_steps(const CostParams& params,
                                        CollectiveKind kind, int reconfigs);

/// Completion-time trace of a comparison algorithm. Ring, HD and R-HD only
/// exist for Reduce-Scatter, AllGather and AllReduce; other combinations
/// throw Error{kUnsupportedCombination}.
CostTrace baseline_cost(const CostParams& params, CollectiveKind kind,
                        BaselineKind baseline);

bool baseline_supports(CollectiveKind kind, BaselineAlgorithm algorithm);

/// Largest R for R-HD: s per phase.
int max_rhd_reconfigs(const CostParams& params, CollectiveKind kind);

/// R-HD with the cheapest R; ties go to the smaller R.
std::pair<int, CostTrace> best_rhd(const CostParams& params,
                                   CollectiveKind kind);

}  // namespace subring
