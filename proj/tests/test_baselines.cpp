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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "reference.hpp"
#include "subring/baselines.hpp"
#include "subring/optimizer.hpp"

namespace subring {
namespace {

using testing::rel_diff;

constexpr auto kA2A = CollectiveKind::kAllToAll;
constexpr auto kRS = CollectiveKind::kReduceScatter;
constexpr auto kAG = CollectiveKind::kAllGather;
constexpr auto kAR = CollectiveKind::kAllReduce;
constexpr CollectiveKind kAllKinds[] = {kA2A, kRS, kAG, kAR};

constexpr double kMiB = 1024.0 * 1024.0;

std::vector<CostParams> parameter_grid() {
  std::vector<CostParams> out;
  for (int n : {4, 16, 64, 256}) {
    for (double m : {1024.0, 64 * 1024.0, 16 * kMiB, 256 * kMiB}) {
      for (double delta : {0.0, 1e-6, 1e-4, 5e-3}) {
        out.push_back(CostParams::full(n, m, 1.7e-6, 1e-6, 1e-11, delta));
      }
    }
  }
  return out;
}

TEST(BaselineTest, Names) {
  EXPECT_EQ(BaselineKind::sbruck().name(), "sbruck");
  EXPECT_EQ(BaselineKind::gbruck().name(), "gbruck");
  EXPECT_EQ(BaselineKind::ring().name(), "ring");
  EXPECT_EQ(BaselineKind::hd().name(), "hd");
  EXPECT_EQ(BaselineKind::rhd(2).name(), "rhd");
}

TEST(BaselineTest, RingAllReduce) {
  const auto p = CostParams::full(64, 16 * kMiB, 1.7e-6, 1e-6, 1e-11, 1e-5);
  const auto trace = baseline_cost(p, kAR, BaselineKind::ring());
  ASSERT_EQ(trace.steps.size(), 126u);
  EXPECT_LT(rel_diff(trace.total_s, 126 * (p.alpha_s + p.alpha_h + p.beta * p.m / 64)),
            1e-14);
  EXPECT_EQ(trace.r, 0);
  EXPECT_EQ(trace.steps[62].phase, kRS);
  EXPECT_EQ(trace.steps[63].phase, kAG);
  EXPECT_EQ(baseline_cost(p, kRS, BaselineKind::ring()).steps.size(), 63u);
}

TEST(BaselineTest, GreedyBruckUnitHops) {
  const auto p = CostParams::full(64, 1.0, 0.0, 1.0, 0.0, 0.0);
  const auto trace = baseline_cost(p, kA2A, BaselineKind::gbruck());
  EXPECT_EQ(trace.total_s, 6.0);
  EXPECT_EQ(trace.r, 5);
  EXPECT_EQ(greedy_schedule(p, kA2A).to_string(), "011111");
  EXPECT_EQ(greedy_schedule(p, kAR).to_string(), "011111011111");
}

TEST(BaselineTest, StaticHalvingDoublingMatchesStaticBruck) {
  for (const auto& p : parameter_grid()) {
    for (auto kind : {kRS, kAG, kAR}) {
      EXPECT_EQ(baseline_cost(p, kind, BaselineKind::hd()).total_s,
                baseline_cost(p, kind, BaselineKind::sbruck()).total_s);
    }
  }
}

TEST(BaselineTest, ReconfigurableHalvingDoublingStepChoice) {
  const auto p = CostParams::full(16, 16 * kMiB, 1.7e-6, 1e-6, 1e-11, 1e-5);
  EXPECT_EQ(rhd_reconfigured_steps(p, kRS, 1), (std::vector<int>{3}));
  EXPECT_EQ(rhd_reconfigured_steps(p, kRS, 2), (std::vector<int>{2, 3}));
  EXPECT_EQ(rhd_reconfigured_steps(p, kAG, 1), (std::vector<int>{0}));
  EXPECT_EQ(rhd_reconfigured_steps(p, kAG, 2), (std::vector<int>{0, 1}));
  EXPECT_EQ(rhd_reconfigured_steps(p, kRS, 0), std::vector<int>{});
  EXPECT_THROW(rhd_reconfigured_steps(p, kRS, 5), Error);

  const auto trace = baseline_cost(p, kRS, BaselineKind::rhd(1));
  EXPECT_EQ(trace.r, 1);
  EXPECT_EQ(trace.steps[3].hops, 1);
  EXPECT_EQ(trace.steps[3].reconfig_s, p.delta);
  EXPECT_EQ(trace.steps[2].hops, 4);
}

TEST(BaselineTest, UnsupportedCombinations) {
  const auto p = CostParams::full(16, 1e6, 1e-6, 1e-6, 1e-11, 1e-5);
  for (auto b : {BaselineKind::ring(), BaselineKind::hd(), BaselineKind::rhd(1)}) {
    try {
      baseline_cost(p, kA2A, b);
      FAIL() << b.name();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kUnsupportedCombination);
    }
    EXPECT_FALSE(baseline_supports(kA2A, b.algorithm));
    EXPECT_TRUE(baseline_supports(kAR, b.algorithm));
  }
  EXPECT_TRUE(baseline_supports(kA2A, BaselineAlgorithm::kSBruck));
  EXPECT_TRUE(baseline_supports(kA2A, BaselineAlgorithm::kGBruck));
}

TEST(BaselineProperty, GreedyDominatesStaticWithoutDelay) {
  for (auto p : parameter_grid()) {
    p.delta = 0.0;
    for (auto kind : kAllKinds) {
      EXPECT_LE(baseline_cost(p, kind, BaselineKind::gbruck()).total_s,
                baseline_cost(p, kind, BaselineKind::sbruck()).total_s);
    }
  }
}

TEST(BaselineProperty, OptimumSandwichedBelowBruckBaselines) {
  for (const auto& p : parameter_grid()) {
    for (auto kind : kAllKinds) {
      const double bridge = optimal_r(p, kind).total_s;
      EXPECT_LE(bridge, baseline_cost(p, kind, BaselineKind::sbruck()).total_s);
      EXPECT_LE(bridge, baseline_cost(p, kind, BaselineKind::gbruck()).total_s);
    }
  }
}

TEST(BaselineProperty, SavingsDominateReconfigurableHalvingDoubling) {
  for (const auto& p : parameter_grid()) {
    for (auto kind : {kRS, kAG, kAR}) {
      const double sbruck = baseline_cost(p, kind, BaselineKind::sbruck()).total_s;
      const double hd = baseline_cost(p, kind, BaselineKind::hd()).total_s;
      for (int r = 0; r <= max_reconfigs(p, kind); ++r) {
        const double bridge =
            evaluate_schedule(p, kind, optimal_schedule(p, kind, r)).total_s;
        const double rhd = baseline_cost(p, kind, BaselineKind::rhd(r)).total_s;
        const double slack = 1e-12 * std::max(sbruck, hd);
        EXPECT_GE(sbruck - bridge, (hd - rhd) - slack)
            << to_string(kind) << " n=" << p.n << " m=" << p.m << " R=" << r;
      }
    }
  }
}

TEST(BaselineProperty, BestReconfigurableHalvingDoublingIsMinimum) {
  for (const auto& p : parameter_grid()) {
    for (auto kind : {kRS, kAG, kAR}) {
      const auto [r, trace] = best_rhd(p, kind);
      EXPECT_EQ(trace.r, r);
      for (int q = 0; q <= max_rhd_reconfigs(p, kind); ++q) {
        EXPECT_LE(trace.total_s, baseline_cost(p, kind, BaselineKind::rhd(q)).total_s);
      }
    }
  }
}

}  // namespace
}  // namespace subring
