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

#include <cmath>
#include <random>

#include "reference.hpp"
#include "subring/cost.hpp"
#include "subring/optimizer.hpp"
#include "subring/pattern.hpp"

namespace subring {
namespace {

using testing::all_bit_vectors;
using testing::rel_diff;

constexpr auto kA2A = CollectiveKind::kAllToAll;
constexpr auto kRS = CollectiveKind::kReduceScatter;
constexpr auto kAG = CollectiveKind::kAllGather;
constexpr auto kAR = CollectiveKind::kAllReduce;

CostParams hops_only(int n) { return CostParams::full(n, 1.0, 0.0, 1.0, 0.0, 0.0); }

TEST(HopDistanceTest, SubringDistances) {
  const auto p = hops_only(16);
  const auto x = Schedule::parse("0010");
  EXPECT_EQ(hop_distance(2, x, p, kRS), 1);
  EXPECT_EQ(hop_distance(3, x, p, kRS), 2);
  EXPECT_EQ(hop_distance(1, x, p, kRS), 2);
  const auto none = Schedule::none(6);
  for (int k = 0; k < 6; ++k) {
    EXPECT_EQ(hop_distance(k, none, hops_only(64), kA2A), std::int64_t{1} << k);
  }
}

TEST(HopDistanceTest, LimitedPorts) {
  CostParams p = hops_only(64);
  p.z = 32;  // blocks of ceil(128 / 32) = 4 nodes
  const auto x = Schedule::parse("000100");
  EXPECT_EQ(hop_distance(3, x, p, kA2A), 4);
  EXPECT_EQ(hop_distance(4, x, p, kA2A), 8);
  EXPECT_EQ(hop_distance(1, x, p, kA2A), 2);
}

TEST(HopDistanceTest, AllGatherAnchoredAtPeriodEnd) {
  const auto p = hops_only(64);
  // Periods [0,3] and [4,5].
  const auto x = Schedule::parse("000010");
  const std::int64_t expected[] = {8, 4, 2, 1, 2, 1};
  for (int k = 0; k < 6; ++k) EXPECT_EQ(hop_distance(k, x, p, kAG), expected[k]);
  const auto none = Schedule::none(6);
  for (int k = 0; k < 6; ++k) {
    EXPECT_EQ(hop_distance(k, none, p, kAG), std::int64_t{1} << (5 - k));
  }
}

TEST(HopDistanceTest, Errors) {
  const auto p = hops_only(16);
  EXPECT_THROW(hop_distance(4, Schedule::none(4), p, kA2A), Error);
  EXPECT_THROW(hop_distance(0, Schedule::none(5), p, kA2A), Error);
}

TEST(CongestionTest, EqualsHops) {
  EXPECT_EQ(congestion(0, 1), 1);
  EXPECT_EQ(congestion(3, 4), 4);
}

TEST(EvaluateTest, HopOnlyExamples) {
  const auto p = hops_only(64);
  EXPECT_EQ(evaluate_schedule(p, kA2A, Schedule::none(6)).total_s, 63.0);
  EXPECT_EQ(evaluate_schedule(p, kA2A, Schedule::parse("000100")).total_s, 14.0);
}

TEST(EvaluateTest, ReduceScatterTransmissionTerm) {
  const double beta = 1e-11;
  const double m = 8.0 * 1024 * 1024;
  const auto p = CostParams::full(64, m, 0.0, 0.0, beta, 0.0);
  const auto trace = evaluate_schedule(p, kRS, Schedule::none(6));
  for (const auto& step : trace.steps) EXPECT_EQ(step.tx_s, beta * m / 2);
  EXPECT_DOUBLE_EQ(trace.total_s, 6 * beta * m / 2);
}

TEST(EvaluateTest, LengthMismatch) {
  try {
    evaluate_schedule(hops_only(64), kA2A, Schedule::none(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
  EXPECT_THROW(evaluate_schedule(hops_only(64), kAR, Schedule::none(6)), Error);
}

TEST(EvaluateTest, StepComponents) {
  const auto p = CostParams::full(16, 4096.0, 2e-6, 1e-6, 1e-10, 5e-6);
  const auto trace = evaluate_schedule(p, kRS, Schedule::parse("0010"));
  ASSERT_EQ(trace.steps.size(), 4u);
  double previous = 0.0;
  for (const auto& step : trace.steps) {
    EXPECT_EQ(step.hop_s, static_cast<double>(step.hops) * p.alpha_h);
    EXPECT_EQ(step.tx_s, step.bytes * static_cast<double>(step.congestion) * p.beta);
    EXPECT_TRUE(step.reconfig_s == 0.0 || step.reconfig_s == p.delta);
    EXPECT_GE(step.cumulative_s, previous);
    previous = step.cumulative_s;
  }
  EXPECT_EQ(trace.steps[2].reconfig_s, p.delta);
  EXPECT_EQ(trace.total_s, trace.steps.back().cumulative_s);
  EXPECT_EQ(trace.r, 1);
}

TEST(EvaluateTest, AllReduceConcatenatesPhases) {
  const auto p = CostParams::full(16, 1e6, 1e-6, 1e-6, 1e-11, 1e-5);
  const auto rs = Schedule::parse("0100");
  const auto ag = Schedule::parse("0010");
  const auto both = evaluate_allreduce(p, rs, ag);
  const auto rs_trace = evaluate_schedule(p, kRS, rs);
  const auto ag_trace = evaluate_schedule(p, kAG, ag);
  ASSERT_EQ(both.steps.size(), 8u);
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(both.steps[k].hops, rs_trace.steps[k].hops);
    EXPECT_EQ(both.steps[k].phase, kRS);
    EXPECT_EQ(both.steps[k + 4].hops, ag_trace.steps[k].hops);
    EXPECT_EQ(both.steps[k + 4].bytes, ag_trace.steps[k].bytes);
    EXPECT_EQ(both.steps[k + 4].phase, kAG);
  }
  EXPECT_EQ(both.r, 2);
  EXPECT_LT(rel_diff(both.total_s, rs_trace.total_s + ag_trace.total_s), 1e-15);
}

// total = sigma*alpha_s + alpha_h*sum(h) + beta*sum(m_k c_k) + R*delta.
TEST(EvaluateProperty, DecompositionIdentity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto kind : {kA2A, kRS, kAG, kAR}) {
    for (int n = 2; n <= 64; n *= 2) {
      const auto p = CostParams::full(n, 1e3 + 1e8 * unit(rng), 2e-6 * unit(rng),
                                      2e-6 * unit(rng), 1e-11, 1e-4 * unit(rng));
      const int bits = collective_steps(n, kind);
      for (const auto& x : all_bit_vectors(bits, true)) {
        const auto schedule = Schedule::from_bits(x);
        const auto trace = evaluate_schedule(p, kind, schedule);
        double hops = 0.0;
        double volume = 0.0;
        double components = 0.0;
        double reconfig = 0.0;
        for (const auto& s : trace.steps) {
          hops += static_cast<double>(s.hops);
          volume += s.bytes * static_cast<double>(s.congestion);
          components += s.startup_s + s.hop_s + s.tx_s + s.reconfig_s;
          reconfig += s.reconfig_s;
        }
        const double formula = bits * p.alpha_s + p.alpha_h * hops +
                               p.beta * volume + trace.r * p.delta;
        EXPECT_LT(rel_diff(trace.total_s, formula), 1e-13);
        EXPECT_LT(rel_diff(trace.total_s, components), 1e-13);
        EXPECT_LT(rel_diff(reconfig, trace.r * p.delta), 1e-13);
      }
    }
  }
}

// With free reconfiguration, more (optimally placed) reconfigurations never hurt.
TEST(EvaluateProperty, MonotoneBenefitAtZeroDelay) {
  for (int n = 4; n <= 256; n *= 2) {
    const auto p = CostParams::full(n, 1e6, 1.7e-6, 1e-6, 1e-11, 0.0);
    double previous = INFINITY;
    for (int r = 0; r < p.steps(); ++r) {
      const double total =
          evaluate_schedule(p, kA2A, optimal_a2a_schedule(p.steps(), r)).total_s;
      EXPECT_LE(total, previous) << "n=" << n << " R=" << r;
      previous = total;
    }
  }
}

TEST(EvaluateProperty, LimitedPortConsistency) {
  for (auto kind : {kA2A, kRS, kAG}) {
    const auto full = CostParams::full(64, 1e6, 1e-6, 1e-6, 1e-11, 1e-5);
    auto single = full;
    single.z = 2;  // one block spanning the whole ring
    for (const auto& x : all_bit_vectors(6, false)) {
      const auto schedule = Schedule::from_bits(x);
      const auto none = Schedule::none(6);
      for (int k = 0; k < 6; ++k) {
        EXPECT_EQ(hop_distance(k, schedule, full, kind),
                  segment_hops(k, period_of(k, schedule), full, kind));
        EXPECT_EQ(hop_distance(k, schedule, single, kind),
                  hop_distance(k, none, full, kind));
      }
    }
    EXPECT_EQ(optimal_r(single, kind).r_chosen, 0) << to_string(kind);
  }
}

// Schedules that agree on x_0..x_j agree on steps 0..j.
TEST(EvaluateProperty, PrefixProperty) {
  const auto p = CostParams::full(64, 1e6, 1.7e-6, 1e-6, 1e-11, 1e-5);
  for (auto kind : {kA2A, kRS}) {
    const auto vectors = all_bit_vectors(6, true);
    for (const auto& a : vectors) {
      for (const auto& b : vectors) {
        int shared = 0;
        while (shared < 6 && a[shared] == b[shared]) ++shared;
        const auto ta = evaluate_schedule(p, kind, Schedule::from_bits(a));
        const auto tb = evaluate_schedule(p, kind, Schedule::from_bits(b));
        for (int k = 0; k < shared; ++k) EXPECT_EQ(ta.steps[k], tb.steps[k]);
      }
    }
  }
}

TEST(ClosedFormTest, Examples) {
  EXPECT_EQ(a2a_cost_closed_form(hops_only(8), 0), 7.0);
  EXPECT_EQ(a2a_cost_closed_form(hops_only(64), 1), 14.0);
  EXPECT_EQ(evaluate_schedule(hops_only(64), kA2A, optimal_a2a_schedule(6, 1)).total_s,
            14.0);
  const double d = 3e-5;
  const auto p = CostParams::full(64, 2e6, 0.0, 1e-6, 1e-11, d);
  const double c = p.alpha_h + p.beta * p.m / 2;
  EXPECT_LT(rel_diff(a2a_cost_closed_form(p, 5), 6 * c + 5 * d), 1e-15);
}

TEST(ClosedFormTest, RequiresDivisibility) {
  try {
    a2a_cost_closed_form(hops_only(64), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndivisibleR);
  }
  EXPECT_THROW(a2a_cost_closed_form(hops_only(64), 6), Error);
}

TEST(CumulativeTest, SingleScheduleMatchesTrace) {
  const auto p = CostParams::full(64, 1e6, 1.7e-6, 1e-6, 1e-11, 1e-5);
  const std::vector<Schedule> one{Schedule::parse("000100")};
  const auto table = cumulative_comparison(p, kA2A, one);
  const auto trace = evaluate_schedule(p, kA2A, one.front());
  ASSERT_EQ(table.cumulative.size(), 1u);
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    EXPECT_EQ(table.cumulative[0][k], trace.steps[k].cumulative_s);
  }
  const std::vector<Schedule> mixed{Schedule::none(6), Schedule::none(5)};
  EXPECT_THROW(cumulative_comparison(p, kA2A, mixed), Error);
}

TEST(CumulativeTest, AllReduceWithoutDelayImprovesWithR) {
  const auto p = CostParams::full(64, 16.0 * 1024 * 1024, 1.7e-6, 1e-6, 1e-11, 0.0);
  std::vector<Schedule> schedules;
  for (int r = 0; r <= 2; ++r) schedules.push_back(optimal_allreduce_schedule(p, r));
  const auto table = cumulative_comparison(p, kAR, schedules);
  EXPECT_LT(table.cumulative[2].back(), table.cumulative[1].back());
  EXPECT_LT(table.cumulative[1].back(), table.cumulative[0].back());
  // R=0 and R=1 share every step before R=1's first reconfiguration.
  const int first = schedules[1].positions().front();
  for (int k = 0; k < first; ++k) {
    EXPECT_EQ(table.cumulative[0][k], table.cumulative[1][k]);
  }
  EXPECT_NE(table.cumulative[0][first], table.cumulative[1][first]);
}

}  // namespace
}  // namespace subring
