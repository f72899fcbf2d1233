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

#include <random>

#include "reference.hpp"
#include "subring/exact_sum.hpp"
#include "subring/model.hpp"

namespace subring {
namespace {

TEST(ScheduleTest, SegmentsFromBits) {
  const auto a = Schedule::parse("000100");
  EXPECT_EQ(a.segments(), (std::vector<int>{3, 3}));
  EXPECT_EQ(a.reconfigurations(), 1);

  const auto none = Schedule::parse("000000");
  EXPECT_EQ(none.segments(), (std::vector<int>{6}));
  EXPECT_EQ(none.reconfigurations(), 0);

  const auto b = Schedule::parse("010100");
  EXPECT_EQ(b.segments(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(b.reconfigurations(), 2);
}

TEST(ScheduleTest, LeadingReconfigurationCountsButDoesNotSplit) {
  const auto s = Schedule::parse("1001");
  EXPECT_EQ(s.segments(), (std::vector<int>{3, 1}));
  EXPECT_EQ(s.reconfigurations(), 2);
  EXPECT_EQ(Schedule::from_segments({3, 1}, true), s);
}

TEST(ScheduleTest, ParseRejectsGarbage) {
  EXPECT_THROW(Schedule::parse("01x"), std::invalid_argument);
}

TEST(ScheduleTest, ReversedSegments) {
  EXPECT_EQ(Schedule::parse("001000").reversed_segments().to_string(), "000010");
  EXPECT_EQ(Schedule::parse("010100").reversed_segments().to_string(), "000101");
}

TEST(ScheduleTest, PositionsOrdering) {
  EXPECT_TRUE(positions_before(Schedule::parse("0100"), Schedule::parse("0010")));
  EXPECT_TRUE(positions_before(Schedule::parse("0110"), Schedule::parse("0101")));
  EXPECT_FALSE(positions_before(Schedule::parse("0010"), Schedule::parse("0010")));
}

// Random bit vectors: segments round-trip and rebuild the bits exactly.
TEST(ScheduleProperty, RoundTrip) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int len = std::uniform_int_distribution<int>(1, 16)(rng);
    std::vector<bool> bits(static_cast<std::size_t>(len));
    for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = rng() & 1u;
    const auto s = Schedule::from_bits(bits);
    EXPECT_EQ(Schedule::from_bits(s.bits()).segments(), s.segments());
    EXPECT_EQ(s.segments(), testing::cut_segments(bits));
    int sum = 0;
    for (int r : s.segments()) sum += r;
    EXPECT_EQ(sum, len);
    EXPECT_EQ(Schedule::from_segments(s.segments(), bits.front()).bits(), bits);
    if (!bits.front()) {
      EXPECT_EQ(s.reconfigurations(), static_cast<int>(s.segments().size()) - 1);
    }
  }
}

TEST(ValidateParamsTest, AcceptsValid) {
  EXPECT_NO_THROW(validate_params(CostParams{64, 1e6, 1e-6, 1e-6, 1e-11, 1e-5, 128}));
  EXPECT_NO_THROW(validate_params(CostParams{2, 1.0, 0, 0, 0, 0, 2}));
}

ErrorCode code_of(const CostParams& p) {
  try {
    validate_params(p);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kTooManySteps;
}

TEST(ValidateParamsTest, NamesViolation) {
  EXPECT_EQ(code_of(CostParams{63, 1e6, 0, 0, 0, 0, 126}), ErrorCode::kNonPowerOfTwo);
  EXPECT_EQ(code_of(CostParams{1, 1e6, 0, 0, 0, 0, 2}), ErrorCode::kNonPowerOfTwo);
  EXPECT_EQ(code_of(CostParams{64, 1e6, 0, 0, 0, 0, 300}), ErrorCode::kPortRange);
  EXPECT_EQ(code_of(CostParams{64, 1e6, 0, 0, 0, 0, 31}), ErrorCode::kPortRange);
  EXPECT_EQ(code_of(CostParams{64, 0.0, 0, 0, 0, 0, 128}), ErrorCode::kNegativeParameter);
  try {
    validate_params(CostParams{64, 1e6, 0, 0, 0, -1.0, 128});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNegativeParameter);
    EXPECT_EQ(e.field(), "delta");
  }
}

TEST(CostParamsTest, BlockSize) {
  EXPECT_EQ((CostParams{64, 1, 0, 0, 0, 0, 128}).block_size(), 1);
  EXPECT_EQ((CostParams{64, 1, 0, 0, 0, 0, 32}).block_size(), 4);
  EXPECT_EQ((CostParams{64, 1, 0, 0, 0, 0, 2}).block_size(), 64);
  EXPECT_EQ((CostParams{64, 1, 0, 0, 0, 0, 128}).steps(), 6);
}

TEST(ExactSumTest, OrderIndependent) {
  std::vector<double> values{1e16, 1.0, -1e16, 3.3e-7, 0.1, 0.2, 0.3, 1e-300};
  ExactSum forward;
  for (double v : values) forward.add(v);
  ExactSum backward;
  for (auto it = values.rbegin(); it != values.rend(); ++it) backward.add(*it);
  EXPECT_EQ(forward.value(), backward.value());
  ExactSum simple;
  simple.add(0.1);
  simple.add(0.2);
  EXPECT_EQ(simple.value(), 0.30000000000000004);
}

}  // namespace
}  // namespace subring
