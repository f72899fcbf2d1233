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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace subring {

enum class ErrorCode {
  kNonPowerOfTwo,
  kNegativeParameter,
  kPortRange,
  kStepOutOfRange,
  kInvalidSubring,
  kRTooLarge,
  kIndivisibleR,
  kLengthMismatch,
  kUnsupportedCombination,
  kReachabilityViolation,
  kTooManySteps,
};

std::string_view to_string(ErrorCode code);

/// Base for every error raised by the library. `field()` names the offending
/// parameter when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string field, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

/// Scalar cost-model inputs. All quantities are SI: seconds and bytes.
struct CostParams {
  int n = 64;            // node count, power of two
  double m = 0.0;        // bytes per node
  double alpha_s = 0.0;  // per-step startup latency
  double alpha_h = 0.0;  // per-hop latency
  double beta = 0.0;     // seconds per byte
  double delta = 0.0;    // reconfiguration delay
  int z = 128;           // optical ports; 2n is full reconfigurability

  /// Steps of Bruck's pattern, log2(n).
  int steps() const;
  /// Nodes sharing one optical port pair, ceil(2n / z).
  int block_size() const;
  bool full_ports() const { return z == 2 * n; }

  /// Parameters with z set to 2n.
  static CostParams full(int n, double m, double alpha_s, double alpha_h,
                         double beta, double delta);
};

/// Throws Error{kNonPowerOfTwo | kNegativeParameter | kPortRange}.
void validate_params(const CostParams& p);

bool is_power_of_two(std::int64_t v);
int log2_exact(std::int64_t v);

enum class CollectiveKind { kAllToAll, kReduceScatter, kAllGather, kAllReduce };

std::string_view to_string(CollectiveKind kind);
std::optional<CollectiveKind> parse_collective(std::string_view name);

/// Binary reconfiguration vector; bit k set means the fabric is reconfigured
/// immediately before step k. Segments are the maximal runs of steps between
/// reconfiguration points.
class Schedule {
 public:
  Schedule() = default;

  static Schedule from_bits(std::vector<bool> bits);
  /// Bits are set at the start of every segment except the first. With
  /// `leading_reconfig` bit 0 is set as well.
  static Schedule from_segments(const std::vector<int>& segments,
                                bool leading_reconfig = false);
  static Schedule none(int steps);
  /// "000100" style. Throws std::invalid_argument on other characters.
  static Schedule parse(std::string_view bits);

  const std::vector<bool>& bits() const { return bits_; }
  const std::vector<int>& segments() const { return segments_; }
  int size() const { return static_cast<int>(bits_.size()); }
  bool at(int k) const { return bits_.at(static_cast<std::size_t>(k)); }
  int reconfigurations() const;
  /// Positions k with bit k set, ascending.
  std::vector<int> positions() const;
  /// Segment lengths in reverse order, rebuilt as a schedule.
  Schedule reversed_segments() const;
  std::string to_string() const;

  /// Sub-range [first, first + count) as its own schedule.
  Schedule slice(int first, int count) const;
  static Schedule concat(const Schedule& head, const Schedule& tail);

  bool operator==(const Schedule& other) const { return bits_ == other.bits_; }

 private:
  std::vector<bool> bits_;
  std::vector<int> segments_;
};

/// True when a's reconfiguration positions are lexicographically before b's.
bool positions_before(const Schedule& a, const Schedule& b);

struct StepCost {
  int step = 0;
  CollectiveKind phase = CollectiveKind::kAllToAll;
  std::int64_t hops = 0;
  std::int64_t congestion = 0;
  double bytes = 0.0;
  double startup_s = 0.0;
  double hop_s = 0.0;
  double tx_s = 0.0;
  double reconfig_s = 0.0;
  double cumulative_s = 0.0;

  bool operator==(const StepCost&) const = default;
};

}  // namespace subring
