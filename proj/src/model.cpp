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

#include "subring/model.hpp"

#include <algorithm>

namespace subring {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPowerOfTwo: return "NonPowerOfTwo";
    case ErrorCode::kNegativeParameter: return "NegativeParameter";
    case ErrorCode::kPortRange: return "PortRange";
    case ErrorCode::kStepOutOfRange: return "StepOutOfRange";
    case ErrorCode::kInvalidSubring: return "InvalidSubring";
    case ErrorCode::kRTooLarge: return "RTooLarge";
    case ErrorCode::kIndivisibleR: return "IndivisibleR";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kUnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::kReachabilityViolation: return "ReachabilityViolation";
    case ErrorCode::kTooManySteps: return "TooManySteps";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string field, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      field_(std::move(field)) {}

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(std::int64_t v) {
  if (!is_power_of_two(v)) {
    throw Error(ErrorCode::kNonPowerOfTwo, "n",
                "n = " + std::to_string(v) + " is not a power of two");
  }
  int s = 0;
  while ((std::int64_t{1} << s) < v) ++s;
  return s;
}

int CostParams::steps() const { return log2_exact(n); }

int CostParams::block_size() const { return (2 * n + z - 1) / z; }

CostParams CostParams::full(int n, double m, double alpha_s, double alpha_h,
                            double beta, double delta) {
  return CostParams{n, m, alpha_s, alpha_h, beta, delta, 2 * n};
}

void validate_params(const CostParams& p) {
  if (p.n < 2 || !is_power_of_two(p.n)) {
    throw Error(ErrorCode::kNonPowerOfTwo, "n",
                "n = " + std::to_string(p.n) +
                    " must be a power of two and at least 2");
  }
  // m must be strictly positive; the rest only non-negative.
  if (!(p.m > 0.0)) {
    throw Error(ErrorCode::kNegativeParameter, "m",
                "message size must be positive");
  }
  const std::pair<const char*, double> scalars[] = {
      {"alpha_s", p.alpha_s},
      {"alpha_h", p.alpha_h},
      {"beta", p.beta},
      {"delta", p.delta}};
  for (const auto& [name, value] : scalars) {
    if (!(value >= 0.0)) {
      throw Error(ErrorCode::kNegativeParameter, name,
                  std::string(name) + " must be non-negative");
    }
  }
  if (p.z < 2 || p.z > 2 * p.n || p.z % 2 != 0) {
    throw Error(ErrorCode::kPortRange, "z",
                "z = " + std::to_string(p.z) + " must be even and in [2, " +
                    std::to_string(2 * p.n) + "]");
  }
}

std::string_view to_string(CollectiveKind kind) {
  switch (kind) {
    case CollectiveKind::kAllToAll: return "alltoall";
    case CollectiveKind::kReduceScatter: return "reducescatter";
    case CollectiveKind::kAllGather: return "allgather";
    case CollectiveKind::kAllReduce: return "allreduce";
  }
  return "unknown";
}

std::optional<CollectiveKind> parse_collective(std::string_view name) {
  if (name == "a2a" || name == "alltoall") return CollectiveKind::kAllToAll;
  if (name == "rs" || name == "reducescatter")
    return CollectiveKind::kReduceScatter;
  if (name == "ag" || name == "allgather") return CollectiveKind::kAllGather;
  if (name == "ar" || name == "allreduce") return CollectiveKind::kAllReduce;
  return std::nullopt;
}

Schedule Schedule::from_bits(std::vector<bool> bits) {
  Schedule s;
  s.bits_ = std::move(bits);
  int start = 0;
  for (int k = 1; k < s.size(); ++k) {
    if (s.bits_[static_cast<std::size_t>(k)]) {
      s.segments_.push_back(k - start);
      start = k;
    }
  }
  if (s.size() > 0) s.segments_.push_back(s.size() - start);
  return s;
}

Schedule Schedule::from_segments(const std::vector<int>& segments,
                                 bool leading_reconfig) {
  std::vector<bool> bits;
  for (std::size_t j = 0; j < segments.size(); ++j) {
    if (segments[j] < 1) {
      throw std::invalid_argument("segment lengths must be positive");
    }
    bits.push_back(j > 0 || leading_reconfig);
    bits.insert(bits.end(), static_cast<std::size_t>(segments[j] - 1), false);
  }
  return from_bits(std::move(bits));
}

Schedule Schedule::none(int steps) {
  return from_bits(std::vector<bool>(static_cast<std::size_t>(steps), false));
}

Schedule Schedule::parse(std::string_view text) {
  std::vector<bool> bits;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("schedule must consist of 0 and 1");
    }
    bits.push_back(c == '1');
  }
  return from_bits(std::move(bits));
}

int Schedule::reconfigurations() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<int> Schedule::positions() const {
  std::vector<int> out;
  for (int k = 0; k < size(); ++k) {
    if (bits_[static_cast<std::size_t>(k)]) out.push_back(k);
  }
  return out;
}

Schedule Schedule::reversed_segments() const {
  std::vector<int> rev(segments_.rbegin(), segments_.rend());
  return from_segments(rev, !bits_.empty() && bits_.front());
}

std::string Schedule::to_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (bool b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

Schedule Schedule::slice(int first, int count) const {
  if (first < 0 || count < 0 || first + count > size()) {
    throw Error(ErrorCode::kLengthMismatch, "schedule",
                "slice out of range");
  }
  return from_bits(std::vector<bool>(bits_.begin() + first,
                                     bits_.begin() + first + count));
}

Schedule Schedule::concat(const Schedule& head, const Schedule& tail) {
  std::vector<bool> bits = head.bits_;
  bits.insert(bits.end(), tail.bits_.begin(), tail.bits_.end());
  return from_bits(std::move(bits));
}

bool positions_before(const Schedule& a, const Schedule& b) {
  const auto pa = a.positions();
  const auto pb = b.positions();
  return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(),
                                      pb.end());
}

}  // namespace subring
