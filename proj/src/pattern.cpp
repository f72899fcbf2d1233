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

#include "subring/pattern.hpp"

#include <cmath>
#include <string>

namespace subring {
namespace {

void check_step(int k, int steps) {
  if (k < 0 || k >= steps) {
    throw Error(ErrorCode::kStepOutOfRange, "k",
                "step " + std::to_string(k) + " outside [0, " +
                    std::to_string(steps) + ")");
  }
}

}  // namespace

int collective_steps(int n, CollectiveKind kind) {
  const int s = log2_exact(n);
  return kind == CollectiveKind::kAllReduce ? 2 * s : s;
}

std::int64_t peer_offset(int k, int n, CollectiveKind kind) {
  const int s = log2_exact(n);
  check_step(k, collective_steps(n, kind));
  switch (kind) {
    case CollectiveKind::kAllToAll:
    case CollectiveKind::kReduceScatter:
      return std::int64_t{1} << k;
    case CollectiveKind::kAllGather:
      return std::int64_t{1} << (s - 1 - k);
    case CollectiveKind::kAllReduce:
      return k < s ? peer_offset(k, n, CollectiveKind::kReduceScatter)
                   : peer_offset(k - s, n, CollectiveKind::kAllGather);
  }
  return 0;
}

int peer(int u, int k, int n, CollectiveKind kind) {
  if (u < 0 || u >= n) {
    throw Error(ErrorCode::kStepOutOfRange, "u",
                "node " + std::to_string(u) + " outside [0, n)");
  }
  return static_cast<int>((u + peer_offset(k, n, kind)) % n);
}

double step_bytes(int k, const CostParams& params, CollectiveKind kind) {
  const int s = params.steps();
  check_step(k, collective_steps(params.n, kind));
  switch (kind) {
    case CollectiveKind::kAllToAll:
      return params.m / 2.0;
    case CollectiveKind::kReduceScatter:
      return std::ldexp(params.m, -(k + 1));
    case CollectiveKind::kAllGather:
      return std::ldexp(params.m, -(s - k));
    case CollectiveKind::kAllReduce:
      return k < s ? step_bytes(k, params, CollectiveKind::kReduceScatter)
                   : step_bytes(k - s, params, CollectiveKind::kAllGather);
  }
  return 0.0;
}

std::vector<int> subring_members(SubringId id, int n) {
  const int s = log2_exact(n);
  if (id.k < 0 || id.k > s || id.i < 0 || id.i >= (1 << id.k)) {
    throw Error(ErrorCode::kInvalidSubring, "id",
                "no subring (k=" + std::to_string(id.k) +
                    ", i=" + std::to_string(id.i) + ") for n=" +
                    std::to_string(n));
  }
  const int stride = 1 << id.k;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n / stride));
  for (int u = id.i; u < n; u += stride) out.push_back(u);
  return out;
}

std::optional<TransitivityCounterexample> check_transitivity(int n) {
  const int s = log2_exact(n);
  const auto kind = CollectiveKind::kAllToAll;
  for (int k = 0; k + 1 < s; ++k) {
    for (int u = 0; u < n; ++u) {
      if (peer(peer(u, k, n, kind), k, n, kind) != peer(u, k + 1, n, kind)) {
        return TransitivityCounterexample{u, k};
      }
    }
  }
  return std::nullopt;
}

}  // namespace subring
