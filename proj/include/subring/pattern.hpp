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

#include <optional>
#include <vector>

#include "subring/model.hpp"

namespace subring {

/// Nodes u with u = i (mod 2^k).
struct SubringId {
  int k = 0;
  int i = 0;
};

/// Peer of node u in step k of Bruck's pattern. All-to-All and Reduce-Scatter
/// send at forward offset 2^k, AllGather at 2^(s-1-k). For AllReduce, steps
/// [0, s) are the Reduce-Scatter phase and [s, 2s) the AllGather phase.
int peer(int u, int k, int n, CollectiveKind kind);

/// Forward ring offset used in step k.
std::int64_t peer_offset(int k, int n, CollectiveKind kind);

/// Bytes sent by each node in step k.
double step_bytes(int k, const CostParams& params, CollectiveKind kind);

/// Number of steps of the collective: s, or 2s for AllReduce.
int collective_steps(int n, CollectiveKind kind);

/// Members of the subring in the order the offset-2^k links traverse them.
std::vector<int> subring_members(SubringId id, int n);

struct TransitivityCounterexample {
  int u = 0;
  int k = 0;
};

/// Checks peer(peer(u, k), k) == peer(u, k + 1) for every u and k < s - 1.
std::optional<TransitivityCounterexample> check_transitivity(int n);

}  // namespace subring
