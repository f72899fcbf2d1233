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

#include <fmt/format.h>

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <set>

#include "cli/commands.hpp"
#include "subring/cost.hpp"
#include "subring/optimizer.hpp"
#include "subring/pattern.hpp"
#include "subring/sim.hpp"

namespace subring::cli {
namespace {

struct CheckFailed {
  std::string message;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw CheckFailed{message};
}

bool close(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

std::vector<CostParams> grid(int n, bool quick) {
  std::vector<double> sizes{1024.0, 64 * 1024.0, 1024 * 1024.0,
                            16 * 1024 * 1024.0, 256 * 1024 * 1024.0};
  std::vector<double> hops{0.1e-6, 2e-6};
  std::vector<double> deltas{0.0, 10e-6};
  if (quick) {
    sizes = {1024.0, 256 * 1024 * 1024.0};
    deltas = {10e-6};
  }
  std::vector<CostParams> out;
  for (double m : sizes)
    for (double ah : hops)
      for (double d : deltas)
        out.push_back(CostParams::full(n, m, 1.7e-6, ah, 1e-11, d));
  return out;
}

void check_goldens() {
  const auto p = CostParams::full(64, 256.0 * 1024 * 1024, 1.7e-6, 1e-6,
                                  beta_from_gbps(800), 10e-6);
  const std::pair<std::string, std::string> expected[] = {
      {optimal_a2a_schedule(6, 1).to_string(), "000100"},
      {optimal_a2a_schedule(6, 2).to_string(), "001010"},
      {optimal_rs_schedule(p, 1).to_string(), "001000"},
      {optimal_rs_schedule(p, 2).to_string(), "010100"},
      {optimal_ag_schedule(p, 1).to_string(), "000010"},
      {optimal_ag_schedule(p, 2).to_string(), "000101"}};
  for (const auto& [got, want] : expected) {
    require(got == want, "golden schedule " + want + " != " + got);
  }
}

void check_transitivity(int max_nodes) {
  for (int n = 2; n <= max_nodes; n *= 2) {
    const auto bad = subring::check_transitivity(n);
    require(!bad, fmt::format("transitivity broken at n={} u={} k={}", n,
                              bad ? bad->u : 0, bad ? bad->k : 0));
  }
}

void check_subring_cycles(int max_nodes) {
  for (int n = 2; n <= max_nodes; n *= 2) {
    const int s = log2_exact(n);
    for (int k = 0; k < s; ++k) {
      const auto topo = apply_reconfiguration(Topology::ring(n), k);
      for (int u = 0; u < n; ++u) {
        const auto cycle = topo.cycle_from(u);
        const auto members = subring_members({k, u % (1 << k)}, n);
        require(std::set<int>(cycle.begin(), cycle.end()) ==
                    std::set<int>(members.begin(), members.end()),
                fmt::format("subring of node {} at n={} k={} differs", u, n, k));
        for (int j = k; j < s; ++j) {
          require(route_hops(topo, u, peer(u, j, n, CollectiveKind::kAllToAll))
                      .has_value(),
                  fmt::format("future peer unreachable n={} k={} j={}", n, k, j));
        }
      }
    }
  }
}

void check_oracle(int max_nodes) {
  const auto kinds = {CollectiveKind::kAllToAll, CollectiveKind::kReduceScatter,
                      CollectiveKind::kAllGather};
  for (int n = 4; n <= std::min(max_nodes, 128); n *= 2) {
    const int s = log2_exact(n);
    const auto params = CostParams::full(n, 1e6, 1e-6, 1e-6, 1e-11, 1e-5);
    for (auto kind : kinds) {
      for (unsigned mask = 0; mask < (1u << s); ++mask) {
        std::vector<bool> bits(static_cast<std::size_t>(s));
        for (int k = 0; k < s; ++k) bits[static_cast<std::size_t>(k)] = mask & (1u << k);
        const auto schedule = Schedule::from_bits(bits);
        const auto sim = run_schedule(params, kind, schedule);
        const auto analytic = evaluate_schedule(params, kind, schedule);
        for (int k = 0; k < s; ++k) {
          const auto& m = sim.measurements[static_cast<std::size_t>(k)];
          const auto h = hop_distance(k, schedule, params, kind);
          for (auto node_hops : m.per_node_hops) {
            require(node_hops == h,
                    fmt::format("{} n={} x={} step {}: measured {} hops, model {}",
                                to_string(kind), n, schedule.to_string(), k,
                                node_hops, h));
          }
          require(m.max_link_load == congestion(k, h) &&
                      m.min_link_load == m.max_link_load,
                  fmt::format("{} n={} x={} step {}: link load mismatch",
                              to_string(kind), n, schedule.to_string(), k));
        }
        require(sim.trace.total_s == analytic.total_s,
                fmt::format("{} n={} x={}: trace totals differ", to_string(kind),
                            n, schedule.to_string()));
      }
    }
  }
}

void check_brute_force(int max_nodes, bool quick) {
  for (auto kind : {CollectiveKind::kAllToAll, CollectiveKind::kReduceScatter,
                    CollectiveKind::kAllGather}) {
    for (int n = 4; n <= max_nodes; n *= 2) {
      const ScheduleEnumerator enumerator(n, kind);
      const int s = log2_exact(n);
      for (const auto& p : grid(n, quick)) {
        for (int r = 0; r < s; ++r) {
          const auto best = enumerator.optimum(p, r);
          const double ours =
              evaluate_schedule(p, kind, optimal_schedule(p, kind, r)).total_s;
          require(best && close(ours, best->total_s, 1e-12),
                  fmt::format("{} n={} R={} m={}: optimizer {} vs brute force {}",
                              to_string(kind), n, r, p.m, ours,
                              best ? best->total_s : 0.0));
        }
      }
    }
  }
}

void check_reversal() {
  std::mt19937_64 rng(20260401);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 << std::uniform_int_distribution<int>(1, 8)(rng);
    const int s = log2_exact(n);
    std::vector<bool> bits(static_cast<std::size_t>(s));
    for (int k = 1; k < s; ++k) bits[static_cast<std::size_t>(k)] = rng() & 1;
    const auto rs = Schedule::from_bits(bits);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto p = CostParams::full(n, std::exp2(10 + 18 * unit(rng)),
                                    2e-6 * unit(rng), 2e-6 * unit(rng),
                                    1e-11 * unit(rng), 1e-4 * unit(rng));
    const double a = evaluate_schedule(p, CollectiveKind::kReduceScatter, rs).total_s;
    const double b = evaluate_schedule(p, CollectiveKind::kAllGather,
                                       rs.reversed_segments()).total_s;
    require(a == b, fmt::format("reversal differs for n={} x={}", n, rs.to_string()));
  }
}

void run_fault_injection() {
  const int n = 16;
  const auto params = CostParams::full(n, 1e6, 1e-6, 1e-6, 1e-11, 1e-5);
  const auto schedule = Schedule::parse("0010");
  auto plan = topology_plan(n, CollectiveKind::kAllToAll, schedule);
  // Offset 8 at step 2 splits the ring into pairs that miss the offset-4 peer.
  plan[2] = Topology::with_offset(n, 8);
  run_with_topologies(params, CollectiveKind::kAllToAll, schedule, plan);
}

}  // namespace

VerifyOutcome run_verify(const VerifyOptions& options, std::ostream& log) {
  if (options.max_nodes < 2 || options.max_nodes > 256 ||
      !is_power_of_two(options.max_nodes)) {
    throw std::invalid_argument("max nodes must be a power of two in [2, 256]");
  }
  if (options.preset != "default" && options.preset != "quick") {
    throw std::invalid_argument("unknown preset '" + options.preset + "'");
  }
  const bool quick = options.preset == "quick";
  const std::pair<std::string, std::function<void()>> checks[] = {
      {"golden-schedules", [] { check_goldens(); }},
      {"transitivity", [&] { check_transitivity(options.max_nodes); }},
      {"subring-cycles", [&] { check_subring_cycles(options.max_nodes); }},
      {"oracle-equivalence", [&] { check_oracle(options.max_nodes); }},
      {"brute-force-vs-optimizer",
       [&] { check_brute_force(options.max_nodes, quick); }},
      {"reversal-identity", [] { check_reversal(); }},
      {"fault-injection",
       [&] {
         if (options.inject_fault) run_fault_injection();
       }},
  };
  VerifyOutcome outcome;
  for (const auto& [name, check] : checks) {
    try {
      check();
    } catch (const CheckFailed& f) {
      outcome.failure = name + ": " + f.message;
    } catch (const Error& e) {
      outcome.failure = name + ": " + e.what();
    }
    if (outcome.failure) {
      log << "FAIL " << *outcome.failure << '\n';
      return outcome;
    }
    log << "PASS " << name << '\n';
    outcome.passed.push_back(name);
  }
  return outcome;
}

}  // namespace subring::cli
