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

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subring/baselines.hpp"
#include "subring/model.hpp"
#include "subring/optimizer.hpp"

namespace subring::cli {

/// Seconds per byte for a link of `gbps` gigabits per second.
double beta_from_gbps(double gbps);

/// Parses "4096", "64KB", "16MB", "1GB" (binary multiples) or a plain
/// floating-point byte count. Throws std::invalid_argument.
double parse_bytes(std::string_view text);

/// Comma-separated list of byte sizes; "lo..hi" expands by doubling.
std::vector<double> parse_byte_list(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

/// Shortest decimal that round-trips, for CSV output.
std::string format_number(double v);

/// One point of a sweep grid.
struct SweepPoint {
  CostParams params;
  double bandwidth_gbps = 0.0;
};

struct SweepSpec {
  CollectiveKind collective = CollectiveKind::kAllToAll;
  std::vector<int> nodes{64};
  std::vector<double> msg_bytes{16.0 * 1024 * 1024};
  std::vector<double> alpha_s{1.7e-6};
  std::vector<double> alpha_h{1e-6};
  std::vector<double> bandwidth_gbps{800.0};
  std::vector<double> delta{10e-6};
  std::vector<int> ports;  // empty means full reconfigurability (2n)
  std::vector<BaselineAlgorithm> baselines;  // empty means all applicable
  std::string output;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
  std::vector<SweepPoint> points() const;
  std::vector<BaselineAlgorithm> effective_baselines() const;
};

std::optional<BaselineAlgorithm> parse_baseline(std::string_view name);

/// Reads "key = value" lines; '#' starts a comment. Unknown keys throw.
SweepSpec parse_sweep_config(std::istream& in);
/// Applies one key/value pair to `spec`.
void apply_sweep_setting(SweepSpec& spec, std::string_view key,
                         std::string_view value);

struct SweepRow {
  SweepPoint point;
  std::string algorithm;
  int r = 0;
  double total_s = 0.0;
  double speedup_vs_sbruck = 0.0;
  double speedup_vs_ring = 0.0;  // AllReduce only
};

/// Evaluates every point and algorithm; rows sorted by parameter tuple, then
/// algorithm name. Independent of thread count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0);
std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

struct TraceRow {
  int step = 0;
  int r = 0;
  double cumulative_s = 0.0;
};

/// Cumulative cost of the optimal schedule for each R in `reconfigs`.
std::vector<TraceRow> cumulative_rows(const CostParams& params,
                                      CollectiveKind kind,
                                      const std::vector<int>& reconfigs);
std::string trace_csv(const std::vector<TraceRow>& rows);

/// Human-readable report for the `schedule` subcommand.
std::string format_report(const CostParams& params, const ScheduleReport& report);

struct VerifyOptions {
  int max_nodes = 256;
  std::string preset = "default";  // default | quick
  bool inject_fault = false;
};

struct VerifyOutcome {
  std::vector<std::string> passed;
  std::optional<std::string> failure;
};

/// Runs the oracle suite, stopping at the first failing case.
VerifyOutcome run_verify(const VerifyOptions& options, std::ostream& log);

}  // namespace subring::cli
