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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cli/commands.hpp"
#include "subring/optimizer.hpp"

namespace {

using namespace subring;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  std::string collective = "a2a";
  int nodes = 64;
  std::string msg_bytes = "16MB";
  double alpha_s = 1.7e-6;
  double alpha_h = 1e-6;
  double bandwidth_gbps = 800.0;
  double delta = 10e-6;
  int ports = 0;  // 0: 2n

  void add_to(CLI::App& app) {
    app.add_option("--collective", collective, "a2a | rs | ag | ar")
        ->capture_default_str();
    app.add_option("--nodes", nodes, "Node count (power of two)")
        ->capture_default_str();
    app.add_option("--msg-bytes", msg_bytes, "Bytes per node, e.g. 4096 or 16MB")
        ->capture_default_str();
    app.add_option("--alpha-s", alpha_s, "Per-step latency [s]")
        ->capture_default_str();
    app.add_option("--alpha-h", alpha_h, "Per-hop latency [s]")
        ->capture_default_str();
    app.add_option("--bandwidth-gbps", bandwidth_gbps, "Link bandwidth [Gbps]")
        ->capture_default_str();
    app.add_option("--delta", delta, "Reconfiguration delay [s]")
        ->capture_default_str();
    app.add_option("--ports", ports, "Optical ports z (default 2n)");
  }

  CollectiveKind kind() const {
    const auto k = parse_collective(collective);
    if (!k) throw std::invalid_argument("unknown collective '" + collective + "'");
    return *k;
  }

  CostParams params() const {
    if (!(bandwidth_gbps > 0.0)) {
      throw std::invalid_argument("bandwidth must be positive");
    }
    CostParams p{nodes,   cli::parse_bytes(msg_bytes),
                 alpha_s, alpha_h,
                 cli::beta_from_gbps(bandwidth_gbps), delta,
                 ports == 0 ? 2 * nodes : ports};
    validate_params(p);
    return p;
  }
};

int cmd_schedule(const CommonFlags& flags, const std::string& reconfigs) {
  const auto params = flags.params();
  const auto kind = flags.kind();
  ScheduleReport report;
  if (reconfigs == "auto") {
    report = optimal_r(params, kind);
  } else {
    std::size_t used = 0;
    const int r = std::stoi(reconfigs, &used);
    if (used != reconfigs.size()) {
      throw std::invalid_argument("--reconfigs takes an integer or 'auto'");
    }
    report = make_report(params, kind, optimal_schedule(params, kind, r));
  }
  std::cout << cli::format_report(params, report);
  return 0;
}

int cmd_trace(const CommonFlags& flags, const std::string& r_list) {
  const auto params = flags.params();
  const auto rows =
      cli::cumulative_rows(params, flags.kind(), cli::parse_int_list(r_list));
  std::cout << cli::trace_csv(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconfiguration schedules for Bruck collectives on optical "
               "circuit-switched rings"};
  app.require_subcommand(1);

  CommonFlags schedule_flags;
  std::string reconfigs = "auto";
  auto* schedule = app.add_subcommand("schedule", "Optimal schedule and trace");
  schedule_flags.add_to(*schedule);
  schedule->add_option("--reconfigs", reconfigs, "R or 'auto'")
      ->capture_default_str();

  CommonFlags trace_flags;
  std::string r_list = "0,1,2";
  auto* trace = app.add_subcommand("trace", "Cumulative cost CSV per R");
  trace_flags.add_to(*trace);
  trace->add_option("--r-list", r_list, "Comma-separated R values")
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
  std::string config;
  std::map<std::string, std::string> sweep_values;
  sweep->add_option("--config", config, "key = value configuration file");
  for (const auto& [flag, key, help] :
       std::initializer_list<std::tuple<const char*, const char*, const char*>>{
           {"--collective", "collective", "a2a | rs | ag | ar"},
           {"--nodes", "nodes", "Comma-separated node counts"},
           {"--msg-bytes", "msg_bytes", "Sizes, e.g. 1KB..256MB or 1KB,1MB"},
           {"--alpha-s", "alpha_s", "Per-step latencies [s]"},
           {"--alpha-h", "alpha_h", "Per-hop latencies [s]"},
           {"--bandwidth-gbps", "bandwidth_gbps", "Bandwidths [Gbps]"},
           {"--delta", "delta", "Reconfiguration delays [s]"},
           {"--ports", "ports", "Port counts z, or 'full'"},
           {"--baselines", "baselines", "sbruck,gbruck,ring,hd,rhd"},
           {"--output", "output", "CSV path (stdout when omitted)"}}) {
    sweep->add_option(flag, sweep_values[key], help);
  }

  cli::VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "Run the oracle suite");
  verify->add_option("--max-nodes", verify_options.max_nodes, "Largest n (<= 256)")
      ->capture_default_str();
  verify->add_option("--preset", verify_options.preset, "default | quick")
      ->capture_default_str();
  verify->add_flag("--inject-fault", verify_options.inject_fault,
                   "Run a plan with a broken subring to exercise failure reporting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*schedule) return cmd_schedule(schedule_flags, reconfigs);
    if (*trace) return cmd_trace(trace_flags, r_list);
    if (*sweep) {
      cli::SweepSpec spec;
      if (!config.empty()) {
        std::ifstream in(config);
        if (!in) throw std::invalid_argument("cannot read " + config);
        spec = cli::parse_sweep_config(in);
      }
      for (const auto& [key, value] : sweep_values) {
        if (!value.empty()) cli::apply_sweep_setting(spec, key, value);
      }
      const auto csv = cli::sweep_csv(spec, cli::run_sweep(spec));
      if (spec.output.empty()) {
        std::cout << csv;
      } else {
        cli::write_file_atomic(spec.output, csv);
      }
      return 0;
    }
    if (*verify) {
      const auto outcome = cli::run_verify(verify_options, std::cout);
      return outcome.failure ? kExitFailure : 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
