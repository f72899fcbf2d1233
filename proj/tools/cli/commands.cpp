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

#include "cli/commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "subring/cost.hpp"

namespace subring::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

double parse_double(std::string_view text) {
  const std::string str(trim(text));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + str + "'");
  }
  if (used != str.size()) {
    throw std::invalid_argument("not a number: '" + str + "'");
  }
  return v;
}

int parse_int(std::string_view text) {
  const std::string str(trim(text));
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(str, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + str + "'");
  }
  if (used != str.size()) {
    throw std::invalid_argument("not an integer: '" + str + "'");
  }
  return v;
}

auto param_key(const SweepPoint& p) {
  return std::make_tuple(p.params.n, p.params.m, p.params.alpha_s,
                         p.params.alpha_h, p.params.beta, p.params.delta,
                         p.params.z);
}

}  // namespace

double beta_from_gbps(double gbps) { return 8.0 / (gbps * 1e9); }

double parse_bytes(std::string_view text) {
  text = trim(text);
  std::string upper;
  for (char c : text) {
    upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  struct Suffix {
    std::string_view name;
    double scale;
  };
  constexpr Suffix suffixes[] = {{"KIB", 1024.0}, {"MIB", 1024.0 * 1024},
                                 {"GIB", 1024.0 * 1024 * 1024},
                                 {"KB", 1024.0}, {"MB", 1024.0 * 1024},
                                 {"GB", 1024.0 * 1024 * 1024},
                                 {"K", 1024.0}, {"M", 1024.0 * 1024},
                                 {"G", 1024.0 * 1024 * 1024}, {"B", 1.0}};
  std::string_view u(upper);
  for (const auto& suffix : suffixes) {
    if (u.size() > suffix.name.size() && u.ends_with(suffix.name)) {
      return parse_double(text.substr(0, text.size() - suffix.name.size())) *
             suffix.scale;
    }
  }
  return parse_double(text);
}

std::vector<double> parse_byte_list(std::string_view text) {
  std::vector<double> out;
  for (auto item : split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(parse_bytes(item));
      continue;
    }
    const double lo = parse_bytes(item.substr(0, dots));
    const double hi = parse_bytes(item.substr(dots + 2));
    if (!(lo > 0.0) || hi < lo) {
      throw std::invalid_argument("bad byte range '" + std::string(item) + "'");
    }
    for (double v = lo; v <= hi; v *= 2.0) out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  for (auto item : split(text, ',')) out.push_back(parse_double(item));
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (auto item : split(text, ',')) out.push_back(parse_int(item));
  return out;
}

std::string format_number(double v) { return fmt::format("{}", v); }

std::optional<BaselineAlgorithm> parse_baseline(std::string_view name) {
  if (name == "sbruck") return BaselineAlgorithm::kSBruck;
  if (name == "gbruck") return BaselineAlgorithm::kGBruck;
  if (name == "ring") return BaselineAlgorithm::kRing;
  if (name == "hd") return BaselineAlgorithm::kHDStatic;
  if (name == "rhd") return BaselineAlgorithm::kRHD;
  return std::nullopt;
}

void SweepSpec::validate() const {
  const auto require_nonempty = [](bool empty, const char* name) {
    if (empty) throw std::invalid_argument(std::string(name) + " list is empty");
  };
  require_nonempty(nodes.empty(), "nodes");
  require_nonempty(msg_bytes.empty(), "msg_bytes");
  require_nonempty(alpha_s.empty(), "alpha_s");
  require_nonempty(alpha_h.empty(), "alpha_h");
  require_nonempty(bandwidth_gbps.empty(), "bandwidth_gbps");
  require_nonempty(delta.empty(), "delta");
  for (double g : bandwidth_gbps) {
    if (!(g > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  }
  for (auto b : baselines) {
    if (!baseline_supports(collective, b)) {
      throw std::invalid_argument(
          "baseline " + BaselineKind{b, 0}.name() + " does not apply to " +
          std::string(to_string(collective)));
    }
  }
  for (const auto& point : points()) {
    try {
      validate_params(point.params);
    } catch (const Error& e) {
      throw std::invalid_argument(e.what());
    }
  }
}

std::vector<SweepPoint> SweepSpec::points() const {
  std::vector<SweepPoint> out;
  const std::vector<int> full{0};
  for (int n : nodes)
    for (double m : msg_bytes)
      for (double as : alpha_s)
        for (double ah : alpha_h)
          for (double g : bandwidth_gbps)
            for (double d : delta)
              for (int z : ports.empty() ? full : ports) {
                SweepPoint p;
                p.params = CostParams{n, m, as, ah, beta_from_gbps(g), d,
                                      z == 0 ? 2 * n : z};
                p.bandwidth_gbps = g;
                out.push_back(p);
              }
  return out;
}

std::vector<BaselineAlgorithm> SweepSpec::effective_baselines() const {
  if (!baselines.empty()) return baselines;
  std::vector<BaselineAlgorithm> out;
  for (auto b : {BaselineAlgorithm::kSBruck, BaselineAlgorithm::kGBruck,
                 BaselineAlgorithm::kRing, BaselineAlgorithm::kHDStatic,
                 BaselineAlgorithm::kRHD}) {
    if (baseline_supports(collective, b)) out.push_back(b);
  }
  return out;
}

void apply_sweep_setting(SweepSpec& spec, std::string_view key,
                         std::string_view value) {
  if (key == "collective") {
    const auto kind = parse_collective(trim(value));
    if (!kind) {
      throw std::invalid_argument("unknown collective '" + std::string(value) + "'");
    }
    spec.collective = *kind;
  } else if (key == "nodes") {
    spec.nodes = parse_int_list(value);
  } else if (key == "msg_bytes") {
    spec.msg_bytes = parse_byte_list(value);
  } else if (key == "alpha_s") {
    spec.alpha_s = parse_double_list(value);
  } else if (key == "alpha_h") {
    spec.alpha_h = parse_double_list(value);
  } else if (key == "bandwidth_gbps") {
    spec.bandwidth_gbps = parse_double_list(value);
  } else if (key == "delta") {
    spec.delta = parse_double_list(value);
  } else if (key == "ports") {
    spec.ports.clear();
    for (auto item : split(value, ',')) {
      spec.ports.push_back(item == "full" ? 0 : parse_int(item));
    }
  } else if (key == "baselines") {
    spec.baselines.clear();
    for (auto item : split(value, ',')) {
      const auto b = parse_baseline(item);
      if (!b) throw std::invalid_argument("unknown baseline '" + std::string(item) + "'");
      spec.baselines.push_back(*b);
    }
  } else if (key == "output") {
    spec.output = std::string(trim(value));
  } else {
    throw std::invalid_argument("unknown key '" + std::string(key) + "'");
  }
}

SweepSpec parse_sweep_config(std::istream& in) {
  SweepSpec spec;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    view = trim(view.substr(0, view.find('#')));
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    try {
      apply_sweep_setting(spec, trim(view.substr(0, eq)),
                          trim(view.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const auto points = spec.points();
  const auto baselines = spec.effective_baselines();
  const bool with_ring = spec.collective == CollectiveKind::kAllReduce;
  std::vector<std::vector<SweepRow>> per_point(points.size());

  auto evaluate = [&](std::size_t i) {
    const auto& point = points[i];
    const auto& p = point.params;
    const auto kind = spec.collective;
    std::vector<SweepRow> rows;
    auto add = [&](std::string name, int r, double total) {
      rows.push_back(SweepRow{point, std::move(name), r, total, 0.0, 0.0});
    };
    const auto bridge = optimal_r(p, kind);
    add("bridge", bridge.r_chosen, bridge.total_s);
    for (auto b : baselines) {
      if (b == BaselineAlgorithm::kRHD) {
        const auto [r, trace] = best_rhd(p, kind);
        add("rhd", r, trace.total_s);
        continue;
      }
      const auto trace = baseline_cost(p, kind, BaselineKind{b, 0});
      int r = 0;
      if (b == BaselineAlgorithm::kGBruck) r = greedy_schedule(p, kind).reconfigurations();
      add(BaselineKind{b, 0}.name(), r, trace.total_s);
    }
    const double sbruck =
        baseline_cost(p, kind, BaselineKind::sbruck()).total_s;
    const double ring =
        with_ring ? baseline_cost(p, kind, BaselineKind::ring()).total_s : 0.0;
    for (auto& row : rows) {
      row.speedup_vs_sbruck = sbruck / row.total_s;
      if (with_ring) row.speedup_vs_ring = ring / row.total_s;
    }
    per_point[i] = std::move(rows);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (auto i = next++; i < points.size(); i = next++) evaluate(i);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<SweepRow> rows;
  for (auto& chunk : per_point) {
    rows.insert(rows.end(), std::make_move_iterator(chunk.begin()),
                std::make_move_iterator(chunk.end()));
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     const auto ka = param_key(a.point);
                     const auto kb = param_key(b.point);
                     if (ka != kb) return ka < kb;
                     return a.algorithm < b.algorithm;
                   });
  return rows;
}

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const bool with_ring = spec.collective == CollectiveKind::kAllReduce;
  std::string out =
      "collective,n,m_bytes,alpha_s_s,alpha_h_s,beta_s_per_byte,delta_s,z,"
      "algorithm,r,total_s,speedup_vs_sbruck";
  out += with_ring ? ",speedup_vs_ring\n" : "\n";
  for (const auto& row : rows) {
    const auto& p = row.point.params;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}",
                       to_string(spec.collective), p.n, format_number(p.m),
                       format_number(p.alpha_s), format_number(p.alpha_h),
                       format_number(p.beta), format_number(p.delta), p.z,
                       row.algorithm, row.r, format_number(row.total_s),
                       format_number(row.speedup_vs_sbruck));
    if (with_ring) out += "," + format_number(row.speedup_vs_ring);
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::vector<TraceRow> cumulative_rows(const CostParams& params,
                                      CollectiveKind kind,
                                      const std::vector<int>& reconfigs) {
  std::vector<Schedule> schedules;
  for (int r : reconfigs) schedules.push_back(optimal_schedule(params, kind, r));
  const auto table = cumulative_comparison(params, kind, schedules);
  std::vector<TraceRow> rows;
  for (std::size_t j = 0; j < schedules.size(); ++j) {
    for (std::size_t k = 0; k < table.cumulative[j].size(); ++k) {
      rows.push_back({static_cast<int>(k), reconfigs[j], table.cumulative[j][k]});
    }
  }
  return rows;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::string out = "step,r,cumulative_s\n";
  for (const auto& row : rows) {
    out += fmt::format("{},{},{}\n", row.step, row.r,
                       format_number(row.cumulative_s));
  }
  return out;
}

std::string format_report(const CostParams& params,
                           const ScheduleReport& report) {
  std::string segments;
  for (int len : report.schedule.segments()) {
    if (!segments.empty()) segments += ',';
    segments += std::to_string(len);
  }
  std::string out;
  out += fmt::format("collective: {}\n", to_string(report.kind));
  out += fmt::format("nodes: {}\nports: {}\n", params.n, params.z);
  out += fmt::format("bits: {}\n", report.schedule.to_string());
  out += fmt::format("segments: {}\n", segments);
  out += fmt::format("reconfigurations: {}\n", report.r_chosen);
  out += fmt::format("objective: {}\n", report.objective_note);
  out += fmt::format("total_s: {}\n", format_number(report.total_s));
  out += "step,phase,hops,congestion,bytes,startup_s,hop_s,tx_s,reconfig_s,"
         "cumulative_s\n";
  for (const auto& s : report.trace) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", s.step,
                       to_string(s.phase), s.hops, s.congestion,
                       format_number(s.bytes), format_number(s.startup_s),
                       format_number(s.hop_s), format_number(s.tx_s),
                       format_number(s.reconfig_s),
                       format_number(s.cumulative_s));
  }
  return out;
}

}  // namespace subring::cli
