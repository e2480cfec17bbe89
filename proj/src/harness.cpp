// Copyright 2026 The amslam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "amslam/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

namespace amslam {
namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

Ablations parse_ablations(std::string_view label) {
  Ablations a;
  if (label == "none" || label == "full") return a;
  std::size_t start = 0;
  while (start <= label.size()) {
    const auto end = std::min(label.find('+', start), label.size());
    const std::string_view part = label.substr(start, end - start);
    if (part == "no_backup") {
      a.no_backup = true;
    } else if (part == "no_horizon_search") {
      a.no_horizon_search = true;
    } else if (part == "map_only" || part == "detection_only") {
      a.strategy = waypoint_strategy_from_name(part);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown ablation '" + std::string(part) + "'");
    }
    start = end + 1;
  }
  return a;
}

}  // namespace

std::uint64_t episode_seed(std::uint64_t base_seed, int index) {
  return mix_seed(base_seed, static_cast<std::uint64_t>(index));
}

void RunConfig::validate() const {
  if (episodes <= 0) throw Error(ErrorCode::kInvalidArgument, "episodes must be positive");
  if (jobs <= 0) throw Error(ErrorCode::kInvalidArgument, "jobs must be positive");
  if (!(detection_threshold >= 0.0 && detection_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "detection threshold must lie in [0, 1]");
  }
  noise.validate();
}

EpisodeConfig RunConfig::episode_config() const {
  EpisodeConfig c;
  c.policy.kind = policy;
  c.policy.waypoints.detection_threshold = detection_threshold;
  c.noise = noise;
  c.oracle = oracle;
  c.perturbation = perturbation;
  c.ablations = ablations;
  return c;
}

EpisodeSetup make_episode(std::uint64_t base_seed, int index) {
  const std::uint64_t seed = episode_seed(base_seed, index);
  Rng scene_rng(mix_seed(seed, kSceneStream));
  Scene scene = generate_scene(scene_rng);
  Rng task_rng(mix_seed(seed, kTaskStream));
  Task task = generate_task(scene, task_rng);
  return {std::move(scene), std::move(task)};
}

std::vector<EpisodeResult> run_batch(const RunConfig& config,
                                     std::span<const EpisodeSetup> episodes) {
  config.validate();
  const EpisodeConfig episode_config = config.episode_config();
  std::vector<EpisodeResult> results(episodes.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < episodes.size(); i = next++) {
      try {
        results[i] = execute_task(episodes[i].scene, episodes[i].task, episode_config,
                                  episode_seed(config.base_seed, static_cast<int>(i)));
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(config.jobs), std::max<std::size_t>(1, episodes.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::vector<EpisodeResult> run_batch(const RunConfig& config) {
  config.validate();
  std::vector<EpisodeSetup> episodes;
  episodes.reserve(static_cast<std::size_t>(config.episodes));
  for (int i = 0; i < config.episodes; ++i) episodes.push_back(make_episode(config.base_seed, i));
  return run_batch(config, episodes);
}

MetricsRow summarize(const RunConfig& config, std::span<const EpisodeResult> results) {
  const Score s = score(results);
  MetricsRow row;
  row.policy = std::string(name(config.policy));
  row.oracle = std::string(name(config.oracle));
  row.perturbation = std::string(name(config.perturbation));
  row.ablation = ablation_label(config.ablations);
  row.episodes = static_cast<int>(results.size());
  row.success_rate = s.success_rate;
  row.goal_condition = s.goal_condition;
  double coverage = 0.0;
  double efficiency = 0.0;
  double steps = 0.0;
  for (const auto& r : results) {
    coverage += static_cast<double>(r.coverage.coverage);
    efficiency += r.coverage.coverage_efficiency;
    steps += r.steps;
  }
  const auto n = static_cast<double>(results.size());
  row.coverage = coverage / n;
  row.coverage_efficiency = efficiency / n;
  row.mean_steps = steps / n;
  return row;
}

std::string csv_row(const MetricsRow& row) {
  std::string out = std::to_string(kCsvVersion);
  for (const std::string* field : {&row.policy, &row.oracle, &row.perturbation, &row.ablation}) {
    out += ',';
    out += *field;
  }
  out += ',' + std::to_string(row.episodes);
  out += ',' + fixed(row.success_rate, 4);
  out += ',' + fixed(row.goal_condition, 4);
  out += ',' + fixed(row.coverage, 3);
  out += ',' + fixed(row.coverage_efficiency, 4);
  out += ',' + fixed(row.mean_steps, 2);
  return out;
}

std::string metrics_csv(std::span<const MetricsRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += csv_row(r);
    out += '\n';
  }
  return out;
}

std::vector<RunConfig> expand_ablation(std::string_view name, const RunConfig& base) {
  std::vector<RunConfig> out;
  if (name == "table1") {
    RunConfig c = base;
    c.oracle = OracleMode::kNone;
    c.perturbation = Perturbation::kNone;
    out.push_back(c);
    for (Perturbation p : {Perturbation::kNone, Perturbation::kDisplacement, Perturbation::kHorizon}) {
      c.oracle = OracleMode::kGtNavigation;
      c.perturbation = p;
      out.push_back(c);
    }
    c.oracle = OracleMode::kGtAll;
    c.perturbation = Perturbation::kNone;
    out.push_back(c);
  } else if (name == "table3") {
    for (PolicyKind k : {PolicyKind::kInstructionGuided, PolicyKind::kRandom, PolicyKind::kFrontierOnly,
                         PolicyKind::kPartialLanguage, PolicyKind::kNoExploredArea}) {
      RunConfig c = base;
      c.policy = k;
      out.push_back(c);
    }
  } else if (name == "table4") {
    for (std::string_view label :
         {"none", "no_backup", "map_only", "detection_only", "no_horizon_search"}) {
      RunConfig c = base;
      c.ablations = parse_ablations(label);
      out.push_back(c);
    }
  } else {
    RunConfig c = base;
    c.ablations = parse_ablations(name);
    out.push_back(c);
  }
  return out;
}

std::string config_label(const RunConfig& config) {
  std::string label = std::string(name(config.policy)) + "_" + std::string(name(config.oracle)) +
                      "_" + std::string(name(config.perturbation)) + "_" +
                      ablation_label(config.ablations);
  std::replace(label.begin(), label.end(), '+', '-');
  return label;
}

std::string episode_summary_jsonl(std::span<const EpisodeResult> results) {
  std::string out;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    nlohmann::json subgoals = nlohmann::json::array();
    for (const auto& s : r.subgoals) subgoals.push_back({{"success", s.success}, {"detail", s.detail}});
    const nlohmann::json j = {{"episode", i},
                              {"success", r.success},
                              {"goal_condition", r.goal_condition},
                              {"steps", r.steps},
                              {"failures", r.failures},
                              {"exploration_steps", r.exploration_steps},
                              {"exploration_failures", r.exploration_failures},
                              {"coverage", r.coverage.coverage},
                              {"coverage_efficiency", r.coverage.coverage_efficiency},
                              {"termination", r.termination},
                              {"subgoals", subgoals}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

SemanticMap replay(const Scene& scene, std::span<const StepRecord> trace,
                   const ReplayVisitor& visit) {
  const MapFrame frame(scene.start(), scene.grid_size());
  SemanticMap map(scene.grid_size());
  auto observe = [&](const Pose& pose) {
    if (!scene.navigable().in_bounds(pose.cell)) {
      throw Error(ErrorCode::kMalformedInput, "trace pose lies outside the scene");
    }
    const Pose map_pose = frame.to_map(pose);
    accumulate(map, transform_partial(ground_truth_partial_map(scene, pose), map_pose,
                                      scene.grid_size()));
    return map_pose;
  };
  observe(scene.start());
  for (const StepRecord& r : trace) {
    const Pose map_pose = observe(r.pose);
    if (visit) visit(r, map, map_pose);
  }
  return map;
}

std::string render_map(const SemanticMap& map, const Pose& agent_map_pose) {
  static constexpr char kArrows[] = {'^', '>', 'v', '<'};
  const int g = map.grid_size();
  std::string out;
  out.reserve(static_cast<std::size_t>(g) * static_cast<std::size_t>(g + 1));
  for (int y = 0; y < g; ++y) {
    for (int x = 0; x < g; ++x) {
      const Cell c{x, y};
      char ch = ' ';
      if (c == agent_map_pose.cell) {
        ch = kArrows[static_cast<int>(agent_map_pose.r)];
      } else {
        bool object = false;
        for (int k = 0; k < kNumLargeClasses && !object; ++k) object = map.value(c, k) >= 0.5f;
        if (object) {
          ch = '#';
        } else if (map.value(c, kNavigableChannel) >= 0.5f) {
          ch = '.';
        }
      }
      out.push_back(ch);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out.push_back('\n');
  }
  return out;
}

}  // namespace amslam
