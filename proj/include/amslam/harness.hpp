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

// Batch runner: seeded episodes, ablation tables, CSV metrics, trace files
// and map replay.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amslam/executor.hpp"
#include "amslam/generator.hpp"
#include "amslam/mapping.hpp"

namespace amslam {

/// Seed of episode `index`: mix_seed(base_seed, index). The executor
/// derives streams 1-3 from it; scenes and tasks use the two below.
std::uint64_t episode_seed(std::uint64_t base_seed, int index);
inline constexpr std::uint64_t kSceneStream = 4;
inline constexpr std::uint64_t kTaskStream = 5;

struct RunConfig {
  std::uint64_t base_seed = 0;
  int episodes = 50;
  PolicyKind policy = PolicyKind::kInstructionGuided;
  NoiseModel noise;
  OracleMode oracle = OracleMode::kNone;
  Perturbation perturbation = Perturbation::kNone;
  Ablations ablations;
  double detection_threshold = 0.8;  // minimum confidence of a detection waypoint
  int jobs = 1;

  /// Throws InvalidArgument for non-positive counts or invalid noise.
  void validate() const;
  EpisodeConfig episode_config() const;
};

struct EpisodeSetup {
  Scene scene;
  Task task;
};

/// The scene and task of episode `index`; independent of every run option
/// except the base seed.
EpisodeSetup make_episode(std::uint64_t base_seed, int index);

/// Runs `config.episodes` episodes on `config.jobs` threads. Results are in
/// episode order and do not depend on the thread count.
std::vector<EpisodeResult> run_batch(const RunConfig& config);

/// Same, over caller-supplied episodes (episode i uses episode_seed(base, i)).
std::vector<EpisodeResult> run_batch(const RunConfig& config, std::span<const EpisodeSetup> episodes);

struct MetricsRow {
  std::string policy;
  std::string oracle;
  std::string perturbation;
  std::string ablation;
  int episodes = 0;
  double success_rate = 0.0;
  double goal_condition = 0.0;
  double coverage = 0.0;
  double coverage_efficiency = 0.0;
  double mean_steps = 0.0;
};

inline constexpr int kCsvVersion = 1;
inline constexpr std::string_view kCsvHeader =
    "csv_version,policy,oracle,perturbation,ablation,episodes,success_rate,goal_condition,"
    "coverage,coverage_efficiency,mean_steps";

/// Averages over `results`. Throws EmptyInput.
MetricsRow summarize(const RunConfig& config, std::span<const EpisodeResult> results);
/// One CSV line without a newline, fixed precision.
std::string csv_row(const MetricsRow& row);
/// Header plus one line per row, newline-terminated.
std::string metrics_csv(std::span<const MetricsRow> rows);

/// Names accepted by expand_ablation.
inline constexpr std::string_view kAblationTables[] = {"table1", "table3", "table4"};

/// Configurations for `name` on top of `base`: "table1" (oracle and
/// perturbation study), "table3" (exploration policies), "table4"
/// (waypoint ablations), or a single ablation label such as "none",
/// "no_backup", "map_only", "detection_only", "no_horizon_search".
/// Throws InvalidArgument for unknown names.
std::vector<RunConfig> expand_ablation(std::string_view name, const RunConfig& base);

/// Short per-configuration label used for output directories.
std::string config_label(const RunConfig& config);

/// One JSON line per episode with its outcome.
std::string episode_summary_jsonl(std::span<const EpisodeResult> results);

/// Called once per recorded step with the map accumulated so far and the
/// agent's map-frame pose.
using ReplayVisitor =
    std::function<void(const StepRecord& record, const SemanticMap& map, const Pose& map_pose)>;

/// Rebuilds the map after every recorded step from noise-free observations
/// at the recorded poses, starting with one at the scene's start pose.
/// Returns the final map.
SemanticMap replay(const Scene& scene, std::span<const StepRecord> trace,
                   const ReplayVisitor& visit = {});

/// Text rendering of a map: '#' large object, '.' navigable, ' ' unknown,
/// and an arrow for the agent's map-frame pose.
std::string render_map(const SemanticMap& map, const Pose& agent_map_pose);

}  // namespace amslam
