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

// Two-phase episode execution: exploration, then waypoint navigation and
// scripted interactions per subgoal. Oracle modes and perturbations
// replace or corrupt the navigation stage for controlled comparisons.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amslam/exploration.hpp"
#include "amslam/perception.hpp"
#include "amslam/tasks.hpp"
#include "amslam/waypoints.hpp"
#include "amslam/world.hpp"

namespace amslam {

enum class OracleMode : std::uint8_t { kNone, kGtNavigation, kGtAll };
enum class Perturbation : std::uint8_t { kNone, kDisplacement, kHorizon };

std::string_view name(OracleMode m);
OracleMode oracle_mode_from_name(std::string_view text);
std::string_view name(Perturbation p);
Perturbation perturbation_from_name(std::string_view text);

struct Ablations {
  bool no_backup = false;
  WaypointStrategy strategy = WaypointStrategy::kBoth;
  bool no_horizon_search = false;

  friend bool operator==(const Ablations&, const Ablations&) = default;
};

/// Short label such as "none", "no_backup" or "map_only".
std::string ablation_label(const Ablations& a);

struct EpisodeConfig {
  PolicyConfig policy;
  NoiseModel noise;
  OracleMode oracle = OracleMode::kNone;
  Perturbation perturbation = Perturbation::kNone;
  Ablations ablations;
  Budget budget;
  int max_blocked_moves = 10;
};

struct SubgoalOutcome {
  bool success = false;
  std::string detail;
};

struct EpisodeResult {
  bool success = false;
  double goal_condition = 0.0;
  int steps = 0;
  int failures = 0;
  int exploration_steps = 0;
  int exploration_failures = 0;
  CoverageMetrics coverage;
  std::vector<SubgoalOutcome> subgoals;
  std::string termination;
  std::vector<StepRecord> history;
};

/// Runs one episode. Every failure mode folds into the result. `seed`
/// feeds independent policy, perception and perturbation streams.
EpisodeResult execute_task(const Scene& scene, const Task& task, const EpisodeConfig& config,
                           std::uint64_t seed);

/// True when some subgoal targets or places into an articulated class.
bool involves_articulated(const Task& task);

struct Score {
  double success_rate = 0.0;
  double goal_condition = 0.0;
};

/// Means of success and goal-condition fraction. Throws EmptyInput.
Score score(std::span<const EpisodeResult> results);

}  // namespace amslam
