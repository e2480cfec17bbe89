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

// Exploration phase: heuristic policies, online action augmentation
// (rotation sweeps and horizon zigzag), the agent's map memory and
// coverage metrics.

#pragma once

#include <optional>
#include <set>
#include <span>
#include <utility>
#include <string_view>
#include <vector>

#include "amslam/classes.hpp"
#include "amslam/common.hpp"
#include "amslam/mapping.hpp"
#include "amslam/perception.hpp"
#include "amslam/planner.hpp"
#include "amslam/waypoints.hpp"
#include "amslam/world.hpp"

namespace amslam {

enum class PolicyKind : std::uint8_t {
  kInstructionGuided,
  kRandom,
  kFrontierOnly,
  kPartialLanguage,
  kNoExploredArea,
};

std::string_view name(PolicyKind k);
PolicyKind policy_kind_from_name(std::string_view text);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::kInstructionGuided;
  double stop_confidence = 0.9;  // map confidence that ends a subgoal's search
  int max_steps = 500;           // executed steps, augmentation included
  int max_failures = 4;
  WaypointOptions waypoints;
};

enum class ExplorationAction : std::uint8_t { kMoveAhead, kRotateLeft, kRotateRight, kStop };

std::string_view name(ExplorationAction a);

/// Inserts four RotateRight after every second MoveAhead.
std::vector<NavAction> inject_rotations(std::span<const NavAction> raw);

/// Prefix [LookDown, LookUp, LookUp], then after each action a look pair
/// alternating between [LookDown, LookDown] and [LookUp, LookUp]. Empty
/// input yields empty output. Throws MalformedInput on look actions.
std::vector<NavAction> zigzag(std::span<const NavAction> seq);

/// What a navigation subgoal asks the agent to find.
struct ExplorationTarget {
  ObjectClass target = LargeClass::kCountertop;
  std::optional<LargeClass> container;

  /// The noun of the navigation instruction alone.
  ObjectClass navigation_noun() const {
    if (container) return *container;
    return target;
  }
};

/// Everything the agent has accumulated from its observations, in the map
/// frame anchored at the start pose.
class AgentMemory {
 public:
  AgentMemory(const Pose& scene_start, NoiseModel noise, int grid_size = kGridSize);

  /// Records one observation from the simulator's current pose.
  void observe(const Simulator& sim, Rng& rng);

  const MapFrame& frame() const { return frame_; }
  const SemanticMap& map() const { return map_; }
  const ExploredArea& explored() const { return explored_; }
  const DetectionLog& log() const { return log_; }
  const std::set<Cell>& visited() const { return visited_; }

  /// Drops detections of `cls` whose mask area matches an object at one of
  /// the map-frame `cells`, once the object there has been taken away.
  void forget(const ObjectClass& cls, std::span<const Cell> cells);

  /// Post-processed navigable grid plus every cell the agent has stood on.
  NavGrid planning_grid() const;

 private:
  MapFrame frame_;
  NoiseModel noise_;
  SemanticMap map_;
  ExploredArea explored_;
  DetectionLog log_;
  std::set<Cell> visited_;
};

/// Mask area above which a small-object detection counts as close.
inline constexpr double kCloseDetectionArea = 800.0;

/// Per-subgoal scratch state of a policy.
struct PolicyState {
  int decisions = 0;
  std::optional<Cell> random_goal;
  std::set<Cell> dismissed_peaks;
  std::set<std::pair<Cell, Rotation>> dismissed_sightings;
};

/// One policy decision from the agent's map-frame pose.
ExplorationAction next_action(const PolicyConfig& policy, const AgentMemory& memory,
                              const Pose& map_pose, const ExplorationTarget& target,
                              PolicyState& state, Rng& rng);

struct ExplorationTrace {
  std::vector<NavAction> raw_actions;
  std::vector<NavAction> augmented_actions;  // executed, in order
  std::set<Cell> visited;                    // scene cells, start included
  int steps = 0;
  int failures = 0;
};

/// Runs the exploration phase over the navigation subgoals in order,
/// augmenting actions online and feeding every executed step to `memory`.
/// Stops at the exploration budget or when the episode budget runs out.
ExplorationTrace run_exploration(Simulator& sim, AgentMemory& memory,
                                 std::span<const ExplorationTarget> targets,
                                 const PolicyConfig& policy, Rng& policy_rng, Rng& perception_rng);

struct CoverageMetrics {
  std::size_t coverage = 0;
  double coverage_efficiency = 0.0;
};

/// Distinct visited cells, and that count per un-augmented action.
CoverageMetrics coverage_metrics(const ExplorationTrace& trace);

}  // namespace amslam
