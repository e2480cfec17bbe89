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

// Discrete household-scene simulator: static scene description, per-episode
// object state, the agent's pose/budget state machine and the ground-truth
// interaction reach test.

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "amslam/classes.hpp"
#include "amslam/common.hpp"

namespace amslam {

struct LargeObject {
  LargeClass cls = LargeClass::kCountertop;
  std::vector<Cell> footprint;
  bool articulated = false;
  HeightClass height = HeightClass::kMid;
};

struct SmallObject {
  SmallClass cls = SmallClass::kApple;
  Cell cell;
  std::optional<std::size_t> container;  // index into Scene::large_objects()
  HeightClass height = HeightClass::kMid;
};

struct ObjectRef {
  enum class Kind : std::uint8_t { kLarge, kSmall };
  Kind kind = Kind::kLarge;
  std::size_t index = 0;

  static ObjectRef large(std::size_t i) { return {Kind::kLarge, i}; }
  static ObjectRef small(std::size_t i) { return {Kind::kSmall, i}; }
  friend bool operator==(const ObjectRef&, const ObjectRef&) = default;
};

/// Immutable world: occupancy, large-object footprints, small-object
/// placements and the agent's start pose. Safe to share across threads.
class Scene {
 public:
  Scene(NavGrid navigable, std::vector<LargeObject> large, std::vector<SmallObject> small,
        Pose start);

  int grid_size() const { return navigable_.width(); }
  const NavGrid& navigable() const { return navigable_; }
  bool is_navigable(Cell c) const { return navigable_.get(c, 0) != 0; }

  const std::vector<LargeObject>& large_objects() const { return large_; }
  const std::vector<SmallObject>& small_objects() const { return small_; }
  const Pose& start() const { return start_; }

  /// Index of the large object covering `c`, if any.
  std::optional<std::size_t> large_at(Cell c) const;

  ObjectClass class_of(ObjectRef ref) const;
  bool contains_class(const ObjectClass& c) const;

  /// Throws MalformedInput describing the first violated invariant.
  void validate() const;

 private:
  NavGrid navigable_;
  std::vector<LargeObject> large_;
  std::vector<SmallObject> small_;
  Pose start_;
  Grid<int> large_index_;
};

struct SmallObjectState {
  Cell cell;
  std::optional<std::size_t> container;
  HeightClass height = HeightClass::kMid;
  bool held = false;
  bool sliced = false;
  int times_picked = 0;
};

struct LargeObjectState {
  bool open = false;
  bool opened_ever = false;
  bool toggled_on = false;
};

/// Mutable per-episode object state layered over a Scene.
struct WorldState {
  std::vector<SmallObjectState> small;
  std::vector<LargeObjectState> large;

  static WorldState initial(const Scene& scene);
};

struct AgentState {
  Pose pose;
  std::optional<std::size_t> held;  // small-object index
  int steps_taken = 0;
  int failures = 0;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

enum class NavAction : std::uint8_t { kMoveAhead, kRotateLeft, kRotateRight, kLookUp, kLookDown };

enum class InteractionKind : std::uint8_t {
  kPickUp,
  kPut,
  kOpen,
  kClose,
  kSlice,
  kToggleOn,
  kToggleOff,
};

struct Interact {
  InteractionKind kind = InteractionKind::kPickUp;
  ObjectClass target = SmallClass::kApple;
};

using Action = std::variant<NavAction, Interact>;

enum class StepOutcome : std::uint8_t { kSuccess, kFailure };

struct Budget {
  int max_steps = 1000;
  int max_failures = 10;
};

std::string_view name(NavAction a);
NavAction nav_action_from_name(std::string_view text);
std::string_view name(InteractionKind k);
InteractionKind interaction_kind_from_name(std::string_view text);
std::string action_name(const Action& a);

/// True once no further action may be issued under `budget`.
bool budget_exhausted(const AgentState& state, const Budget& budget);

/// Applies a navigation action. Pure: the input state is untouched.
/// Throws BudgetExhausted if the episode budget is already spent.
std::pair<AgentState, StepOutcome> step(const Scene& scene, const AgentState& state,
                                        NavAction action, const Budget& budget = {});

/// Applies an interaction, mutating object and agent state. Success requires
/// the pose to be a ground-truth waypoint of some instance of the target
/// class together with the hand and articulation preconditions.
StepOutcome interact(const Scene& scene, WorldState& world, AgentState& state,
                     const Interact& action, const Budget& budget = {});

/// Back-up distance that governs the reach window of `ref`.
int reach_backup(const Scene& scene, const WorldState& world, ObjectRef ref);

/// Whether `pose` can interact with `ref`: the footprint meets the window
/// depth in [b, b + 1], lateral in [-1, 1], the cell is navigable and the
/// horizon lies in the object's height band.
bool in_reach(const Scene& scene, const WorldState& world, ObjectRef ref, const Pose& pose);

/// Every pose from which `ref` can be interacted with, given current
/// object placements. Ordered row-major, then rotation, then ladder order.
std::vector<Pose> gt_waypoints(const Scene& scene, const WorldState& world, ObjectRef ref);
/// Same, for the scene's initial placements.
std::vector<Pose> gt_waypoints(const Scene& scene, ObjectRef ref);

/// The waypoint an expert would pick: facing the object head-on at the
/// nearest reach depth, with the first band horizon. Ties go to the
/// earliest entry of gt_waypoints. Empty when no waypoint exists.
std::optional<Pose> canonical_waypoint(const Scene& scene, const WorldState& world, ObjectRef ref);

/// One executed action, as recorded by Simulator.
struct StepRecord {
  int t = 0;
  Pose pose;  // pose after the action
  Action action = NavAction::kMoveAhead;
  StepOutcome outcome = StepOutcome::kSuccess;
  bool injected = false;
  int subgoal_index = 0;
};

/// Stateful wrapper that owns the agent and object state of one episode
/// and records every executed action.
class Simulator {
 public:
  explicit Simulator(const Scene& scene, Budget budget = {});

  /// Throws BudgetExhausted once the episode budget is spent.
  StepOutcome execute(const Action& action);

  const Scene& scene() const { return *scene_; }
  const AgentState& agent() const { return agent_; }
  const WorldState& world() const { return world_; }
  const Budget& budget() const { return budget_; }
  bool exhausted() const { return budget_exhausted(agent_, budget_); }

  /// Labels subsequently recorded steps.
  void annotate(int subgoal_index, bool injected) {
    subgoal_index_ = subgoal_index;
    injected_ = injected;
  }
  const std::vector<StepRecord>& history() const { return history_; }

  /// Moves the agent without spending budget. Throws InvalidArgument when
  /// the cell is not navigable.
  void teleport(const Pose& pose);

 private:
  const Scene* scene_;
  Budget budget_;
  AgentState agent_;
  WorldState world_;
  std::vector<StepRecord> history_;
  int subgoal_index_ = 0;
  bool injected_ = false;
};

}  // namespace amslam
