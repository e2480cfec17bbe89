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

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "amslam/classes.hpp"
#include "amslam/common.hpp"
#include "amslam/perception.hpp"
#include "amslam/world.hpp"

namespace amslam {

/// Planning state. Horizon is not planned; it is chosen after arrival.
struct PlanNode {
  Cell cell;
  Rotation r = Rotation::k0;
  friend bool operator==(const PlanNode&, const PlanNode&) = default;
};

struct Plan {
  std::vector<NavAction> actions;
  int cost = 0;
};

/// Cost of stepping into a cell; must be >= 1.
using MoveCostFn = std::function<int(Cell)>;
using GoalFn = std::function<bool(const PlanNode&)>;

/// Dijkstra over (x, y, r): MoveAhead into a navigable in-bounds cell and
/// 90 degree rotations, all at unit cost. Ties are broken by expansion
/// order (Move, RotateLeft, RotateRight) and then first-in-first-out. The
/// start cell itself need not be navigable.
std::optional<Plan> try_plan_path(const NavGrid& navigable, PlanNode start, PlanNode goal);

/// As try_plan_path but throws Unreachable.
Plan plan_path(const NavGrid& navigable, PlanNode start, PlanNode goal);

struct GoalPlan {
  Plan plan;
  PlanNode goal;
};

/// Cheapest plan to any node accepted by `is_goal`. `move_cost` defaults to 1.
std::optional<GoalPlan> plan_to_nearest(const NavGrid& navigable, PlanNode start,
                                        const GoalFn& is_goal, const MoveCostFn& move_cost = {});

/// Replays `actions` from `start` on `navigable`; returns the final node, or
/// nullopt if some MoveAhead is blocked.
std::optional<PlanNode> simulate_plan(const NavGrid& navigable, PlanNode start,
                                      const std::vector<NavAction>& actions);

/// [h, h + 15, h - 15] restricted to the legal ladder.
std::vector<Horizon> backtrack_horizons(Horizon h_star);

/// The six horizons swept when choosing where to look at a target.
inline constexpr std::array<int, 6> kHorizonSweep = {60, 45, 30, 15, 0, -15};

/// Issues LookUp/LookDown until the agent is at `target`.
void look_to(Simulator& sim, Horizon target);

/// Detection confidence a horizon candidate must exceed.
inline constexpr double kHorizonConfidence = 0.8;

/// Sweeps the six horizons in order, detecting `target` at each; returns
/// the horizon whose detection (confidence > 0.8) has the largest mask
/// area, earlier horizons winning ties. The agent is left at the chosen
/// horizon, or back at its arrival horizon when nothing qualified.
std::optional<Horizon> select_horizon(Simulator& sim, const ObjectClass& target,
                                      const NoiseModel& noise, Rng& rng);

}  // namespace amslam
