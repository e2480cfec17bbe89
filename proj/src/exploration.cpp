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

#include "amslam/exploration.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace amslam {
namespace {

constexpr int kSweepRotations = 4;
constexpr int kMovesPerSweep = 2;
constexpr int kExploredMoveCost = 2;
constexpr int kVisitedMoveCost = 3;
constexpr int kRandomGoalAttempts = 10;
constexpr int kApproachDepth = 2;

bool is_look(NavAction a) { return a == NavAction::kLookUp || a == NavAction::kLookDown; }

ExplorationAction as_exploration(NavAction a) {
  switch (a) {
    case NavAction::kMoveAhead: return ExplorationAction::kMoveAhead;
    case NavAction::kRotateLeft: return ExplorationAction::kRotateLeft;
    case NavAction::kRotateRight: return ExplorationAction::kRotateRight;
    default: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "look actions are not exploration actions");
}

NavAction as_nav(ExplorationAction a) {
  switch (a) {
    case ExplorationAction::kMoveAhead: return NavAction::kMoveAhead;
    case ExplorationAction::kRotateLeft: return NavAction::kRotateLeft;
    case ExplorationAction::kRotateRight: return NavAction::kRotateRight;
    case ExplorationAction::kStop: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "Stop is not executable");
}

struct Context {
  const PolicyConfig& policy;
  const AgentMemory& memory;
  const NavGrid& grid;
  PlanNode here;
  PolicyState& state;
};

// Shortest plan to `goal` that prefers cells not yet stood on.
std::optional<Plan> plan_fresh(const Context& ctx, PlanNode goal) {
  const auto& visited = ctx.memory.visited();
  const auto found = plan_to_nearest(
      ctx.grid, ctx.here, [&](const PlanNode& n) { return n.cell == goal.cell && n.r == goal.r; },
      [&](Cell c) { return visited.count(c) ? kVisitedMoveCost : 1; });
  if (!found) return std::nullopt;
  return found->plan;
}

// Heads for the map waypoint of `cls`. Returns Stop once the search for
// this subgoal is over, nullopt when there is nothing to pursue.
std::optional<ExplorationAction> pursue_large(const Context& ctx, LargeClass cls,
                                              bool stop_when_confident) {
  const auto [peak, confidence] = ctx.memory.map().channel_max(channel(cls));
  if (confidence < ctx.policy.waypoints.floor_confidence) return std::nullopt;
  if (ctx.state.dismissed_peaks.count(peak)) return std::nullopt;
  Waypoint wp;
  try {
    wp = waypoint_large(ctx.memory.map(), ctx.grid, cls, ctx.policy.waypoints);
  } catch (const Error&) {
    return std::nullopt;
  }
  const auto plan = plan_fresh(ctx, {wp.cell, wp.r});
  if (!plan) return std::nullopt;
  const bool confident = confidence >= ctx.policy.stop_confidence;
  if (confident && stop_when_confident) return ExplorationAction::kStop;
  if (plan->actions.empty()) {
    if (confident) return ExplorationAction::kStop;
    ctx.state.dismissed_peaks.insert(peak);
    return std::nullopt;
  }
  return as_exploration(plan->actions.front());
}

// A confident detection of `target`, seen in the same frame as the
// container when one is named.
bool sighted(const Context& ctx, const Detection& d, const ObjectClass& target,
             std::optional<LargeClass> container) {
  if (d.cls != target || d.confidence < ctx.policy.waypoints.detection_threshold) return false;
  if (!container) return true;
  const auto& log = ctx.memory.log();
  return std::any_of(log.begin(), log.end(), [&](const Detection& other) {
    return other.cls == ObjectClass{*container} && other.pose == d.pose;
  });
}

// Heads for a close head-on view of the best remaining far sighting of
// `target`, placing the object where a centered one of that area would be.
std::optional<ExplorationAction> approach_sighting(const Context& ctx, const ObjectClass& target,
                                                   std::optional<LargeClass> container) {
  const Detection* best = nullptr;
  for (const Detection& d : ctx.memory.log()) {
    if (!sighted(ctx, d, target, container)) continue;
    if (ctx.state.dismissed_sightings.count({d.pose.cell, d.pose.r})) continue;
    if (!best || d.mask_area > best->mask_area) best = &d;
  }
  if (!best) return std::nullopt;
  const int depth = kWindowDepth - static_cast<int>(std::lround(best->mask_area / kMaskAreaScale));
  const Cell object = best->pose.cell + forward(best->pose.r) * depth;
  const auto& visited = ctx.memory.visited();
  const auto found = plan_to_nearest(
      ctx.grid, ctx.here,
      [&](const PlanNode& n) {
        const EgoOffset e = world_to_ego(n.cell, n.r, object);
        return e.lateral == 0 && e.depth >= 1 && e.depth <= kApproachDepth;
      },
      [&](Cell c) { return visited.count(c) ? kVisitedMoveCost : 1; });
  std::optional<Plan> plan;
  if (found) plan = found->plan;
  if (!plan || plan->actions.empty()) {
    ctx.state.dismissed_sightings.insert({best->pose.cell, best->pose.r});
    return approach_sighting(ctx, target, container);
  }
  return as_exploration(plan->actions.front());
}

std::optional<ExplorationAction> pursue(const Context& ctx, const ObjectClass& target,
                                        std::optional<LargeClass> container) {
  if (const auto* large = std::get_if<LargeClass>(&target)) return pursue_large(ctx, *large, true);
  for (const Detection& d : ctx.memory.log()) {
    if (d.mask_area >= kCloseDetectionArea && sighted(ctx, d, target, container)) {
      return ExplorationAction::kStop;
    }
  }
  if (auto step = approach_sighting(ctx, target, container)) return step;
  if (container) return pursue_large(ctx, *container, false);
  return std::nullopt;
}

std::optional<ExplorationAction> frontier_step(const Context& ctx, bool penalize_explored) {
  const ExploredArea& explored = ctx.memory.explored();
  auto is_frontier = [&](const PlanNode& n) {
    const Cell ahead = n.cell + forward(n.r);
    return explored.explored(n.cell) && ctx.grid.in_bounds(ahead) && !explored.explored(ahead);
  };
  MoveCostFn cost;
  if (penalize_explored) {
    cost = [&](Cell c) { return explored.explored(c) ? kExploredMoveCost : 1; };
  }
  const auto found = plan_to_nearest(ctx.grid, ctx.here, is_frontier, cost);
  if (!found || found->plan.actions.empty()) return std::nullopt;
  return as_exploration(found->plan.actions.front());
}

ExplorationAction random_action(Rng& rng) {
  static constexpr ExplorationAction kChoices[] = {ExplorationAction::kMoveAhead,
                                                   ExplorationAction::kRotateLeft,
                                                   ExplorationAction::kRotateRight};
  return kChoices[std::uniform_int_distribution<int>(0, 2)(rng)];
}

ExplorationAction random_boundary_step(const Context& ctx, Rng& rng) {
  if (ctx.state.decisions < kSweepRotations) return ExplorationAction::kRotateRight;
  std::vector<Cell> boundary;
  for (int y = 0; y < ctx.grid.height(); ++y) {
    for (int x = 0; x < ctx.grid.width(); ++x) {
      const Cell c{x, y};
      if (!ctx.grid[c]) continue;
      for (Rotation r : kRotations) {
        if (!ctx.grid.get(c + forward(r), 0)) {
          boundary.push_back(c);
          break;
        }
      }
    }
  }
  for (int attempt = 0; attempt < kRandomGoalAttempts; ++attempt) {
    if (!ctx.state.random_goal || *ctx.state.random_goal == ctx.here.cell) {
      if (boundary.empty()) break;
      const auto pick = std::uniform_int_distribution<std::size_t>(0, boundary.size() - 1)(rng);
      ctx.state.random_goal = boundary[pick];
    }
    const Cell goal = *ctx.state.random_goal;
    const auto found = plan_to_nearest(ctx.grid, ctx.here,
                                       [&](const PlanNode& n) { return n.cell == goal; });
    if (found && !found->plan.actions.empty()) {
      return as_exploration(found->plan.actions.front());
    }
    ctx.state.random_goal.reset();
  }
  return random_action(rng);
}

}  // namespace

std::string_view name(PolicyKind k) {
  switch (k) {
    case PolicyKind::kInstructionGuided: return "instruction";
    case PolicyKind::kRandom: return "random";
    case PolicyKind::kFrontierOnly: return "frontier";
    case PolicyKind::kPartialLanguage: return "partial_language";
    case PolicyKind::kNoExploredArea: return "no_explored_area";
  }
  return "?";
}

PolicyKind policy_kind_from_name(std::string_view text) {
  for (auto k : {PolicyKind::kInstructionGuided, PolicyKind::kRandom, PolicyKind::kFrontierOnly,
                 PolicyKind::kPartialLanguage, PolicyKind::kNoExploredArea}) {
    if (name(k) == text) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown policy: " + std::string(text));
}

std::string_view name(ExplorationAction a) {
  switch (a) {
    case ExplorationAction::kMoveAhead: return "MoveAhead";
    case ExplorationAction::kRotateLeft: return "RotateLeft";
    case ExplorationAction::kRotateRight: return "RotateRight";
    case ExplorationAction::kStop: return "Stop";
  }
  return "?";
}

std::vector<NavAction> inject_rotations(std::span<const NavAction> raw) {
  std::vector<NavAction> out;
  int moves = 0;
  for (NavAction a : raw) {
    out.push_back(a);
    if (a == NavAction::kMoveAhead && ++moves % kMovesPerSweep == 0) {
      out.insert(out.end(), kSweepRotations, NavAction::kRotateRight);
    }
  }
  return out;
}

std::vector<NavAction> zigzag(std::span<const NavAction> seq) {
  std::vector<NavAction> out;
  if (seq.empty()) return out;
  out.reserve(3 * seq.size() + 3);
  out.push_back(NavAction::kLookDown);
  out.push_back(NavAction::kLookUp);
  out.push_back(NavAction::kLookUp);
  bool down = true;
  for (NavAction a : seq) {
    if (is_look(a)) throw Error(ErrorCode::kMalformedInput, "zigzag input contains look actions");
    const NavAction look = down ? NavAction::kLookDown : NavAction::kLookUp;
    out.push_back(a);
    out.push_back(look);
    out.push_back(look);
    down = !down;
  }
  return out;
}

AgentMemory::AgentMemory(const Pose& scene_start, NoiseModel noise, int grid_size)
    : frame_(scene_start, grid_size),
      noise_(noise),
      map_(grid_size),
      explored_(grid_size) {
  noise_.validate();
}

void AgentMemory::observe(const Simulator& sim, Rng& rng) {
  const Pose& pose = sim.agent().pose;
  const Pose map_pose = frame_.to_map(pose);
  const PartialMap partial = observe_partial_map(sim.scene(), pose, noise_, rng);
  accumulate(map_, transform_partial(partial, map_pose, map_.grid_size()));
  explored_.mark(map_pose);
  for (Detection d : detect_objects(sim.scene(), sim.world(), pose, noise_, rng)) {
    d.pose = map_pose;
    log_.push_back(d);
  }
  if (map_.in_bounds(map_pose.cell)) visited_.insert(map_pose.cell);
}

void AgentMemory::forget(const ObjectClass& cls, std::span<const Cell> cells) {
  std::erase_if(log_, [&](const Detection& d) {
    if (d.cls != cls) return false;
    return std::any_of(cells.begin(), cells.end(), [&](Cell c) {
      const EgoOffset e = world_to_ego(d.pose.cell, d.pose.r, c);
      return e.depth >= 1 && PartialMap::in_window(e) && mask_area(e) == d.mask_area;
    });
  });
}

NavGrid AgentMemory::planning_grid() const {
  NavGrid grid = postprocess_navigable(map_);
  for (const Cell& c : visited_) grid[c] = 1;
  return grid;
}

ExplorationAction next_action(const PolicyConfig& policy, const AgentMemory& memory,
                              const Pose& map_pose, const ExplorationTarget& target,
                              PolicyState& state, Rng& rng) {
  const NavGrid grid = memory.planning_grid();
  const Context ctx{policy, memory, grid, {map_pose.cell, map_pose.r}, state};
  std::optional<ExplorationAction> action;
  switch (policy.kind) {
    case PolicyKind::kInstructionGuided:
      action = pursue(ctx, target.target, target.container);
      if (!action) action = frontier_step(ctx, true);
      break;
    case PolicyKind::kPartialLanguage:
      action = pursue(ctx, target.navigation_noun(), std::nullopt);
      if (!action) action = frontier_step(ctx, true);
      break;
    case PolicyKind::kFrontierOnly:
      action = frontier_step(ctx, true);
      break;
    case PolicyKind::kNoExploredArea:
      action = pursue(ctx, target.target, target.container);
      if (!action) action = random_action(rng);
      break;
    case PolicyKind::kRandom:
      action = random_boundary_step(ctx, rng);
      break;
  }
  ++state.decisions;
  return action.value_or(ExplorationAction::kStop);
}

ExplorationTrace run_exploration(Simulator& sim, AgentMemory& memory,
                                 std::span<const ExplorationTarget> targets,
                                 const PolicyConfig& policy, Rng& policy_rng, Rng& perception_rng) {
  if (policy.max_steps <= 0 || policy.max_failures <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "exploration limits must be positive");
  }
  ExplorationTrace trace;
  const int steps0 = sim.agent().steps_taken;
  const int failures0 = sim.agent().failures;
  trace.visited.insert(sim.agent().pose.cell);
  memory.observe(sim, perception_rng);

  auto spent = [&] {
    return sim.exhausted() || sim.agent().steps_taken - steps0 >= policy.max_steps ||
           sim.agent().failures - failures0 >= policy.max_failures;
  };
  auto run = [&](NavAction a, bool injected, int subgoal) {
    if (spent()) return false;
    sim.annotate(subgoal, injected);
    sim.execute(a);
    trace.augmented_actions.push_back(a);
    trace.visited.insert(sim.agent().pose.cell);
    memory.observe(sim, perception_rng);
    return true;
  };
  bool look_down = true;
  auto run_with_looks = [&](NavAction a, bool injected, int subgoal) {
    if (!run(a, injected, subgoal)) return false;
    const NavAction look = look_down ? NavAction::kLookDown : NavAction::kLookUp;
    look_down = !look_down;
    return run(look, true, subgoal) && run(look, true, subgoal);
  };

  bool started = false;
  int moves = 0;
  for (std::size_t i = 0; i < targets.size() && !spent(); ++i) {
    const int subgoal = static_cast<int>(i);
    PolicyState state;
    while (!spent()) {
      const Pose map_pose = memory.frame().to_map(sim.agent().pose);
      const ExplorationAction choice =
          next_action(policy, memory, map_pose, targets[i], state, policy_rng);
      if (choice == ExplorationAction::kStop) break;
      if (!started) {
        started = true;
        if (!run(NavAction::kLookDown, true, subgoal) || !run(NavAction::kLookUp, true, subgoal) ||
            !run(NavAction::kLookUp, true, subgoal)) {
          break;
        }
      }
      const NavAction a = as_nav(choice);
      if (spent()) break;
      trace.raw_actions.push_back(a);
      if (!run_with_looks(a, false, subgoal)) break;
      if (a == NavAction::kMoveAhead && ++moves % kMovesPerSweep == 0) {
        for (int k = 0; k < kSweepRotations; ++k) {
          if (!run_with_looks(NavAction::kRotateRight, true, subgoal)) break;
        }
      }
    }
  }
  sim.annotate(0, false);
  trace.steps = sim.agent().steps_taken - steps0;
  trace.failures = sim.agent().failures - failures0;
  return trace;
}

CoverageMetrics coverage_metrics(const ExplorationTrace& trace) {
  CoverageMetrics m;
  m.coverage = trace.visited.size();
  if (!trace.raw_actions.empty()) {
    m.coverage_efficiency =
        static_cast<double>(m.coverage) / static_cast<double>(trace.raw_actions.size());
  }
  return m;
}

}  // namespace amslam
