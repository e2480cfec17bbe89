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

#include "amslam/executor.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "amslam/planner.hpp"

namespace amslam {
namespace {

constexpr std::uint64_t kPolicyStream = 1;
constexpr std::uint64_t kPerceptionStream = 2;
constexpr std::uint64_t kPerturbationStream = 3;

class Episode {
 public:
  Episode(const Scene& scene, const Task& task, const EpisodeConfig& config, std::uint64_t seed)
      : scene_(scene),
        task_(task),
        config_(config),
        sim_(scene, config.budget),
        memory_(scene.start(), config.noise, kGridSize),
        policy_rng_(mix_seed(seed, kPolicyStream)),
        perception_rng_(mix_seed(seed, kPerceptionStream)),
        perturbation_rng_(mix_seed(seed, kPerturbationStream)) {}

  EpisodeResult run();

 private:
  std::optional<std::string_view> next_instruction(std::size_t i) const {
    if (i + 1 < task_.subgoals.size()) return task_.subgoals[i + 1].instruction;
    return std::nullopt;
  }

  void explore();
  bool navigate(std::size_t i);
  bool navigate_to(NavGrid grid, PlanNode goal);
  bool navigate_oracle(const ObjectClass& target, std::optional<LargeClass> container);
  bool interact(std::size_t i);
  void teleport_for(const ParsedInteraction& p);
  void forget_picked(const ParsedInteraction& p);
  Pose perturb(Pose pose);

  std::optional<ObjectRef> choose_instance(const ObjectClass& cls, std::optional<LargeClass> container,
                                           std::optional<InteractionKind> kind) const;

  PlanNode map_node() const {
    const Pose p = memory_.frame().to_map(sim_.agent().pose);
    return {p.cell, p.r};
  }

  const Scene& scene_;
  const Task& task_;
  const EpisodeConfig& config_;
  Simulator sim_;
  AgentMemory memory_;
  Rng policy_rng_;
  Rng perception_rng_;
  Rng perturbation_rng_;
  bool backtracking_ = true;
  ExplorationTrace trace_;
  std::string detail_;
};

void Episode::explore() {
  std::vector<ExplorationTarget> targets;
  for (std::size_t i = 0; i < task_.subgoals.size(); ++i) {
    if (parse_subgoal_kind(task_.subgoals[i].instruction) != SubgoalKind::kNavigation) continue;
    const auto [target, container] = parse_targets(task_.subgoals[i].instruction, next_instruction(i));
    targets.push_back({target, container});
  }
  trace_ = run_exploration(sim_, memory_, targets, config_.policy, policy_rng_, perception_rng_);
}

bool Episode::navigate_to(NavGrid grid, PlanNode goal) {
  int blocked = 0;
  while (true) {
    const PlanNode here = map_node();
    if (here == goal) return true;
    const auto plan = try_plan_path(grid, here, goal);
    if (!plan) throw Error(ErrorCode::kUnreachable, "waypoint unreachable on the map");
    bool replan = false;
    for (NavAction a : plan->actions) {
      const PlanNode before = map_node();
      if (sim_.execute(a) == StepOutcome::kFailure && a == NavAction::kMoveAhead) {
        const Cell ahead = before.cell + forward(before.r);
        if (grid.in_bounds(ahead)) grid[ahead] = 0;
        if (++blocked >= config_.max_blocked_moves) {
          throw Error(ErrorCode::kUnreachable, "too many blocked moves");
        }
        replan = true;
        break;
      }
    }
    if (!replan) return map_node() == goal;
  }
}

std::optional<ObjectRef> Episode::choose_instance(const ObjectClass& cls,
                                                  std::optional<LargeClass> container,
                                                  std::optional<InteractionKind> kind) const {
  const WorldState& world = sim_.world();
  std::optional<ObjectRef> best;
  int best_rank = 0;
  auto consider = [&](ObjectRef ref, int rank) {
    if (best && rank >= best_rank) return;
    if (gt_waypoints(scene_, world, ref).empty()) return;
    best = ref;
    best_rank = rank;
  };
  if (const auto* small = std::get_if<SmallClass>(&cls)) {
    for (std::size_t i = 0; i < scene_.small_objects().size(); ++i) {
      const auto& st = world.small[i];
      if (scene_.small_objects()[i].cls != *small || st.held) continue;
      int rank = st.times_picked > 0 ? 2 : 0;
      if (container && !(st.container && scene_.large_objects()[*st.container].cls == *container)) {
        rank += 1;
      }
      consider(ObjectRef::small(i), rank);
    }
  } else {
    const LargeClass large = std::get<LargeClass>(cls);
    for (std::size_t j = 0; j < scene_.large_objects().size(); ++j) {
      if (scene_.large_objects()[j].cls != large) continue;
      int rank = 0;
      if (kind == InteractionKind::kClose && !world.large[j].open) rank = 1;
      if (kind == InteractionKind::kOpen && world.large[j].open) rank = 1;
      consider(ObjectRef::large(j), rank);
    }
  }
  return best;
}

Pose Episode::perturb(Pose pose) {
  switch (config_.perturbation) {
    case Perturbation::kNone: break;
    case Perturbation::kDisplacement: {
      std::array<Cell, 4> offsets = {Cell{-1, -1}, Cell{1, -1}, Cell{-1, 1}, Cell{1, 1}};
      std::shuffle(offsets.begin(), offsets.end(), perturbation_rng_);
      for (const Cell& d : offsets) {
        if (scene_.is_navigable(pose.cell + d)) {
          pose.cell = pose.cell + d;
          break;
        }
      }
      break;
    }
    case Perturbation::kHorizon: {
      const auto pick =
          std::uniform_int_distribution<std::size_t>(0, kHorizonLadder.size() - 1)(perturbation_rng_);
      pose.h = Horizon::from_degrees(kHorizonLadder[pick]);
      backtracking_ = false;
      break;
    }
  }
  return pose;
}

bool Episode::navigate_oracle(const ObjectClass& target, std::optional<LargeClass> container) {
  const auto ref = choose_instance(target, container, std::nullopt);
  if (!ref) throw Error(ErrorCode::kNoWaypoint, "no reachable instance of " + std::string(name(target)));
  sim_.teleport(perturb(*canonical_waypoint(scene_, sim_.world(), *ref)));
  return true;
}

bool Episode::navigate(std::size_t i) {
  const auto [target, container] = parse_targets(task_.subgoals[i].instruction, next_instruction(i));
  if (config_.oracle != OracleMode::kNone) return navigate_oracle(target, container);

  WaypointOptions options = config_.policy.waypoints;
  options.apply_backup = !config_.ablations.no_backup;
  options.strategy = config_.ablations.strategy;
  const NavGrid grid = memory_.planning_grid();
  const Waypoint wp = resolve_target(memory_.map(), grid, memory_.log(), target, container, options);
  detail_ = std::string(name(wp.source));
  if (!navigate_to(grid, {wp.cell, wp.r})) return false;
  if (wp.h) {
    look_to(sim_, *wp.h);
  } else if (!config_.ablations.no_horizon_search) {
    const ObjectClass look_for =
        wp.source == WaypointSource::kContainerFallback && container ? ObjectClass{*container} : target;
    select_horizon(sim_, look_for, config_.noise, perception_rng_);
  }
  return true;
}

void Episode::teleport_for(const ParsedInteraction& p) {
  std::optional<ObjectRef> ref;
  if (p.kind == InteractionKind::kPut) {
    ref = choose_instance(*p.receptacle, std::nullopt, p.kind);
  } else {
    ref = choose_instance(p.object, p.receptacle, p.kind);
  }
  if (!ref) return;
  sim_.teleport(*canonical_waypoint(scene_, sim_.world(), *ref));
}

// The picked object sat somewhere in the reach window of the current pose.
void Episode::forget_picked(const ParsedInteraction& p) {
  const int b = p.receptacle ? backup_distance(*p.receptacle) : 1;
  const PlanNode here = map_node();
  std::vector<Cell> cells;
  for (int depth = b; depth <= b + 1; ++depth) {
    for (int lateral = -1; lateral <= 1; ++lateral) {
      cells.push_back(ego_to_world(here.cell, here.r, {depth, lateral}));
    }
  }
  memory_.forget(p.object, cells);
}

bool Episode::interact(std::size_t i) {
  const ParsedInteraction p = parse_interaction(task_.subgoals[i].instruction);
  if (config_.oracle == OracleMode::kGtAll) teleport_for(p);
  const Interact action{p.kind, p.kind == InteractionKind::kPut ? ObjectClass{*p.receptacle} : p.object};
  std::vector<Horizon> horizons{sim_.agent().pose.h};
  if (backtracking_) horizons = backtrack_horizons(sim_.agent().pose.h);
  for (Horizon h : horizons) {
    look_to(sim_, h);
    if (sim_.execute(action) == StepOutcome::kSuccess) {
      if (p.kind == InteractionKind::kPickUp) forget_picked(p);
      return true;
    }
  }
  return false;
}

EpisodeResult Episode::run() {
  EpisodeResult result;
  result.termination = "completed";
  try {
    if (config_.oracle == OracleMode::kNone) explore();
    for (std::size_t i = 0; i < task_.subgoals.size(); ++i) {
      sim_.annotate(static_cast<int>(i), false);
      const bool nav = parse_subgoal_kind(task_.subgoals[i].instruction) == SubgoalKind::kNavigation;
      detail_.clear();
      const bool ok = nav ? navigate(i) : interact(i);
      result.subgoals.push_back({ok, detail_.empty() ? (ok ? "ok" : "failed") : detail_});
      if (!ok) {
        result.termination = "subgoal_failed";
        break;
      }
    }
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kBudgetExhausted: result.termination = "budget_exhausted"; break;
      case ErrorCode::kNoWaypoint: result.termination = "no_waypoint"; break;
      case ErrorCode::kUnreachable: result.termination = "unreachable"; break;
      default: throw;
    }
    result.subgoals.push_back({false, e.what()});
  }
  result.goal_condition = goal_condition_fraction(scene_, sim_.world(), task_.goal_conditions);
  result.success = !task_.goal_conditions.empty() && result.goal_condition == 1.0;
  result.steps = sim_.agent().steps_taken;
  result.failures = sim_.agent().failures;
  result.exploration_steps = trace_.steps;
  result.exploration_failures = trace_.failures;
  if (trace_.visited.empty()) trace_.visited.insert(scene_.start().cell);
  result.coverage = coverage_metrics(trace_);
  result.history = sim_.history();
  return result;
}

}  // namespace

std::string_view name(OracleMode m) {
  switch (m) {
    case OracleMode::kNone: return "none";
    case OracleMode::kGtNavigation: return "gt_navigation";
    case OracleMode::kGtAll: return "gt_all";
  }
  return "?";
}

OracleMode oracle_mode_from_name(std::string_view text) {
  for (auto m : {OracleMode::kNone, OracleMode::kGtNavigation, OracleMode::kGtAll}) {
    if (name(m) == text) return m;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown oracle mode: " + std::string(text));
}

std::string_view name(Perturbation p) {
  switch (p) {
    case Perturbation::kNone: return "none";
    case Perturbation::kDisplacement: return "displacement";
    case Perturbation::kHorizon: return "horizon";
  }
  return "?";
}

Perturbation perturbation_from_name(std::string_view text) {
  for (auto p : {Perturbation::kNone, Perturbation::kDisplacement, Perturbation::kHorizon}) {
    if (name(p) == text) return p;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown perturbation: " + std::string(text));
}

std::string ablation_label(const Ablations& a) {
  std::vector<std::string> parts;
  if (a.no_backup) parts.emplace_back("no_backup");
  if (a.strategy != WaypointStrategy::kBoth) parts.emplace_back(name(a.strategy));
  if (a.no_horizon_search) parts.emplace_back("no_horizon_search");
  if (parts.empty()) return "none";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += "+" + parts[i];
  return out;
}

EpisodeResult execute_task(const Scene& scene, const Task& task, const EpisodeConfig& config,
                           std::uint64_t seed) {
  Episode episode(scene, task, config, seed);
  return episode.run();
}

bool involves_articulated(const Task& task) {
  for (const Subgoal& s : task.subgoals) {
    if (const auto* l = std::get_if<LargeClass>(&s.target); l && is_articulated(*l)) return true;
    if (s.container && is_articulated(*s.container)) return true;
  }
  return false;
}

Score score(std::span<const EpisodeResult> results) {
  if (results.empty()) throw Error(ErrorCode::kEmptyInput, "no episode results to score");
  Score s;
  for (const auto& r : results) {
    s.success_rate += r.success ? 1.0 : 0.0;
    s.goal_condition += r.goal_condition;
  }
  s.success_rate /= static_cast<double>(results.size());
  s.goal_condition /= static_cast<double>(results.size());
  return s;
}

}  // namespace amslam
