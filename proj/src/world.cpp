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

#include "amslam/world.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <deque>
#include <limits>
#include <string>
#include <tuple>

namespace amslam {
namespace {

constexpr std::array<std::string_view, 5> kNavActionNames = {"MoveAhead", "RotateLeft",
                                                             "RotateRight", "LookUp", "LookDown"};
constexpr std::array<std::string_view, 7> kInteractionNames = {
    "PickUp", "Put", "Open", "Close", "Slice", "ToggleOn", "ToggleOff"};

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedInput, what);
}

std::vector<Cell> footprint_of(const Scene& scene, const WorldState& world, ObjectRef ref) {
  if (ref.kind == ObjectRef::Kind::kLarge) return scene.large_objects().at(ref.index).footprint;
  const auto& s = world.small.at(ref.index);
  if (s.held) return {};
  return {s.cell};
}

HeightClass height_of(const Scene& scene, const WorldState& world, ObjectRef ref) {
  if (ref.kind == ObjectRef::Kind::kLarge) return scene.large_objects().at(ref.index).height;
  return world.small.at(ref.index).height;
}

bool window_hit(Cell origin, Rotation r, int backup, Cell target) {
  const EgoOffset e = world_to_ego(origin, r, target);
  return e.depth >= backup && e.depth <= backup + 1 && std::abs(e.lateral) <= 1;
}

void check_budget(const AgentState& state, const Budget& budget) {
  if (budget_exhausted(state, budget)) {
    throw Error(ErrorCode::kBudgetExhausted,
                "steps " + std::to_string(state.steps_taken) + "/" +
                    std::to_string(budget.max_steps) + ", failures " +
                    std::to_string(state.failures) + "/" + std::to_string(budget.max_failures));
  }
}

}  // namespace

Scene::Scene(NavGrid navigable, std::vector<LargeObject> large, std::vector<SmallObject> small,
             Pose start)
    : navigable_(std::move(navigable)),
      large_(std::move(large)),
      small_(std::move(small)),
      start_(start),
      large_index_(navigable_.width(), navigable_.height(), -1) {
  for (std::size_t i = 0; i < large_.size(); ++i) {
    for (const Cell& c : large_[i].footprint) {
      if (large_index_.in_bounds(c) && large_index_[c] < 0) large_index_[c] = static_cast<int>(i);
    }
  }
}

std::optional<std::size_t> Scene::large_at(Cell c) const {
  const int i = large_index_.get(c, -1);
  if (i < 0) return std::nullopt;
  return static_cast<std::size_t>(i);
}

ObjectClass Scene::class_of(ObjectRef ref) const {
  if (ref.kind == ObjectRef::Kind::kLarge) return large_.at(ref.index).cls;
  return small_.at(ref.index).cls;
}

bool Scene::contains_class(const ObjectClass& c) const {
  if (const auto* l = std::get_if<LargeClass>(&c)) {
    return std::any_of(large_.begin(), large_.end(), [&](const auto& o) { return o.cls == *l; });
  }
  const auto s = std::get<SmallClass>(c);
  return std::any_of(small_.begin(), small_.end(), [&](const auto& o) { return o.cls == s; });
}

void Scene::validate() const {
  if (navigable_.width() <= 0 || navigable_.width() != navigable_.height()) {
    malformed("grid must be square and non-empty");
  }
  Grid<int> owner(navigable_.width(), navigable_.height(), -1);
  for (std::size_t i = 0; i < large_.size(); ++i) {
    const auto& obj = large_[i];
    if (obj.footprint.empty()) malformed("large object " + std::to_string(i) + " has no cells");
    if (obj.articulated != is_articulated(obj.cls)) {
      malformed("large object " + std::to_string(i) + " articulation flag disagrees with class");
    }
    for (const Cell& c : obj.footprint) {
      if (!navigable_.in_bounds(c)) malformed("footprint cell out of bounds");
      if (navigable_[c]) malformed("footprint cell is navigable");
      if (owner[c] >= 0) malformed("footprints overlap");
      owner[c] = static_cast<int>(i);
    }
  }
  for (std::size_t i = 0; i < small_.size(); ++i) {
    const auto& obj = small_[i];
    if (!navigable_.in_bounds(obj.cell)) malformed("small object out of bounds");
    if (obj.container) {
      if (*obj.container >= large_.size()) malformed("small object container index invalid");
      if (owner[obj.cell] != static_cast<int>(*obj.container)) {
        malformed("small object " + std::to_string(i) + " is not inside its container");
      }
    }
  }
  if (!navigable_.in_bounds(start_.cell) || !navigable_[start_.cell]) {
    malformed("start cell is not navigable");
  }
  // Every navigable cell must be reachable from the start.
  Grid<std::uint8_t> seen(navigable_.width(), navigable_.height(), 0);
  std::deque<Cell> queue{start_.cell};
  seen[start_.cell] = 1;
  std::size_t reached = 0;
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    ++reached;
    for (Rotation r : kRotations) {
      const Cell n = c + forward(r);
      if (navigable_.get(n, 0) && !seen[n]) {
        seen[n] = 1;
        queue.push_back(n);
      }
    }
  }
  const auto total = static_cast<std::size_t>(
      std::count(navigable_.data().begin(), navigable_.data().end(), std::uint8_t{1}));
  if (reached != total) malformed("navigable region is not connected");
}

WorldState WorldState::initial(const Scene& scene) {
  WorldState w;
  w.large.resize(scene.large_objects().size());
  w.small.reserve(scene.small_objects().size());
  for (const auto& s : scene.small_objects()) {
    SmallObjectState st;
    st.cell = s.cell;
    st.container = s.container;
    st.height = s.height;
    w.small.push_back(st);
  }
  return w;
}

std::string_view name(NavAction a) { return kNavActionNames[static_cast<std::size_t>(a)]; }

NavAction nav_action_from_name(std::string_view text) {
  for (std::size_t i = 0; i < kNavActionNames.size(); ++i) {
    if (kNavActionNames[i] == text) return static_cast<NavAction>(i);
  }
  throw Error(ErrorCode::kMalformedInput, "unknown action '" + std::string(text) + "'");
}

std::string_view name(InteractionKind k) { return kInteractionNames[static_cast<std::size_t>(k)]; }

InteractionKind interaction_kind_from_name(std::string_view text) {
  for (std::size_t i = 0; i < kInteractionNames.size(); ++i) {
    if (kInteractionNames[i] == text) return static_cast<InteractionKind>(i);
  }
  throw Error(ErrorCode::kMalformedInput, "unknown interaction '" + std::string(text) + "'");
}

std::string action_name(const Action& a) {
  if (const auto* n = std::get_if<NavAction>(&a)) return std::string(name(*n));
  const auto& i = std::get<Interact>(a);
  return std::string(name(i.kind)) + "(" + std::string(name(i.target)) + ")";
}

bool budget_exhausted(const AgentState& state, const Budget& budget) {
  return state.steps_taken >= budget.max_steps || state.failures >= budget.max_failures;
}

std::pair<AgentState, StepOutcome> step(const Scene& scene, const AgentState& state,
                                        NavAction action, const Budget& budget) {
  check_budget(state, budget);
  AgentState next = state;
  ++next.steps_taken;
  bool ok = true;
  switch (action) {
    case NavAction::kMoveAhead: {
      const Cell target = state.pose.cell + forward(state.pose.r);
      if (scene.is_navigable(target)) {
        next.pose.cell = target;
      } else {
        ok = false;
      }
      break;
    }
    case NavAction::kRotateLeft:
      next.pose.r = turn_left(state.pose.r);
      break;
    case NavAction::kRotateRight:
      next.pose.r = turn_right(state.pose.r);
      break;
    case NavAction::kLookUp:
    case NavAction::kLookDown: {
      const int delta = action == NavAction::kLookDown ? Horizon::kStep : -Horizon::kStep;
      if (auto h = state.pose.h.offset(delta)) {
        next.pose.h = *h;
      } else {
        ok = false;
      }
      break;
    }
  }
  if (!ok) ++next.failures;
  return {next, ok ? StepOutcome::kSuccess : StepOutcome::kFailure};
}

int reach_backup(const Scene& scene, const WorldState& world, ObjectRef ref) {
  if (ref.kind == ObjectRef::Kind::kLarge) {
    return backup_distance(scene.large_objects().at(ref.index).cls);
  }
  const auto& s = world.small.at(ref.index);
  if (s.container) return backup_distance(scene.large_objects().at(*s.container).cls);
  return 1;
}

bool in_reach(const Scene& scene, const WorldState& world, ObjectRef ref, const Pose& pose) {
  if (!scene.is_navigable(pose.cell)) return false;
  if (!in_band(height_of(scene, world, ref), pose.h)) return false;
  const int b = reach_backup(scene, world, ref);
  const auto cells = footprint_of(scene, world, ref);
  return std::any_of(cells.begin(), cells.end(),
                     [&](Cell c) { return window_hit(pose.cell, pose.r, b, c); });
}

std::vector<Pose> gt_waypoints(const Scene& scene, const WorldState& world, ObjectRef ref) {
  std::vector<Pose> out;
  const int g = scene.grid_size();
  for (int y = 0; y < g; ++y) {
    for (int x = 0; x < g; ++x) {
      const Cell c{x, y};
      if (!scene.is_navigable(c)) continue;
      for (Rotation r : kRotations) {
        for (int deg : kHorizonLadder) {
          const Pose p{c, r, Horizon::from_degrees(deg)};
          if (in_reach(scene, world, ref, p)) out.push_back(p);
        }
      }
    }
  }
  return out;
}

std::vector<Pose> gt_waypoints(const Scene& scene, ObjectRef ref) {
  return gt_waypoints(scene, WorldState::initial(scene), ref);
}

std::optional<Pose> canonical_waypoint(const Scene& scene, const WorldState& world, ObjectRef ref) {
  const int b = reach_backup(scene, world, ref);
  const auto cells = footprint_of(scene, world, ref);
  const auto waypoints = gt_waypoints(scene, world, ref);
  std::optional<Pose> best;
  std::tuple<int, int, std::size_t> best_key{};
  for (const Pose& p : waypoints) {
    std::tuple<int, int, std::size_t> key{std::numeric_limits<int>::max(), 0, 0};
    for (Cell c : cells) {
      if (!window_hit(p.cell, p.r, b, c)) continue;
      const EgoOffset e = world_to_ego(p.cell, p.r, c);
      key = std::min(key, std::tuple<int, int, std::size_t>{std::abs(e.lateral), e.depth, 0});
    }
    const auto rung = std::find(kHorizonLadder.begin(), kHorizonLadder.end(), p.h.degrees());
    std::get<2>(key) = static_cast<std::size_t>(rung - kHorizonLadder.begin());
    if (!best || key < best_key) {
      best = p;
      best_key = key;
    }
  }
  return best;
}

StepOutcome interact(const Scene& scene, WorldState& world, AgentState& state,
                     const Interact& action, const Budget& budget) {
  check_budget(state, budget);
  ++state.steps_taken;
  const Pose& pose = state.pose;

  auto fail = [&] {
    ++state.failures;
    return StepOutcome::kFailure;
  };
  // First large instance of the target class within reach.
  auto reachable_large = [&]() -> std::optional<std::size_t> {
    const auto* cls = std::get_if<LargeClass>(&action.target);
    if (!cls) return std::nullopt;
    for (std::size_t i = 0; i < scene.large_objects().size(); ++i) {
      if (scene.large_objects()[i].cls == *cls && in_reach(scene, world, ObjectRef::large(i), pose)) {
        return i;
      }
    }
    return std::nullopt;
  };

  switch (action.kind) {
    case InteractionKind::kPickUp: {
      const auto* cls = std::get_if<SmallClass>(&action.target);
      if (!cls || state.held) return fail();
      // Among reachable instances, the one picked up least often.
      std::optional<std::size_t> pick;
      for (std::size_t i = 0; i < scene.small_objects().size(); ++i) {
        const auto& s = world.small[i];
        if (scene.small_objects()[i].cls != *cls || s.held) continue;
        if (!in_reach(scene, world, ObjectRef::small(i), pose)) continue;
        if (s.container && scene.large_objects()[*s.container].articulated &&
            !world.large[*s.container].open) {
          continue;
        }
        if (!pick || s.times_picked < world.small[*pick].times_picked) pick = i;
      }
      if (!pick) return fail();
      auto& s = world.small[*pick];
      s.held = true;
      s.container.reset();
      ++s.times_picked;
      state.held = *pick;
      return StepOutcome::kSuccess;
    }
    case InteractionKind::kPut: {
      if (!state.held) return fail();
      const auto j = reachable_large();
      if (!j) return fail();
      const auto& receptacle = scene.large_objects()[*j];
      if (receptacle.articulated && !world.large[*j].open) return fail();
      const int b = backup_distance(receptacle.cls);
      Cell drop = receptacle.footprint.front();
      for (const Cell& c : receptacle.footprint) {
        if (window_hit(pose.cell, pose.r, b, c)) {
          drop = c;
          break;
        }
      }
      auto& s = world.small[*state.held];
      s.held = false;
      s.cell = drop;
      s.container = *j;
      s.height = receptacle.height;
      state.held.reset();
      return StepOutcome::kSuccess;
    }
    case InteractionKind::kOpen:
    case InteractionKind::kClose: {
      const auto j = reachable_large();
      if (!j || !scene.large_objects()[*j].articulated) return fail();
      auto& ls = world.large[*j];
      const bool opening = action.kind == InteractionKind::kOpen;
      if (ls.open == opening) return fail();
      ls.open = opening;
      if (opening) ls.opened_ever = true;
      return StepOutcome::kSuccess;
    }
    case InteractionKind::kSlice: {
      const auto* cls = std::get_if<SmallClass>(&action.target);
      if (!cls || !state.held || scene.small_objects()[*state.held].cls != SmallClass::kKnife) {
        return fail();
      }
      for (std::size_t i = 0; i < scene.small_objects().size(); ++i) {
        auto& s = world.small[i];
        if (scene.small_objects()[i].cls != *cls || s.held || s.sliced) continue;
        if (!in_reach(scene, world, ObjectRef::small(i), pose)) continue;
        s.sliced = true;
        return StepOutcome::kSuccess;
      }
      return fail();
    }
    case InteractionKind::kToggleOn:
    case InteractionKind::kToggleOff: {
      const auto j = reachable_large();
      if (!j) return fail();
      auto& ls = world.large[*j];
      const bool on = action.kind == InteractionKind::kToggleOn;
      if (ls.toggled_on == on) return fail();
      ls.toggled_on = on;
      return StepOutcome::kSuccess;
    }
  }
  return fail();
}

Simulator::Simulator(const Scene& scene, Budget budget)
    : scene_(&scene), budget_(budget), world_(WorldState::initial(scene)) {
  agent_.pose = scene.start();
}

StepOutcome Simulator::execute(const Action& action) {
  StepOutcome outcome;
  if (const auto* nav = std::get_if<NavAction>(&action)) {
    auto [next, result] = step(*scene_, agent_, *nav, budget_);
    agent_ = next;
    outcome = result;
  } else {
    outcome = interact(*scene_, world_, agent_, std::get<Interact>(action), budget_);
  }
  history_.push_back({agent_.steps_taken - 1, agent_.pose, action, outcome, injected_, subgoal_index_});
  return outcome;
}

void Simulator::teleport(const Pose& pose) {
  if (!scene_->is_navigable(pose.cell)) {
    throw Error(ErrorCode::kInvalidArgument, "teleport target is not navigable");
  }
  agent_.pose = pose;
}

}  // namespace amslam
