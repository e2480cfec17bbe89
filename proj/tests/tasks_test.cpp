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

#include <doctest.h>

#include <functional>

#include "amslam/executor.hpp"
#include "amslam/generator.hpp"
#include "amslam/tasks.hpp"
#include "support.hpp"

using namespace amslam;
using namespace amslam::testing;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

bool same(const Subgoal& a, const Subgoal& b) {
  return a.instruction == b.instruction && a.kind == b.kind && a.target == b.target &&
         a.container == b.container && a.interaction == b.interaction;
}

bool same(const GoalCondition& a, const GoalCondition& b) {
  return a.kind == b.kind && a.object == b.object && a.receptacle == b.receptacle && a.count == b.count;
}

}  // namespace

TEST_CASE("subgoal kinds follow the keyword grammar") {
  CHECK(parse_subgoal_kind("go to the fridge") == SubgoalKind::kNavigation);
  CHECK(parse_subgoal_kind("Turn left and head to the sink.") == SubgoalKind::kNavigation);
  CHECK(parse_subgoal_kind("pick up the lettuce from the counter") == SubgoalKind::kInteraction);
  CHECK(parse_subgoal_kind("turn on the stove burner") == SubgoalKind::kInteraction);
  CHECK(code_of([] { parse_subgoal_kind("frobnicate the blorp"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_navigation("go to the blorp"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_interaction("pick up the fridge"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_interaction("put the apple"); }) == ErrorCode::kParseError);
}

TEST_CASE("targets come from the navigation and the following instruction") {
  const auto a = parse_targets("go to the counter", "pick up the lettuce");
  CHECK(a.first == ObjectClass{SmallClass::kLettuce});
  CHECK(a.second == LargeClass::kCountertop);
  const auto b = parse_targets("go to the fridge", "open the fridge");
  CHECK(b.first == ObjectClass{LargeClass::kFridge});
  CHECK_FALSE(b.second);
  const auto c = parse_targets("walk to the shelf", "pick up the spray bottle");
  CHECK(c.first == ObjectClass{SmallClass::kSprayBottle});
  CHECK(c.second == LargeClass::kShelf);
  const auto d = parse_targets("go to the side table", std::nullopt);
  CHECK(d.first == ObjectClass{LargeClass::kSideTable});
  CHECK_FALSE(d.second);
  CHECK(code_of([] { parse_targets("go to the counter", "pick up the blorp"); }) == ErrorCode::kParseError);
}

TEST_CASE("interactions render and parse back") {
  for (int i = 0; i < kNumSmallClasses; ++i) {
    const SmallClass s = small_class_at(i);
    for (int j = 0; j < kNumLargeClasses; ++j) {
      const LargeClass l = large_class_at(j);
      const auto put = parse_interaction(render_interaction(InteractionKind::kPut, s, l));
      CHECK(put.kind == InteractionKind::kPut);
      CHECK(put.object == ObjectClass{s});
      CHECK(put.receptacle == l);
      const auto pick = parse_interaction(render_interaction(InteractionKind::kPickUp, s, l));
      CHECK(pick.object == ObjectClass{s});
      CHECK(pick.receptacle == l);
      for (int p = 0; p < kNumNavigationPhrases; ++p) {
        CHECK(parse_navigation(render_navigation(static_cast<NavigationPhrase>(p), l)) == ObjectClass{l});
      }
    }
  }
  CHECK(render_interaction(InteractionKind::kPut, SmallClass::kWatch, LargeClass::kCabinet) ==
        "put the watch in the cabinet");
  CHECK(render_interaction(InteractionKind::kPut, SmallClass::kSprayBottle, LargeClass::kToilet) ==
        "put the spray bottle on the toilet");
}

TEST_CASE("goal conditions count repeated placements") {
  const std::vector<Subgoal> subgoals = {
      parse_subgoal("go to the toilet", "pick up the spray bottle"),
      parse_subgoal("pick up the spray bottle from the toilet"),
      parse_subgoal("go to the shelf"),
      parse_subgoal("put the spray bottle on the shelf"),
      parse_subgoal("go to the toilet", "pick up the spray bottle"),
      parse_subgoal("pick up the spray bottle from the toilet"),
      parse_subgoal("go to the shelf"),
      parse_subgoal("put the spray bottle on the shelf"),
  };
  const auto conds = derive_goal_conditions(subgoals);
  REQUIRE_FALSE(conds.empty());
  CHECK(conds.back().kind == ConditionKind::kPlacedIn);
  CHECK(conds.back().count == 2);
  CHECK(conds.back().receptacle == LargeClass::kShelf);
}

TEST_CASE("goal-condition fraction over a hand-built world") {
  const Scene scene = carve(room_grid(12, {1, 1}, {10, 10}),
                            {large(LargeClass::kCabinet, {{8, 1}}), large(LargeClass::kShelf, {{2, 1}})},
                            {{SmallClass::kWatch, {2, 1}, 1, HeightClass::kHigh}}, pose(5, 5));
  const std::vector<GoalCondition> conds = {
      {ConditionKind::kPickedUp, SmallClass::kWatch, std::nullopt, 1},
      {ConditionKind::kOpened, LargeClass::kCabinet, std::nullopt, 1},
      {ConditionKind::kPlacedIn, SmallClass::kWatch, LargeClass::kCabinet, 1},
      {ConditionKind::kClosed, LargeClass::kCabinet, std::nullopt, 1},
  };
  WorldState world = WorldState::initial(scene);
  CHECK(goal_condition_fraction(scene, world, conds) == doctest::Approx(0.0));
  world.small[0].times_picked = 1;
  world.large[0].open = true;
  world.large[0].opened_ever = true;
  CHECK(goal_condition_fraction(scene, world, conds) == doctest::Approx(0.5));
  world.small[0].container = 0;
  world.large[0].open = false;
  CHECK(goal_condition_fraction(scene, world, conds) == doctest::Approx(1.0));
}

TEST_CASE("generated tasks parse back to their recorded annotations") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const Scene scene = generate_scene(rng);
    const Task task = generate_task(scene, rng);
    CHECK_NOTHROW(validate(task));
    for (std::size_t i = 0; i < task.subgoals.size(); ++i) {
      std::optional<std::string_view> next;
      if (i + 1 < task.subgoals.size()) next = task.subgoals[i + 1].instruction;
      CHECK(same(parse_subgoal(task.subgoals[i].instruction, next), task.subgoals[i]));
    }
    const auto conds = derive_goal_conditions(task.subgoals);
    REQUIRE(conds.size() == task.goal_conditions.size());
    for (std::size_t i = 0; i < conds.size(); ++i) CHECK(same(conds[i], task.goal_conditions[i]));
    for (const auto& s : task.subgoals) {
      if (s.kind == SubgoalKind::kNavigation) CHECK(scene.contains_class(s.target));
    }
  }
}

TEST_CASE("the generator produces both task families and articulated placements") {
  int pick_two = 0;
  int articulated = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Scene scene = generate_scene(rng);
    const Task task = generate_task(scene, rng);
    int picks = 0;
    bool opens = false;
    for (const auto& s : task.subgoals) {
      if (s.interaction == InteractionKind::kPickUp) ++picks;
      if (s.interaction == InteractionKind::kOpen) opens = true;
    }
    if (picks == 2) ++pick_two;
    if (opens && involves_articulated(task)) ++articulated;
  }
  CHECK(pick_two > 10);
  CHECK(articulated > 10);
}
