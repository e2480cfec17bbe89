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

// Tasks as ordered subgoals, the closed instruction grammar used to render
// and parse them, and goal conditions over the final world state.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amslam/classes.hpp"
#include "amslam/world.hpp"

namespace amslam {

enum class SubgoalKind : std::uint8_t { kNavigation, kInteraction };

std::string_view name(SubgoalKind k);
SubgoalKind subgoal_kind_from_name(std::string_view text);

struct Subgoal {
  std::string instruction;
  SubgoalKind kind = SubgoalKind::kNavigation;
  ObjectClass target = LargeClass::kCountertop;
  std::optional<LargeClass> container;
  std::optional<InteractionKind> interaction;
};

enum class ConditionKind : std::uint8_t {
  kPickedUp,
  kPlacedIn,
  kOpened,
  kClosed,
  kSliced,
  kToggledOn,
  kToggledOff,
};

std::string_view name(ConditionKind k);
ConditionKind condition_kind_from_name(std::string_view text);

/// Predicate over the world state. `count` instances must satisfy it.
struct GoalCondition {
  ConditionKind kind = ConditionKind::kPickedUp;
  ObjectClass object = SmallClass::kApple;
  std::optional<LargeClass> receptacle;  // for kPlacedIn
  int count = 1;
};

struct Task {
  std::string goal;
  std::vector<Subgoal> subgoals;
  std::vector<GoalCondition> goal_conditions;
};

/// Throws MalformedInput unless the task has a navigation and an
/// interaction subgoal and every subgoal's fields match its kind.
void validate(const Task& task);

// Instruction grammar.

enum class NavigationPhrase : std::uint8_t {
  kGoTo,
  kWalkTo,
  kTurnAround,
  kTurnLeft,
  kTurnRight,
};

inline constexpr int kNumNavigationPhrases = 5;

std::string render_navigation(NavigationPhrase phrase, const ObjectClass& target);
/// `receptacle` is the "from" phrase of PickUp and the destination of Put.
std::string render_interaction(InteractionKind kind, const ObjectClass& object,
                               std::optional<LargeClass> receptacle = std::nullopt);

struct ParsedInteraction {
  InteractionKind kind = InteractionKind::kPickUp;
  ObjectClass object = SmallClass::kApple;
  std::optional<LargeClass> receptacle;
};

/// Throws ParseError on text outside the grammar.
SubgoalKind parse_subgoal_kind(std::string_view instruction);
ObjectClass parse_navigation(std::string_view instruction);
ParsedInteraction parse_interaction(std::string_view instruction);

/// Target and container for a navigation subgoal, refined by the
/// following interaction instruction when there is one: a small object
/// handled there becomes the target and the navigation noun its container.
std::pair<ObjectClass, std::optional<LargeClass>> parse_targets(
    std::string_view nav_instruction, std::optional<std::string_view> next_instruction);

/// Builds a subgoal by parsing its instruction.
Subgoal parse_subgoal(std::string_view instruction,
                      std::optional<std::string_view> next_instruction = std::nullopt);

// Goal conditions.

/// Condition satisfied by a successful interaction subgoal; `prior` is the
/// number of earlier subgoals with the same kind, object and receptacle.
std::optional<GoalCondition> condition_for(const ParsedInteraction& interaction, int prior);

/// Conditions for every interaction subgoal, in order.
std::vector<GoalCondition> derive_goal_conditions(const std::vector<Subgoal>& subgoals);

bool satisfied(const Scene& scene, const WorldState& world, const GoalCondition& condition);

/// Fraction of satisfied conditions; 0 for an empty list.
double goal_condition_fraction(const Scene& scene, const WorldState& world,
                               const std::vector<GoalCondition>& conditions);

}  // namespace amslam
