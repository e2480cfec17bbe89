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

#include "amslam/tasks.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace amslam {
namespace {

struct NavTemplate {
  NavigationPhrase phrase;
  std::string_view prefix;
};

constexpr std::array<NavTemplate, kNumNavigationPhrases> kNavTemplates = {{
    {NavigationPhrase::kGoTo, "go to the "},
    {NavigationPhrase::kWalkTo, "walk to the "},
    {NavigationPhrase::kTurnAround, "turn around and head to the "},
    {NavigationPhrase::kTurnLeft, "turn left and head to the "},
    {NavigationPhrase::kTurnRight, "turn right and head to the "},
}};

struct SimpleTemplate {
  InteractionKind kind;
  std::string_view prefix;
};

constexpr std::array<SimpleTemplate, 5> kSimpleTemplates = {{
    {InteractionKind::kOpen, "open the "},
    {InteractionKind::kClose, "close the "},
    {InteractionKind::kSlice, "slice the "},
    {InteractionKind::kToggleOn, "turn on the "},
    {InteractionKind::kToggleOff, "turn off the "},
}};

constexpr std::string_view kPickUp = "pick up the ";
constexpr std::string_view kPut = "put the ";
constexpr std::string_view kFrom = " from the ";
constexpr std::string_view kOn = " on the ";
constexpr std::string_view kIn = " in the ";

[[noreturn]] void parse_error(std::string_view text, std::string_view why) {
  throw Error(ErrorCode::kParseError, std::string(why) + ": '" + std::string(text) + "'");
}

std::string normalize(std::string_view text) {
  std::string out;
  for (char ch : text) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  while (!out.empty() && (std::isspace(static_cast<unsigned char>(out.back())) || out.back() == '.')) {
    out.pop_back();
  }
  const auto first = out.find_first_not_of(' ');
  return first == std::string::npos ? std::string() : out.substr(first);
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

ObjectClass noun(std::string_view text, std::string_view phrase) {
  if (auto c = find_class(phrase)) return *c;
  parse_error(text, "unknown object '" + std::string(phrase) + "'");
}

LargeClass large_noun(std::string_view text, std::string_view phrase) {
  const ObjectClass c = noun(text, phrase);
  if (const auto* l = std::get_if<LargeClass>(&c)) return *l;
  parse_error(text, "expected a receptacle, got '" + std::string(phrase) + "'");
}

SmallClass small_noun(std::string_view text, std::string_view phrase) {
  const ObjectClass c = noun(text, phrase);
  if (const auto* s = std::get_if<SmallClass>(&c)) return *s;
  parse_error(text, "expected a small object, got '" + std::string(phrase) + "'");
}

std::optional<ObjectClass> try_parse_navigation(const std::string& s) {
  for (const auto& t : kNavTemplates) {
    if (starts_with(s, t.prefix)) return noun(s, std::string_view(s).substr(t.prefix.size()));
  }
  return std::nullopt;
}

std::optional<ParsedInteraction> try_parse_interaction(const std::string& s) {
  const std::string_view v = s;
  if (starts_with(v, kPickUp)) {
    const std::string_view rest = v.substr(kPickUp.size());
    const auto from = rest.find(kFrom);
    if (from == std::string_view::npos) return ParsedInteraction{InteractionKind::kPickUp, small_noun(v, rest), std::nullopt};
    return ParsedInteraction{InteractionKind::kPickUp, small_noun(v, rest.substr(0, from)),
                             large_noun(v, rest.substr(from + kFrom.size()))};
  }
  if (starts_with(v, kPut)) {
    const std::string_view rest = v.substr(kPut.size());
    for (std::string_view sep : {kOn, kIn}) {
      const auto at = rest.find(sep);
      if (at == std::string_view::npos) continue;
      return ParsedInteraction{InteractionKind::kPut, small_noun(v, rest.substr(0, at)),
                               large_noun(v, rest.substr(at + sep.size()))};
    }
    parse_error(v, "put without a destination");
  }
  for (const auto& t : kSimpleTemplates) {
    if (!starts_with(v, t.prefix)) continue;
    const std::string_view phrase = v.substr(t.prefix.size());
    if (t.kind == InteractionKind::kSlice) {
      return ParsedInteraction{t.kind, small_noun(v, phrase), std::nullopt};
    }
    return ParsedInteraction{t.kind, large_noun(v, phrase), std::nullopt};
  }
  return std::nullopt;
}

}  // namespace

std::string_view name(SubgoalKind k) {
  return k == SubgoalKind::kNavigation ? "navigation" : "interaction";
}

SubgoalKind subgoal_kind_from_name(std::string_view text) {
  if (text == "navigation") return SubgoalKind::kNavigation;
  if (text == "interaction") return SubgoalKind::kInteraction;
  throw Error(ErrorCode::kMalformedInput, "unknown subgoal kind '" + std::string(text) + "'");
}

std::string_view name(ConditionKind k) {
  switch (k) {
    case ConditionKind::kPickedUp: return "picked_up";
    case ConditionKind::kPlacedIn: return "placed_in";
    case ConditionKind::kOpened: return "opened";
    case ConditionKind::kClosed: return "closed";
    case ConditionKind::kSliced: return "sliced";
    case ConditionKind::kToggledOn: return "toggled_on";
    case ConditionKind::kToggledOff: return "toggled_off";
  }
  return "?";
}

ConditionKind condition_kind_from_name(std::string_view text) {
  for (auto k : {ConditionKind::kPickedUp, ConditionKind::kPlacedIn, ConditionKind::kOpened,
                 ConditionKind::kClosed, ConditionKind::kSliced, ConditionKind::kToggledOn,
                 ConditionKind::kToggledOff}) {
    if (name(k) == text) return k;
  }
  throw Error(ErrorCode::kMalformedInput, "unknown goal condition '" + std::string(text) + "'");
}

void validate(const Task& task) {
  bool has_nav = false;
  bool has_interaction = false;
  for (const Subgoal& s : task.subgoals) {
    if (s.kind == SubgoalKind::kNavigation) {
      has_nav = true;
      if (s.interaction) throw Error(ErrorCode::kMalformedInput, "navigation subgoal with an interaction");
    } else {
      has_interaction = true;
      if (!s.interaction) throw Error(ErrorCode::kMalformedInput, "interaction subgoal without a kind");
    }
    if (s.container && is_large(s.target)) {
      throw Error(ErrorCode::kMalformedInput, "a large target has no container");
    }
  }
  if (!has_nav || !has_interaction) {
    throw Error(ErrorCode::kMalformedInput, "a task needs navigation and interaction subgoals");
  }
}

std::string render_navigation(NavigationPhrase phrase, const ObjectClass& target) {
  for (const auto& t : kNavTemplates) {
    if (t.phrase == phrase) return std::string(t.prefix) + std::string(display_name(target));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown navigation phrase");
}

std::string render_interaction(InteractionKind kind, const ObjectClass& object,
                               std::optional<LargeClass> receptacle) {
  const std::string obj(display_name(object));
  switch (kind) {
    case InteractionKind::kPickUp:
      if (receptacle) return std::string(kPickUp) + obj + std::string(kFrom) + std::string(display_name(*receptacle));
      return std::string(kPickUp) + obj;
    case InteractionKind::kPut: {
      if (!receptacle) throw Error(ErrorCode::kInvalidArgument, "put needs a destination");
      const std::string_view sep = is_articulated(*receptacle) ? kIn : kOn;
      return std::string(kPut) + obj + std::string(sep) + std::string(display_name(*receptacle));
    }
    default:
      break;
  }
  for (const auto& t : kSimpleTemplates) {
    if (t.kind == kind) return std::string(t.prefix) + obj;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown interaction");
}

SubgoalKind parse_subgoal_kind(std::string_view instruction) {
  const std::string s = normalize(instruction);
  if (try_parse_navigation(s)) return SubgoalKind::kNavigation;
  if (try_parse_interaction(s)) return SubgoalKind::kInteraction;
  parse_error(instruction, "instruction outside the grammar");
}

ObjectClass parse_navigation(std::string_view instruction) {
  if (auto c = try_parse_navigation(normalize(instruction))) return *c;
  parse_error(instruction, "not a navigation instruction");
}

ParsedInteraction parse_interaction(std::string_view instruction) {
  const std::string s = normalize(instruction);
  if (auto p = try_parse_interaction(s)) return *p;
  parse_error(instruction, "not an interaction instruction");
}

std::pair<ObjectClass, std::optional<LargeClass>> parse_targets(
    std::string_view nav_instruction, std::optional<std::string_view> next_instruction) {
  const ObjectClass noun_class = parse_navigation(nav_instruction);
  if (!next_instruction || parse_subgoal_kind(*next_instruction) != SubgoalKind::kInteraction) {
    return {noun_class, std::nullopt};
  }
  const ParsedInteraction next = parse_interaction(*next_instruction);
  const bool handles_small = next.kind == InteractionKind::kPickUp || next.kind == InteractionKind::kSlice;
  if (!handles_small) return {noun_class, std::nullopt};
  std::optional<LargeClass> container;
  if (const auto* l = std::get_if<LargeClass>(&noun_class)) container = *l;
  return {next.object, container};
}

Subgoal parse_subgoal(std::string_view instruction, std::optional<std::string_view> next_instruction) {
  Subgoal s;
  s.instruction = std::string(instruction);
  s.kind = parse_subgoal_kind(instruction);
  if (s.kind == SubgoalKind::kNavigation) {
    std::tie(s.target, s.container) = parse_targets(instruction, next_instruction);
  } else {
    const ParsedInteraction p = parse_interaction(instruction);
    s.interaction = p.kind;
    s.target = p.object;
    if (p.kind == InteractionKind::kPut) s.container = p.receptacle;
  }
  return s;
}

std::optional<GoalCondition> condition_for(const ParsedInteraction& interaction, int prior) {
  GoalCondition c;
  c.object = interaction.object;
  c.count = prior + 1;
  switch (interaction.kind) {
    case InteractionKind::kPickUp: c.kind = ConditionKind::kPickedUp; break;
    case InteractionKind::kPut:
      c.kind = ConditionKind::kPlacedIn;
      c.receptacle = interaction.receptacle;
      break;
    case InteractionKind::kOpen: c.kind = ConditionKind::kOpened; break;
    case InteractionKind::kClose: c.kind = ConditionKind::kClosed; break;
    case InteractionKind::kSlice: c.kind = ConditionKind::kSliced; break;
    case InteractionKind::kToggleOn: c.kind = ConditionKind::kToggledOn; break;
    case InteractionKind::kToggleOff: c.kind = ConditionKind::kToggledOff; break;
  }
  if (c.kind == ConditionKind::kOpened || c.kind == ConditionKind::kClosed ||
      c.kind == ConditionKind::kToggledOn || c.kind == ConditionKind::kToggledOff) {
    c.count = 1;
  }
  return c;
}

std::vector<GoalCondition> derive_goal_conditions(const std::vector<Subgoal>& subgoals) {
  std::vector<GoalCondition> out;
  std::vector<ParsedInteraction> seen;
  for (const Subgoal& s : subgoals) {
    if (s.kind != SubgoalKind::kInteraction) continue;
    const ParsedInteraction p = parse_interaction(s.instruction);
    const auto prior = std::count_if(seen.begin(), seen.end(), [&](const ParsedInteraction& q) {
      return q.kind == p.kind && q.object == p.object && q.receptacle == p.receptacle;
    });
    seen.push_back(p);
    if (auto c = condition_for(p, static_cast<int>(prior))) out.push_back(*c);
  }
  return out;
}

bool satisfied(const Scene& scene, const WorldState& world, const GoalCondition& condition) {
  int hits = 0;
  const auto& smalls = scene.small_objects();
  const auto& larges = scene.large_objects();
  switch (condition.kind) {
    case ConditionKind::kPickedUp:
    case ConditionKind::kPlacedIn:
    case ConditionKind::kSliced:
      for (std::size_t i = 0; i < smalls.size(); ++i) {
        if (ObjectClass{smalls[i].cls} != condition.object) continue;
        const auto& s = world.small[i];
        bool ok = false;
        if (condition.kind == ConditionKind::kPickedUp) ok = s.times_picked > 0;
        if (condition.kind == ConditionKind::kSliced) ok = s.sliced;
        if (condition.kind == ConditionKind::kPlacedIn) {
          ok = !s.held && s.times_picked > 0 && s.container && condition.receptacle &&
               larges[*s.container].cls == *condition.receptacle;
        }
        if (ok) ++hits;
      }
      break;
    case ConditionKind::kOpened:
    case ConditionKind::kClosed:
    case ConditionKind::kToggledOn:
    case ConditionKind::kToggledOff:
      for (std::size_t j = 0; j < larges.size(); ++j) {
        if (ObjectClass{larges[j].cls} != condition.object) continue;
        const auto& l = world.large[j];
        bool ok = false;
        if (condition.kind == ConditionKind::kOpened) ok = l.opened_ever;
        if (condition.kind == ConditionKind::kClosed) ok = l.opened_ever && !l.open;
        if (condition.kind == ConditionKind::kToggledOn) ok = l.toggled_on;
        if (condition.kind == ConditionKind::kToggledOff) ok = !l.toggled_on;
        if (ok) ++hits;
      }
      break;
  }
  return hits >= condition.count;
}

double goal_condition_fraction(const Scene& scene, const WorldState& world,
                               const std::vector<GoalCondition>& conditions) {
  if (conditions.empty()) return 0.0;
  const auto met = std::count_if(conditions.begin(), conditions.end(),
                                 [&](const GoalCondition& c) { return satisfied(scene, world, c); });
  return static_cast<double>(met) / static_cast<double>(conditions.size());
}

}  // namespace amslam
