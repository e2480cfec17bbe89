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

#include <algorithm>

#include "amslam/exploration.hpp"
#include "amslam/generator.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace amslam;
using namespace amslam::testing;

namespace {

using A = NavAction;

bool is_prefix(const std::vector<NavAction>& a, const std::vector<NavAction>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

constexpr PolicyKind kAllPolicies[] = {PolicyKind::kInstructionGuided, PolicyKind::kRandom,
                                       PolicyKind::kFrontierOnly, PolicyKind::kPartialLanguage,
                                       PolicyKind::kNoExploredArea};

}  // namespace

TEST_CASE("rotation injection adds a full turn after every second move") {
  const std::vector<NavAction> raw = {A::kMoveAhead, A::kRotateRight, A::kMoveAhead, A::kMoveAhead,
                                      A::kRotateLeft};
  CHECK(inject_rotations(raw) == injected_example());
  CHECK(inject_rotations(std::vector<NavAction>{A::kMoveAhead}) == std::vector<NavAction>{A::kMoveAhead});
  CHECK(inject_rotations(std::vector<NavAction>{}).empty());
}

TEST_CASE("zigzag golden sequence") {
  CHECK(zigzag(injected_example()) == zigzag_golden());
  CHECK(zigzag(std::vector<NavAction>{A::kMoveAhead}) ==
        std::vector<NavAction>{A::kLookDown, A::kLookUp, A::kLookUp, A::kMoveAhead, A::kLookDown,
                               A::kLookDown});
  CHECK(zigzag(std::vector<NavAction>{}).empty());
  CHECK_THROWS_AS(zigzag(std::vector<NavAction>{A::kMoveAhead, A::kLookUp}), Error);
}

TEST_CASE("zigzag triples the length plus three and keeps the horizon within one step") {
  Rng rng(41);
  for (int n = 1; n <= 100; ++n) {
    const auto seq = random_moves(rng, n);
    const auto z = zigzag(seq);
    CHECK(z.size() == 3 * seq.size() + 3);
    std::vector<NavAction> stripped;
    int offset = 0;
    for (NavAction a : z) {
      if (a == A::kLookDown) {
        ++offset;
      } else if (a == A::kLookUp) {
        --offset;
      } else {
        stripped.push_back(a);
        CHECK((offset == -1 || offset == 1));
      }
      CHECK(offset >= -1);
      CHECK(offset <= 1);
    }
    CHECK(stripped == seq);
  }
}

TEST_CASE("coverage metrics") {
  ExplorationTrace straight;
  for (int i = 0; i <= 5; ++i) straight.visited.insert({5, 10 - i});
  straight.raw_actions.assign(5, A::kMoveAhead);
  const auto m = coverage_metrics(straight);
  CHECK(m.coverage == 6);
  CHECK(m.coverage_efficiency == doctest::Approx(1.2));

  ExplorationTrace spin;
  spin.visited.insert({5, 5});
  spin.raw_actions.assign(10, A::kRotateRight);
  CHECK(coverage_metrics(spin).coverage == 1);
  CHECK(coverage_metrics(spin).coverage_efficiency == doctest::Approx(0.1));

  ExplorationTrace empty;
  empty.visited.insert({5, 5});
  CHECK(coverage_metrics(empty).coverage == 1);
  CHECK(coverage_metrics(empty).coverage_efficiency == 0.0);
}

TEST_CASE("a target visible from the start stops before moving") {
  const Scene scene = carve(room_grid(15, {1, 1}, {13, 13}), {large(LargeClass::kFridge, {{7, 3}})},
                            {}, pose(7, 7));
  Simulator sim(scene);
  AgentMemory memory(scene.start(), NoiseModel::zero());
  PolicyConfig policy;
  Rng a(1);
  Rng b(2);
  const std::vector<ExplorationTarget> targets = {{LargeClass::kFridge, std::nullopt}};
  const auto trace = run_exploration(sim, memory, targets, policy, a, b);
  CHECK(trace.raw_actions.empty());
  CHECK(trace.visited == std::set<Cell>{{7, 7}});
  CHECK(coverage_metrics(trace).coverage == 1);
}

TEST_CASE("random exploration on an open room stays within bounds") {
  const Scene scene = carve(room_grid(17, {1, 1}, {15, 15}), {}, {}, pose(8, 8));
  Simulator sim(scene);
  AgentMemory memory(scene.start(), NoiseModel{});
  PolicyConfig policy;
  policy.kind = PolicyKind::kRandom;
  policy.max_steps = 200;
  Rng a(3);
  Rng b(4);
  const std::vector<ExplorationTarget> targets = {{LargeClass::kFridge, std::nullopt}};
  const auto trace = run_exploration(sim, memory, targets, policy, a, b);
  const auto navigable = std::count(scene.navigable().data().begin(), scene.navigable().data().end(), 1);
  CHECK(trace.visited.size() > 0);
  CHECK(static_cast<long>(trace.visited.size()) <= navigable);
  CHECK(trace.steps <= 200);
  CHECK(trace.failures <= 4);
}

TEST_CASE("executed exploration is the augmented raw sequence, for every policy") {
  for (PolicyKind kind : kAllPolicies) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      Rng gen(mix_seed(seed, 77));
      const Scene scene = generate_scene(gen);
      const Task task = generate_task(scene, gen);
      std::vector<ExplorationTarget> targets;
      for (std::size_t i = 0; i < task.subgoals.size(); ++i) {
        if (task.subgoals[i].kind == SubgoalKind::kNavigation) {
          targets.push_back({task.subgoals[i].target, task.subgoals[i].container});
        }
      }
      Simulator sim(scene);
      AgentMemory memory(scene.start(), NoiseModel{});
      PolicyConfig policy;
      policy.kind = kind;
      Rng a(mix_seed(seed, 1));
      Rng b(mix_seed(seed, 2));
      const auto trace = run_exploration(sim, memory, targets, policy, a, b);
      CHECK(is_prefix(trace.augmented_actions, zigzag(inject_rotations(trace.raw_actions))));
      CHECK(trace.steps == static_cast<int>(trace.augmented_actions.size()));
      CHECK(trace.steps <= 500);
      CHECK(trace.failures <= 4);
      std::set<Cell> visited{scene.start().cell};
      for (const auto& r : sim.history()) visited.insert(r.pose.cell);
      CHECK(trace.visited == visited);
    }
  }
}

TEST_CASE("identical seeds give identical exploration") {
  Rng gen(5);
  const Scene scene = generate_scene(gen);
  const std::vector<ExplorationTarget> targets = {{LargeClass::kDiningTable, std::nullopt},
                                                  {SmallClass::kMug, LargeClass::kShelf}};
  auto run_once = [&] {
    Simulator sim(scene);
    AgentMemory memory(scene.start(), NoiseModel{});
    Rng a(8);
    Rng b(9);
    PolicyConfig policy;
    return run_exploration(sim, memory, targets, policy, a, b).augmented_actions;
  };
  CHECK(run_once() == run_once());
}

TEST_CASE("forgetting removes only detections matching the picked cell") {
  const Scene scene = carve(room_grid(15, {1, 1}, {13, 13}), {},
                            {{SmallClass::kMug, {7, 5}, std::nullopt, HeightClass::kMid},
                             {SmallClass::kMug, {5, 5}, std::nullopt, HeightClass::kMid}},
                            pose(7, 7));
  Simulator sim(scene);
  AgentMemory memory(scene.start(), NoiseModel::zero());
  Rng rng(1);
  memory.observe(sim, rng);
  const auto mugs = [&] {
    return std::count_if(memory.log().begin(), memory.log().end(),
                         [](const Detection& d) { return d.cls == ObjectClass{SmallClass::kMug}; });
  };
  REQUIRE(mugs() == 2);
  const Cell picked = memory.frame().to_map(Cell{7, 5});
  memory.forget(SmallClass::kMug, std::span<const Cell>(&picked, 1));
  REQUIRE(mugs() == 1);
  const Cell other = memory.frame().to_map(Cell{5, 5});
  memory.forget(SmallClass::kApple, std::span<const Cell>(&other, 1));
  CHECK(mugs() == 1);
}

TEST_CASE("policy names round-trip") {
  for (PolicyKind k : kAllPolicies) CHECK(policy_kind_from_name(name(k)) == k);
  CHECK_THROWS_AS(policy_kind_from_name("greedy"), Error);
}
