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

#include "amslam/executor.hpp"
#include "amslam/harness.hpp"
#include "amslam/io.hpp"
#include "support.hpp"

using namespace amslam;
using namespace amslam::testing;

namespace {

Task fridge_task() {
  Task t;
  t.goal = "open the fridge";
  t.subgoals = {parse_subgoal("go to the fridge", "open the fridge"), parse_subgoal("open the fridge")};
  t.goal_conditions = derive_goal_conditions(t.subgoals);
  return t;
}

EpisodeResult result(bool success, double gc) {
  EpisodeResult r;
  r.success = success;
  r.goal_condition = gc;
  return r;
}

}  // namespace

TEST_CASE("score averages success and goal condition") {
  const std::vector<EpisodeResult> rs = {result(true, 1.0), result(false, 0.5), result(false, 0.0)};
  const Score s = score(rs);
  CHECK(s.success_rate == doctest::Approx(1.0 / 3.0));
  CHECK(s.goal_condition == doctest::Approx(0.5));
  try {
    score(std::vector<EpisodeResult>{});
    FAIL("expected EmptyInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyInput);
  }
}

TEST_CASE("zero-noise pipeline opens a fridge in a small room") {
  const Scene scene = carve(room_grid(15, {1, 1}, {13, 13}), {large(LargeClass::kFridge, {{10, 1}})},
                            {}, pose(4, 10, 90));
  scene.validate();
  EpisodeConfig cfg;
  cfg.noise = NoiseModel::zero();
  const EpisodeResult r = execute_task(scene, fridge_task(), cfg, 1);
  CHECK(r.success);
  CHECK(r.goal_condition == doctest::Approx(1.0));
  CHECK(r.steps <= 1000);
}

TEST_CASE("oracle navigation with gt interaction solves generated tasks") {
  RunConfig cfg;
  cfg.base_seed = 3;
  cfg.episodes = 30;
  cfg.oracle = OracleMode::kGtAll;
  for (const auto& r : run_batch(cfg)) CHECK(r.success);
}

TEST_CASE("generated scenes satisfy every invariant and are reproducible") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const Scene scene = generate_scene(rng);
    CHECK_NOTHROW(scene.validate());
    CHECK(scene.grid_size() == 37);
    CHECK(scene.large_objects().size() >= 4);
    CHECK(scene.large_objects().size() <= 8);
    CHECK(scene.small_objects().size() >= 3);
    CHECK(scene.small_objects().size() <= 6);
    for (std::size_t i = 0; i < scene.large_objects().size(); ++i) {
      CHECK_FALSE(gt_waypoints(scene, ObjectRef::large(i)).empty());
    }
    for (std::size_t i = 0; i < scene.small_objects().size(); ++i) {
      CHECK_FALSE(gt_waypoints(scene, ObjectRef::small(i)).empty());
    }
  }
  Rng a(42);
  Rng b(42);
  CHECK(scene_to_json(generate_scene(a)) == scene_to_json(generate_scene(b)));
  CHECK(task_to_json(make_episode(42, 3).task) == task_to_json(make_episode(42, 3).task));
}

TEST_CASE("a generator asked for no large objects fails") {
  GeneratorOptions opts;
  opts.min_large = 0;
  opts.max_large = 0;
  Rng rng(1);
  try {
    generate_scene(rng, opts);
    FAIL("expected GenerationFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kGenerationFailed);
  }
}

TEST_CASE("scene, task, trace and map documents round-trip") {
  for (int i = 0; i < 10; ++i) {
    const EpisodeSetup ep = make_episode(7, i);
    const std::string scene_text = scene_to_json(ep.scene);
    CHECK(scene_to_json(scene_from_json(scene_text)) == scene_text);
    const std::string task_text = task_to_json(ep.task);
    CHECK(task_to_json(task_from_json(task_text)) == task_text);
    EpisodeConfig cfg;
    const EpisodeResult r = execute_task(ep.scene, ep.task, cfg, episode_seed(7, i));
    const std::string trace = trace_to_jsonl(r.history);
    CHECK(trace_to_jsonl(trace_from_jsonl(trace)) == trace);
    const SemanticMap map = replay(ep.scene, r.history);
    CHECK(map_from_json(map_to_json(map)) == map);
  }
  for (const std::string_view action : {"MoveAhead", "LookDown", "PickUp(watch)", "Put(side_table)"}) {
    if (action == "Put(side_table)") {
      CHECK_THROWS_AS(action_from_name(action), Error);
      continue;
    }
    CHECK(action_name(action_from_name(action)) == action);
  }
}

TEST_CASE("malformed documents are rejected") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  CHECK(code([] { scene_from_json("{"); }) == ErrorCode::kMalformedInput);
  CHECK(code([] { scene_from_json("{\"format\": 1}"); }) == ErrorCode::kMalformedInput);
  CHECK(code([] { task_from_json("[]"); }) == ErrorCode::kMalformedInput);
  CHECK(code([] { trace_from_jsonl("{\"t\": 0}\n"); }) == ErrorCode::kMalformedInput);
  CHECK(code([] { read_file("/nonexistent/amslam/file.json"); }) == ErrorCode::kIo);
}

TEST_CASE("results do not depend on thread count or episode order") {
  RunConfig cfg;
  cfg.base_seed = 5;
  cfg.episodes = 8;
  const auto serial = run_batch(cfg);
  cfg.jobs = 4;
  const auto parallel = run_batch(cfg);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(trace_to_jsonl(serial[i].history) == trace_to_jsonl(parallel[i].history));
  }
  // Episode 5 alone, run through the single-episode path, matches the batch.
  const EpisodeSetup ep = make_episode(5, 5);
  const auto alone = execute_task(ep.scene, ep.task, cfg.episode_config(), episode_seed(5, 5));
  CHECK(trace_to_jsonl(alone.history) == trace_to_jsonl(serial[5].history));
  CHECK(csv_row(summarize(cfg, serial)) == csv_row(summarize(cfg, parallel)));
}

TEST_CASE("metrics CSV layout") {
  RunConfig cfg;
  cfg.ablations.no_backup = true;
  const std::vector<EpisodeResult> rs = {result(true, 1.0), result(false, 0.5)};
  const MetricsRow row = summarize(cfg, rs);
  CHECK(csv_row(row) == "1,instruction,none,none,no_backup,2,0.5000,0.7500,0.000,0.0000,0.00");
  const std::vector<MetricsRow> rows = {row};
  CHECK(metrics_csv(rows) == std::string(kCsvHeader) + "\n" + csv_row(row) + "\n");
}

TEST_CASE("ablation tables expand to their variants") {
  const RunConfig base;
  CHECK(expand_ablation("table1", base).size() == 5);
  CHECK(expand_ablation("table3", base).size() == 5);
  const auto t4 = expand_ablation("table4", base);
  REQUIRE(t4.size() == 5);
  CHECK(t4[1].ablations.no_backup);
  CHECK(t4[2].ablations.strategy == WaypointStrategy::kMapOnly);
  CHECK(t4[3].ablations.strategy == WaypointStrategy::kDetectionOnly);
  CHECK(t4[4].ablations.no_horizon_search);
  const auto combo = expand_ablation("no_backup+map_only", base);
  REQUIRE(combo.size() == 1);
  CHECK(ablation_label(combo[0].ablations) == "no_backup+map_only");
  CHECK_THROWS_AS(expand_ablation("table2", base), Error);
}

TEST_CASE("invalid run configurations are rejected") {
  RunConfig cfg;
  cfg.episodes = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = RunConfig{};
  cfg.noise.p_false_positive = -1.0;
  CHECK_THROWS_AS(run_batch(cfg), Error);
}

TEST_CASE("replay visits every step and renders the agent") {
  const EpisodeSetup ep = make_episode(1, 0);
  const EpisodeResult r = execute_task(ep.scene, ep.task, EpisodeConfig{}, episode_seed(1, 0));
  std::size_t visits = 0;
  Pose last;
  const SemanticMap map = replay(ep.scene, r.history, [&](const StepRecord&, const SemanticMap&, const Pose& p) {
    ++visits;
    last = p;
  });
  CHECK(visits == r.history.size());
  const std::string text = render_map(map, last);
  CHECK(std::count(text.begin(), text.end(), '\n') == 37);
  CHECK(text.find_first_of("^>v<") != std::string::npos);
  CHECK(text.find('#') != std::string::npos);
}
