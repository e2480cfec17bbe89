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

// Command-line entry point: gen-scenes, run, replay, ablate.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amslam/harness.hpp"
#include "amslam/io.hpp"

namespace {

using amslam::Error;
using amslam::ErrorCode;
using nlohmann::json;

std::string episode_file(int index, std::string_view ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "ep_%04d.%s", index, std::string(ext).c_str());
  return buf;
}

amslam::NoiseModel parse_noise(const std::string& text, amslam::NoiseModel base) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "--noise expects pfn,pfp,jitter; got '" + text + "'");
    }
  }
  if (values.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument, "--noise expects pfn,pfp,jitter; got '" + text + "'");
  }
  base.p_false_negative = values[0];
  base.p_false_positive = values[1];
  base.confidence_jitter = values[2];
  return base;
}

// Options shared by run and ablate. Values given on the command line win
// over the config file, which wins over the defaults.
struct RunOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  int episodes = 50;
  std::string policy = "instruction";
  std::string noise;
  double decay = 0.9;
  std::string oracle = "none";
  std::string perturb = "none";
  std::string ablation = "none";
  double detection_threshold = 0.8;
  int jobs = 1;
  std::string out = "out";
  bool write_traces = true;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* episodes_opt = nullptr;
  CLI::Option* policy_opt = nullptr;
  CLI::Option* noise_opt = nullptr;
  CLI::Option* decay_opt = nullptr;
  CLI::Option* oracle_opt = nullptr;
  CLI::Option* perturb_opt = nullptr;
  CLI::Option* ablation_opt = nullptr;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
};

void add_seed_options(CLI::App& cmd, RunOptions& o) {
  o.seed_opt = cmd.add_option("--seed", o.seed, "Base seed")->envname("AMSLAM_SEED");
  o.episodes_opt = cmd.add_option("--episodes", o.episodes, "Number of episodes");
  cmd.add_option("--out", o.out, "Output directory")->capture_default_str();
}

void add_run_options(CLI::App& cmd, RunOptions& o) {
  add_seed_options(cmd, o);
  cmd.add_option("--config", o.config_path, "JSON run configuration");
  o.policy_opt = cmd.add_option("--policy", o.policy,
                                "instruction|random|frontier|partial_language|no_explored_area");
  o.noise_opt = cmd.add_option("--noise", o.noise, "Perception noise pfn,pfp,jitter");
  o.decay_opt = cmd.add_option("--decay", o.decay, "Detection confidence decay per cell of depth");
  o.oracle_opt = cmd.add_option("--oracle", o.oracle, "none|gt_navigation|gt_all");
  o.perturb_opt = cmd.add_option("--perturb", o.perturb, "none|displacement|horizon");
  o.threshold_opt =
      cmd.add_option("--detection-threshold", o.detection_threshold, "Detection waypoint confidence");
  o.jobs_opt = cmd.add_option("--jobs", o.jobs, "Worker threads");
}

struct Plan {
  amslam::RunConfig base;
  std::string ablation = "none";
};

Plan build_plan(const RunOptions& o) {
  amslam::RunConfig c;
  std::string ablation = "none";
  if (!o.config_path.empty()) {
    json j;
    try {
      j = json::parse(amslam::read_file(o.config_path));
      c.base_seed = j.value("seed", c.base_seed);
      c.episodes = j.value("episodes", c.episodes);
      if (j.contains("policy")) c.policy = amslam::policy_kind_from_name(j["policy"].get<std::string>());
      if (j.contains("oracle")) c.oracle = amslam::oracle_mode_from_name(j["oracle"].get<std::string>());
      if (j.contains("perturbation")) {
        c.perturbation = amslam::perturbation_from_name(j["perturbation"].get<std::string>());
      }
      ablation = j.value("ablation", ablation);
      c.detection_threshold = j.value("detection_threshold", c.detection_threshold);
      c.jobs = j.value("jobs", c.jobs);
      if (j.contains("noise")) {
        const json& n = j["noise"];
        c.noise.p_false_negative = n.value("p_false_negative", c.noise.p_false_negative);
        c.noise.p_false_positive = n.value("p_false_positive", c.noise.p_false_positive);
        c.noise.confidence_jitter = n.value("confidence_jitter", c.noise.confidence_jitter);
        c.noise.detection_decay = n.value("detection_decay", c.noise.detection_decay);
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedInput, o.config_path + ": " + e.what());
    }
  }
  if (o.seed_opt && o.seed_opt->count()) c.base_seed = o.seed;
  if (o.episodes_opt && o.episodes_opt->count()) c.episodes = o.episodes;
  if (o.policy_opt && o.policy_opt->count()) c.policy = amslam::policy_kind_from_name(o.policy);
  if (o.noise_opt && o.noise_opt->count()) c.noise = parse_noise(o.noise, c.noise);
  if (o.decay_opt && o.decay_opt->count()) c.noise.detection_decay = o.decay;
  if (o.oracle_opt && o.oracle_opt->count()) c.oracle = amslam::oracle_mode_from_name(o.oracle);
  if (o.perturb_opt && o.perturb_opt->count()) c.perturbation = amslam::perturbation_from_name(o.perturb);
  if (o.threshold_opt && o.threshold_opt->count()) c.detection_threshold = o.detection_threshold;
  if (o.jobs_opt && o.jobs_opt->count()) c.jobs = o.jobs;
  if (o.ablation_opt && o.ablation_opt->count()) ablation = o.ablation;
  c.validate();
  return {c, ablation};
}

std::vector<amslam::EpisodeSetup> make_episodes(const amslam::RunConfig& c) {
  std::vector<amslam::EpisodeSetup> episodes;
  episodes.reserve(static_cast<std::size_t>(c.episodes));
  for (int i = 0; i < c.episodes; ++i) episodes.push_back(amslam::make_episode(c.base_seed, i));
  return episodes;
}

void write_episodes(const std::string& out, std::span<const amslam::EpisodeSetup> episodes) {
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    const int index = static_cast<int>(i);
    amslam::write_file(out + "/scenes/" + episode_file(index, "json"),
                       amslam::scene_to_json(episodes[i].scene));
    amslam::write_file(out + "/tasks/" + episode_file(index, "json"),
                       amslam::task_to_json(episodes[i].task));
  }
}

// Runs every configuration over the same episodes; returns one metrics row
// per configuration.
std::vector<amslam::MetricsRow> run_configs(std::span<const amslam::RunConfig> configs,
                                            std::span<const amslam::EpisodeSetup> episodes,
                                            const std::string& out, bool write_traces) {
  std::vector<amslam::MetricsRow> rows;
  for (const auto& c : configs) {
    const auto results = amslam::run_batch(c, episodes);
    rows.push_back(amslam::summarize(c, results));
    std::cerr << amslam::config_label(c) << ": success_rate " << rows.back().success_rate << "\n";
    if (!write_traces) continue;
    const std::string dir =
        configs.size() == 1 ? out + "/traces" : out + "/traces/" + amslam::config_label(c);
    for (std::size_t i = 0; i < results.size(); ++i) {
      amslam::write_file(dir + "/" + episode_file(static_cast<int>(i), "jsonl"),
                         amslam::trace_to_jsonl(results[i].history));
    }
    amslam::write_file(dir + "/episodes.jsonl", amslam::episode_summary_jsonl(results));
  }
  return rows;
}

int cmd_gen_scenes(const RunOptions& o) {
  amslam::RunConfig c;
  if (o.seed_opt->count()) c.base_seed = o.seed;
  c.episodes = o.episodes;
  c.validate();
  write_episodes(o.out, make_episodes(c));
  std::cout << "wrote " << c.episodes << " scenes and tasks to " << o.out << "\n";
  return 0;
}

int cmd_run(const RunOptions& o) {
  const Plan plan = build_plan(o);
  const auto configs = amslam::expand_ablation(plan.ablation, plan.base);
  const auto episodes = make_episodes(plan.base);
  write_episodes(o.out, episodes);
  const auto rows = run_configs(configs, episodes, o.out, o.write_traces);
  const std::string csv = amslam::metrics_csv(rows);
  amslam::write_file(o.out + "/metrics.csv", csv);
  std::cout << csv;
  return 0;
}

int cmd_ablate(const RunOptions& o, const std::string& table) {
  const amslam::RunConfig base = build_plan(o).base;
  const auto episodes = make_episodes(base);
  std::vector<std::string> tables;
  if (table == "all") {
    for (auto t : amslam::kAblationTables) tables.emplace_back(t);
  } else {
    tables.push_back(table);
  }
  for (const auto& t : tables) {
    const auto configs = amslam::expand_ablation(t, base);
    const auto rows = run_configs(configs, episodes, o.out + "/" + t, o.write_traces);
    const std::string csv = amslam::metrics_csv(rows);
    amslam::write_file(o.out + "/" + t + ".csv", csv);
    std::cout << "# " << t << "\n" << csv;
  }
  return 0;
}

struct ReplayOptions {
  std::string trace;
  std::string scene;
  std::uint64_t seed = 0;
  int episode = -1;
  std::string format = "text";
  int every = 1;
  bool final_only = false;
};

int cmd_replay(const ReplayOptions& o) {
  amslam::Scene scene = [&] {
    if (!o.scene.empty()) return amslam::scene_from_json(amslam::read_file(o.scene));
    if (o.episode < 0) {
      throw Error(ErrorCode::kInvalidArgument, "replay needs --scene or --episode");
    }
    return amslam::make_episode(o.seed, o.episode).scene;
  }();
  const auto trace = amslam::trace_from_jsonl(amslam::read_file(o.trace));
  if (o.every <= 0) throw Error(ErrorCode::kInvalidArgument, "--every must be positive");
  const bool text = o.format == "text";
  if (!text && o.format != "json") {
    throw Error(ErrorCode::kInvalidArgument, "--format must be text or json");
  }
  const std::size_t last = trace.empty() ? 0 : trace.size() - 1;
  std::size_t index = 0;
  auto show = [&](const amslam::StepRecord& r, const amslam::SemanticMap& map,
                  const amslam::Pose& map_pose) {
    const std::size_t i = index++;
    const bool wanted = o.final_only ? i == last : (i % static_cast<std::size_t>(o.every) == 0 || i == last);
    if (!wanted) return;
    if (text) {
      std::cout << "t=" << r.t << " " << amslam::action_name(r.action)
                << (r.outcome == amslam::StepOutcome::kSuccess ? "" : " (failed)") << " pose=("
                << r.pose.cell.x << "," << r.pose.cell.y << "," << amslam::degrees(r.pose.r) << ","
                << r.pose.h.degrees() << ")\n"
                << amslam::render_map(map, map_pose) << "\n";
    } else {
      json line = json::parse(amslam::step_record_to_json(r));
      line["map"] = json::parse(amslam::map_to_json(map));
      std::cout << line.dump() << "\n";
    }
  };
  const amslam::SemanticMap final_map = amslam::replay(scene, trace, show);
  if (trace.empty()) {
    const amslam::MapFrame frame(scene.start(), scene.grid_size());
    if (text) {
      std::cout << amslam::render_map(final_map, frame.to_map(scene.start()));
    } else {
      std::cout << amslam::map_to_json(final_map) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affordance-aware mobile manipulation simulator"};
  app.require_subcommand(1);

  RunOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-scenes", "Write generated scenes and tasks");
  add_seed_options(*gen_cmd, gen);

  RunOptions run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a batch of episodes");
  add_run_options(*run_cmd, run);
  run.ablation_opt = run_cmd->add_option(
      "--ablation", run.ablation,
      "none|no_backup|map_only|detection_only|no_horizon_search (joined by '+') or table1|table3|table4");
  run_cmd->add_flag("!--no-traces", run.write_traces, "Skip per-episode trace files");

  RunOptions ablate;
  std::string table = "all";
  CLI::App* ablate_cmd = app.add_subcommand("ablate", "Run the ablation tables");
  add_run_options(*ablate_cmd, ablate);
  ablate_cmd->add_option("--table", table, "table1|table3|table4|all")->capture_default_str();
  ablate.write_traces = false;
  ablate_cmd->add_flag("--traces", ablate.write_traces, "Also write per-episode traces");

  ReplayOptions rep;
  CLI::App* replay_cmd = app.add_subcommand("replay", "Rebuild the semantic map along a trace");
  replay_cmd->add_option("--trace", rep.trace, "JSON-lines trace file")->required();
  replay_cmd->add_option("--scene", rep.scene, "Scene JSON file");
  replay_cmd->add_option("--seed", rep.seed, "Base seed used to regenerate the scene")
      ->envname("AMSLAM_SEED");
  replay_cmd->add_option("--episode", rep.episode, "Episode index used to regenerate the scene");
  replay_cmd->add_option("--format", rep.format, "text|json")->capture_default_str();
  replay_cmd->add_option("--every", rep.every, "Show every n-th step")->capture_default_str();
  replay_cmd->add_flag("--final", rep.final_only, "Show only the last step");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return cmd_gen_scenes(gen);
    if (*run_cmd) return cmd_run(run);
    if (*ablate_cmd) return cmd_ablate(ablate, table);
    if (*replay_cmd) return cmd_replay(rep);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
