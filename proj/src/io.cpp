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

#include "amslam/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace amslam {
namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedInput, what);
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

// Runs `body`, turning JSON type and key errors into MalformedInput.
template <class F>
auto guarded(const char* what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    malformed(std::string(what) + ": " + e.what());
  }
}

void check_format(const json& j) {
  if (!j.contains("format") || j.at("format").get<int>() != kFileFormat) {
    malformed("unsupported or missing format version");
  }
}

json cell_json(Cell c) { return json::array({c.x, c.y}); }

Cell cell_from(const json& j) {
  if (!j.is_array() || j.size() != 2) malformed("cell must be [x, y]");
  return {j[0].get<int>(), j[1].get<int>()};
}

json pose_json(const Pose& p) {
  return {{"x", p.cell.x}, {"y", p.cell.y}, {"r", degrees(p.r)}, {"h", p.h.degrees()}};
}

Pose pose_from(const json& j) {
  Pose p;
  p.cell = {j.at("x").get<int>(), j.at("y").get<int>()};
  try {
    p.r = rotation_from_degrees(j.at("r").get<int>());
    p.h = Horizon::from_degrees(j.at("h").get<int>());
  } catch (const Error& e) {
    malformed(e.what());
  }
  return p;
}

template <class F>
auto lookup(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    malformed(e.what());
  }
}

json optional_name(const std::optional<LargeClass>& c) {
  return c ? json(std::string(name(*c))) : json(nullptr);
}

std::optional<LargeClass> optional_large(const json& j) {
  if (j.is_null()) return std::nullopt;
  const ObjectClass c = lookup([&] { return class_from_name(j.get<std::string>()); });
  if (!is_large(c)) malformed("expected a large-object class");
  return std::get<LargeClass>(c);
}

}  // namespace

std::string scene_to_json(const Scene& scene) {
  const int g = scene.grid_size();
  std::string nav;
  nav.reserve(static_cast<std::size_t>(g) * static_cast<std::size_t>(g));
  for (std::uint8_t v : scene.navigable().data()) nav.push_back(v ? '1' : '0');
  json large = json::array();
  for (const auto& o : scene.large_objects()) {
    json cells = json::array();
    for (Cell c : o.footprint) cells.push_back(cell_json(c));
    large.push_back({{"class", name(o.cls)},
                     {"cells", cells},
                     {"articulated", o.articulated},
                     {"height_class", name(o.height)}});
  }
  json small = json::array();
  for (const auto& o : scene.small_objects()) {
    small.push_back({{"class", name(o.cls)},
                     {"cell", cell_json(o.cell)},
                     {"container", o.container ? json(*o.container) : json(nullptr)},
                     {"height_class", name(o.height)}});
  }
  const json doc = {{"format", kFileFormat},    {"grid_size", g},
                    {"navigable", nav},         {"large_objects", large},
                    {"small_objects", small},   {"start", pose_json(scene.start())}};
  return doc.dump();
}

Scene scene_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded("scene", [&] {
    check_format(j);
    const int g = j.at("grid_size").get<int>();
    if (g <= 0) malformed("grid_size must be positive");
    const auto nav = j.at("navigable").get<std::string>();
    if (nav.size() != static_cast<std::size_t>(g) * static_cast<std::size_t>(g)) {
      malformed("navigable string length does not match grid_size");
    }
    NavGrid grid(g, g);
    for (std::size_t i = 0; i < nav.size(); ++i) {
      if (nav[i] != '0' && nav[i] != '1') malformed("navigable must hold only 0 and 1");
      grid.data()[i] = nav[i] == '1' ? 1 : 0;
    }
    std::vector<LargeObject> large;
    for (const json& o : j.at("large_objects")) {
      LargeObject obj;
      const ObjectClass c = lookup([&] { return class_from_name(o.at("class").get<std::string>()); });
      if (!is_large(c)) malformed("large_objects entry has a small class");
      obj.cls = std::get<LargeClass>(c);
      for (const json& cell : o.at("cells")) obj.footprint.push_back(cell_from(cell));
      obj.articulated = o.at("articulated").get<bool>();
      obj.height = lookup([&] { return height_class_from_name(o.at("height_class").get<std::string>()); });
      large.push_back(std::move(obj));
    }
    std::vector<SmallObject> small;
    for (const json& o : j.at("small_objects")) {
      SmallObject obj;
      const ObjectClass c = lookup([&] { return class_from_name(o.at("class").get<std::string>()); });
      if (is_large(c)) malformed("small_objects entry has a large class");
      obj.cls = std::get<SmallClass>(c);
      obj.cell = cell_from(o.at("cell"));
      if (!o.at("container").is_null()) obj.container = o.at("container").get<std::size_t>();
      obj.height = lookup([&] { return height_class_from_name(o.at("height_class").get<std::string>()); });
      small.push_back(obj);
    }
    Scene scene(std::move(grid), std::move(large), std::move(small), pose_from(j.at("start")));
    scene.validate();
    return scene;
  });
}

std::string task_to_json(const Task& task) {
  json subgoals = json::array();
  for (const auto& s : task.subgoals) {
    subgoals.push_back({{"instruction", s.instruction},
                        {"kind", name(s.kind)},
                        {"target", name(s.target)},
                        {"container", optional_name(s.container)},
                        {"interaction", s.interaction ? json(std::string(name(*s.interaction)))
                                                      : json(nullptr)}});
  }
  json conditions = json::array();
  for (const auto& c : task.goal_conditions) {
    conditions.push_back({{"kind", name(c.kind)},
                          {"object", name(c.object)},
                          {"receptacle", optional_name(c.receptacle)},
                          {"count", c.count}});
  }
  const json doc = {{"format", kFileFormat},
                    {"goal", task.goal},
                    {"subgoals", subgoals},
                    {"goal_conditions", conditions}};
  return doc.dump();
}

Task task_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded("task", [&] {
    check_format(j);
    Task task;
    task.goal = j.at("goal").get<std::string>();
    for (const json& s : j.at("subgoals")) {
      Subgoal sg;
      sg.instruction = s.at("instruction").get<std::string>();
      sg.kind = lookup([&] { return subgoal_kind_from_name(s.at("kind").get<std::string>()); });
      sg.target = lookup([&] { return class_from_name(s.at("target").get<std::string>()); });
      sg.container = optional_large(s.at("container"));
      if (!s.at("interaction").is_null()) {
        sg.interaction =
            lookup([&] { return interaction_kind_from_name(s.at("interaction").get<std::string>()); });
      }
      task.subgoals.push_back(std::move(sg));
    }
    for (const json& c : j.at("goal_conditions")) {
      GoalCondition gc;
      gc.kind = lookup([&] { return condition_kind_from_name(c.at("kind").get<std::string>()); });
      gc.object = lookup([&] { return class_from_name(c.at("object").get<std::string>()); });
      gc.receptacle = optional_large(c.at("receptacle"));
      gc.count = c.at("count").get<int>();
      task.goal_conditions.push_back(gc);
    }
    validate(task);
    return task;
  });
}

Action action_from_name(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    return lookup([&] { return Action{nav_action_from_name(text)}; });
  }
  if (text.back() != ')') malformed("unterminated action '" + std::string(text) + "'");
  return lookup([&] {
    const InteractionKind kind = interaction_kind_from_name(text.substr(0, open));
    const ObjectClass target = class_from_name(text.substr(open + 1, text.size() - open - 2));
    return Action{Interact{kind, target}};
  });
}

std::string step_record_to_json(const StepRecord& record) {
  const json j = {{"t", record.t},
                  {"pose", pose_json(record.pose)},
                  {"action", action_name(record.action)},
                  {"success", record.outcome == StepOutcome::kSuccess},
                  {"injected", record.injected},
                  {"subgoal_index", record.subgoal_index}};
  return j.dump();
}

StepRecord step_record_from_json(std::string_view line) {
  const json j = parse(line);
  return guarded("trace record", [&] {
    StepRecord r;
    r.t = j.at("t").get<int>();
    r.pose = pose_from(j.at("pose"));
    r.action = action_from_name(j.at("action").get<std::string>());
    r.outcome = j.value("success", true) ? StepOutcome::kSuccess : StepOutcome::kFailure;
    r.injected = j.at("injected").get<bool>();
    r.subgoal_index = j.at("subgoal_index").get<int>();
    return r;
  });
}

std::string trace_to_jsonl(const std::vector<StepRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += step_record_to_json(r);
    out += '\n';
  }
  return out;
}

std::vector<StepRecord> trace_from_jsonl(std::string_view text) {
  std::vector<StepRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(step_record_from_json(line));
  }
  return out;
}

std::string map_to_json(const SemanticMap& map) {
  const int g = map.grid_size();
  json channels = json::object();
  for (int ch = 0; ch < kNumChannels; ++ch) {
    const std::string key =
        ch == kNavigableChannel ? "navigable" : std::string(name(large_class_at(ch)));
    std::vector<float> values;
    values.reserve(static_cast<std::size_t>(g) * static_cast<std::size_t>(g));
    for (int y = 0; y < g; ++y) {
      for (int x = 0; x < g; ++x) values.push_back(map.value({x, y}, ch));
    }
    channels[key] = std::move(values);
  }
  const json doc = {{"format", kFileFormat}, {"grid_size", g}, {"channels", channels}};
  return doc.dump();
}

SemanticMap map_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded("map", [&] {
    check_format(j);
    const int g = j.at("grid_size").get<int>();
    if (g <= 0) malformed("grid_size must be positive");
    SemanticMap map(g);
    const json& channels = j.at("channels");
    for (int ch = 0; ch < kNumChannels; ++ch) {
      const std::string key =
          ch == kNavigableChannel ? "navigable" : std::string(name(large_class_at(ch)));
      const auto values = channels.at(key).get<std::vector<float>>();
      if (values.size() != static_cast<std::size_t>(g) * static_cast<std::size_t>(g)) {
        malformed("channel '" + key + "' has the wrong length");
      }
      for (std::size_t i = 0; i < values.size(); ++i) {
        const Cell c{static_cast<int>(i % static_cast<std::size_t>(g)),
                     static_cast<int>(i / static_cast<std::size_t>(g))};
        map.set_value(c, ch, values[i]);
      }
    }
    return map;
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path);
}

}  // namespace amslam
