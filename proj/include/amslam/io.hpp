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

// JSON serialization of scenes, tasks, step traces and semantic maps.
// Parsers throw MalformedInput on structurally invalid documents.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "amslam/mapping.hpp"
#include "amslam/tasks.hpp"
#include "amslam/world.hpp"

namespace amslam {

inline constexpr int kFileFormat = 1;

std::string scene_to_json(const Scene& scene);
/// Parses and validates a scene document.
Scene scene_from_json(std::string_view text);

std::string task_to_json(const Task& task);
Task task_from_json(std::string_view text);

/// Inverse of action_name: "MoveAhead", "PickUp(watch)", ...
Action action_from_name(std::string_view text);

/// One JSON object per line, no trailing newline.
std::string step_record_to_json(const StepRecord& record);
StepRecord step_record_from_json(std::string_view line);

/// JSON-lines trace, one record per line.
std::string trace_to_jsonl(const std::vector<StepRecord>& records);
std::vector<StepRecord> trace_from_jsonl(std::string_view text);

/// Map dump: per-channel row-major float arrays keyed by channel name.
std::string map_to_json(const SemanticMap& map);
SemanticMap map_from_json(std::string_view text);

/// Whole-file helpers. Throw Error(kIo) on failure; writing creates
/// missing parent directories.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace amslam
