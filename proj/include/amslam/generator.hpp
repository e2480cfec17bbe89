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

// Seeded synthetic rooms and pick-and-place tasks.

#pragma once

#include "amslam/common.hpp"
#include "amslam/tasks.hpp"
#include "amslam/world.hpp"

namespace amslam {

struct GeneratorOptions {
  int grid_size = kGridSize;
  int min_room = 11;
  int max_room = 17;
  int min_large = 4;
  int max_large = 8;
  int min_obstacles = 2;
  int max_obstacles = 5;
  int min_small = 3;
  int max_small = 6;
  double duplicate_probability = 0.35;  // chance a small object repeats an earlier class
  int max_attempts = 50;
};

/// A rectangular room with wall-adjacent large objects (each with a clear
/// approach zone), free-standing obstacle blocks and small objects on or
/// in the large ones. Every object has at least one ground-truth waypoint.
/// Throws GenerationFailed when no valid scene is found within
/// `max_attempts`, and InvalidArgument for impossible option ranges.
Scene generate_scene(Rng& rng, const GeneratorOptions& options = {});

enum class TaskFamily : std::uint8_t { kPickPlace, kPickTwo };

/// A pick-and-place task (or its pick-two variant) over the scene's small
/// objects. Articulated sources and destinations get explicit open and
/// close subgoals. Subgoal fields hold the ground-truth parse.
Task generate_task(const Scene& scene, Rng& rng);

}  // namespace amslam
