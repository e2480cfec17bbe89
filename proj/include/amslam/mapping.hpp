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

// Allocentric semantic map: egocentric partial maps are placed with exact
// 90-degree transforms and merged by elementwise max. Also tracks the
// explored-area memory used by exploration.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "amslam/classes.hpp"
#include "amslam/common.hpp"
#include "amslam/perception.hpp"

namespace amslam {

/// Thresholds of the navigable post-processing rule.
inline constexpr float kNavigableConfidence = 0.95f;
inline constexpr float kNeighborConfidence = 0.5f;
inline constexpr int kMinNavigableNeighbors = 3;

/// Explored rectangle: rows 0..4 ahead, lateral -1..1.
inline constexpr int kExploredDepth = 5;
inline constexpr int kExploredHalfWidth = 1;

/// Relates scene coordinates to the allocentric map frame. The agent's
/// start pose sits at the map center facing north.
class MapFrame {
 public:
  MapFrame() = default;
  explicit MapFrame(const Pose& scene_start, int grid_size = kGridSize);

  Cell center() const { return {grid_size_ / 2, grid_size_ / 2}; }
  int grid_size() const { return grid_size_; }

  Cell to_map(Cell scene_cell) const;
  Cell to_scene(Cell map_cell) const;
  Rotation to_map(Rotation scene_r) const;
  Rotation to_scene(Rotation map_r) const;
  Pose to_map(const Pose& scene_pose) const;
  Pose to_scene(const Pose& map_pose) const;

 private:
  Cell origin_;
  Rotation origin_r_ = Rotation::k0;
  int grid_size_ = kGridSize;
};

/// G x G x (N_large + 1) confidence grid.
class SemanticMap {
 public:
  explicit SemanticMap(int grid_size = kGridSize);

  int grid_size() const { return grid_size_; }
  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < grid_size_ && c.y < grid_size_;
  }

  float value(Cell c, int channel) const { return data_[offset(c, channel)]; }
  void set_value(Cell c, int channel, float v) { data_[offset(c, channel)] = v; }
  /// Raises a cell to `v` if `v` is larger.
  void raise(Cell c, int channel, float v);

  /// Largest value in a channel and the first cell (row-major) holding it.
  std::pair<Cell, float> channel_max(int channel) const;

  const std::vector<float>& data() const { return data_; }

  friend bool operator==(const SemanticMap&, const SemanticMap&) = default;

 private:
  std::size_t offset(Cell c, int channel) const {
    return (static_cast<std::size_t>(c.y) * static_cast<std::size_t>(grid_size_) +
            static_cast<std::size_t>(c.x)) *
               kNumChannels +
           static_cast<std::size_t>(channel);
  }

  int grid_size_;
  std::vector<float> data_;
};

struct LayerCell {
  Cell cell;
  std::array<float, kNumChannels> values{};
};

/// Allocentric placement of one partial map: only in-bounds, valid cells.
using SparseLayer = std::vector<LayerCell>;

/// Places each valid window cell at its allocentric cell for `map_pose`.
/// Cells landing off the grid are dropped.
SparseLayer transform_partial(const PartialMap& partial, const Pose& map_pose,
                              int grid_size = kGridSize);

/// Max-pools one layer into `map`.
void accumulate(SemanticMap& map, const SparseLayer& layer);

/// Elementwise maximum of all layers over an all-zero map.
SemanticMap aggregate(std::span<const SparseLayer> layers, int grid_size = kGridSize);

/// Navigable cells after post-processing: confidence > 0.95 and at least 3
/// in-bounds 4-neighbors with confidence >= 0.5.
NavGrid postprocess_navigable(const SemanticMap& map);

/// Allocentric set of cells the agent has looked at.
class ExploredArea {
 public:
  explicit ExploredArea(int grid_size = kGridSize);

  /// Marks the explored rectangle in front of `map_pose`.
  void mark(const Pose& map_pose);

  bool explored(Cell c) const { return cells_.get(c, 0) != 0; }
  std::size_t size() const { return count_; }
  int grid_size() const { return cells_.width(); }
  const NavGrid& cells() const { return cells_; }

  friend bool operator==(const ExploredArea&, const ExploredArea&) = default;

 private:
  NavGrid cells_;
  std::size_t count_ = 0;
};

ExploredArea update_explored_area(ExploredArea explored, const Pose& map_pose);

/// Agent-centered, heading-up rendering: 1 for explored cells, 0 elsewhere
/// and 2 at the center.
Grid<std::uint8_t> render_explored(const ExploredArea& explored, const Pose& agent_map_pose);

}  // namespace amslam
