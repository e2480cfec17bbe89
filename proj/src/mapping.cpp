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

#include "amslam/mapping.hpp"

#include <algorithm>

namespace amslam {

MapFrame::MapFrame(const Pose& scene_start, int grid_size)
    : origin_(scene_start.cell), origin_r_(scene_start.r), grid_size_(grid_size) {}

Cell MapFrame::to_map(Cell scene_cell) const {
  // The start heading becomes map north: ego (depth, lateral) -> (lateral, -depth).
  const EgoOffset e = world_to_ego(origin_, origin_r_, scene_cell);
  return center() + Cell{e.lateral, -e.depth};
}

Cell MapFrame::to_scene(Cell map_cell) const {
  const Cell v = map_cell - center();
  return ego_to_world(origin_, origin_r_, {-v.y, v.x});
}

Rotation MapFrame::to_map(Rotation scene_r) const {
  return static_cast<Rotation>((static_cast<int>(scene_r) - static_cast<int>(origin_r_) + 4) % 4);
}

Rotation MapFrame::to_scene(Rotation map_r) const {
  return static_cast<Rotation>((static_cast<int>(map_r) + static_cast<int>(origin_r_)) % 4);
}

Pose MapFrame::to_map(const Pose& scene_pose) const {
  return {to_map(scene_pose.cell), to_map(scene_pose.r), scene_pose.h};
}

Pose MapFrame::to_scene(const Pose& map_pose) const {
  return {to_scene(map_pose.cell), to_scene(map_pose.r), map_pose.h};
}

SemanticMap::SemanticMap(int grid_size)
    : grid_size_(grid_size),
      data_(static_cast<std::size_t>(grid_size) * static_cast<std::size_t>(grid_size) *
                kNumChannels,
            0.0f) {}

void SemanticMap::raise(Cell c, int channel, float v) {
  float& slot = data_[offset(c, channel)];
  slot = std::max(slot, v);
}

std::pair<Cell, float> SemanticMap::channel_max(int channel) const {
  Cell best{0, 0};
  float best_value = -1.0f;
  for (int y = 0; y < grid_size_; ++y) {
    for (int x = 0; x < grid_size_; ++x) {
      const float v = value({x, y}, channel);
      if (v > best_value) {
        best_value = v;
        best = {x, y};
      }
    }
  }
  return {best, best_value};
}

SparseLayer transform_partial(const PartialMap& partial, const Pose& map_pose, int grid_size) {
  SparseLayer layer;
  layer.reserve(kWindowCells);
  for (int d = 0; d < kWindowDepth; ++d) {
    for (int l = -kWindowHalfWidth; l <= kWindowHalfWidth; ++l) {
      const EgoOffset e{d, l};
      if (!partial.valid(e)) continue;
      const Cell c = ego_to_world(map_pose.cell, map_pose.r, e);
      if (c.x < 0 || c.y < 0 || c.x >= grid_size || c.y >= grid_size) continue;
      LayerCell lc;
      lc.cell = c;
      for (int ch = 0; ch < kNumChannels; ++ch) lc.values[static_cast<std::size_t>(ch)] = partial.value(e, ch);
      layer.push_back(lc);
    }
  }
  return layer;
}

void accumulate(SemanticMap& map, const SparseLayer& layer) {
  for (const LayerCell& lc : layer) {
    if (!map.in_bounds(lc.cell)) continue;
    for (int ch = 0; ch < kNumChannels; ++ch) map.raise(lc.cell, ch, lc.values[static_cast<std::size_t>(ch)]);
  }
}

SemanticMap aggregate(std::span<const SparseLayer> layers, int grid_size) {
  SemanticMap map(grid_size);
  for (const auto& layer : layers) accumulate(map, layer);
  return map;
}

NavGrid postprocess_navigable(const SemanticMap& map) {
  const int g = map.grid_size();
  NavGrid out(g, g, 0);
  for (int y = 0; y < g; ++y) {
    for (int x = 0; x < g; ++x) {
      const Cell c{x, y};
      if (!(map.value(c, kNavigableChannel) > kNavigableConfidence)) continue;
      int support = 0;
      for (Rotation r : kRotations) {
        const Cell n = c + forward(r);
        if (map.in_bounds(n) && map.value(n, kNavigableChannel) >= kNeighborConfidence) ++support;
      }
      if (support >= kMinNavigableNeighbors) out[c] = 1;
    }
  }
  return out;
}

ExploredArea::ExploredArea(int grid_size) : cells_(grid_size, grid_size, 0) {}

void ExploredArea::mark(const Pose& map_pose) {
  for (int d = 0; d < kExploredDepth; ++d) {
    for (int l = -kExploredHalfWidth; l <= kExploredHalfWidth; ++l) {
      const Cell c = ego_to_world(map_pose.cell, map_pose.r, {d, l});
      if (!cells_.in_bounds(c) || cells_[c]) continue;
      cells_[c] = 1;
      ++count_;
    }
  }
}

ExploredArea update_explored_area(ExploredArea explored, const Pose& map_pose) {
  explored.mark(map_pose);
  return explored;
}

Grid<std::uint8_t> render_explored(const ExploredArea& explored, const Pose& agent_map_pose) {
  const int g = explored.grid_size();
  const Cell center{g / 2, g / 2};
  Grid<std::uint8_t> out(g, g, 0);
  for (int y = 0; y < g; ++y) {
    for (int x = 0; x < g; ++x) {
      const EgoOffset e{center.y - y, x - center.x};
      const Cell world = ego_to_world(agent_map_pose.cell, agent_map_pose.r, e);
      if (explored.explored(world)) out[{x, y}] = 1;
    }
  }
  out[center] = 2;
  return out;
}

}  // namespace amslam
