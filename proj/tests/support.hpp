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

// Hand-built scenes and seeded random generators shared by the tests.

#pragma once

#include <cstdint>
#include <vector>

#include "amslam/classes.hpp"
#include "amslam/common.hpp"
#include "amslam/world.hpp"

namespace amslam::testing {

/// A g x g grid whose cells in [lo, hi] (inclusive) are navigable.
inline NavGrid room_grid(int g, Cell lo, Cell hi) {
  NavGrid grid(g, g, 0);
  for (int y = lo.y; y <= hi.y; ++y) {
    for (int x = lo.x; x <= hi.x; ++x) grid[{x, y}] = 1;
  }
  return grid;
}

inline LargeObject large(LargeClass cls, std::vector<Cell> footprint) {
  return {cls, std::move(footprint), is_articulated(cls), default_height(cls)};
}

/// Scene over `grid` with footprints carved out of the navigable area.
inline Scene carve(NavGrid grid, std::vector<LargeObject> objects, std::vector<SmallObject> small,
                   Pose start) {
  for (const auto& o : objects) {
    for (Cell c : o.footprint) grid[c] = 0;
  }
  return Scene(std::move(grid), std::move(objects), std::move(small), start);
}

inline Pose pose(int x, int y, int deg = 0, int h = 30) {
  return {{x, y}, rotation_from_degrees(deg), Horizon::from_degrees(h)};
}

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Random occupancy grid with cells navigable with probability `density`.
inline NavGrid random_grid(Rng& rng, int g, double density) {
  NavGrid grid(g, g, 0);
  for (auto& v : grid.data()) v = coin(rng, density) ? 1 : 0;
  return grid;
}

inline Cell random_cell(Rng& rng, int g) { return {uniform(rng, 0, g - 1), uniform(rng, 0, g - 1)}; }

inline Rotation random_rotation(Rng& rng) { return kRotations[static_cast<std::size_t>(uniform(rng, 0, 3))]; }

/// Random sequence of MoveAhead / RotateLeft / RotateRight.
inline std::vector<NavAction> random_moves(Rng& rng, int n) {
  static constexpr NavAction kChoices[] = {NavAction::kMoveAhead, NavAction::kRotateLeft,
                                           NavAction::kRotateRight};
  std::vector<NavAction> out;
  for (int i = 0; i < n; ++i) out.push_back(kChoices[uniform(rng, 0, 2)]);
  return out;
}

}  // namespace amslam::testing
