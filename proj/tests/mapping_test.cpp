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

#include <set>

#include "amslam/mapping.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace amslam;
using namespace amslam::testing;

namespace {

PartialMap random_partial(Rng& rng) {
  PartialMap p;
  std::uniform_real_distribution<float> value(0.0f, 1.0f);
  for (int d = 0; d < kWindowDepth; ++d) {
    for (int l = -kWindowHalfWidth; l <= kWindowHalfWidth; ++l) {
      const EgoOffset e{d, l};
      p.set_valid(e, coin(rng, 0.9));
      for (int ch = 0; ch < kNumChannels; ++ch) {
        if (coin(rng, 0.3)) p.set_value(e, ch, value(rng));
      }
    }
  }
  return p;
}

SemanticMap random_confidence_map(Rng& rng, int g) {
  SemanticMap m(g);
  static constexpr float kLevels[] = {0.0f, 0.3f, 0.5f, 0.6f, 0.95f, 0.96f, 1.0f};
  for (int y = 0; y < g; ++y) {
    for (int x = 0; x < g; ++x) m.set_value({x, y}, kNavigableChannel, kLevels[uniform(rng, 0, 6)]);
  }
  return m;
}

}  // namespace

TEST_CASE("map frame puts the start at the center facing north") {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Pose start{random_cell(rng, 37), random_rotation(rng), Horizon{}};
    const MapFrame frame(start);
    CHECK(frame.to_map(start).cell == frame.center());
    CHECK(frame.to_map(start).r == Rotation::k0);
    const Pose p{random_cell(rng, 37), random_rotation(rng), Horizon::from_degrees(45)};
    CHECK(frame.to_map(p) == map_pose_oracle(start, p, 37));
    CHECK(frame.to_scene(frame.to_map(p)) == p);
  }
}

TEST_CASE("transform matches a per-cell brute force for every heading") {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const PartialMap partial = random_partial(rng);
    const Pose p{random_cell(rng, 37), random_rotation(rng), Horizon{}};
    SemanticMap incremental(37);
    accumulate(incremental, transform_partial(partial, p));
    CHECK(incremental == rasterize_oracle({p}, {partial}, 37));
  }
}

TEST_CASE("opposite headings give point-reflected layers") {
  Rng rng(8);
  const PartialMap partial = random_partial(rng);
  const Cell agent{18, 18};
  for (Rotation r : kRotations) {
    const auto a = transform_partial(partial, {agent, r, Horizon{}});
    const auto b = transform_partial(partial, {agent, turn_around(r), Horizon{}});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(b[i].cell == agent * 2 - a[i].cell);
      CHECK(b[i].values == a[i].values);
    }
  }
}

TEST_CASE("cells beyond the grid are clipped silently") {
  PartialMap partial;
  for (int d = 0; d < kWindowDepth; ++d) {
    for (int l = -kWindowHalfWidth; l <= kWindowHalfWidth; ++l) partial.set_valid({d, l}, true);
  }
  const auto layer = transform_partial(partial, {{1, 1}, Rotation::k0, Horizon{}}, 37);
  CHECK(layer.size() == 2 * 5);
  for (const auto& lc : layer) {
    CHECK(lc.cell.x >= 0);
    CHECK(lc.cell.y >= 0);
  }
}

TEST_CASE("aggregation is an order-independent maximum") {
  Rng rng(10);
  std::vector<SparseLayer> layers;
  for (int k = 0; k < 8; ++k) {
    layers.push_back(transform_partial(random_partial(rng), {random_cell(rng, 37), random_rotation(rng), Horizon{}}));
  }
  const SemanticMap forward_order = aggregate(layers);
  std::reverse(layers.begin(), layers.end());
  CHECK(aggregate(layers) == forward_order);
  SemanticMap twice = forward_order;
  for (const auto& l : layers) accumulate(twice, l);
  CHECK(twice == forward_order);
}

TEST_CASE("uniform confident interior is navigable except weakly supported borders") {
  SemanticMap m(9);
  for (int y = 2; y <= 6; ++y) {
    for (int x = 2; x <= 6; ++x) m.set_value({x, y}, kNavigableChannel, 1.0f);
  }
  const NavGrid nav = postprocess_navigable(m);
  for (int y = 0; y < 9; ++y) {
    for (int x = 0; x < 9; ++x) {
      const bool inside = x >= 2 && x <= 6 && y >= 2 && y <= 6;
      const bool corner = (x == 2 || x == 6) && (y == 2 || y == 6);
      CHECK(static_cast<bool>(nav[{x, y}]) == (inside && !corner));
    }
  }
  // Along the grid border only three neighbors exist.
  SemanticMap full(5);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x) full.set_value({x, y}, kNavigableChannel, 1.0f);
  }
  const NavGrid edge = postprocess_navigable(full);
  CHECK(edge[{2, 0}] == 1);
  CHECK(edge[{0, 0}] == 0);
  CHECK(edge[{2, 2}] == 1);
}

TEST_CASE("navigable post-processing matches the literal rule on random grids") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const SemanticMap m = random_confidence_map(rng, uniform(rng, 3, 20));
    CHECK(postprocess_navigable(m) == navigable_oracle(m));
  }
}

TEST_CASE("explored area marks a 5 x 3 rectangle ahead of the agent") {
  ExploredArea area(37);
  area.mark({{18, 18}, Rotation::k0, Horizon{}});
  CHECK(area.size() == 15);
  for (int d = 0; d < 5; ++d) {
    for (int l = -1; l <= 1; ++l) CHECK(area.explored({18 + l, 18 - d}));
  }
  CHECK_FALSE(area.explored({18, 13}));
  CHECK_FALSE(area.explored({20, 18}));
}

TEST_CASE("four headings at one cell explore a plus shape") {
  ExploredArea area(37);
  for (Rotation r : kRotations) area = update_explored_area(area, {{18, 18}, r, Horizon{}});
  std::set<Cell> expected;
  for (Rotation r : kRotations) {
    for (int d = 0; d < 5; ++d) {
      for (int l = -1; l <= 1; ++l) expected.insert(ego_to_world({18, 18}, r, {d, l}));
    }
  }
  CHECK(area.size() == expected.size());
  for (Cell c : expected) CHECK(area.explored(c));
  const auto rendered = render_explored(area, {{18, 18}, Rotation::k90, Horizon{}});
  CHECK(std::count(rendered.data().begin(), rendered.data().end(), std::uint8_t{2}) == 1);
  CHECK(rendered[{18, 18}] == 2);
}

TEST_CASE("explored render is agent-centered with the heading up") {
  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const Pose p{{uniform(rng, 5, 31), uniform(rng, 5, 31)}, random_rotation(rng), Horizon{}};
    ExploredArea area(37);
    area.mark(p);
    const auto img = render_explored(area, p);
    // Cell two ahead shows two rows above the center; one to the right shows right.
    CHECK(img[{18, 16}] == 1);
    CHECK(img[{19, 16}] == 1);
    CHECK(img[{18, 20}] == 0);
    CHECK(img[{18, 18}] == 2);
  }
}

TEST_CASE("incremental mapping equals one-shot rasterization along random walks") {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const NavGrid grid = room_grid(37, {4, 4}, {32, 32});
    const Pose start{{uniform(rng, 6, 30), uniform(rng, 6, 30)}, random_rotation(rng), Horizon{}};
    const Scene scene = carve(grid, {}, {}, start);
    const MapFrame frame(start);
    AgentState agent;
    agent.pose = start;
    std::vector<Pose> poses;
    std::vector<PartialMap> partials;
    SemanticMap incremental(37);
    for (NavAction a : random_moves(rng, 60)) {
      agent = step(scene, agent, a, Budget{1000, 1000}).first;
      const PartialMap partial = observe_partial_map(scene, agent.pose, NoiseModel{}, rng);
      const Pose mp = frame.to_map(agent.pose);
      accumulate(incremental, transform_partial(partial, mp));
      poses.push_back(mp);
      partials.push_back(partial);
    }
    CHECK(incremental == rasterize_oracle(poses, partials, 37));
  }
}
