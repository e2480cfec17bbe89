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

#include "amslam/perception.hpp"
#include "support.hpp"

using namespace amslam;
using namespace amslam::testing;

namespace {

Scene fridge_scene() {
  // Fridge footprint three cells ahead of an agent at (5,8) facing north.
  return carve(room_grid(12, {1, 1}, {10, 10}), {large(LargeClass::kFridge, {{5, 5}, {6, 5}})}, {},
               pose(5, 8));
}

}  // namespace

TEST_CASE("zero-noise partial map equals the brute-force window raster") {
  const Scene scene = fridge_scene();
  Rng rng(3);
  const Pose p = pose(5, 8);
  const PartialMap partial = observe_partial_map(scene, p, NoiseModel::zero(), rng);
  for (int d = 0; d < kWindowDepth; ++d) {
    for (int l = -kWindowHalfWidth; l <= kWindowHalfWidth; ++l) {
      const Cell c{p.cell.x + l, p.cell.y - d};
      const EgoOffset e{d, l};
      const bool inside = c.x >= 0 && c.y >= 0 && c.x < 12 && c.y < 12;
      CHECK(partial.valid(e) == inside);
      if (!inside) continue;
      const bool fridge = c == Cell{5, 5} || c == Cell{6, 5};
      CHECK(partial.value(e, channel(LargeClass::kFridge)) == (fridge ? 1.0f : 0.0f));
      CHECK(partial.value(e, kNavigableChannel) == (scene.is_navigable(c) ? 1.0f : 0.0f));
      for (int ch = 0; ch < kNumLargeClasses; ++ch) {
        if (ch != channel(LargeClass::kFridge)) CHECK(partial.value(e, ch) == 0.0f);
      }
    }
  }
}

TEST_CASE("agent at the grid edge facing outward sees an all-invalid window beyond bounds") {
  const Scene scene = carve(room_grid(12, {0, 0}, {11, 11}), {}, {}, pose(5, 0));
  const PartialMap partial = ground_truth_partial_map(scene, pose(5, 0));
  for (int l = -kWindowHalfWidth; l <= kWindowHalfWidth; ++l) {
    CHECK(partial.valid({0, l}));
    for (int d = 1; d < kWindowDepth; ++d) CHECK_FALSE(partial.valid({d, l}));
  }
}

TEST_CASE("noisy values stay in [0,1] and spurious ones below the navigable threshold") {
  const Scene scene = fridge_scene();
  Rng rng(5);
  NoiseModel noise;
  noise.p_false_positive = 0.5;
  for (int trial = 0; trial < 50; ++trial) {
    const Pose p{{uniform(rng, 1, 10), uniform(rng, 6, 10)}, random_rotation(rng), Horizon{}};
    const PartialMap truth = ground_truth_partial_map(scene, p);
    const PartialMap noisy = observe_partial_map(scene, p, noise, rng);
    for (int d = 0; d < kWindowDepth; ++d) {
      for (int l = -kWindowHalfWidth; l <= kWindowHalfWidth; ++l) {
        const EgoOffset e{d, l};
        CHECK(noisy.valid(e) == truth.valid(e));
        for (int ch = 0; ch < kNumChannels; ++ch) {
          const float v = noisy.value(e, ch);
          CHECK(v >= 0.0f);
          CHECK(v <= 1.0f);
          if (truth.value(e, ch) == 0.0f) CHECK(v <= 0.8f);
        }
      }
    }
  }
}

TEST_CASE("mask area shrinks with depth and lateral offset") {
  CHECK(mask_area({1, 0}) == doctest::Approx(900.0));
  CHECK(mask_area({5, 1}) == doctest::Approx(375.0));
  for (int d = 0; d + 1 < kWindowDepth; ++d) {
    for (int l = 0; l < kWindowHalfWidth; ++l) {
      CHECK(mask_area({d + 1, l}) < mask_area({d, l}));
      CHECK(mask_area({d, l + 1}) < mask_area({d, l}));
      CHECK(mask_area({d, -l}) == mask_area({d, l}));
    }
  }
}

TEST_CASE("a farther, off-center lettuce yields a strictly smaller detection") {
  const NavGrid grid = room_grid(12, {1, 1}, {10, 10});
  const Scene near = carve(grid, {}, {{SmallClass::kLettuce, {5, 6}, std::nullopt, HeightClass::kMid}},
                           pose(5, 8));
  const Scene far = carve(grid, {}, {{SmallClass::kLettuce, {6, 3}, std::nullopt, HeightClass::kMid}},
                          pose(5, 8));
  Rng rng(1);
  const auto a = detect_class(near, WorldState::initial(near), pose(5, 8), SmallClass::kLettuce,
                              NoiseModel::zero(), rng);
  const auto b = detect_class(far, WorldState::initial(far), pose(5, 8), SmallClass::kLettuce,
                              NoiseModel::zero(), rng);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->mask_area == doctest::Approx(mask_area({2, 0})));
  CHECK(b->mask_area == doctest::Approx(mask_area({5, 1})));
  CHECK(b->mask_area < a->mask_area);
  CHECK(a->confidence == 1.0);
}

TEST_CASE("objects outside the horizon band or inside closed containers are not detected") {
  const Scene scene = carve(room_grid(12, {1, 1}, {10, 10}), {large(LargeClass::kDrawer, {{5, 4}})},
                            {{SmallClass::kKeyChain, {5, 4}, 0, HeightClass::kMid},
                             {SmallClass::kApple, {4, 6}, std::nullopt, HeightClass::kFloor}},
                            pose(5, 8));
  Rng rng(2);
  WorldState world = WorldState::initial(scene);
  const Pose mid = pose(5, 8, 0, 30);
  CHECK_FALSE(detect_class(scene, world, mid, SmallClass::kKeyChain, NoiseModel::zero(), rng));
  CHECK_FALSE(detect_class(scene, world, mid, SmallClass::kApple, NoiseModel::zero(), rng));
  CHECK(detect_class(scene, world, pose(5, 8, 0, 60), SmallClass::kApple, NoiseModel::zero(), rng));
  world.large[0].open = true;
  CHECK(detect_class(scene, world, mid, SmallClass::kKeyChain, NoiseModel::zero(), rng));
  const auto small = detect_small_objects(scene, world, mid, NoiseModel::zero(), rng);
  REQUIRE(small.size() == 1);
  CHECK(small[0].cls == ObjectClass{SmallClass::kKeyChain});
}

TEST_CASE("detection keep rate follows decay to the power of depth") {
  const Scene scene = carve(room_grid(12, {1, 1}, {10, 10}), {},
                            {{SmallClass::kMug, {5, 4}, std::nullopt, HeightClass::kMid}}, pose(5, 8));
  NoiseModel noise = NoiseModel::zero();
  noise.detection_decay = 0.9;
  Rng rng(9);
  const int n = 20000;
  int kept = 0;
  for (int i = 0; i < n; ++i) {
    if (detect_class(scene, WorldState::initial(scene), pose(5, 8), SmallClass::kMug, noise, rng)) ++kept;
  }
  const double expected = 0.9 * 0.9 * 0.9 * 0.9;
  CHECK(static_cast<double>(kept) / n == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("noise model validation") {
  NoiseModel ok;
  CHECK_NOTHROW(ok.validate());
  NoiseModel bad;
  bad.p_false_negative = 1.5;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = NoiseModel{};
  bad.confidence_jitter = -0.1;
  CHECK_THROWS_AS(bad.validate(), Error);
}
