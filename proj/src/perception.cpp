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

#include "amslam/perception.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

namespace amslam {
namespace {

// Spurious map values never exceed this, so they cannot pass the
// navigable threshold on their own.
constexpr double kSpuriousCeiling = 0.8;

bool chance(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return std::bernoulli_distribution(p)(rng);
}

double gaussian(Rng& rng, double stddev) {
  if (stddev <= 0.0) return 0.0;
  return std::normal_distribution<double>(0.0, stddev)(rng);
}

float clamp01(double v) { return static_cast<float>(std::clamp(v, 0.0, 1.0)); }

struct Sighting {
  EgoOffset where;
  double area = 0.0;
};

// Best-visible cell among `cells`, ignoring the agent's own row.
std::optional<Sighting> best_sighting(const Pose& pose, const std::vector<Cell>& cells) {
  std::optional<Sighting> best;
  for (const Cell& c : cells) {
    const EgoOffset e = world_to_ego(pose.cell, pose.r, c);
    if (e.depth < 1 || !PartialMap::in_window(e)) continue;
    const double area = mask_area(e);
    if (!best || area > best->area) best = Sighting{e, area};
  }
  return best;
}

struct Candidate {
  ObjectClass cls;
  Sighting sighting;
};

std::vector<Candidate> visible_objects(const Scene& scene, const WorldState& world,
                                       const Pose& pose) {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < scene.small_objects().size(); ++i) {
    const auto& st = world.small[i];
    if (st.held || !in_band(st.height, pose.h)) continue;
    if (st.container) {
      const auto& box = scene.large_objects()[*st.container];
      if (box.articulated && !world.large[*st.container].open) continue;
    }
    if (auto s = best_sighting(pose, {st.cell})) out.push_back({scene.small_objects()[i].cls, *s});
  }
  for (const auto& obj : scene.large_objects()) {
    if (!in_band(obj.height, pose.h)) continue;
    if (auto s = best_sighting(pose, obj.footprint)) out.push_back({obj.cls, *s});
  }
  return out;
}

std::optional<Detection> corrupt(const Candidate& c, const Pose& pose, const NoiseModel& noise,
                                 Rng& rng) {
  const int depth = c.sighting.where.depth;
  const double keep = std::pow(noise.detection_decay, depth);
  if (!chance(rng, keep)) return std::nullopt;
  const double jitter = std::abs(gaussian(rng, noise.confidence_jitter)) * (1.0 + depth);
  return Detection{c.cls, std::clamp(1.0 - jitter, 0.0, 1.0), c.sighting.area, pose};
}

}  // namespace

void NoiseModel::validate() const {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(p_false_negative) || !prob(p_false_positive) || !prob(detection_decay)) {
    throw Error(ErrorCode::kInvalidArgument, "noise probabilities must lie in [0, 1]");
  }
  if (!(confidence_jitter >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "confidence jitter must be non-negative");
  }
}

PartialMap::PartialMap() = default;

PartialMap ground_truth_partial_map(const Scene& scene, const Pose& pose) {
  PartialMap out;
  for (int d = 0; d < kWindowDepth; ++d) {
    for (int l = -kWindowHalfWidth; l <= kWindowHalfWidth; ++l) {
      const EgoOffset e{d, l};
      const Cell c = ego_to_world(pose.cell, pose.r, e);
      if (!scene.navigable().in_bounds(c)) continue;
      out.set_valid(e, true);
      if (scene.is_navigable(c)) out.set_value(e, kNavigableChannel, 1.0f);
      if (auto owner = scene.large_at(c)) {
        out.set_value(e, channel(scene.large_objects()[*owner].cls), 1.0f);
      }
    }
  }
  return out;
}

PartialMap observe_partial_map(const Scene& scene, const Pose& pose, const NoiseModel& noise,
                               Rng& rng) {
  PartialMap out = ground_truth_partial_map(scene, pose);
  for (int d = 0; d < kWindowDepth; ++d) {
    for (int l = -kWindowHalfWidth; l <= kWindowHalfWidth; ++l) {
      const EgoOffset e{d, l};
      if (!out.valid(e)) continue;
      for (int ch = 0; ch < kNumChannels; ++ch) {
        if (out.value(e, ch) > 0.0f) {
          if (chance(rng, noise.p_false_negative)) {
            out.set_value(e, ch, 0.0f);
          } else {
            out.set_value(e, ch, clamp01(1.0 + gaussian(rng, noise.confidence_jitter)));
          }
        } else if (chance(rng, noise.p_false_positive)) {
          const double v = std::uniform_real_distribution<double>(0.0, kSpuriousCeiling)(rng);
          out.set_value(e, ch, clamp01(v));
        }
      }
    }
  }
  return out;
}

double mask_area(EgoOffset e) {
  const double depth_term = static_cast<double>(kWindowDepth - e.depth);
  const double centering =
      static_cast<double>(kWindowHalfWidth + 1 - std::abs(e.lateral)) / (kWindowHalfWidth + 1);
  return kMaskAreaScale * depth_term * centering;
}

std::vector<Detection> detect_objects(const Scene& scene, const WorldState& world,
                                      const Pose& pose, const NoiseModel& noise, Rng& rng) {
  std::vector<Detection> out;
  for (const Candidate& c : visible_objects(scene, world, pose)) {
    if (auto d = corrupt(c, pose, noise, rng)) out.push_back(*d);
  }
  return out;
}

std::vector<Detection> detect_small_objects(const Scene& scene, const WorldState& world,
                                            const Pose& pose, const NoiseModel& noise, Rng& rng) {
  auto all = detect_objects(scene, world, pose, noise, rng);
  std::erase_if(all, [](const Detection& d) { return is_large(d.cls); });
  return all;
}

std::optional<Detection> detect_class(const Scene& scene, const WorldState& world,
                                      const Pose& pose, const ObjectClass& cls,
                                      const NoiseModel& noise, Rng& rng) {
  std::optional<Candidate> best;
  for (const Candidate& c : visible_objects(scene, world, pose)) {
    if (c.cls != cls) continue;
    if (!best || c.sighting.area > best->sighting.area) best = c;
  }
  if (!best) return std::nullopt;
  return corrupt(*best, pose, noise, rng);
}

}  // namespace amslam
