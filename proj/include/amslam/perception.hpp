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

// Observation oracle: egocentric partial maps and object detections,
// rasterized from ground truth and corrupted by a seeded noise model.

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "amslam/classes.hpp"
#include "amslam/common.hpp"
#include "amslam/world.hpp"

namespace amslam {

/// Egocentric window: rows 0..9 ahead (row 0 is the agent's row), columns
/// -3..3 left to right.
inline constexpr int kWindowDepth = 10;
inline constexpr int kWindowHalfWidth = 3;
inline constexpr int kWindowWidth = 2 * kWindowHalfWidth + 1;
inline constexpr int kWindowCells = kWindowDepth * kWindowWidth;

/// Area scale of a synthetic instance mask.
inline constexpr double kMaskAreaScale = 100.0;

struct NoiseModel {
  double p_false_negative = 0.10;
  double p_false_positive = 0.02;
  double confidence_jitter = 0.05;
  double detection_decay = 0.9;

  /// Perfect perception.
  static NoiseModel zero() { return {0.0, 0.0, 0.0, 1.0}; }
  /// Throws InvalidArgument when a probability leaves [0, 1].
  void validate() const;
};

class PartialMap {
 public:
  PartialMap();

  float value(EgoOffset e, int channel) const { return values_[offset(e, channel)]; }
  void set_value(EgoOffset e, int channel, float v) { values_[offset(e, channel)] = v; }
  bool valid(EgoOffset e) const { return valid_[cell_index(e)]; }
  void set_valid(EgoOffset e, bool v) { valid_[cell_index(e)] = v; }

  static bool in_window(EgoOffset e) {
    return e.depth >= 0 && e.depth < kWindowDepth && e.lateral >= -kWindowHalfWidth &&
           e.lateral <= kWindowHalfWidth;
  }

  friend bool operator==(const PartialMap&, const PartialMap&) = default;

 private:
  static std::size_t cell_index(EgoOffset e) {
    return static_cast<std::size_t>(e.depth * kWindowWidth + e.lateral + kWindowHalfWidth);
  }
  static std::size_t offset(EgoOffset e, int channel) {
    return cell_index(e) * kNumChannels + static_cast<std::size_t>(channel);
  }

  std::array<float, kWindowCells * kNumChannels> values_{};
  std::array<bool, kWindowCells> valid_{};
};

/// Noise-free rasterization of the window in front of `pose`.
PartialMap ground_truth_partial_map(const Scene& scene, const Pose& pose);

/// Ground-truth window with false negatives, false positives and
/// confidence jitter applied. Zero noise reproduces the ground truth.
PartialMap observe_partial_map(const Scene& scene, const Pose& pose, const NoiseModel& noise,
                               Rng& rng);

struct Detection {
  ObjectClass cls = SmallClass::kApple;
  double confidence = 1.0;
  double mask_area = 0.0;
  Pose pose;  // where the agent stood when the detection was made
};

/// Synthetic mask area for an object seen at `e`: proportional to
/// (10 - depth) and to the centering factor (4 - |lateral|) / 4.
double mask_area(EgoOffset e);

/// Detections of small and large objects visible from `pose`. An object is
/// visible when some cell of it sits at depth >= 1 inside the window and
/// the horizon lies in its height band; small objects that are held or
/// sit inside a closed articulated container are not visible.
std::vector<Detection> detect_objects(const Scene& scene, const WorldState& world,
                                      const Pose& pose, const NoiseModel& noise, Rng& rng);

/// detect_objects restricted to small-object classes.
std::vector<Detection> detect_small_objects(const Scene& scene, const WorldState& world,
                                            const Pose& pose, const NoiseModel& noise, Rng& rng);

/// Detection of the best-visible instance of `cls`, if any is visible.
std::optional<Detection> detect_class(const Scene& scene, const WorldState& world,
                                      const Pose& pose, const ObjectClass& cls,
                                      const NoiseModel& noise, Rng& rng);

}  // namespace amslam
