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

// Interaction waypoints in the map frame: large objects from the semantic
// map, small objects from the exploration detection log, with a fallback
// to the container's waypoint.

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "amslam/classes.hpp"
#include "amslam/common.hpp"
#include "amslam/mapping.hpp"
#include "amslam/perception.hpp"

namespace amslam {

enum class WaypointSource : std::uint8_t { kLargeMap, kSmallDetection, kContainerFallback };

std::string_view name(WaypointSource s);

struct Waypoint {
  Cell cell;
  Rotation r = Rotation::k0;
  std::optional<Horizon> h;  // resolved on arrival
  WaypointSource source = WaypointSource::kLargeMap;

  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

/// Detections gathered during exploration, in observation order, with
/// poses expressed in the map frame.
using DetectionLog = std::vector<Detection>;

/// Displacement opposite the facing direction `r`, of the class back-up
/// distance (fridge 3; safe, cabinet, drawer 2; otherwise 1).
Cell backup_offsets(LargeClass cls, Rotation r);
Cell backup_offsets(std::string_view class_name, Rotation r);

enum class WaypointStrategy : std::uint8_t { kBoth, kMapOnly, kDetectionOnly };

std::string_view name(WaypointStrategy s);
WaypointStrategy waypoint_strategy_from_name(std::string_view text);

struct WaypointOptions {
  float floor_confidence = 0.5f;        // minimum channel maximum for a map waypoint
  double detection_threshold = 0.8;     // minimum detection confidence
  bool apply_backup = true;
  WaypointStrategy strategy = WaypointStrategy::kBoth;
};

/// Map waypoint of a large class: the most confident cell of its channel,
/// the nearest navigable cell to it (Euclidean, row-major ties), the
/// rotation that centers the object, then the class back-up, shortened
/// one cell at a time while the backed-up cell is not navigable.
/// Throws ClassNotOnMap below the floor confidence and NoWaypoint when the
/// grid has no navigable cell.
Waypoint waypoint_large(const SemanticMap& map, const NavGrid& navigable, LargeClass cls,
                        const WaypointOptions& options = {});

/// Pose of the largest-area detection of `cls` with confidence at least
/// `threshold`; earlier entries win ties.
std::optional<Waypoint> waypoint_from_detections(const DetectionLog& log, const ObjectClass& cls,
                                                 double threshold);

/// waypoint_from_detections for a small class.
std::optional<Waypoint> waypoint_small(const DetectionLog& log, SmallClass cls,
                                       double threshold = 0.8);

/// Chooses a waypoint for `target` under `options.strategy`. Small targets
/// fall back to the container's map waypoint when no detection qualifies.
/// Throws NoWaypoint when every allowed source fails.
Waypoint resolve_target(const SemanticMap& map, const NavGrid& navigable, const DetectionLog& log,
                        const ObjectClass& target, std::optional<LargeClass> container,
                        const WaypointOptions& options = {});

}  // namespace amslam
