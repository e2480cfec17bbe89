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

#include "amslam/waypoints.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace amslam {
namespace {

std::optional<Waypoint> map_waypoint(const SemanticMap& map, const NavGrid& navigable,
                                     LargeClass cls, const WaypointOptions& options) {
  try {
    return waypoint_large(map, navigable, cls, options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kClassNotOnMap || e.code() == ErrorCode::kNoWaypoint) {
      return std::nullopt;
    }
    throw;
  }
}

}  // namespace

std::string_view name(WaypointSource s) {
  switch (s) {
    case WaypointSource::kLargeMap: return "large_map";
    case WaypointSource::kSmallDetection: return "small_detection";
    case WaypointSource::kContainerFallback: return "container_fallback";
  }
  return "?";
}

std::string_view name(WaypointStrategy s) {
  switch (s) {
    case WaypointStrategy::kBoth: return "both";
    case WaypointStrategy::kMapOnly: return "map_only";
    case WaypointStrategy::kDetectionOnly: return "detection_only";
  }
  return "?";
}

WaypointStrategy waypoint_strategy_from_name(std::string_view text) {
  for (auto s : {WaypointStrategy::kBoth, WaypointStrategy::kMapOnly,
                 WaypointStrategy::kDetectionOnly}) {
    if (name(s) == text) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown waypoint strategy: " + std::string(text));
}

Cell backup_offsets(LargeClass cls, Rotation r) { return forward(r) * -backup_distance(cls); }

Cell backup_offsets(std::string_view class_name, Rotation r) {
  return forward(r) * -backup_distance(class_name);
}

Waypoint waypoint_large(const SemanticMap& map, const NavGrid& navigable, LargeClass cls,
                        const WaypointOptions& options) {
  const auto [peak, confidence] = map.channel_max(channel(cls));
  if (confidence < options.floor_confidence) {
    throw Error(ErrorCode::kClassNotOnMap, std::string(name(cls)) + " is not on the map");
  }

  std::optional<Cell> stand;
  int best_dist = std::numeric_limits<int>::max();
  for (int y = 0; y < navigable.height(); ++y) {
    for (int x = 0; x < navigable.width(); ++x) {
      const Cell c{x, y};
      if (!navigable[c]) continue;
      const Cell d = c - peak;
      const int dist = dot(d, d);
      if (dist < best_dist) {
        best_dist = dist;
        stand = c;
      }
    }
  }
  if (!stand) throw Error(ErrorCode::kNoWaypoint, "no navigable cell on the map");

  Rotation facing = Rotation::k0;
  double best_angle = std::numeric_limits<double>::infinity();
  int best_depth = std::numeric_limits<int>::max();
  for (Rotation r : kRotations) {
    const EgoOffset e = world_to_ego(*stand, r, peak);
    const double angle = std::atan2(std::abs(e.lateral), e.depth);
    if (angle < best_angle || (angle == best_angle && e.depth < best_depth)) {
      best_angle = angle;
      best_depth = e.depth;
      facing = r;
    }
  }

  Waypoint out{*stand, facing, std::nullopt, WaypointSource::kLargeMap};
  if (options.apply_backup) {
    for (int b = backup_distance(cls); b > 0; --b) {
      const Cell backed = *stand + forward(facing) * -b;
      if (navigable.get(backed, 0)) {
        out.cell = backed;
        break;
      }
    }
  }
  return out;
}

std::optional<Waypoint> waypoint_from_detections(const DetectionLog& log, const ObjectClass& cls,
                                                 double threshold) {
  const Detection* best = nullptr;
  for (const Detection& d : log) {
    if (d.cls != cls || d.confidence < threshold) continue;
    if (!best || d.mask_area > best->mask_area) best = &d;
  }
  if (!best) return std::nullopt;
  return Waypoint{best->pose.cell, best->pose.r, std::nullopt, WaypointSource::kSmallDetection};
}

std::optional<Waypoint> waypoint_small(const DetectionLog& log, SmallClass cls, double threshold) {
  return waypoint_from_detections(log, cls, threshold);
}

Waypoint resolve_target(const SemanticMap& map, const NavGrid& navigable, const DetectionLog& log,
                        const ObjectClass& target, std::optional<LargeClass> container,
                        const WaypointOptions& options) {
  const bool use_map = options.strategy != WaypointStrategy::kDetectionOnly;
  const bool use_log = options.strategy != WaypointStrategy::kMapOnly;
  std::optional<Waypoint> found;
  if (const auto* large = std::get_if<LargeClass>(&target)) {
    if (use_map) {
      found = map_waypoint(map, navigable, *large, options);
    } else {
      found = waypoint_from_detections(log, target, options.detection_threshold);
    }
  } else {
    if (use_log) found = waypoint_from_detections(log, target, options.detection_threshold);
    if (!found && use_map && container) {
      found = map_waypoint(map, navigable, *container, options);
      if (found) found->source = WaypointSource::kContainerFallback;
    }
  }
  if (!found) {
    throw Error(ErrorCode::kNoWaypoint, "no waypoint for " + std::string(name(target)));
  }
  return *found;
}

}  // namespace amslam
