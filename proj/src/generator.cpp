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

#include "amslam/generator.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace amslam {
namespace {

constexpr int kPlacementTries = 100;
constexpr int kObstacleGap = 2;
constexpr int kMaxFootprintWidth = 3;
constexpr int kMaxObstacleSide = 2;
constexpr double kPickTwoProbability = 0.5;

enum Mark : std::uint8_t { kFree, kFootprint, kClearance, kObstacle };

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1))];
}

// Thrown inside one attempt; the caller starts over.
struct Retry {};

struct Room {
  Cell origin;
  int width = 0;
  int height = 0;
  bool contains(Cell c) const {
    return c.x >= origin.x && c.y >= origin.y && c.x < origin.x + width && c.y < origin.y + height;
  }
};

class Builder {
 public:
  Builder(Rng& rng, const GeneratorOptions& o) : rng_(rng), o_(o), marks_(o.grid_size, o.grid_size, kFree) {}

  Scene build() {
    room_.width = uniform(rng_, o_.min_room, o_.max_room);
    room_.height = uniform(rng_, o_.min_room, o_.max_room);
    room_.origin = {uniform(rng_, 1, o_.grid_size - 1 - room_.width),
                    uniform(rng_, 1, o_.grid_size - 1 - room_.height)};

    std::vector<int> classes(kNumLargeClasses);
    std::iota(classes.begin(), classes.end(), 0);
    std::shuffle(classes.begin(), classes.end(), rng_);
    const int n_large = uniform(rng_, o_.min_large, o_.max_large);
    if (n_large < 1) throw Retry{};
    for (int i = 0; i < n_large; ++i) place_large(large_class_at(classes[static_cast<std::size_t>(i)]));

    const int n_obstacles = uniform(rng_, o_.min_obstacles, o_.max_obstacles);
    for (int i = 0; i < n_obstacles; ++i) place_obstacle();

    NavGrid nav(o_.grid_size, o_.grid_size, 0);
    for (int y = 0; y < o_.grid_size; ++y) {
      for (int x = 0; x < o_.grid_size; ++x) {
        const Cell c{x, y};
        if (room_.contains(c) && marks_[c] != kFootprint && marks_[c] != kObstacle) nav[c] = 1;
      }
    }

    const int n_small = uniform(rng_, o_.min_small, o_.max_small);
    std::vector<SmallObject> small;
    for (int i = 0; i < n_small; ++i) {
      SmallObject s;
      if (!small.empty() && std::bernoulli_distribution(o_.duplicate_probability)(rng_)) {
        s.cls = pick(rng_, small).cls;
      } else {
        s.cls = small_class_at(uniform(rng_, 0, kNumSmallClasses - 1));
      }
      const auto container = static_cast<std::size_t>(uniform(rng_, 0, static_cast<int>(large_.size()) - 1));
      s.container = container;
      s.cell = pick(rng_, large_[container].footprint);
      s.height = large_[container].height;
      small.push_back(s);
    }

    std::vector<Cell> open;
    for (int y = 0; y < o_.grid_size; ++y) {
      for (int x = 0; x < o_.grid_size; ++x) {
        if (nav[{x, y}]) open.push_back({x, y});
      }
    }
    if (open.empty()) throw Retry{};
    const Pose start{pick(rng_, open), kRotations[static_cast<std::size_t>(uniform(rng_, 0, 3))],
                     Horizon()};
    return Scene(std::move(nav), std::move(large_), std::move(small), start);
  }

 private:
  bool free_for_footprint(Cell c) const { return room_.contains(c) && marks_[c] == kFree; }

  void place_large(LargeClass cls) {
    const bool articulated = is_articulated(cls);
    const int reach = backup_distance(cls) + 2;
    for (int attempt = 0; attempt < kPlacementTries; ++attempt) {
      // The footprint backs onto a wall; `inward` points into the room.
      const Rotation inward = kRotations[static_cast<std::size_t>(uniform(rng_, 0, 3))];
      const Cell along = rightward(inward);
      const int width = articulated ? 1 : uniform(rng_, 1, kMaxFootprintWidth);
      std::vector<Cell> edge;
      for (int y = room_.origin.y; y < room_.origin.y + room_.height; ++y) {
        for (int x = room_.origin.x; x < room_.origin.x + room_.width; ++x) {
          if (!room_.contains(Cell{x, y} - forward(inward))) edge.push_back({x, y});
        }
      }
      std::sort(edge.begin(), edge.end(), [&](Cell a, Cell b) { return dot(a, along) < dot(b, along); });
      if (width > static_cast<int>(edge.size())) continue;
      const Cell first = edge[static_cast<std::size_t>(uniform(rng_, 0, static_cast<int>(edge.size()) - width))];
      std::vector<Cell> footprint;
      for (int k = 0; k < width; ++k) footprint.push_back(first + along * k);

      bool ok = std::all_of(footprint.begin(), footprint.end(), [&](Cell c) { return free_for_footprint(c); });
      std::vector<Cell> clearance;
      for (int depth = 0; ok && depth <= reach; ++depth) {
        for (int lat = -1; lat <= width; ++lat) {
          if (depth == 0 && lat >= 0 && lat < width) continue;
          const Cell c = first + along * lat + forward(inward) * depth;
          if (!room_.contains(c)) {
            if (depth > 0 && lat >= 0 && lat < width) ok = false;
            continue;
          }
          if (marks_[c] == kFootprint || marks_[c] == kObstacle) ok = false;
          clearance.push_back(c);
        }
      }
      if (!ok) continue;
      for (const Cell& c : footprint) marks_[c] = kFootprint;
      for (const Cell& c : clearance) marks_[c] = kClearance;
      large_.push_back({cls, footprint, articulated, default_height(cls)});
      return;
    }
    throw Retry{};
  }

  void place_obstacle() {
    for (int attempt = 0; attempt < kPlacementTries; ++attempt) {
      const int w = uniform(rng_, 1, kMaxObstacleSide);
      const int h = uniform(rng_, 1, kMaxObstacleSide);
      const Cell corner{uniform(rng_, room_.origin.x, room_.origin.x + room_.width - w),
                        uniform(rng_, room_.origin.y, room_.origin.y + room_.height - h)};
      bool ok = true;
      for (int dy = -kObstacleGap; ok && dy < h + kObstacleGap; ++dy) {
        for (int dx = -kObstacleGap; ok && dx < w + kObstacleGap; ++dx) {
          const Cell c = corner + Cell{dx, dy};
          ok = room_.contains(c) && marks_[c] == kFree;
        }
      }
      if (!ok) continue;
      for (int dy = 0; dy < h; ++dy) {
        for (int dx = 0; dx < w; ++dx) marks_[corner + Cell{dx, dy}] = kObstacle;
      }
      return;
    }
    throw Retry{};
  }

  Rng& rng_;
  const GeneratorOptions& o_;
  Grid<std::uint8_t> marks_;
  Room room_;
  std::vector<LargeObject> large_;
};

void check_options(const GeneratorOptions& o) {
  auto range = [](int lo, int hi) { return lo >= 0 && lo <= hi; };
  if (!range(o.min_room, o.max_room) || !range(o.min_large, o.max_large) ||
      !range(o.min_obstacles, o.max_obstacles) || !range(o.min_small, o.max_small) ||
      o.max_attempts < 1) {
    throw Error(ErrorCode::kInvalidArgument, "generator option ranges are inverted or negative");
  }
  if (o.min_room < 3 || o.max_room > o.grid_size / 2) {
    throw Error(ErrorCode::kInvalidArgument, "room side must lie in [3, grid_size / 2]");
  }
}

bool all_reachable(const Scene& scene) {
  for (std::size_t i = 0; i < scene.large_objects().size(); ++i) {
    if (gt_waypoints(scene, ObjectRef::large(i)).empty()) return false;
  }
  for (std::size_t i = 0; i < scene.small_objects().size(); ++i) {
    if (gt_waypoints(scene, ObjectRef::small(i)).empty()) return false;
  }
  return true;
}

struct Item {
  SmallClass cls;
  LargeClass source;
};

NavigationPhrase random_phrase(Rng& rng) {
  return static_cast<NavigationPhrase>(uniform(rng, 0, kNumNavigationPhrases - 1));
}

void add_nav(Task& task, Rng& rng, const ObjectClass& noun, const ObjectClass& target,
             std::optional<LargeClass> container) {
  Subgoal s;
  s.instruction = render_navigation(random_phrase(rng), noun);
  s.kind = SubgoalKind::kNavigation;
  s.target = target;
  s.container = container;
  task.subgoals.push_back(s);
}

void add_interaction(Task& task, InteractionKind kind, const ObjectClass& object,
                     std::optional<LargeClass> receptacle) {
  Subgoal s;
  s.instruction = render_interaction(kind, object, receptacle);
  s.kind = SubgoalKind::kInteraction;
  s.interaction = kind;
  s.target = object;
  if (kind == InteractionKind::kPut) s.container = receptacle;
  task.subgoals.push_back(s);
}

}  // namespace

Scene generate_scene(Rng& rng, const GeneratorOptions& options) {
  check_options(options);
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    try {
      Builder builder(rng, options);
      Scene scene = builder.build();
      scene.validate();
      if (all_reachable(scene)) return scene;
    } catch (const Retry&) {
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kMalformedInput) throw;
    }
  }
  throw Error(ErrorCode::kGenerationFailed,
              "no valid scene after " + std::to_string(options.max_attempts) + " attempts");
}

Task generate_task(const Scene& scene, Rng& rng) {
  const auto& smalls = scene.small_objects();
  const auto& larges = scene.large_objects();
  if (smalls.empty() || larges.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "task generation needs small objects and two receptacles");
  }
  auto source_of = [&](std::size_t i) { return larges[*smalls[i].container].cls; };

  std::map<SmallClass, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < smalls.size(); ++i) by_class[smalls[i].cls].push_back(i);
  std::vector<SmallClass> twins;
  for (const auto& [cls, idx] : by_class) {
    if (idx.size() >= 2) twins.push_back(cls);
  }

  std::vector<Item> items;
  if (!twins.empty() && std::bernoulli_distribution(kPickTwoProbability)(rng)) {
    const SmallClass cls = pick(rng, twins);
    for (std::size_t k = 0; k < 2; ++k) items.push_back({cls, source_of(by_class[cls][k])});
  } else {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(smalls.size()) - 1));
    items.push_back({smalls[i].cls, source_of(i)});
  }

  std::vector<LargeClass> destinations;
  for (const auto& l : larges) {
    const bool is_source = std::any_of(items.begin(), items.end(), [&](const Item& it) { return it.source == l.cls; });
    if (!is_source) destinations.push_back(l.cls);
  }
  if (destinations.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no destination distinct from the sources");
  }
  const LargeClass dest = pick(rng, destinations);

  Task task;
  const std::string object(display_name(items.front().cls));
  const std::string where = is_articulated(dest) ? " in the " : " on the ";
  task.goal = items.size() == 2 ? "put two of the " + object + where + std::string(display_name(dest))
                                : "put the " + object + where + std::string(display_name(dest));
  for (const Item& it : items) {
    const bool open_source = is_articulated(it.source);
    if (open_source) {
      add_nav(task, rng, it.source, it.source, std::nullopt);
      add_interaction(task, InteractionKind::kOpen, it.source, std::nullopt);
    } else {
      add_nav(task, rng, it.source, it.cls, it.source);
    }
    add_interaction(task, InteractionKind::kPickUp, it.cls, it.source);
    if (open_source) add_interaction(task, InteractionKind::kClose, it.source, std::nullopt);
    add_nav(task, rng, dest, dest, std::nullopt);
    if (is_articulated(dest)) add_interaction(task, InteractionKind::kOpen, dest, std::nullopt);
    add_interaction(task, InteractionKind::kPut, it.cls, dest);
    if (is_articulated(dest)) add_interaction(task, InteractionKind::kClose, dest, std::nullopt);
  }
  task.goal_conditions = derive_goal_conditions(task.subgoals);
  return task;
}

}  // namespace amslam
