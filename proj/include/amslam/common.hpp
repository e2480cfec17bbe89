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

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace amslam {

/// Side length of the square world and map grids, in cells.
inline constexpr int kGridSize = 37;
/// Metric size of one grid cell.
inline constexpr double kCellMeters = 0.25;

using Rng = std::mt19937_64;

enum class ErrorCode {
  kBudgetExhausted,
  kUnknownClass,
  kClassNotOnMap,
  kNoWaypoint,
  kUnreachable,
  kParseError,
  kMalformedInput,
  kGenerationFailed,
  kEmptyInput,
  kInvalidArgument,
  kIo,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. Every recoverable failure carries a code so
/// callers can fold it into episode results instead of crashing.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Cell {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
  friend constexpr auto operator<=>(const Cell& a, const Cell& b) {
    // Row-major: y first, then x.
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
  constexpr Cell operator+(Cell o) const { return {x + o.x, y + o.y}; }
  constexpr Cell operator-(Cell o) const { return {x - o.x, y - o.y}; }
  constexpr Cell operator*(int k) const { return {x * k, y * k}; }
};

constexpr int dot(Cell a, Cell b) { return a.x * b.x + a.y * b.y; }

/// Heading in 90 degree steps. 0 faces -y (north), 90 faces +x (east).
enum class Rotation : std::uint8_t { k0 = 0, k90 = 1, k180 = 2, k270 = 3 };

inline constexpr std::array<Rotation, 4> kRotations = {Rotation::k0, Rotation::k90,
                                                       Rotation::k180, Rotation::k270};

constexpr int degrees(Rotation r) { return 90 * static_cast<int>(r); }
Rotation rotation_from_degrees(int deg);

constexpr Rotation turn_right(Rotation r) {
  return static_cast<Rotation>((static_cast<int>(r) + 1) % 4);
}
constexpr Rotation turn_left(Rotation r) {
  return static_cast<Rotation>((static_cast<int>(r) + 3) % 4);
}
constexpr Rotation turn_around(Rotation r) {
  return static_cast<Rotation>((static_cast<int>(r) + 2) % 4);
}

/// Unit step in the facing direction.
constexpr Cell forward(Rotation r) {
  switch (r) {
    case Rotation::k0: return {0, -1};
    case Rotation::k90: return {1, 0};
    case Rotation::k180: return {0, 1};
    case Rotation::k270: return {-1, 0};
  }
  return {0, 0};
}

/// Unit step to the agent's right; positive lateral offsets point this way.
constexpr Cell rightward(Rotation r) { return forward(turn_right(r)); }

/// Camera pitch in 15 degree steps on the ladder [-30, 60]. Positive looks
/// down, so LookDown adds 15 and LookUp subtracts 15.
class Horizon {
 public:
  static constexpr int kMin = -30;
  static constexpr int kMax = 60;
  static constexpr int kStep = 15;

  constexpr Horizon() = default;

  static constexpr bool is_legal(int deg) {
    return deg >= kMin && deg <= kMax && (deg - kMin) % kStep == 0;
  }
  static Horizon from_degrees(int deg);

  constexpr int degrees() const { return deg_; }

  /// The horizon `delta` degrees away, if that is still on the ladder.
  std::optional<Horizon> offset(int delta) const;

  friend constexpr bool operator==(const Horizon&, const Horizon&) = default;
  friend constexpr auto operator<=>(const Horizon&, const Horizon&) = default;

 private:
  constexpr explicit Horizon(int deg) : deg_(deg) {}
  int deg_ = 30;
};

/// All legal horizons, from most downward to most upward.
inline constexpr std::array<int, 7> kHorizonLadder = {60, 45, 30, 15, 0, -15, -30};

struct Pose {
  Cell cell;
  Rotation r = Rotation::k0;
  Horizon h;

  friend bool operator==(const Pose&, const Pose&) = default;
};

/// Position of a cell relative to a viewer: `depth` cells ahead and
/// `lateral` cells to the right.
struct EgoOffset {
  int depth = 0;
  int lateral = 0;
  friend constexpr bool operator==(const EgoOffset&, const EgoOffset&) = default;
};

constexpr Cell ego_to_world(Cell origin, Rotation r, EgoOffset e) {
  return origin + forward(r) * e.depth + rightward(r) * e.lateral;
}

constexpr EgoOffset world_to_ego(Cell origin, Rotation r, Cell target) {
  const Cell v = target - origin;
  return {dot(v, forward(r)), dot(v, rightward(r))};
}

/// Dense row-major 2D grid.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }

  T& operator[](Cell c) { return data_[index(c)]; }
  const T& operator[](Cell c) const { return data_[index(c)]; }

  /// Value at `c`, or `outside` when `c` is off the grid.
  T get(Cell c, T outside = T{}) const { return in_bounds(c) ? data_[index(c)] : outside; }

  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.x);
  }
  Cell cell_at(std::size_t i) const {
    return {static_cast<int>(i % static_cast<std::size_t>(width_)),
            static_cast<int>(i / static_cast<std::size_t>(width_))};
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

/// Boolean occupancy grid; 1 marks a navigable cell.
using NavGrid = Grid<std::uint8_t>;

/// Mixes two 64-bit values into a well-distributed seed (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace amslam
