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

#include "amslam/classes.hpp"

#include <algorithm>

namespace amslam {
namespace {

struct LargeInfo {
  std::string_view id;
  std::string_view display;
  HeightClass height;
  bool articulated;
};

constexpr std::array<LargeInfo, kNumLargeClasses> kLargeInfo = {{
    {"armchair", "armchair", HeightClass::kFloor, false},
    {"chair", "chair", HeightClass::kMid, false},
    {"cart", "cart", HeightClass::kMid, false},
    {"sofa", "sofa", HeightClass::kFloor, false},
    {"shelf", "shelf", HeightClass::kHigh, false},
    {"drawer", "drawer", HeightClass::kFloor, true},
    {"cabinet", "cabinet", HeightClass::kHigh, true},
    {"countertop", "counter", HeightClass::kMid, false},
    {"sink", "sink", HeightClass::kMid, false},
    {"stove_burner", "stove burner", HeightClass::kMid, false},
    {"fridge", "fridge", HeightClass::kMid, true},
    {"bed", "bed", HeightClass::kFloor, false},
    {"dresser", "dresser", HeightClass::kMid, false},
    {"toilet", "toilet", HeightClass::kFloor, false},
    {"bathtub", "bathtub", HeightClass::kFloor, false},
    {"ottoman", "ottoman", HeightClass::kFloor, false},
    {"diningtable", "dining table", HeightClass::kMid, false},
    {"sidetable", "side table", HeightClass::kMid, false},
    {"coffeetable", "coffee table", HeightClass::kFloor, false},
    {"desk", "desk", HeightClass::kMid, false},
}};

struct SmallInfo {
  std::string_view id;
  std::string_view display;
};

constexpr std::array<SmallInfo, kNumSmallClasses> kSmallInfo = {{
    {"apple", "apple"},
    {"mug", "mug"},
    {"lettuce", "lettuce"},
    {"watch", "watch"},
    {"spray_bottle", "spray bottle"},
    {"tomato", "tomato"},
    {"bread", "bread"},
    {"potato", "potato"},
    {"egg", "egg"},
    {"cup", "cup"},
    {"plate", "plate"},
    {"bowl", "bowl"},
    {"knife", "knife"},
    {"spoon", "spoon"},
    {"book", "book"},
    {"cellphone", "cell phone"},
    {"keychain", "key chain"},
    {"pen", "pen"},
    {"candle", "candle"},
    {"vase", "vase"},
}};

constexpr std::array<int, 2> kFloorBand = {60, 45};
constexpr std::array<int, 2> kMidBand = {30, 15};
constexpr std::array<int, 2> kHighBand = {0, -15};

const LargeInfo& info(LargeClass c) { return kLargeInfo[static_cast<std::size_t>(c)]; }

}  // namespace

LargeClass large_class_at(int index) {
  if (index < 0 || index >= kNumLargeClasses) {
    throw Error(ErrorCode::kUnknownClass, "large class index " + std::to_string(index));
  }
  return static_cast<LargeClass>(index);
}

SmallClass small_class_at(int index) {
  if (index < 0 || index >= kNumSmallClasses) {
    throw Error(ErrorCode::kUnknownClass, "small class index " + std::to_string(index));
  }
  return static_cast<SmallClass>(index);
}

std::string_view name(LargeClass c) { return info(c).id; }
std::string_view name(SmallClass c) { return kSmallInfo[static_cast<std::size_t>(c)].id; }
std::string_view name(const ObjectClass& c) {
  return std::visit([](auto v) { return name(v); }, c);
}

std::string_view display_name(const ObjectClass& c) {
  if (const auto* l = std::get_if<LargeClass>(&c)) return info(*l).display;
  return kSmallInfo[static_cast<std::size_t>(std::get<SmallClass>(c))].display;
}

std::optional<ObjectClass> find_class(std::string_view text) {
  for (int i = 0; i < kNumLargeClasses; ++i) {
    const auto& li = kLargeInfo[static_cast<std::size_t>(i)];
    if (text == li.id || text == li.display) return ObjectClass{static_cast<LargeClass>(i)};
  }
  for (int i = 0; i < kNumSmallClasses; ++i) {
    const auto& si = kSmallInfo[static_cast<std::size_t>(i)];
    if (text == si.id || text == si.display) return ObjectClass{static_cast<SmallClass>(i)};
  }
  return std::nullopt;
}

ObjectClass class_from_name(std::string_view text) {
  if (auto c = find_class(text)) return *c;
  throw Error(ErrorCode::kUnknownClass, "unknown object class '" + std::string(text) + "'");
}

std::string_view name(HeightClass h) {
  switch (h) {
    case HeightClass::kFloor: return "floor";
    case HeightClass::kMid: return "mid";
    case HeightClass::kHigh: return "high";
  }
  return "mid";
}

HeightClass height_class_from_name(std::string_view text) {
  if (text == "floor") return HeightClass::kFloor;
  if (text == "mid") return HeightClass::kMid;
  if (text == "high") return HeightClass::kHigh;
  throw Error(ErrorCode::kMalformedInput, "unknown height class '" + std::string(text) + "'");
}

std::span<const int> horizon_band(HeightClass h) {
  switch (h) {
    case HeightClass::kFloor: return kFloorBand;
    case HeightClass::kMid: return kMidBand;
    case HeightClass::kHigh: return kHighBand;
  }
  return kMidBand;
}

bool in_band(HeightClass h, Horizon horizon) {
  const auto band = horizon_band(h);
  return std::find(band.begin(), band.end(), horizon.degrees()) != band.end();
}

bool is_articulated(LargeClass c) { return info(c).articulated; }
HeightClass default_height(LargeClass c) { return info(c).height; }

int backup_distance(LargeClass c) { return backup_distance(name(c)); }

int backup_distance(std::string_view class_name) {
  if (class_name == "fridge") return 3;
  if (class_name == "safe" || class_name == "cabinet" || class_name == "drawer") return 2;
  return 1;
}

}  // namespace amslam
