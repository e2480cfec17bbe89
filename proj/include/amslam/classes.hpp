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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "amslam/common.hpp"

namespace amslam {

inline constexpr int kNumLargeClasses = 20;
inline constexpr int kNumSmallClasses = 20;
/// One channel per large class plus the navigable channel.
inline constexpr int kNumChannels = kNumLargeClasses + 1;
inline constexpr int kNavigableChannel = kNumLargeClasses;

enum class LargeClass : std::uint8_t {
  kArmchair,
  kChair,
  kCart,
  kSofa,
  kShelf,
  kDrawer,
  kCabinet,
  kCountertop,
  kSink,
  kStoveBurner,
  kFridge,
  kBed,
  kDresser,
  kToilet,
  kBathtub,
  kOttoman,
  kDiningTable,
  kSideTable,
  kCoffeeTable,
  kDesk,
};

enum class SmallClass : std::uint8_t {
  kApple,
  kMug,
  kLettuce,
  kWatch,
  kSprayBottle,
  kTomato,
  kBread,
  kPotato,
  kEgg,
  kCup,
  kPlate,
  kBowl,
  kKnife,
  kSpoon,
  kBook,
  kCellPhone,
  kKeyChain,
  kPen,
  kCandle,
  kVase,
};

using ObjectClass = std::variant<LargeClass, SmallClass>;

enum class HeightClass : std::uint8_t { kFloor, kMid, kHigh };

constexpr int channel(LargeClass c) { return static_cast<int>(c); }
constexpr bool is_large(const ObjectClass& c) { return std::holds_alternative<LargeClass>(c); }

LargeClass large_class_at(int index);
SmallClass small_class_at(int index);

/// Canonical identifier, e.g. "spray_bottle" or "countertop".
std::string_view name(LargeClass c);
std::string_view name(SmallClass c);
std::string_view name(const ObjectClass& c);

/// Noun phrase used in rendered instructions, e.g. "spray bottle", "counter".
std::string_view display_name(const ObjectClass& c);

/// Looks up a canonical identifier or display phrase.
std::optional<ObjectClass> find_class(std::string_view text);
/// Like find_class but throws UnknownClass.
ObjectClass class_from_name(std::string_view text);

std::string_view name(HeightClass h);
HeightClass height_class_from_name(std::string_view text);

/// Horizons from which an object of this height class can be seen and
/// interacted with: floor {60, 45}, mid {30, 15}, high {0, -15}.
std::span<const int> horizon_band(HeightClass h);
bool in_band(HeightClass h, Horizon horizon);

/// Large classes with doors or drawers that must be opened.
bool is_articulated(LargeClass c);
HeightClass default_height(LargeClass c);

/// Cells the agent backs away from an object before interacting with it:
/// fridge 3; safe, cabinet and drawer 2; everything else 1.
int backup_distance(LargeClass c);
/// Name-based variant; accepts class names outside the 20-class map
/// vocabulary (such as "safe").
int backup_distance(std::string_view class_name);

}  // namespace amslam
