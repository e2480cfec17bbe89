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

#include "amslam/common.hpp"

namespace amslam {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBudgetExhausted: return "BudgetExhausted";
    case ErrorCode::kUnknownClass: return "UnknownClass";
    case ErrorCode::kClassNotOnMap: return "ClassNotOnMap";
    case ErrorCode::kNoWaypoint: return "NoWaypoint";
    case ErrorCode::kUnreachable: return "Unreachable";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kMalformedInput: return "MalformedInput";
    case ErrorCode::kGenerationFailed: return "GenerationFailed";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Rotation rotation_from_degrees(int deg) {
  switch (deg) {
    case 0: return Rotation::k0;
    case 90: return Rotation::k90;
    case 180: return Rotation::k180;
    case 270: return Rotation::k270;
    default:
      throw Error(ErrorCode::kInvalidArgument, "illegal rotation " + std::to_string(deg));
  }
}

Horizon Horizon::from_degrees(int deg) {
  if (!is_legal(deg)) {
    throw Error(ErrorCode::kInvalidArgument, "illegal horizon " + std::to_string(deg));
  }
  return Horizon(deg);
}

std::optional<Horizon> Horizon::offset(int delta) const {
  const int next = deg_ + delta;
  if (!is_legal(next)) return std::nullopt;
  return Horizon(next);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace amslam
