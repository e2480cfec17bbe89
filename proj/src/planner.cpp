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

#include "amslam/planner.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

namespace amslam {
namespace {

struct Indexer {
  int width;
  int height;
  std::size_t size() const { return static_cast<std::size_t>(width * height * 4); }
  std::size_t operator()(const PlanNode& n) const {
    return (static_cast<std::size_t>(n.cell.y * width + n.cell.x) * 4) +
           static_cast<std::size_t>(n.r);
  }
  PlanNode node(std::size_t i) const {
    const int cell = static_cast<int>(i / 4);
    return {{cell % width, cell / width}, static_cast<Rotation>(i % 4)};
  }
};

constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

}  // namespace

std::optional<GoalPlan> plan_to_nearest(const NavGrid& navigable, PlanNode start,
                                        const GoalFn& is_goal, const MoveCostFn& move_cost) {
  if (!navigable.in_bounds(start.cell)) {
    throw Error(ErrorCode::kInvalidArgument, "plan start outside the grid");
  }
  const Indexer idx{navigable.width(), navigable.height()};
  std::vector<int> dist(idx.size(), std::numeric_limits<int>::max());
  std::vector<std::size_t> parent(idx.size(), kNoParent);
  std::vector<NavAction> via(idx.size(), NavAction::kMoveAhead);

  using Entry = std::tuple<int, std::uint64_t, std::size_t>;  // cost, sequence, node
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::uint64_t seq = 0;
  const std::size_t s = idx(start);
  dist[s] = 0;
  open.emplace(0, seq++, s);

  while (!open.empty()) {
    const auto [cost, order, u] = open.top();
    open.pop();
    if (cost != dist[u]) continue;
    const PlanNode node = idx.node(u);
    if (is_goal(node)) {
      GoalPlan out;
      out.goal = node;
      out.plan.cost = cost;
      for (std::size_t v = u; parent[v] != kNoParent; v = parent[v]) out.plan.actions.push_back(via[v]);
      std::reverse(out.plan.actions.begin(), out.plan.actions.end());
      return out;
    }
    auto relax = [&](const PlanNode& next, int step_cost, NavAction action) {
      const std::size_t v = idx(next);
      const int nd = cost + step_cost;
      if (nd < dist[v]) {
        dist[v] = nd;
        parent[v] = u;
        via[v] = action;
        open.emplace(nd, seq++, v);
      }
    };
    const Cell ahead = node.cell + forward(node.r);
    if (navigable.get(ahead, 0)) {
      relax({ahead, node.r}, move_cost ? move_cost(ahead) : 1, NavAction::kMoveAhead);
    }
    relax({node.cell, turn_left(node.r)}, 1, NavAction::kRotateLeft);
    relax({node.cell, turn_right(node.r)}, 1, NavAction::kRotateRight);
  }
  return std::nullopt;
}

std::optional<Plan> try_plan_path(const NavGrid& navigable, PlanNode start, PlanNode goal) {
  if (!navigable.in_bounds(goal.cell)) return std::nullopt;
  auto found = plan_to_nearest(navigable, start, [&](const PlanNode& n) { return n == goal; });
  if (!found) return std::nullopt;
  return found->plan;
}

Plan plan_path(const NavGrid& navigable, PlanNode start, PlanNode goal) {
  if (auto plan = try_plan_path(navigable, start, goal)) return *plan;
  throw Error(ErrorCode::kUnreachable,
              "no path from (" + std::to_string(start.cell.x) + "," + std::to_string(start.cell.y) +
                  ") to (" + std::to_string(goal.cell.x) + "," + std::to_string(goal.cell.y) + ")");
}

std::optional<PlanNode> simulate_plan(const NavGrid& navigable, PlanNode start,
                                      const std::vector<NavAction>& actions) {
  PlanNode node = start;
  for (NavAction a : actions) {
    switch (a) {
      case NavAction::kMoveAhead: {
        const Cell next = node.cell + forward(node.r);
        if (!navigable.get(next, 0)) return std::nullopt;
        node.cell = next;
        break;
      }
      case NavAction::kRotateLeft: node.r = turn_left(node.r); break;
      case NavAction::kRotateRight: node.r = turn_right(node.r); break;
      case NavAction::kLookUp:
      case NavAction::kLookDown: break;
    }
  }
  return node;
}

std::vector<Horizon> backtrack_horizons(Horizon h_star) {
  std::vector<Horizon> out{h_star};
  if (auto down = h_star.offset(Horizon::kStep)) out.push_back(*down);
  if (auto up = h_star.offset(-Horizon::kStep)) out.push_back(*up);
  return out;
}

void look_to(Simulator& sim, Horizon target) {
  while (sim.agent().pose.h != target) {
    const bool down = sim.agent().pose.h.degrees() < target.degrees();
    sim.execute(down ? NavAction::kLookDown : NavAction::kLookUp);
  }
}

std::optional<Horizon> select_horizon(Simulator& sim, const ObjectClass& target,
                                      const NoiseModel& noise, Rng& rng) {
  const Horizon arrival = sim.agent().pose.h;
  std::optional<Horizon> best;
  double best_area = -1.0;
  for (int deg : kHorizonSweep) {
    const Horizon h = Horizon::from_degrees(deg);
    look_to(sim, h);
    const auto det = detect_class(sim.scene(), sim.world(), sim.agent().pose, target, noise, rng);
    if (det && det->confidence > kHorizonConfidence && det->mask_area > best_area) {
      best_area = det->mask_area;
      best = h;
    }
  }
  look_to(sim, best.value_or(arrival));
  return best;
}

}  // namespace amslam
