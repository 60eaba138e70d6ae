/*
 * Copyright 2026 The patrolcov Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "patrolcov/waypoints.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <fmt/core.h>

namespace patrolcov {

CoverageGrid::CoverageGrid(const OccupancyGrid& base)
    : base_(&base), explored_(base.size(), 0) {}

double CoverageGrid::ExploredArea() const {
  return static_cast<double>(explored_count_) * base_->resolution() *
         base_->resolution();
}

std::size_t CoverageGrid::Mark(std::span<const GridIndex> cells) {
  std::size_t fresh = 0;
  for (GridIndex c : cells) {
    if (!base_->IsFree(c)) continue;
    std::uint8_t& flag = explored_[base_->Offset(c)];
    if (flag == 0) {
      flag = 1;
      ++fresh;
    }
  }
  explored_count_ += fresh;
  return fresh;
}

void CoverageGrid::SetPlacementMask(std::vector<std::uint8_t> mask) {
  if (!mask.empty() && mask.size() != base_->size()) {
    throw std::invalid_argument(fmt::format(
        "placement mask has {} entries, grid has {}", mask.size(), base_->size()));
  }
  placement_ = std::move(mask);
}

bool CoverageGrid::CanPlace(GridIndex idx) const {
  if (!base_->IsFree(idx)) return false;
  return placement_.empty() || placement_[base_->Offset(idx)] != 0;
}

void StopConfig::Validate() const {
  if (!(min_coverage_fraction >= 0.0 && min_coverage_fraction <= 1.0)) {
    throw std::invalid_argument(fmt::format(
        "min_coverage_fraction must be in [0, 1], got {}", min_coverage_fraction));
  }
  if (!(epsilon >= 0.0)) {
    throw std::invalid_argument(
        fmt::format("epsilon must be non-negative, got {}", epsilon));
  }
  if (max_iterations < 1) {
    throw std::invalid_argument(
        fmt::format("max_iterations must be >= 1, got {}", max_iterations));
  }
}

std::string_view ToString(StopReason reason) {
  switch (reason) {
    case StopReason::kNoCandidates:
      return "no_candidates";
    case StopReason::kCoverageReached:
      return "coverage_reached";
    case StopReason::kSaturated:
      return "saturated";
    case StopReason::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

double MarkExplored(CoverageGrid& cov, const Pose& pose, const SensorModel& sensor) {
  const auto seen = VisibleCells(cov.base(), pose, sensor);
  const double cell_area = cov.base().resolution() * cov.base().resolution();
  return static_cast<double>(cov.Mark(seen)) * cell_area;
}

std::vector<GridIndex> BoundaryCandidates(const CoverageGrid& cov) {
  const OccupancyGrid& grid = cov.base();
  constexpr GridIndex kNeighbors[] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  std::vector<GridIndex> out;
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) {
      const GridIndex cell{row, col};
      if (!cov.IsExplored(cell) || !cov.CanPlace(cell)) continue;
      for (GridIndex d : kNeighbors) {
        const GridIndex n{row + d.row, col + d.col};
        if (grid.IsFree(n) && !cov.IsExplored(n)) {
          out.push_back(cell);
          break;
        }
      }
    }
  }
  return out;
}

double CandidateHeading(int k, int headings) {
  return WrapAngle(kTwoPi * static_cast<double>(k) / static_cast<double>(headings));
}

CandidateScore EstimateCoverage(const CoverageGrid& cov, GridIndex candidate,
                                const SensorModel& sensor, int headings) {
  sensor.Validate();
  if (headings < 1) {
    throw std::invalid_argument(fmt::format("headings must be >= 1, got {}", headings));
  }
  const OccupancyGrid& grid = cov.base();
  if (!grid.IsFree(candidate)) {
    throw std::invalid_argument(
        fmt::format("candidate {} is not Free", ToString(candidate)));
  }

  // Line of sight does not depend on heading; only the cone test does.
  std::vector<GridIndex> unexplored = CellsInSight(grid, candidate, sensor.range);
  std::erase_if(unexplored, [&](GridIndex c) { return cov.IsExplored(c); });

  const bool omni = sensor.fov >= kTwoPi - 1e-9;
  std::size_t best_gain = 0;
  double best_heading = 0.0;
  bool have_best = false;
  for (int k = 0; k < (omni ? 1 : headings); ++k) {
    const double heading = CandidateHeading(k, headings);
    std::size_t gain = 0;
    for (GridIndex c : unexplored) {
      if (WithinFov(candidate, c, heading, sensor.fov)) ++gain;
    }
    if (!have_best || gain > best_gain ||
        (gain == best_gain && heading < best_heading)) {
      best_gain = gain;
      best_heading = heading;
      have_best = true;
    }
  }
  if (omni) {
    // Every heading scores the same; report the smallest one.
    for (int k = 1; k < headings; ++k) {
      best_heading = std::min(best_heading, CandidateHeading(k, headings));
    }
  }

  const double cell_area = grid.resolution() * grid.resolution();
  CandidateScore score;
  score.candidate = Pose{candidate, best_heading};
  score.explored_cells = cov.ExploredCount() + best_gain;
  score.area = static_cast<double>(score.explored_cells) * cell_area;
  score.gained_area = static_cast<double>(best_gain) * cell_area;
  return score;
}

CandidateScore SelectNext(std::span<const CandidateScore> scores) {
  if (scores.empty()) throw std::invalid_argument("no candidate scores to select from");
  auto key = [](const CandidateScore& s) {
    return std::make_tuple(s.candidate.cell.row, s.candidate.cell.col,
                           s.candidate.heading);
  };
  const CandidateScore* best = &scores.front();
  for (const CandidateScore& s : scores.subspan(1)) {
    if (s.area > best->area || (s.area == best->area && key(s) < key(*best))) {
      best = &s;
    }
  }
  return *best;
}

namespace {

std::vector<CandidateScore> ScoreAll(const CoverageGrid& cov,
                                     std::span<const GridIndex> candidates,
                                     const SensorModel& sensor, int headings,
                                     int threads) {
  std::vector<CandidateScore> scores(candidates.size());
  const auto workers = static_cast<std::size_t>(std::clamp<std::size_t>(
      static_cast<std::size_t>(threads), 1, std::max<std::size_t>(1, candidates.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      scores[i] = EstimateCoverage(cov, candidates[i], sensor, headings);
    }
    return scores;
  }
  // Results land at fixed indices, so the schedule cannot affect the outcome.
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < candidates.size(); i = next++) {
        scores[i] = EstimateCoverage(cov, candidates[i], sensor, headings);
      }
    });
  }
  pool.clear();
  return scores;
}

}  // namespace

WaypointPlan GenerateWaypoints(const OccupancyGrid& grid, const Pose& start,
                               const SensorModel& sensor, const StopConfig& stop,
                               const WaypointOptions& options) {
  sensor.Validate();
  stop.Validate();
  if (options.headings < 1) {
    throw std::invalid_argument(
        fmt::format("headings must be >= 1, got {}", options.headings));
  }
  if (!grid.IsFree(start.cell)) {
    throw std::invalid_argument(
        fmt::format("start cell {} is not Free", ToString(start.cell)));
  }
  const int threads = options.threads > 0
                          ? options.threads
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  WaypointPlan plan{.waypoints = {}, .coverage = CoverageGrid(grid), .iterations = {}};
  plan.coverage.SetPlacementMask(options.placement);
  const double coverage_target =
      stop.min_coverage_fraction * static_cast<double>(grid.CountState(CellState::kFree));

  Pose current{start.cell, WrapAngle(start.heading)};
  std::size_t candidate_count = 0;
  CandidateScore selected{.candidate = current};
  for (int committed = 0;; ++committed) {
    IterationRecord record;
    record.candidate_count = candidate_count;
    record.area_before = plan.coverage.ExploredArea();
    const std::size_t before = plan.coverage.ExploredCount();
    const double gained = MarkExplored(plan.coverage, current, sensor);
    const std::size_t gained_cells = plan.coverage.ExploredCount() - before;
    record.area_after = plan.coverage.ExploredArea();
    if (committed == 0) {
      selected.explored_cells = plan.coverage.ExploredCount();
      selected.area = record.area_after;
      selected.gained_area = gained;
    }
    record.selected = selected;
    plan.iterations.push_back(record);
    plan.waypoints.push_back(Waypoint{current, gained});

    const auto candidates = BoundaryCandidates(plan.coverage);
    const auto explored = static_cast<double>(plan.coverage.ExploredCount());
    if (candidates.empty()) {
      plan.reason = StopReason::kNoCandidates;
      break;
    }
    if (explored > coverage_target) {
      plan.reason = StopReason::kCoverageReached;
      break;
    }
    if (static_cast<double>(gained_cells) < stop.epsilon * explored) {
      plan.reason = StopReason::kSaturated;
      break;
    }
    if (committed >= stop.max_iterations) {
      plan.reason = StopReason::kIterationLimit;
      break;
    }

    const auto scores =
        ScoreAll(plan.coverage, candidates, sensor, options.headings, threads);
    selected = SelectNext(scores);
    candidate_count = candidates.size();
    current = selected.candidate;
  }
  return plan;
}

}  // namespace patrolcov
