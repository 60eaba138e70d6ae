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

#include "patrolcov/path_plan.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace patrolcov {
namespace {

GridIndex RandomFreeCell(const OccupancyGrid& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> row(0, g.height() - 1);
  std::uniform_int_distribution<int> col(0, g.width() - 1);
  while (true) {
    const GridIndex c{row(rng), col(rng)};
    if (g.IsFree(c)) return c;
  }
}

// Free cells within radius of any non-Free cell become Occupied.
OccupancyGrid InflateByBruteForce(const OccupancyGrid& g, double radius_m) {
  const double r = radius_m / g.resolution();
  std::vector<CellState> cells(g.cells().begin(), g.cells().end());
  for (int fr = 0; fr < g.height(); ++fr) {
    for (int fc = 0; fc < g.width(); ++fc) {
      if (!oracle::Free(g, fr, fc)) continue;
      for (int orow = 0; orow < g.height(); ++orow) {
        for (int ocol = 0; ocol < g.width(); ++ocol) {
          if (oracle::Free(g, orow, ocol)) continue;
          if (std::hypot(fr - orow, fc - ocol) <= r + 1e-9) {
            cells[static_cast<std::size_t>(fr) * g.width() + fc] = CellState::kOccupied;
          }
        }
      }
    }
  }
  return OccupancyGrid(g.width(), g.height(), g.resolution(), g.origin(), std::move(cells));
}

void ExpectValidPath(const OccupancyGrid& g, const std::vector<GridIndex>& path) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    ASSERT_TRUE(g.IsFree(path[i])) << ToString(path[i]);
    if (i == 0) continue;
    const int dr = path[i].row - path[i - 1].row;
    const int dc = path[i].col - path[i - 1].col;
    ASSERT_LE(std::abs(dr), 1);
    ASSERT_LE(std::abs(dc), 1);
    ASSERT_FALSE(dr == 0 && dc == 0);
    if (dr != 0 && dc != 0) {
      const GridIndex p = path[i - 1];
      ASSERT_TRUE(g.IsFree({p.row + dr, p.col}) || g.IsFree({p.row, p.col + dc}));
    }
  }
}

TEST(InflateObstaclesTest, ZeroRadiusIsIdentity) {
  std::mt19937_64 rng(1);
  const auto grid = oracle::RandomGrid(rng, 15, 15, 0.3);
  EXPECT_EQ(InflateObstacles(grid, 0.0), grid);
  EXPECT_EQ(InflateObstacles(grid, 0.049), grid);
}

TEST(InflateObstaclesTest, OneCellRadiusGrowsAPlus) {
  const auto grid = OccupancyGrid::Filled(5, 5, 0.05).WithCell({2, 2}, CellState::kOccupied);
  const auto inflated = InflateObstacles(grid, 0.05);
  EXPECT_EQ(inflated.CountState(CellState::kOccupied), 5u);
  for (GridIndex c : {GridIndex{1, 2}, GridIndex{3, 2}, GridIndex{2, 1}, GridIndex{2, 3}}) {
    EXPECT_EQ(inflated.At(c), CellState::kOccupied) << ToString(c);
  }
  EXPECT_EQ(inflated.At({1, 1}), CellState::kFree);
}

TEST(InflateObstaclesTest, NarrowCorridorCloses) {
  auto grid = OccupancyGrid::Filled(10, 3, 0.05);
  for (int c = 0; c < 10; ++c) {
    grid = grid.WithCell({0, c}, CellState::kOccupied).WithCell({2, c}, CellState::kOccupied);
  }
  EXPECT_EQ(InflateObstacles(grid, 0.05).CountState(CellState::kFree), 0u);
  EXPECT_THROW(InflateObstacles(grid, -0.1), std::invalid_argument);
}

TEST(InflateObstaclesTest, MatchesBruteForceIncludingUnknown) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto grid = oracle::RandomGrid(rng, 18, 14, 0.1);
    std::bernoulli_distribution unknown(0.05);
    for (int r = 0; r < grid.height(); ++r) {
      for (int c = 0; c < grid.width(); ++c) {
        if (unknown(rng)) grid = grid.WithCell({r, c}, CellState::kUnknown);
      }
    }
    for (double radius : {0.05, 0.07, 0.1, 0.15, 0.23}) {
      const auto got = InflateObstacles(grid, radius);
      ASSERT_EQ(got, InflateByBruteForce(grid, radius)) << trial << " " << radius;
      ASSERT_EQ(got.CountState(CellState::kUnknown), grid.CountState(CellState::kUnknown));
    }
  }
}

TEST(AStarTest, TrivialCases) {
  const auto grid = OccupancyGrid::Filled(6, 1, 0.05);
  EXPECT_EQ(AStar(grid, {0, 2}, {0, 2}), (std::vector<GridIndex>{{0, 2}}));
  const auto path = AStar(grid, {0, 0}, {0, 5});
  EXPECT_EQ(path.size(), 6u);
  EXPECT_DOUBLE_EQ(CountSteps(path).Cost(), 5.0);
}

TEST(AStarTest, DiagonalOnOpenGrid) {
  const auto grid = OccupancyGrid::Filled(6, 6, 0.05);
  const auto path = AStar(grid, {0, 0}, {3, 5});
  EXPECT_EQ(CountSteps(path), (StepCounts{2, 3}));
}

TEST(AStarTest, CornerRule) {
  // Diagonal through a gap between two blocked orthogonals is barred,
  // but allowed when only one orthogonal is blocked.
  const auto pinch = OccupancyGrid::Filled(2, 2, 0.05)
                         .WithCell({0, 1}, CellState::kOccupied)
                         .WithCell({1, 0}, CellState::kOccupied);
  EXPECT_FALSE(CanStep(pinch, {0, 0}, 1, 1));
  EXPECT_THROW(AStar(pinch, {0, 0}, {1, 1}), NoPathError);
  const auto half = OccupancyGrid::Filled(2, 2, 0.05).WithCell({0, 1}, CellState::kOccupied);
  EXPECT_TRUE(CanStep(half, {0, 0}, 1, 1));
  EXPECT_EQ(AStar(half, {0, 0}, {1, 1}).size(), 2u);
}

TEST(AStarTest, Errors) {
  auto grid = OccupancyGrid::Filled(7, 7, 0.05);
  for (int r = 0; r < 7; ++r) grid = grid.WithCell({r, 3}, CellState::kOccupied);
  try {
    AStar(grid, {0, 0}, {6, 6});
    FAIL() << "expected NoPathError";
  } catch (const NoPathError& e) {
    EXPECT_EQ(e.from(), (GridIndex{0, 0}));
    EXPECT_EQ(e.to(), (GridIndex{6, 6}));
  }
  EXPECT_THROW(AStar(grid, {0, 3}, {0, 0}), std::invalid_argument);
  EXPECT_THROW(AStar(grid, {0, 0}, {0, 3}), std::invalid_argument);
  EXPECT_THROW(AStar(grid, {0, 0}, {9, 9}), std::invalid_argument);
}

TEST(AStarTest, OptimalAgainstDijkstraOnRandomMaps) {
  std::mt19937_64 rng(77);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto grid = oracle::RandomGrid(rng, 25, 25, 0.3);
    const GridIndex s = RandomFreeCell(grid, rng);
    const GridIndex t = RandomFreeCell(grid, rng);
    const auto expected = oracle::DijkstraCost(grid, s, t);
    if (expected.straight < 0) {
      EXPECT_THROW(AStar(grid, s, t), NoPathError);
      continue;
    }
    ++solved;
    const auto path = AStar(grid, s, t);
    ASSERT_EQ(path.front(), s);
    ASSERT_EQ(path.back(), t);
    ExpectValidPath(grid, path);
    const auto steps = CountSteps(path);
    EXPECT_EQ(oracle::CompareCost({steps.straight, steps.diagonal}, expected), 0)
        << "trial " << trial;
  }
  EXPECT_GT(solved, 20);
}

TEST(CountStepsTest, RejectsJumps) {
  const std::vector<GridIndex> jump{{0, 0}, {0, 2}};
  EXPECT_THROW(CountSteps(jump), std::invalid_argument);
  const std::vector<GridIndex> repeat{{0, 0}, {0, 0}, {1, 1}};
  EXPECT_EQ(CountSteps(repeat), (StepCounts{0, 1}));
}

TEST(ReachableMaskTest, MatchesDijkstraReachability) {
  std::mt19937_64 rng(3);
  const auto grid = oracle::RandomGrid(rng, 12, 12, 0.35);
  const GridIndex s = RandomFreeCell(grid, rng);
  const auto mask = ReachableMask(grid, s);
  for (int r = 0; r < 12; ++r) {
    for (int c = 0; c < 12; ++c) {
      const bool reach = grid.IsFree({r, c}) && oracle::DijkstraCost(grid, s, {r, c}).straight >= 0;
      EXPECT_EQ(mask[grid.Offset({r, c})] != 0, reach) << r << "," << c;
    }
  }
}

TEST(StitchPathTest, SingleWaypoint) {
  const auto grid = OccupancyGrid::Filled(4, 4, 0.05);
  const std::vector<GridIndex> tour{{1, 2}};
  const auto path = StitchPath(grid, tour);
  EXPECT_EQ(path.cells, tour);
  EXPECT_EQ(path.segment_offsets, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(path.closed);
}

TEST(StitchPathTest, CorridorIsTwiceTheOneWayCost) {
  const auto grid = OccupancyGrid::Filled(10, 1, 0.05);
  const std::vector<GridIndex> tour{{0, 0}, {0, 9}};
  const auto path = StitchPath(grid, tour);
  EXPECT_EQ(path.cells.size(), 19u);
  EXPECT_EQ(path.cells.front(), path.cells.back());
  EXPECT_DOUBLE_EQ(CountSteps(path.cells).Cost(), 18.0);
  EXPECT_EQ(path.segment_offsets, (std::vector<std::size_t>{0, 9}));
}

TEST(StitchPathTest, LegsAroundAnObstacleAreOptimal) {
  auto grid = OccupancyGrid::Filled(20, 20, 0.05);
  for (int r = 6; r < 14; ++r) {
    for (int c = 6; c < 14; ++c) grid = grid.WithCell({r, c}, CellState::kOccupied);
  }
  const std::vector<GridIndex> tour{{2, 2}, {2, 17}, {17, 17}, {17, 2}, {10, 3}};
  const auto path = StitchPath(grid, tour);
  ExpectValidPath(grid, path.cells);
  ASSERT_EQ(path.segment_offsets.size(), tour.size());
  oracle::ExactCost total;
  for (std::size_t k = 0; k < tour.size(); ++k) {
    EXPECT_EQ(path.cells[path.segment_offsets[k]], tour[k]);
    const auto leg = oracle::DijkstraCost(grid, tour[k], tour[(k + 1) % tour.size()]);
    total.straight += leg.straight;
    total.diagonal += leg.diagonal;
  }
  EXPECT_EQ(path.cells.back(), tour.front());
  const auto steps = CountSteps(path.cells);
  EXPECT_EQ(oracle::CompareCost({steps.straight, steps.diagonal}, total), 0);
}

TEST(StitchPathTest, DisconnectedTourThrows) {
  auto grid = OccupancyGrid::Filled(7, 7, 0.05);
  for (int r = 0; r < 7; ++r) grid = grid.WithCell({r, 3}, CellState::kOccupied);
  const std::vector<GridIndex> tour{{0, 0}, {0, 6}};
  EXPECT_THROW(StitchPath(grid, tour), NoPathError);
  const std::vector<GridIndex> blocked{{0, 0}, {0, 3}};
  EXPECT_THROW(StitchPath(grid, blocked), std::invalid_argument);
}

}  // namespace
}  // namespace patrolcov
