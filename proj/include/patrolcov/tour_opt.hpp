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

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "patrolcov/grid.hpp"

namespace patrolcov {

/// Closed tour over a point set. order[0] is always point 0, the patrol start.
struct Tour {
  std::vector<std::size_t> order;
  double length = 0.0;
};

struct GraspConfig {
  int iterations = 32;
  int rcl_size = 3;
  std::uint64_t seed = 0;
  /// Rounds run concurrently on this many threads; 0 picks the hardware count.
  int threads = 1;

  void Validate() const;
};

bool IsPermutation(std::span<const std::size_t> order, std::size_t n);

/// Closed-loop Euclidean length including the last-to-first edge. Throws
/// std::invalid_argument if `order` is not a permutation of the points.
double TourLength(std::span<const WorldPoint> points,
                  std::span<const std::size_t> order);

/// Randomized nearest-neighbor construction from point 0: each step picks
/// uniformly among the rcl_size closest unvisited points.
Tour GreedyRandomizedConstruct(std::span<const WorldPoint> points,
                               const GraspConfig& cfg, std::mt19937_64& rng);

/// Best-improvement 2-opt until no segment reversal shortens the tour.
Tour TwoOpt(std::span<const WorldPoint> points, Tour tour);

/// Multi-start construction + 2-opt; returns the shortest tour, ties broken by
/// lexicographically smallest order. Deterministic for a given config.
Tour GraspOrder(std::span<const WorldPoint> points, const GraspConfig& cfg);

/// Seed for GRASP round `round`, derived from the base seed.
std::uint64_t RoundSeed(std::uint64_t seed, std::uint64_t round);

}  // namespace patrolcov
