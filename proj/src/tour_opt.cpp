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

#include "patrolcov/tour_opt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <fmt/core.h>

namespace patrolcov {

namespace {

// Improvements smaller than this are treated as rounding noise.
constexpr double kImprovementTolerance = 1e-10;

double Distance(const WorldPoint& a, const WorldPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

bool Better(const Tour& a, const Tour& b) {
  if (a.length != b.length) return a.length < b.length;
  return a.order < b.order;
}

}  // namespace

void GraspConfig::Validate() const {
  if (iterations < 1) {
    throw std::invalid_argument(
        fmt::format("GRASP iterations must be >= 1, got {}", iterations));
  }
  if (rcl_size < 1) {
    throw std::invalid_argument(fmt::format("RCL size must be >= 1, got {}", rcl_size));
  }
}

bool IsPermutation(std::span<const std::size_t> order, std::size_t n) {
  if (order.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t i : order) {
    if (i >= n || seen[i]) return false;
    seen[i] = true;
  }
  return true;
}

double TourLength(std::span<const WorldPoint> points,
                  std::span<const std::size_t> order) {
  if (!IsPermutation(order, points.size())) {
    throw std::invalid_argument("tour order is not a permutation of the points");
  }
  double length = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    length += Distance(points[order[i]], points[order[(i + 1) % order.size()]]);
  }
  return length;
}

Tour GreedyRandomizedConstruct(std::span<const WorldPoint> points,
                               const GraspConfig& cfg, std::mt19937_64& rng) {
  cfg.Validate();
  Tour tour;
  if (points.empty()) return tour;

  std::vector<std::size_t> remaining(points.size() - 1);
  std::iota(remaining.begin(), remaining.end(), std::size_t{1});
  tour.order.reserve(points.size());
  tour.order.push_back(0);

  while (!remaining.empty()) {
    const WorldPoint& here = points[tour.order.back()];
    const std::size_t rcl =
        std::min(static_cast<std::size_t>(cfg.rcl_size), remaining.size());
    // Nearest first; equal distances keep the lower index.
    std::partial_sort(remaining.begin(), remaining.begin() + static_cast<std::ptrdiff_t>(rcl),
                      remaining.end(), [&](std::size_t a, std::size_t b) {
                        const double da = Distance(here, points[a]);
                        const double db = Distance(here, points[b]);
                        return da != db ? da < db : a < b;
                      });
    const std::size_t pick = rcl == 1 ? 0 : static_cast<std::size_t>(rng() % rcl);
    tour.order.push_back(remaining[pick]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  tour.length = TourLength(points, tour.order);
  return tour;
}

Tour TwoOpt(std::span<const WorldPoint> points, Tour tour) {
  if (!IsPermutation(tour.order, points.size())) {
    throw std::invalid_argument("tour order is not a permutation of the points");
  }
  const std::size_t n = tour.order.size();
  if (n > 0 && tour.order.front() != 0) {
    auto start = std::find(tour.order.begin(), tour.order.end(), std::size_t{0});
    std::rotate(tour.order.begin(), start, tour.order.end());
  }
  auto& order = tour.order;
  auto at = [&](std::size_t pos) -> const WorldPoint& { return points[order[pos % n]]; };

  // Reversing positions [i, j] with 1 <= i < j <= n-1 reaches every 2-opt
  // move while keeping point 0 in front.
  while (n >= 4) {
    double best_delta = -kImprovementTolerance;
    std::size_t best_i = 0;
    std::size_t best_j = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double delta = Distance(at(i - 1), at(j)) + Distance(at(i), at(j + 1)) -
                             Distance(at(i - 1), at(i)) - Distance(at(j), at(j + 1));
        if (delta < best_delta) {
          best_delta = delta;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_j == 0) break;
    std::reverse(order.begin() + static_cast<std::ptrdiff_t>(best_i),
                 order.begin() + static_cast<std::ptrdiff_t>(best_j) + 1);
  }
  tour.length = TourLength(points, order);
  return tour;
}

std::uint64_t RoundSeed(std::uint64_t seed, std::uint64_t round) {
  // splitmix64 finalizer over the (seed, round) pair.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (round + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Tour GraspOrder(std::span<const WorldPoint> points, const GraspConfig& cfg) {
  cfg.Validate();
  if (points.empty()) return Tour{};
  if (points.size() == 1) return Tour{{0}, 0.0};

  const auto rounds = static_cast<std::size_t>(cfg.iterations);
  std::vector<Tour> results(rounds);
  auto run_round = [&](std::size_t r) {
    std::mt19937_64 rng(RoundSeed(cfg.seed, r));
    results[r] = TwoOpt(points, GreedyRandomizedConstruct(points, cfg, rng));
  };

  const std::size_t threads = std::min<std::size_t>(
      rounds, cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads)
                              : std::max(1u, std::thread::hardware_concurrency()));
  if (threads <= 1) {
    for (std::size_t r = 0; r < rounds; ++r) run_round(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < rounds; r = next++) run_round(r);
      });
    }
  }

  return *std::min_element(results.begin(), results.end(), Better);
}

}  // namespace patrolcov
