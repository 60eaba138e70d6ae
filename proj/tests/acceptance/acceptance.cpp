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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <fmt/core.h>

#include "oracles.hpp"
#include "patrolcov/cli.hpp"
#include "patrolcov/path_plan.hpp"
#include "patrolcov/pipeline.hpp"
#include "patrolcov/sensor.hpp"
#include "patrolcov/tour_opt.hpp"

namespace patrolcov {
namespace {

namespace fs = std::filesystem;
using std::numbers::pi;

const std::vector<std::string> kMaps{"two_rooms", "office", "ring"};

std::string MapPath(const std::string& name) {
  return std::string(PATROLCOV_DATA_DIR) + "/maps/" + name + ".yaml";
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Every planning run made by the suite, for the cross-run checks.
struct RunRecord {
  std::string label;
  bool bundled = false;
  WaypointPlan plan;
};

struct Context {
  std::vector<OccupancyGrid> grids;  // one per bundled map, stable addresses
  std::vector<RunRecord> runs;
  std::vector<std::vector<WorldPoint>> tour_points;
  std::vector<std::vector<std::size_t>> tour_orders;
};

PlanConfig BaseConfig(double fov_deg) {
  PlanConfig config;
  config.fov_deg = fov_deg;
  config.range_m = 5.0;
  config.stop.min_coverage_fraction = 0.95;
  config.stop.epsilon = 0.005;
  return config;
}

PlanResult Plan(Context& ctx, std::size_t map, double fov_deg) {
  PlanResult r = RunPlan(ctx.grids[map], BaseConfig(fov_deg));
  ctx.runs.push_back({fmt::format("{} fov {}", kMaps[map], fov_deg), true, r.waypoints});
  ctx.tour_points.push_back(r.points);
  ctx.tour_orders.push_back(r.tour.order);
  return r;
}

Verdict Ac1(Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto grid = LoadMapFile(MapPath("two_rooms"));
  const PlanResult r = RunPlan(grid, BaseConfig(120.0));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = grid.width() == 60 && grid.height() == 60 &&
                  r.metrics.coverage_percent >= 92.0 && secs < 60.0;
  (void)ctx;
  return {ok, fmt::format("two_rooms 60x60: coverage {:.2f}% (>= 92), wall clock {:.3f} s (< 60)",
                          r.metrics.coverage_percent, secs)};
}

Verdict Ac2(Context& ctx) {
  Verdict v;
  for (std::size_t m = 0; m < kMaps.size(); ++m) {
    const double c90 = Plan(ctx, m, 90.0).metrics.coverage_percent;
    const double c120 = Plan(ctx, m, 120.0).metrics.coverage_percent;
    // Judged on the two-room map; the other maps are reported only.
    if (m == 0) v.pass = c120 >= c90;
    v.detail += fmt::format("{}{}: 120deg {:.2f}% vs 90deg {:.2f}%{}", m ? "; " : "", kMaps[m],
                            c120, c90, m == 0 ? "" : " (informational)");
  }
  return v;
}

Verdict Ac3(Context& ctx) {
  Verdict v;
  int crossing_maps = 0;
  for (std::size_t m = 0; m < kMaps.size(); ++m) {
    const PlanResult r = RunPlan(ctx.grids[m], BaseConfig(120.0));
    const bool crosses = oracle::LoopSelfIntersects(r.points);
    std::vector<std::size_t> commit(r.points.size());
    for (std::size_t i = 0; i < commit.size(); ++i) commit[i] = i;
    const double before = oracle::LoopLength(r.points, commit);
    const double after = oracle::LoopLength(r.points, r.tour.order);
    bool ok = after <= before + 1e-9;
    if (crosses) {
      ++crossing_maps;
      ok = ok && after < before - 1e-9;
    }
    v.pass = v.pass && ok;
    v.detail += fmt::format("{}{}: {:.3f} m -> {:.3f} m{}", m ? "; " : "", kMaps[m], before,
                            after, crosses ? " (commit loop self-intersects)" : "");
  }
  if (crossing_maps == 0) {
    v.pass = false;
    v.detail += "; no bundled map has a self-intersecting commit loop";
  }
  return v;
}

Verdict Ac4(Context& ctx) {
  double worst_gain = 0.0;
  std::size_t scanned = 0;
  for (std::size_t i = 0; i < ctx.tour_orders.size(); ++i) {
    worst_gain = std::max(worst_gain, oracle::BestTwoOptGain(ctx.tour_points[i], ctx.tour_orders[i]));
    ++scanned;
  }
  std::mt19937_64 rng(2024);
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = oracle::RandomPoints(rng, 10);
    const Tour t = GraspOrder(pts, GraspConfig{});
    worst_gain = std::max(worst_gain, oracle::BestTwoOptGain(pts, t.order));
    ++scanned;
    worst_ratio = std::max(worst_ratio, t.length / oracle::BruteForceOptimum(pts));
  }
  const bool ok = worst_gain <= 1e-9 && worst_ratio <= 1.05;
  return {ok, fmt::format("{} tours scanned, best 2-opt gain {:.2e}; 50 random 10-point "
                          "instances, worst GRASP/optimum {:.4f} (<= 1.05)",
                          scanned, worst_gain, worst_ratio)};
}

Verdict Ac5(Context&) {
  std::mt19937_64 rng(5);
  int solved = 0;
  int mismatches = 0;
  int attempts = 0;
  while (solved < 100) {
    ++attempts;
    const auto grid = oracle::RandomGrid(rng, 30, 30, 0.25);
    std::uniform_int_distribution<int> cell(0, 29);
    GridIndex s{cell(rng), cell(rng)};
    GridIndex t{cell(rng), cell(rng)};
    if (!grid.IsFree(s) || !grid.IsFree(t)) continue;
    const auto expected = oracle::DijkstraCost(grid, s, t);
    if (expected.straight < 0) continue;
    ++solved;
    const auto steps = CountSteps(AStar(grid, s, t));
    if (oracle::CompareCost({steps.straight, steps.diagonal}, expected) != 0) ++mismatches;
  }
  return {mismatches == 0, fmt::format("{} solvable maps ({} drawn), {} cost mismatches", solved,
                                       attempts, mismatches)};
}

Verdict Ac6(Context&) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> cell(0, 19);
  std::uniform_real_distribution<double> angle(-pi, pi);
  std::size_t only_traced = 0;
  std::size_t only_marched = 0;
  std::size_t visible_total = 0;
  int audit_failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto grid = oracle::RandomGrid(rng, 20, 20, 0.15);
    GridIndex pose{cell(rng), cell(rng)};
    while (!grid.IsFree(pose)) pose = {cell(rng), cell(rng)};
    const double heading = angle(rng);
    const SensorModel sensor{2 * pi / 3, 0.5};
    const auto seen = VisibleCells(grid, Pose{pose, heading}, sensor);
    const std::set<GridIndex> mine(seen.begin(), seen.end());
    const auto ref = oracle::VisibleByRayMarch(grid, pose, heading, sensor.fov, sensor.range);
    for (GridIndex c : mine) only_traced += ref.contains(c) ? 0 : 1;
    for (GridIndex c : ref) only_marched += mine.contains(c) ? 0 : 1;
    visible_total += mine.size();
    for (GridIndex c : mine) {
      const auto line = oracle::RoundedLine(pose, c);
      for (std::size_t i = 1; i + 1 < line.size(); ++i) {
        if (!grid.IsFree(line[i])) {
          ++audit_failures;
          break;
        }
      }
    }
  }
  const double ratio =
      static_cast<double>(only_traced + only_marched) / static_cast<double>(visible_total);
  const bool ok = ratio <= 0.03 && audit_failures == 0;
  return {ok, fmt::format("100 maps at 15% density: symmetric difference {:.2f}% of {} visible "
                          "cells (<= 3%): {} seen only by the line trace, {} only by the ray "
                          "march; {} occlusion audit failures",
                          100 * ratio, visible_total, only_traced, only_marched,
                          audit_failures)};
}

Verdict Ac7(Context& ctx) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto grid = oracle::RandomGrid(rng, 30, 30, 0.2);
    GridIndex start{0, 0};
    while (!grid.IsFree(start)) start.col++;
    ctx.runs.push_back({"random", false,
                        GenerateWaypoints(grid, Pose{start, 0.0}, SensorModel{pi / 2, 0.6},
                                          StopConfig{0.95, 0.005, 10000})});
  }
  int negative = 0;
  int limited = 0;
  std::size_t iterations = 0;
  for (const RunRecord& run : ctx.runs) {
    for (const auto& it : run.plan.iterations) {
      ++iterations;
      if (it.area_after < it.area_before) ++negative;
    }
    for (const auto& w : run.plan.waypoints) {
      if (w.gained_area < 0.0) ++negative;
    }
    if (run.bundled && run.plan.reason == StopReason::kIterationLimit) ++limited;
  }
  std::string reasons;
  for (const RunRecord& run : ctx.runs) {
    if (run.bundled) reasons += fmt::format(", {} {}", run.label, ToString(run.plan.reason));
  }
  return {negative == 0 && limited == 0,
          fmt::format("{} runs, {} iterations, {} negative gains, {} bundled runs at the "
                      "iteration limit{}",
                      ctx.runs.size(), iterations, negative, limited, reasons)};
}

Verdict Ac8(Context& ctx) {
  const double revisit = RevisitTime(100.0, 40.0, VelocityModel{1.0, 2.0});
  GlobalPath square;
  square.cells = {{0, 0}, {0, 1}, {1, 1}, {1, 0}, {0, 0}};
  square.closed = true;
  const double turn = CumulativeRotation(square);
  double worst = 0.0;
  for (std::size_t m = 0; m < kMaps.size(); ++m) {
    const PlanResult r = RunPlan(ctx.grids[m], BaseConfig(120.0));
    double legs = 0.0;
    const auto& order = r.tour.order;
    for (std::size_t k = 0; k < order.size() && order.size() > 1; ++k) {
      const GridIndex a = r.waypoints.waypoints[order[k]].pose.cell;
      const GridIndex b = r.waypoints.waypoints[order[(k + 1) % order.size()]].pose.cell;
      legs += CountSteps(AStar(r.inflated, a, b)).Cost();
    }
    worst = std::max(worst, std::abs(r.metrics.path_length - legs * ctx.grids[m].resolution()));
  }
  const bool ok = revisit == 120.0 && std::abs(turn - 2 * pi) <= 1e-9 && worst <= 1e-9;
  return {ok, fmt::format("revisit_time {} s, square rotation error {:.1e}, worst path length "
                          "vs A* leg sum {:.1e} m",
                          revisit, std::abs(turn - 2 * pi), worst)};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict Ac9(Context&) {
  const fs::path root =
      fs::temp_directory_path() / fmt::format("patrolcov_acceptance_{}", ::getpid());
  Verdict v;
  for (const std::string& map : kMaps) {
    std::string first[3];
    for (int run = 0; run < 2; ++run) {
      cli::PlanCommand cmd;
      cmd.map_yaml = MapPath(map);
      cmd.out_dir = root / fmt::format("{}_{}", map, run);
      cmd.flags.seed = 42;
      std::ostringstream out;
      std::ostringstream err;
      if (cli::CmdPlan(cmd, out, err) != cli::kExitOk) {
        v.pass = false;
        v.detail += fmt::format("{} plan failed: {}; ", map, err.str());
        continue;
      }
      const char* files[3] = {"waypoints.csv", "path.json", "plan.svg"};
      for (int f = 0; f < 3; ++f) {
        const std::string text = Slurp(cmd.out_dir / files[f]);
        if (run == 0) {
          first[f] = text;
        } else if (text != first[f] || text.empty()) {
          v.pass = false;
          v.detail += fmt::format("{} {} differs; ", map, files[f]);
        }
      }
    }
  }
  fs::remove_all(root);
  if (v.pass) v.detail = "waypoints.csv, path.json and plan.svg identical across runs on all maps";
  return v;
}

}  // namespace
}  // namespace patrolcov

int main(int argc, char** argv) {
  using namespace patrolcov;
  // --known-failure ACn marks a criterion whose FAIL does not fail the run.
  std::set<std::string> known;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--known-failure") known.insert(argv[++i]);
  }

  Context ctx;
  for (const std::string& m : kMaps) ctx.grids.push_back(LoadMapFile(MapPath(m)));

  const std::vector<std::tuple<const char*, const char*, std::function<Verdict(Context&)>>>
      criteria{
          {"AC1", "coverage at desk scale", Ac1},
          {"AC2", "fov monotonicity", Ac2},
          {"AC3", "tour optimisation gain", Ac3},
          {"AC4", "2-opt local optimality", Ac4},
          {"AC5", "A* optimality", Ac5},
          {"AC6", "visibility soundness", Ac6},
          {"AC7", "monotone coverage and termination", Ac7},
          {"AC8", "metric identities", Ac8},
          {"AC9", "determinism", Ac9},
      };
  int passed = 0;
  int unexpected = 0;
  for (const auto& [id, name, check] : criteria) {
    Verdict v;
    try {
      v = check(ctx);
    } catch (const std::exception& e) {
      v = {false, fmt::format("exception: {}", e.what())};
    }
    if (v.pass) {
      ++passed;
    } else if (!known.contains(id)) {
      ++unexpected;
    }
    fmt::print("{} {} {}: {}\n", v.pass ? "PASS" : "FAIL", id, name, v.detail);
    std::cout.flush();
  }
  fmt::print("{} of {} criteria passed", passed, criteria.size());
  if (!known.empty()) {
    std::string list;
    for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
    fmt::print(" (known failures: {})", list);
  }
  fmt::print("\n");
  return unexpected == 0 ? 0 : 1;
}
