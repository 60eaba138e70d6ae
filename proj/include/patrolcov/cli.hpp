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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "patrolcov/metrics.hpp"
#include "patrolcov/pipeline.hpp"

namespace patrolcov::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitPlanFailed = 3;

/// Command-line overrides; unset fields keep the config-file value.
struct PlanFlags {
  std::optional<double> fov_deg;
  std::optional<double> range_m;
  std::optional<double> min_coverage;
  std::optional<double> epsilon;
  std::optional<int> max_iterations;
  std::optional<int> headings;
  std::optional<int> grasp_iterations;
  std::optional<int> rcl_size;
  std::optional<std::uint64_t> seed;
  std::optional<double> inflate_m;
  std::optional<double> v_linear;
  std::optional<double> v_angular;
  std::optional<std::string> start;  // "x,y,deg"
  std::optional<int> threads;
  std::optional<std::string> rotation_mode;
};

struct PlanCommand {
  std::filesystem::path map_yaml;
  std::optional<std::filesystem::path> config;
  PlanFlags flags;
  std::filesystem::path out_dir = ".";
};

struct MetricsCommand {
  std::filesystem::path path_json;
  std::filesystem::path map_yaml;
  std::optional<double> v_linear;
  std::optional<double> v_angular;
  std::optional<std::string> rotation_mode;
};

/// Parses "x,y,deg" (meters, meters, degrees).
StartSpec ParseStart(std::string_view text);

void ApplyFlags(PlanConfig& config, const PlanFlags& flags);

/// Config file (if any) overlaid with flags.
PlanConfig ResolvePlanConfig(const PlanCommand& cmd);

/// Recomputes path length, rotation, revisit time and coverage from a path
/// artifact and its map. Throws std::invalid_argument on malformed or
/// mismatched artifacts.
MetricsReport RecomputeMetrics(std::string_view path_json, const OccupancyGrid& grid,
                               const std::optional<VelocityModel>& velocities,
                               const std::optional<RotationMode>& mode);

/// Writes waypoints.csv, path.json, metrics.json and plan.svg to out_dir and
/// prints a summary. Returns a process exit code.
int CmdPlan(const PlanCommand& cmd, std::ostream& out, std::ostream& err);

/// Prints metrics recomputed from stored artifacts as JSON.
int CmdMetrics(const MetricsCommand& cmd, std::ostream& out, std::ostream& err);

}  // namespace patrolcov::cli
