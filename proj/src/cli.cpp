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

#include "patrolcov/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "json.hpp"
#include "patrolcov/render.hpp"

namespace patrolcov::cli {

namespace {

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument(fmt::format("cannot open '{}'", path.string()));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteText(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument(fmt::format("cannot write '{}'", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::invalid_argument(fmt::format("failed writing '{}'", path.string()));
}

double ParseDouble(std::string_view text, std::string_view what) {
  std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(value)) {
    throw std::invalid_argument(fmt::format("invalid {} '{}'", what, text));
  }
  return value;
}

}  // namespace

StartSpec ParseStart(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = text.find(',', begin);
    parts.push_back(text.substr(begin, comma - begin));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  if (parts.size() != 3) {
    throw std::invalid_argument(fmt::format("start must be \"x,y,deg\", got '{}'", text));
  }
  StartSpec spec;
  spec.position.x = ParseDouble(parts[0], "start x");
  spec.position.y = ParseDouble(parts[1], "start y");
  spec.heading_deg = ParseDouble(parts[2], "start heading");
  return spec;
}

void ApplyFlags(PlanConfig& config, const PlanFlags& flags) {
  if (flags.fov_deg) config.fov_deg = *flags.fov_deg;
  if (flags.range_m) config.range_m = *flags.range_m;
  if (flags.min_coverage) config.stop.min_coverage_fraction = *flags.min_coverage;
  if (flags.epsilon) config.stop.epsilon = *flags.epsilon;
  if (flags.max_iterations) config.stop.max_iterations = *flags.max_iterations;
  if (flags.headings) config.headings = *flags.headings;
  if (flags.grasp_iterations) config.grasp.iterations = *flags.grasp_iterations;
  if (flags.rcl_size) config.grasp.rcl_size = *flags.rcl_size;
  if (flags.seed) config.grasp.seed = *flags.seed;
  if (flags.inflate_m) config.inflation_radius_m = *flags.inflate_m;
  if (flags.v_linear) config.velocities.v_linear = *flags.v_linear;
  if (flags.v_angular) config.velocities.v_angular = *flags.v_angular;
  if (flags.start) config.start = ParseStart(*flags.start);
  if (flags.threads) config.threads = *flags.threads;
  if (flags.rotation_mode) config.rotation_mode = ParseRotationMode(*flags.rotation_mode);
}

PlanConfig ResolvePlanConfig(const PlanCommand& cmd) {
  PlanConfig config;
  if (cmd.config) ApplyConfigYaml(config, ReadText(*cmd.config));
  ApplyFlags(config, cmd.flags);
  config.Validate();
  return config;
}

MetricsReport RecomputeMetrics(std::string_view path_json, const OccupancyGrid& grid,
                               const std::optional<VelocityModel>& velocities,
                               const std::optional<RotationMode>& mode) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(path_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(fmt::format("path.json parse error: {}", e.what()));
  }

  try {
    const double resolution = doc.at("resolution").get<double>();
    const auto origin = doc.at("origin").get<std::vector<double>>();
    if (doc.at("width").get<int>() != grid.width() ||
        doc.at("height").get<int>() != grid.height()) {
      throw std::invalid_argument(fmt::format(
          "artifact is for a {}x{} map, map is {}x{}", doc.at("width").get<int>(),
          doc.at("height").get<int>(), grid.width(), grid.height()));
    }
    if (std::abs(resolution - grid.resolution()) > 1e-12 || origin.size() < 2 ||
        std::abs(origin[0] - grid.origin().x) > 1e-9 ||
        std::abs(origin[1] - grid.origin().y) > 1e-9) {
      throw std::invalid_argument("artifact resolution or origin does not match the map");
    }

    GlobalPath path;
    path.closed = doc.at("closed").get<bool>();
    for (const auto& c : doc.at("cells")) {
      const GridIndex cell{c.at(0).get<int>(), c.at(1).get<int>()};
      if (!grid.IsFree(cell)) {
        throw std::invalid_argument(
            fmt::format("path cell {} is not a Free cell of the map", ToString(cell)));
      }
      path.cells.push_back(cell);
    }

    std::vector<Waypoint> waypoints;
    for (const auto& w : doc.at("waypoints")) {
      const GridIndex cell{w.at("row").get<int>(), w.at("col").get<int>()};
      if (!grid.IsFree(cell)) {
        throw std::invalid_argument(
            fmt::format("waypoint {} is not a Free cell of the map", ToString(cell)));
      }
      waypoints.push_back(Waypoint{Pose{cell, w.at("heading_rad").get<double>()}, 0.0});
    }
    const auto order = doc.at("waypoint_order").get<std::vector<std::size_t>>();
    if (!IsPermutation(order, waypoints.size())) {
      throw std::invalid_argument("waypoint_order is not a permutation of the waypoints");
    }

    const SensorModel sensor{doc.at("sensor").at("fov_rad").get<double>(),
                             doc.at("sensor").at("range_m").get<double>()};
    const VelocityModel v = velocities.value_or(
        VelocityModel{doc.at("velocity").at("linear").get<double>(),
                      doc.at("velocity").at("angular").get<double>()});
    const RotationMode rotation = mode.value_or(
        ParseRotationMode(doc.at("rotation_mode").get<std::string>()));

    MetricsReport report;
    report.path_length = PathLength(path, grid.resolution());
    if (rotation == RotationMode::kPath) {
      report.total_rotation = CumulativeRotation(path);
    } else {
      std::vector<WorldPoint> loop;
      for (std::size_t i : order) loop.push_back(GridToWorld(grid, waypoints[i].pose.cell));
      report.total_rotation = WaypointRotation(loop);
    }
    report.revisit_time = RevisitTime(report.path_length, report.total_rotation, v);
    CoverageGrid cov(grid);
    for (const Waypoint& w : waypoints) MarkExplored(cov, w.pose, sensor);
    report.coverage_percent = CoveragePercent(cov);
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(fmt::format("path.json is malformed: {}", e.what()));
  }
}

int CmdPlan(const PlanCommand& cmd, std::ostream& out, std::ostream& err) {
  PlanConfig config;
  std::optional<OccupancyGrid> grid;
  try {
    config = ResolvePlanConfig(cmd);
    grid.emplace(LoadMapFile(cmd.map_yaml));
    std::filesystem::create_directories(cmd.out_dir);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitBadInput;
  }

  std::optional<PlanResult> result;
  try {
    result.emplace(RunPlan(*grid, config));
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitPlanFailed;
  }

  try {
    const auto& r = *result;
    WriteText(cmd.out_dir / "waypoints.csv", WaypointsCsv(*grid, r));
    WriteText(cmd.out_dir / "path.json", PathJson(*grid, config, r));
    WriteText(cmd.out_dir / "metrics.json", MetricsJson(r));
    std::vector<std::size_t> commit_order(r.waypoints.waypoints.size());
    for (std::size_t i = 0; i < commit_order.size(); ++i) commit_order[i] = i;
    WriteText(cmd.out_dir / "plan.svg",
              RenderPlan(*grid, r.waypoints.coverage, r.waypoints.waypoints,
                         commit_order, r.path));

    fmt::print(out, "waypoints          {}\n", r.waypoints.waypoints.size());
    fmt::print(out, "stop reason        {}\n", ToString(r.waypoints.reason));
    fmt::print(out, "tour length        {:.3f} m (commit order {:.3f} m)\n", r.tour.length,
               r.commit_order_length);
    fmt::print(out, "path length        {:.3f} m\n", r.metrics.path_length);
    fmt::print(out, "total rotation     {:.3f} rad\n", r.metrics.total_rotation);
    fmt::print(out, "revisit time       {:.3f} s\n", r.metrics.revisit_time);
    fmt::print(out, "coverage           {:.2f} %\n", r.metrics.coverage_percent);
    fmt::print(out, "computation time   {:.3f} s\n", r.metrics.computation_time);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitBadInput;
  }
  return kExitOk;
}

int CmdMetrics(const MetricsCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    std::optional<VelocityModel> velocities;
    if (cmd.v_linear || cmd.v_angular) {
      if (!cmd.v_linear || !cmd.v_angular) {
        throw std::invalid_argument("give both --v-linear and --v-angular");
      }
      velocities = VelocityModel{*cmd.v_linear, *cmd.v_angular};
      velocities->Validate();
    }
    std::optional<RotationMode> mode;
    if (cmd.rotation_mode) mode = ParseRotationMode(*cmd.rotation_mode);

    const OccupancyGrid grid = LoadMapFile(cmd.map_yaml);
    const MetricsReport report =
        RecomputeMetrics(ReadText(cmd.path_json), grid, velocities, mode);
    nlohmann::ordered_json doc;
    doc["path_length"] = report.path_length;
    doc["total_rotation"] = report.total_rotation;
    doc["revisit_time"] = report.revisit_time;
    doc["coverage_percent"] = report.coverage_percent;
    out << doc.dump(2) << "\n";
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitBadInput;
  }
  return kExitOk;
}

}  // namespace patrolcov::cli
