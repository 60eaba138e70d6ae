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

// patrolcov: plan a closed coverage patrol loop on an occupancy map.
//
//   patrolcov plan --map maps/two_rooms.yaml --out run/ [--config plan.yaml] [flags]
//   patrolcov metrics --path run/path.json --map maps/two_rooms.yaml

#include <iostream>

#include "CLI11.hpp"
#include "patrolcov/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = patrolcov::cli;
  CLI::App app{"Coverage patrol planner for occupancy grid maps"};
  app.require_subcommand(1);

  cli::PlanCommand plan;
  std::string plan_config;
  auto* plan_cmd = app.add_subcommand("plan", "Plan a patrol loop and write artifacts");
  plan_cmd->add_option("--map", plan.map_yaml, "Map YAML file")->required();
  plan_cmd->add_option("--config", plan_config, "Plan config YAML; flags override it");
  plan_cmd->add_option("--out", plan.out_dir, "Output directory")->required();
  auto& f = plan.flags;
  plan_cmd->add_option("--fov-deg", f.fov_deg, "Sensor field of view (degrees)");
  plan_cmd->add_option("--range-m", f.range_m, "Sensor range (meters)");
  plan_cmd->add_option("--min-coverage", f.min_coverage, "Stop above this free-area fraction");
  plan_cmd->add_option("--epsilon", f.epsilon, "Stop when relative area growth drops below");
  plan_cmd->add_option("--max-iterations", f.max_iterations, "Waypoint iteration cap");
  plan_cmd->add_option("--headings", f.headings, "Headings evaluated per candidate");
  plan_cmd->add_option("--grasp-iters", f.grasp_iterations, "GRASP restarts");
  plan_cmd->add_option("--rcl", f.rcl_size, "Restricted candidate list size");
  plan_cmd->add_option("--seed", f.seed, "GRASP seed");
  plan_cmd->add_option("--inflate-m", f.inflate_m, "Obstacle inflation radius (meters)");
  plan_cmd->add_option("--v-linear", f.v_linear, "Linear velocity (m/s)");
  plan_cmd->add_option("--v-angular", f.v_angular, "Angular velocity (rad/s)");
  plan_cmd->add_option("--start", f.start, "Start pose \"x,y,deg\" in world coordinates");
  plan_cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  plan_cmd->add_option("--rotation-mode", f.rotation_mode, "Rotation metric: path | waypoints");

  cli::MetricsCommand metrics;
  auto* metrics_cmd =
      app.add_subcommand("metrics", "Recompute metrics from a stored path.json");
  metrics_cmd->add_option("--path", metrics.path_json, "path.json from a plan run")->required();
  metrics_cmd->add_option("--map", metrics.map_yaml, "Map YAML file")->required();
  metrics_cmd->add_option("--v-linear", metrics.v_linear, "Linear velocity (m/s)");
  metrics_cmd->add_option("--v-angular", metrics.v_angular, "Angular velocity (rad/s)");
  metrics_cmd->add_option("--rotation-mode", metrics.rotation_mode, "path | waypoints");

  CLI11_PARSE(app, argc, argv);

  if (plan_cmd->parsed()) {
    if (!plan_config.empty()) plan.config = plan_config;
    return cli::CmdPlan(plan, std::cout, std::cerr);
  }
  return cli::CmdMetrics(metrics, std::cout, std::cerr);
}
