/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 noma-urllc contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: train, eval, sweep-sa, flops, validate-config.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "noma/error.hpp"
#include "noma/flops.hpp"
#include "noma/harness.hpp"

namespace {

int exit_code(const noma::Error& e) {
  switch (e.code()) {
    case noma::ErrorCode::kParse:
    case noma::ErrorCode::kValidation:
      return 2;
    case noma::ErrorCode::kIo:
    case noma::ErrorCode::kCheckpoint:
      return 3;
    default:
      return 1;
  }
}

void print_summary(const noma::RunReport& r) {
  std::printf("agent %s  config %s\n", r.agent.c_str(), r.config_hash.c_str());
  for (const auto& s : r.seeds) {
    std::printf("  seed %llu  score %.6f  jain %.4f  generated %llu  delivered %llu  expired %llu  residual %llu",
                static_cast<unsigned long long>(s.seed), s.urllc_score, s.jain,
                static_cast<unsigned long long>(s.generated), static_cast<unsigned long long>(s.delivered),
                static_cast<unsigned long long>(s.expired), static_cast<unsigned long long>(s.residual));
    if (s.sa_probability) std::printf("  p %.3f", *s.sa_probability);
    std::printf("\n");
  }
  std::printf("mean score %.6f (sd %.6f over %zu seeds), %.1f s\n", r.mean_score, r.score_std, r.seeds.size(),
              r.wall_clock_s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NOMA uplink URLLC scheduling: simulation, training and baselines"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::vector<std::uint64_t> seeds;
  std::string out_dir;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path, "Scenario file (key = value)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", seeds, "Seed(s); overrides the scenario's seed list");
    cmd->add_option("--out", out_dir, "Output directory for curve.csv, report.json and checkpoints");
  };

  CLI::App* train = app.add_subcommand("train", "Train (learning agents) or evaluate (baselines) per seed");
  add_common(train);
  std::string trace_path;
  train->add_option("--trace", trace_path, "Write the first evaluation episode as NDJSON");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a checkpoint or a baseline");
  add_common(eval);
  std::string checkpoint;
  eval->add_option("--checkpoint", checkpoint, "Checkpoint written by train")->check(CLI::ExistingFile);
  eval->add_option("--trace", trace_path, "Write the first evaluation episode as NDJSON");

  CLI::App* sweep = app.add_subcommand("sweep-sa", "Grid search of the slotted ALOHA transmit probability");
  add_common(sweep);

  CLI::App* flops = app.add_subcommand("flops", "Forward-pass FLOPs per decision");
  std::string arch = "noma_ppo";
  std::uint64_t k = 18;
  std::uint64_t hidden = 256;
  std::uint64_t input = 0;
  flops->add_option("--arch", arch, "noma_ppo, bdq or idrqn_agent")
      ->check(CLI::IsMember({"noma_ppo", "bdq", "idrqn_agent"}));
  flops->add_option("-K,--devices", k, "Number of devices")->check(CLI::PositiveNumber);
  flops->add_option("-H,--hidden", hidden, "Hidden width")->check(CLI::PositiveNumber);
  flops->add_option("--input", input, "Input width (default 5K+1, or 7 for idrqn_agent)");

  CLI::App* validate = app.add_subcommand("validate-config", "Parse a scenario and print derived quantities");
  validate->add_option("--scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    noma::RunOptions options;
    if (!seeds.empty()) options.seeds = seeds;
    if (!out_dir.empty()) options.out_dir = out_dir;
    if (!trace_path.empty()) options.trace_path = trace_path;
    options.log = [](const std::string& line) { std::fprintf(stderr, "%s\n", line.c_str()); };

    if (*flops) {
      const auto a = *noma::parse_architecture(arch);
      if (input == 0) input = a == noma::Architecture::kIdrqnAgent ? 7 : 5 * k + 1;
      std::printf("%s K=%llu H=%llu H_in=%llu: %llu FLOPs\n", arch.c_str(), static_cast<unsigned long long>(k),
                  static_cast<unsigned long long>(hidden), static_cast<unsigned long long>(input),
                  static_cast<unsigned long long>(noma::flops_estimate(a, k, hidden, input)));
      return 0;
    }

    const noma::Scenario scenario = noma::load_scenario(scenario_path);
    if (*validate) {
      std::printf("%s", noma::format_scenario(scenario).c_str());
      std::printf("# frame duration %.6g s\n", scenario.frame_duration());
      std::printf("# deadline %d frames\n", scenario.deadline_frames());
      if (scenario.traffic.model == noma::TrafficModel::kPeriodic)
        std::printf("# period %d frames\n", scenario.period_frames());
      else
        std::printf("# arrival rate %.6g packets per frame\n", scenario.rate_per_frame());
      if (noma::is_learning_agent(scenario.agent)) {
        std::printf("# power threshold %.6g W\n", scenario.power_threshold());
        std::printf("# staleness threshold %d frames\n", scenario.staleness_frames());
      }
      return 0;
    }
    if (*train) {
      print_summary(noma::run_training(scenario, options));
      return 0;
    }
    if (*eval) {
      std::optional<std::string> ckpt;
      if (!checkpoint.empty()) ckpt = checkpoint;
      print_summary(noma::run_evaluation(scenario, ckpt, options));
      return 0;
    }
    if (*sweep) {
      const auto run_seeds = options.seeds.value_or(scenario.seeds);
      std::ofstream csv;
      if (options.out_dir) {
        std::filesystem::create_directories(*options.out_dir);
        csv.open(std::filesystem::path(*options.out_dir) / "sweep.csv", std::ios::trunc);
        csv << "seed,probability,urllc_score\n";
      }
      for (std::uint64_t seed : run_seeds) {
        std::vector<noma::SweepPoint> table;
        const double best = noma::sweep_sa(scenario, seed, &table);
        for (const auto& p : table) {
          std::printf("seed %llu  p %.3f  score %.6f\n", static_cast<unsigned long long>(seed), p.probability,
                      p.urllc_score);
          if (csv.is_open()) csv << seed << ',' << p.probability << ',' << p.urllc_score << '\n';
        }
        std::printf("seed %llu  best p %.3f\n", static_cast<unsigned long long>(seed), best);
      }
      return 0;
    }
  } catch (const noma::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
