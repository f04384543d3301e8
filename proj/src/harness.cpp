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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "noma/checkpoint.hpp"
#include "noma/error.hpp"
#include "noma/harness.hpp"

namespace noma {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

RunReport start_report(const Scenario& scenario) {
  RunReport r;
  r.agent = std::string(to_string(scenario.agent));
  r.config = format_scenario(scenario);
  r.config_hash = hex64(scenario_hash(scenario));
  return r;
}

void finish_report(RunReport& r, const std::vector<EvalTally>& tallies,
                   std::chrono::steady_clock::time_point start) {
  for (const EvalTally& t : tallies) {
    r.conservation_failures += t.audit.conservation_failures + (t.conserves() ? 0 : 1);
    r.overloaded_frames += t.audit.overloaded_frames;
    r.overloaded_with_reward += t.audit.overloaded_with_reward;
  }
  r.summarize();
  r.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void say(const RunOptions& o, const std::string& line) {
  if (o.log) o.log(line);
}

void maybe_trace(const Scenario& scenario, const SchedulingPolicy& policy, std::uint64_t seed,
                 const RunOptions& options) {
  if (!options.trace_path) return;
  Environment env(scenario.env_config());
  Rng rng = make_rng(seed, streams::kEvaluation, 0);
  std::vector<FrameRecord> trace;
  run_episode(env, policy, rng, &trace);
  std::ofstream out(*options.trace_path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write trace " + *options.trace_path);
  write_trace(out, trace);
}

std::string seed_file(const RunOptions& options, const std::string& name) {
  return (std::filesystem::path(*options.out_dir) / name).string();
}

// Evaluation-only pass shared by baselines in both verbs.
RunReport run_baseline(const Scenario& scenario, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report = start_report(scenario);
  const EnvConfig env = scenario.env_config();
  std::vector<EvalTally> tallies;
  const auto seeds = options.seeds.value_or(scenario.seeds);
  for (std::uint64_t seed : seeds) {
    std::optional<double> p;
    if (scenario.agent == AgentKind::kSaNomaSic) p = scenario.sa.probability.value_or(sweep_sa(scenario, seed));
    const auto policy = make_baseline(scenario, p.value_or(0.0));
    const EvalTally tally = evaluate_policy(env, *policy, scenario.eval.episodes, seed);
    SeedReport sr = SeedReport::from_tally(seed, tally);
    sr.sa_probability = p;
    report.curve.push_back({seed, 0, 0, sr.urllc_score, sr.mean_reward});
    report.seeds.push_back(sr);
    tallies.push_back(tally);
    if (seed == seeds.front()) maybe_trace(scenario, *policy, seed, options);
    say(options, "seed " + std::to_string(seed) + ": score " + std::to_string(sr.urllc_score));
  }
  finish_report(report, tallies, start);
  if (options.out_dir) emit_metrics(report, *options.out_dir);
  return report;
}

}  // namespace

std::unique_ptr<SchedulingPolicy> make_baseline(const Scenario& scenario, double sa_probability) {
  switch (scenario.agent) {
    case AgentKind::kRandom:
      return std::make_unique<RandomPolicy>(scenario.phy.sic_limit);
    case AgentKind::kEdfOracle:
      return std::make_unique<EdfOraclePolicy>(scenario.phy.sic_limit);
    case AgentKind::kSaNomaSic:
      return std::make_unique<SlottedAlohaPolicy>(sa_probability);
    default:
      throw Error(ErrorCode::kInvalidArgument, std::string(to_string(scenario.agent)) + " is not a baseline");
  }
}

double sweep_sa(const Scenario& scenario, std::uint64_t seed, std::vector<SweepPoint>* table) {
  const EnvConfig env = scenario.env_config();
  return optimize_sa_probability(scenario.sa.grid, [&](double p) {
    const SlottedAlohaPolicy policy(p);
    const double score = evaluate_policy(env, policy, scenario.sa.episodes_per_point, seed, streams::kSweep).score();
    if (table) table->push_back({p, score});
    return score;
  });
}

RunReport run_training(const Scenario& scenario, const RunOptions& options) {
  scenario.validate();
  if (!is_learning_agent(scenario.agent)) return run_baseline(scenario, options);

  const auto start = std::chrono::steady_clock::now();
  RunReport report = start_report(scenario);
  const EnvConfig env = scenario.env_config();
  TrainConfig tc;
  tc.ppo = scenario.ppo;
  tc.agent = scenario.agent_options();
  tc.eval_cadence = scenario.eval.cadence;
  tc.curve_eval_episodes = scenario.eval.curve_episodes;
  tc.checkpoint_cadence = scenario.checkpoint_cadence;

  std::ofstream curve_file;
  if (options.out_dir) {
    std::filesystem::create_directories(*options.out_dir);
    curve_file.open(seed_file(options, "curve.csv"), std::ios::trunc);
    if (!curve_file) throw Error(ErrorCode::kIo, "cannot write curve.csv in " + *options.out_dir);
    write_curve_header(curve_file);
    curve_file.flush();
  }

  std::vector<EvalTally> tallies;
  const auto seeds = options.seeds.value_or(scenario.seeds);
  for (std::uint64_t seed : seeds) {
    TrainHooks hooks;
    hooks.on_curve_point = [&](const CurvePoint& p) {
      if (curve_file.is_open()) {
        write_curve_row(curve_file, p);
        curve_file.flush();
      }
      say(options, "seed " + std::to_string(seed) + " episodes " + std::to_string(p.episodes_seen) + ": score " +
                       std::to_string(p.urllc_score));
    };
    if (options.out_dir)
      hooks.on_checkpoint = [&](const PpoAgent& agent) {
        save_checkpoint(seed_file(options, "checkpoint_seed" + std::to_string(seed) + "_update" +
                                               std::to_string(agent.updates) + ".bin"),
                        agent);
      };
    TrainResult result = train(env, tc, seed, hooks);
    report.curve.insert(report.curve.end(), result.curve.begin(), result.curve.end());
    tallies.push_back(result.training_tally);

    const EvalTally tally = evaluate_agent(env, result.agent, tc.agent, scenario.eval.episodes, seed);
    report.seeds.push_back(SeedReport::from_tally(seed, tally));
    tallies.push_back(tally);
    if (options.out_dir)
      save_checkpoint(seed_file(options, "checkpoint_seed" + std::to_string(seed) + ".bin"), result.agent);
    if (seed == seeds.front()) maybe_trace(scenario, BranchingPolicy(result.agent.policy, tc.agent), seed, options);
    say(options, "seed " + std::to_string(seed) + ": final score " + std::to_string(report.seeds.back().urllc_score));
  }
  // Conservation covers the training episodes as well; only evaluation
  // tallies enter the per-seed packet counts.
  finish_report(report, tallies, start);
  if (options.out_dir) emit_metrics(report, *options.out_dir);
  return report;
}

RunReport run_evaluation(const Scenario& scenario, const std::optional<std::string>& checkpoint,
                         const RunOptions& options) {
  scenario.validate();
  if (!is_learning_agent(scenario.agent)) return run_baseline(scenario, options);
  if (!checkpoint) throw Error(ErrorCode::kInvalidArgument, "evaluating a learning agent needs a checkpoint");

  const auto start = std::chrono::steady_clock::now();
  const PpoAgent agent = load_checkpoint(*checkpoint);
  if (agent.num_devices() != scenario.num_devices)
    throw Error(ErrorCode::kCheckpoint, "checkpoint was trained for K = " + std::to_string(agent.num_devices()) +
                                            ", scenario has K = " + std::to_string(scenario.num_devices));
  if (agent.hidden() != scenario.ppo.hidden)
    throw Error(ErrorCode::kCheckpoint, "checkpoint hidden size " + std::to_string(agent.hidden()) +
                                            " differs from ppo.hidden = " + std::to_string(scenario.ppo.hidden));
  RunReport report = start_report(scenario);
  const EnvConfig env = scenario.env_config();
  const AgentOptions opts = scenario.agent_options();
  std::vector<EvalTally> tallies;
  const auto seeds = options.seeds.value_or(scenario.seeds);
  for (std::uint64_t seed : seeds) {
    const EvalTally tally = evaluate_agent(env, agent, opts, scenario.eval.episodes, seed);
    SeedReport sr = SeedReport::from_tally(seed, tally);
    report.curve.push_back({seed, agent.updates, 0, sr.urllc_score, sr.mean_reward});
    report.seeds.push_back(sr);
    tallies.push_back(tally);
    if (seed == seeds.front()) maybe_trace(scenario, BranchingPolicy(agent.policy, opts), seed, options);
    say(options, "seed " + std::to_string(seed) + ": score " + std::to_string(sr.urllc_score));
  }
  finish_report(report, tallies, start);
  if (options.out_dir) emit_metrics(report, *options.out_dir);
  return report;
}

}  // namespace noma
