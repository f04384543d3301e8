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

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "noma/agent.hpp"
#include "noma/evaluation.hpp"

namespace noma {

// One collected episode. Blocks are row-major with one row per frame.
struct Trajectory {
  int steps = 0;
  int num_devices = 0;
  int input = 0;
  std::vector<double> features;        // [T x (5K+1)]
  std::vector<std::uint8_t> actions;   // [T x K]
  std::vector<double> behavior_probs;  // [T x K], pi at collection time
  std::vector<double> behavior_log_prob;
  std::vector<double> rewards;
  EvalTally tally;
};

// Samples actions from the posterior q and records pi alongside.
Trajectory collect_episode(const Mlp& policy, const AgentOptions& options, Environment& env, Rng& rng);

struct TrainConfig {
  PpoConfig ppo;
  AgentOptions agent;
  int eval_cadence = 250;       // training episodes between evaluation points
  int curve_eval_episodes = 50;  // episodes per evaluation point
  int checkpoint_cadence = 0;   // updates between checkpoints, 0 = off
};

struct CurvePoint {
  std::uint64_t seed = 0;
  std::int64_t update = 0;
  std::int64_t episodes_seen = 0;
  double urllc_score = 0.0;
  double mean_reward = 0.0;

  bool operator==(const CurvePoint&) const = default;
};

struct UpdateStats {
  double objective = 0.0;
  double value_loss = 0.0;
  double clip_fraction = 0.0;
  double mean_episode_reward = 0.0;
};

struct TrainHooks {
  std::function<void(const CurvePoint&)> on_curve_point;
  std::function<void(const PpoAgent&)> on_checkpoint;
  std::function<void(std::int64_t update, const UpdateStats&)> on_update;
};

struct TrainResult {
  PpoAgent agent;
  std::vector<CurvePoint> curve;
  EvalTally training_tally;  // all packets of the training episodes
};

// Builds the minibatch arrays from a set of trajectories and runs the
// configured number of clipped-PPO epochs plus value regression.
UpdateStats ppo_update(PpoAgent& agent, const std::vector<Trajectory>& batch, const PpoConfig& config, Rng& shuffle_rng);

// Algorithm: repeat { collect beta episodes in parallel with the posterior
// policy; rewards-to-go, values, GAE; PPO and value epochs }. Evaluation
// points (including one before training) every `eval_cadence` episodes.
TrainResult train(const EnvConfig& env_config, const TrainConfig& config, std::uint64_t seed,
                  const TrainHooks& hooks = {});

// Frozen-policy evaluation with the agent's options.
EvalTally evaluate_agent(const EnvConfig& env_config, const PpoAgent& agent, const AgentOptions& options,
                         int episodes, std::uint64_t seed);

}  // namespace noma
