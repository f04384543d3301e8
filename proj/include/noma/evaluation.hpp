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
#include <vector>

#include "noma/env.hpp"
#include "noma/schedulers.hpp"

namespace noma {

// Packet and reward totals over a set of episodes.
struct EvalTally {
  std::uint64_t episodes = 0;
  std::vector<std::uint64_t> generated;
  std::vector<std::uint64_t> delivered;
  std::vector<std::uint64_t> expired;
  std::vector<std::uint64_t> residual;  // still buffered when the episode was cut
  double total_reward = 0.0;
  EpisodeAudit audit;

  explicit EvalTally(int num_devices = 0)
      : generated(num_devices, 0), delivered(num_devices, 0), expired(num_devices, 0), residual(num_devices, 0) {}

  // Folds in the finished episode held by `env`.
  void add_episode(const Environment& env, double episode_reward);
  void merge(const EvalTally& other);

  std::uint64_t total_generated() const;
  std::uint64_t total_delivered() const;
  std::uint64_t total_expired() const;
  std::uint64_t total_residual() const;
  bool conserves() const;

  // Delivered over resolved (delivered + expired) packets. Packets still
  // waiting when an episode is truncated have no outcome yet.
  double score() const;
  // Per-device scores; devices without resolved packets are skipped.
  std::vector<double> device_scores() const;
  double jain() const;
  double mean_reward() const;
};

// Runs `episodes` frozen-policy episodes. Episode i uses the stream
// make_rng(seed, stream, i); episodes run in parallel and are reduced in
// index order, so the result does not depend on the thread count.
EvalTally evaluate_policy(const EnvConfig& config, const SchedulingPolicy& policy, int episodes, std::uint64_t seed,
                          std::uint64_t stream = streams::kEvaluation);

// Single episode, for traces and tests.
struct FrameRecord {
  std::int64_t frame = 0;
  ActionVector action;
  std::vector<std::uint8_t> active;
  std::vector<std::uint8_t> decoded;
  int reward = 0;
};

EvalTally run_episode(Environment& env, const SchedulingPolicy& policy, Rng& rng,
                      std::vector<FrameRecord>* trace = nullptr);

}  // namespace noma
