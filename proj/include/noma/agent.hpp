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
#include <string>
#include <vector>

#include "noma/env.hpp"
#include "noma/network.hpp"
#include "noma/ppo.hpp"
#include "noma/schedulers.hpp"

namespace noma {

// Which buffers feed the EDF term of the prior. The agent's estimate is the
// faithful choice; the true buffers are a diagnostic.
enum class PriorSource { kEstimate, kTrueBuffers };

struct AgentOptions {
  bool use_prior = true;
  PriorConfig prior;
  PriorSource prior_source = PriorSource::kEstimate;
  FeatureConfig features;
  int slots = 3;        // B, the EDF budget of the prior
  bool greedy = false;  // poll when q > 0.5 instead of sampling
};

// Policy and value networks together with their optimizer state.
struct PpoAgent {
  Mlp policy;
  Mlp value;
  AdamState policy_opt;
  AdamState value_opt;
  std::int64_t updates = 0;

  // 5K+1 inputs, two ReLU layers of width `hidden`; K logits / one value.
  static PpoAgent create(int num_devices, int hidden, std::uint64_t seed);

  int num_devices() const { return policy.output_size(); }
  int hidden() const { return policy.layers().empty() ? 0 : policy.layers().front().out; }

  bool operator==(const PpoAgent&) const = default;
};

struct Decision {
  ActionVector action;
  std::vector<double> features;
  std::vector<double> logits;
  std::vector<double> probs;      // pi
  std::vector<double> posterior;  // q, equal to pi without a prior
  double log_prob = 0.0;          // ln pi(action)
};

// Features, branch probabilities, prior and a sampled (or greedy) action.
Decision decide(const Mlp& policy, const AgentOptions& options, const AgentState& state, const Environment& env,
                Rng& rng, MlpWorkspace& ws);

class BranchingPolicy final : public SchedulingPolicy {
 public:
  BranchingPolicy(const Mlp& policy, AgentOptions options, std::string name = "noma_ppo")
      : policy_(policy), options_(std::move(options)), name_(std::move(name)) {}

  ActionVector act(const AgentState& state, const Environment& env, Rng& rng) const override;
  std::string name() const override { return name_; }

 private:
  const Mlp& policy_;
  AgentOptions options_;
  std::string name_;
};

}  // namespace noma
