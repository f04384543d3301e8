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
#include <span>
#include <vector>

#include "noma/network.hpp"

namespace noma {

struct PpoConfig {
  double discount = 0.3;
  double gae_lambda = 0.95;
  double clip = 0.2;
  double lr_actor = 1e-4;
  double lr_critic = 1e-3;
  int minibatch = 128;
  int episodes_per_update = 8;  // beta
  int epochs = 4;
  int hidden = 256;
  int total_episodes = 10000;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  bool normalize_advantages = true;
  // Discount rewards-to-go by gamma^t' instead of gamma^(t'-t).
  bool absolute_discount_exponent = false;

  int num_updates() const { return (total_episodes + episodes_per_update - 1) / episodes_per_update; }
  void validate() const;
  bool operator==(const PpoConfig&) const = default;
};

double sigmoid(double z);
// ln sigmoid(z), stable for large |z|.
double log_sigmoid(double z);

// Factorized Bernoulli log-likelihood. Throws kNumericalFault when a branch
// with probability exactly 0 or 1 contradicts the action.
double joint_log_prob(std::span<const double> probs, std::span<const std::uint8_t> action);
double joint_log_prob_from_logits(std::span<const double> logits, std::span<const std::uint8_t> action);

// R(t) = sum_{t' >= t} gamma^(t'-t) r(t'), or gamma^t' with `absolute_exponent`.
std::vector<double> rewards_to_go(std::span<const double> rewards, double discount, bool absolute_exponent = false);

// values holds T+1 entries, the last one being the bootstrap after the
// final frame. delta(t) = r(t) + gamma V(t+1) - V(t).
std::vector<double> gae(std::span<const double> rewards, std::span<const double> values, double discount,
                        double gae_lambda);

// Zero mean, unit variance (population); only centred if the spread vanishes.
void normalize_advantages(std::span<double> advantages);

// min(rho A, clip(rho, 1-nu, 1+nu) A)
double ppo_clip_term(double ratio, double advantage, double clip);

// True when the clipped branch is active, including rho exactly on 1 +- nu.
bool ppo_clipped(double ratio, double advantage, double clip);

// Batch mean of ppo_clip_term with rho from joint log-probabilities.
// Probability and action blocks are [batch x K] row-major.
double ppo_clip_objective(std::span<const double> new_probs, std::span<const double> behavior_probs,
                          std::span<const std::uint8_t> actions, std::span<const double> advantages, int num_branches,
                          double clip);

double value_loss(std::span<const double> values, std::span<const double> returns);

struct PolicyBatch {
  std::span<const double> features;        // [N x in]
  std::span<const std::uint8_t> actions;   // [N x K]
  std::span<const double> old_log_prob;    // [N]
  std::span<const double> advantages;      // [N]
  int size = 0;
};

struct PolicyStep {
  double objective = 0.0;
  double clip_fraction = 0.0;
};

// Surrogate objective of the branching policy on one minibatch; adds the
// gradient of the loss (the negated objective) to `grad`.
PolicyStep policy_objective_and_grad(const Mlp& policy, const PolicyBatch& batch, double clip, MlpWorkspace& ws,
                                     std::span<double> grad);

// Mean squared error of the value network; adds its gradient to `grad`.
double value_loss_and_grad(const Mlp& value, std::span<const double> features, std::span<const double> returns,
                           int batch, MlpWorkspace& ws, std::span<double> grad);

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t step = 0;

  AdamState() = default;
  explicit AdamState(std::size_t size) : m(size, 0.0), v(size, 0.0) {}
  bool operator==(const AdamState&) const = default;
};

// Bias-corrected Adam descent step on `params`.
void adam_step(std::span<double> params, std::span<const double> grad, AdamState& state, double lr,
               const AdamConfig& config);

}  // namespace noma
