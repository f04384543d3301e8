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

#include <algorithm>
#include <cmath>

#include "noma/error.hpp"
#include "noma/ppo.hpp"

namespace noma {

void PpoConfig::validate() const {
  if (!(discount >= 0.0 && discount < 1.0)) throw ValidationError("ppo.discount", "must lie in [0, 1)");
  if (!(gae_lambda >= 0.0 && gae_lambda <= 1.0)) throw ValidationError("ppo.gae_lambda", "must lie in [0, 1]");
  if (!(clip >= 0.0 && clip < 1.0)) throw ValidationError("ppo.clip", "must lie in [0, 1)");
  if (!(lr_actor > 0.0)) throw ValidationError("ppo.lr_actor", "must be positive");
  if (!(lr_critic > 0.0)) throw ValidationError("ppo.lr_critic", "must be positive");
  if (minibatch < 1) throw ValidationError("ppo.minibatch", "must be at least 1");
  if (episodes_per_update < 1) throw ValidationError("ppo.episodes_per_update", "must be at least 1");
  if (epochs < 1) throw ValidationError("ppo.epochs", "must be at least 1");
  if (hidden < 1) throw ValidationError("ppo.hidden", "must be at least 1");
  if (total_episodes < 0) throw ValidationError("ppo.total_episodes", "must be nonnegative");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0)) throw ValidationError("ppo.adam_beta1", "must lie in [0, 1)");
  if (!(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) throw ValidationError("ppo.adam_beta2", "must lie in [0, 1)");
  if (!(adam_epsilon > 0.0)) throw ValidationError("ppo.adam_epsilon", "must be positive");
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double log_sigmoid(double z) {
  // -softplus(-z)
  if (z >= 0.0) return -std::log1p(std::exp(-z));
  return z - std::log1p(std::exp(z));
}

double joint_log_prob(std::span<const double> probs, std::span<const std::uint8_t> action) {
  if (probs.size() != action.size()) throw Error(ErrorCode::kDimensionMismatch, "probabilities and action differ");
  double total = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double p = action[k] ? probs[k] : 1.0 - probs[k];
    if (!(p > 0.0)) throw Error(ErrorCode::kNumericalFault, "action has zero probability");
    total += std::log(p);
  }
  return total;
}

double joint_log_prob_from_logits(std::span<const double> logits, std::span<const std::uint8_t> action) {
  if (logits.size() != action.size()) throw Error(ErrorCode::kDimensionMismatch, "logits and action differ");
  double total = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) total += log_sigmoid(action[k] ? logits[k] : -logits[k]);
  return total;
}

std::vector<double> rewards_to_go(std::span<const double> rewards, double discount, bool absolute_exponent) {
  if (rewards.empty()) throw Error(ErrorCode::kEmptyInput, "rewards-to-go of an empty episode");
  const std::size_t n = rewards.size();
  std::vector<double> out(n);
  double running = 0.0;
  for (std::size_t t = n; t-- > 0;) {
    running = rewards[t] + discount * running;
    out[t] = running;
  }
  if (absolute_exponent) {
    double scale = 1.0;
    for (std::size_t t = 0; t < n; ++t) {
      out[t] *= scale;
      scale *= discount;
    }
  }
  return out;
}

std::vector<double> gae(std::span<const double> rewards, std::span<const double> values, double discount,
                        double gae_lambda) {
  const std::size_t n = rewards.size();
  if (values.size() != n + 1) throw Error(ErrorCode::kDimensionMismatch, "GAE needs T+1 value estimates");
  std::vector<double> out(n);
  double running = 0.0;
  for (std::size_t t = n; t-- > 0;) {
    const double delta = rewards[t] + discount * values[t + 1] - values[t];
    running = delta + discount * gae_lambda * running;
    out[t] = running;
  }
  return out;
}

void normalize_advantages(std::span<double> advantages) {
  if (advantages.empty()) return;
  double mean = 0.0;
  for (double a : advantages) mean += a;
  mean /= static_cast<double>(advantages.size());
  double var = 0.0;
  for (double a : advantages) var += (a - mean) * (a - mean);
  var /= static_cast<double>(advantages.size());
  const double sd = std::sqrt(var);
  for (double& a : advantages) a = sd > 1e-12 ? (a - mean) / sd : a - mean;
}

double ppo_clip_term(double ratio, double advantage, double clip) {
  const double clipped = std::clamp(ratio, 1.0 - clip, 1.0 + clip);
  return std::min(ratio * advantage, clipped * advantage);
}

bool ppo_clipped(double ratio, double advantage, double clip) {
  return advantage >= 0.0 ? ratio >= 1.0 + clip : ratio <= 1.0 - clip;
}

double ppo_clip_objective(std::span<const double> new_probs, std::span<const double> behavior_probs,
                          std::span<const std::uint8_t> actions, std::span<const double> advantages, int num_branches,
                          double clip) {
  const std::size_t n = advantages.size();
  const std::size_t k = static_cast<std::size_t>(num_branches);
  if (n == 0) throw Error(ErrorCode::kEmptyInput, "empty PPO batch");
  if (new_probs.size() != n * k || behavior_probs.size() != n * k || actions.size() != n * k)
    throw Error(ErrorCode::kDimensionMismatch, "PPO batch blocks are misaligned");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lp_new = joint_log_prob(new_probs.subspan(i * k, k), actions.subspan(i * k, k));
    const double lp_old = joint_log_prob(behavior_probs.subspan(i * k, k), actions.subspan(i * k, k));
    total += ppo_clip_term(std::exp(lp_new - lp_old), advantages[i], clip);
  }
  return total / static_cast<double>(n);
}

double value_loss(std::span<const double> values, std::span<const double> returns) {
  if (values.size() != returns.size()) throw Error(ErrorCode::kDimensionMismatch, "values and returns differ");
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "value loss of an empty batch");
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) total += (values[i] - returns[i]) * (values[i] - returns[i]);
  return total / static_cast<double>(values.size());
}

PolicyStep policy_objective_and_grad(const Mlp& policy, const PolicyBatch& batch, double clip, MlpWorkspace& ws,
                                     std::span<double> grad) {
  const int n = batch.size;
  const int k = policy.output_size();
  if (n < 1) throw Error(ErrorCode::kEmptyInput, "empty policy minibatch");
  if (static_cast<long>(batch.actions.size()) != static_cast<long>(n) * k ||
      static_cast<int>(batch.old_log_prob.size()) != n || static_cast<int>(batch.advantages.size()) != n)
    throw Error(ErrorCode::kDimensionMismatch, "policy minibatch blocks are misaligned");
  const std::span<const double> logits = policy.forward(batch.features, n, ws);
  std::vector<double> d_logits(static_cast<std::size_t>(n) * k, 0.0);
  PolicyStep step;
  int clipped = 0;
  const double inv_n = 1.0 / n;
  for (int i = 0; i < n; ++i) {
    const auto z = logits.subspan(static_cast<std::size_t>(i) * k, k);
    const auto a = batch.actions.subspan(static_cast<std::size_t>(i) * k, k);
    const double ratio = std::exp(joint_log_prob_from_logits(z, a) - batch.old_log_prob[i]);
    const double adv = batch.advantages[i];
    step.objective += ppo_clip_term(ratio, adv, clip) * inv_n;
    if (ppo_clipped(ratio, adv, clip)) {
      ++clipped;
      continue;
    }
    // d(rho A)/dz_k = rho A (a_k - sigma(z_k)); the loss is the negated objective.
    const double scale = -inv_n * ratio * adv;
    for (int j = 0; j < k; ++j) d_logits[static_cast<std::size_t>(i) * k + j] = scale * (a[j] - sigmoid(z[j]));
  }
  step.clip_fraction = static_cast<double>(clipped) * inv_n;
  policy.backward(batch.features, d_logits, ws, grad);
  return step;
}

double value_loss_and_grad(const Mlp& value, std::span<const double> features, std::span<const double> returns,
                           int batch, MlpWorkspace& ws, std::span<double> grad) {
  if (static_cast<int>(returns.size()) != batch) throw Error(ErrorCode::kDimensionMismatch, "returns size");
  const std::span<const double> v = value.forward(features, batch, ws);
  std::vector<double> d_v(batch);
  double loss = 0.0;
  for (int i = 0; i < batch; ++i) {
    const double diff = v[i] - returns[i];
    loss += diff * diff;
    d_v[i] = 2.0 * diff / batch;
  }
  value.backward(features, d_v, ws, grad);
  return loss / batch;
}

void adam_step(std::span<double> params, std::span<const double> grad, AdamState& state, double lr,
               const AdamConfig& config) {
  if (params.size() != grad.size() || state.m.size() != params.size() || state.v.size() != params.size())
    throw Error(ErrorCode::kDimensionMismatch, "Adam buffers are misaligned");
  ++state.step;
  const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
  for (std::size_t j = 0; j < params.size(); ++j) {
    state.m[j] = config.beta1 * state.m[j] + (1.0 - config.beta1) * grad[j];
    state.v[j] = config.beta2 * state.v[j] + (1.0 - config.beta2) * grad[j] * grad[j];
    const double m_hat = state.m[j] / c1;
    const double v_hat = state.v[j] / c2;
    params[j] -= lr * m_hat / (std::sqrt(v_hat) + config.epsilon);
  }
}

}  // namespace noma
