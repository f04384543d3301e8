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
#include <exception>
#include <numeric>

#include "noma/error.hpp"
#include "noma/trainer.hpp"

namespace noma {

Trajectory collect_episode(const Mlp& policy, const AgentOptions& options, Environment& env, Rng& rng) {
  const int k_total = env.num_devices();
  Trajectory tr;
  tr.num_devices = k_total;
  tr.input = feature_size(k_total);
  const int horizon = env.config().episode_length;
  tr.features.reserve(static_cast<std::size_t>(horizon) * tr.input);
  tr.actions.reserve(static_cast<std::size_t>(horizon) * k_total);
  tr.behavior_probs.reserve(static_cast<std::size_t>(horizon) * k_total);

  MlpWorkspace ws;
  AgentState state = env.reset(rng);
  double reward = 0.0;
  while (!env.done()) {
    const Decision d = decide(policy, options, state, env, rng, ws);
    const StepResult step = env.step(d.action, rng);
    tr.features.insert(tr.features.end(), d.features.begin(), d.features.end());
    tr.actions.insert(tr.actions.end(), d.action.poll.begin(), d.action.poll.end());
    tr.behavior_probs.insert(tr.behavior_probs.end(), d.probs.begin(), d.probs.end());
    tr.behavior_log_prob.push_back(d.log_prob);
    tr.rewards.push_back(step.reward);
    reward += step.reward;
    state = update_agent_state(state, step.observation, d.action);
    ++tr.steps;
  }
  tr.tally = EvalTally(k_total);
  tr.tally.add_episode(env, reward);
  return tr;
}

UpdateStats ppo_update(PpoAgent& agent, const std::vector<Trajectory>& batch, const PpoConfig& config,
                       Rng& shuffle_rng) {
  if (batch.empty()) throw Error(ErrorCode::kEmptyInput, "PPO update without trajectories");
  const int k_total = agent.num_devices();
  const int input = agent.policy.input_size();

  std::vector<double> features;
  std::vector<std::uint8_t> actions;
  std::vector<double> old_log_prob;
  std::vector<double> advantages;
  std::vector<double> returns;
  UpdateStats stats;
  MlpWorkspace ws;
  for (const Trajectory& tr : batch) {
    if (tr.num_devices != k_total || tr.input != input)
      throw Error(ErrorCode::kDimensionMismatch, "trajectory does not match the agent");
    const auto v = agent.value.forward(tr.features, tr.steps, ws);
    std::vector<double> values(v.begin(), v.end());
    values.push_back(0.0);  // truncated episode, no bootstrap
    const auto adv = gae(tr.rewards, values, config.discount, config.gae_lambda);
    const auto rtg = rewards_to_go(tr.rewards, config.discount, config.absolute_discount_exponent);
    features.insert(features.end(), tr.features.begin(), tr.features.end());
    actions.insert(actions.end(), tr.actions.begin(), tr.actions.end());
    old_log_prob.insert(old_log_prob.end(), tr.behavior_log_prob.begin(), tr.behavior_log_prob.end());
    advantages.insert(advantages.end(), adv.begin(), adv.end());
    returns.insert(returns.end(), rtg.begin(), rtg.end());
    stats.mean_episode_reward += std::accumulate(tr.rewards.begin(), tr.rewards.end(), 0.0);
  }
  stats.mean_episode_reward /= static_cast<double>(batch.size());
  if (config.normalize_advantages) normalize_advantages(advantages);

  const int n = static_cast<int>(returns.size());
  const int mb = std::min(config.minibatch, n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const AdamConfig adam{config.adam_beta1, config.adam_beta2, config.adam_epsilon};

  std::vector<double> mb_features, mb_log_prob, mb_adv, mb_returns;
  std::vector<std::uint8_t> mb_actions;
  std::vector<double> policy_grad(agent.policy.num_params());
  std::vector<double> value_grad(agent.value.num_params());
  int steps = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    for (int start = 0; start < n; start += mb) {
      const int size = std::min(mb, n - start);
      mb_features.clear();
      mb_actions.clear();
      mb_log_prob.clear();
      mb_adv.clear();
      mb_returns.clear();
      for (int j = start; j < start + size; ++j) {
        const int i = order[j];
        mb_features.insert(mb_features.end(), features.begin() + static_cast<std::ptrdiff_t>(i) * input,
                           features.begin() + static_cast<std::ptrdiff_t>(i + 1) * input);
        mb_actions.insert(mb_actions.end(), actions.begin() + static_cast<std::ptrdiff_t>(i) * k_total,
                          actions.begin() + static_cast<std::ptrdiff_t>(i + 1) * k_total);
        mb_log_prob.push_back(old_log_prob[i]);
        mb_adv.push_back(advantages[i]);
        mb_returns.push_back(returns[i]);
      }
      std::fill(policy_grad.begin(), policy_grad.end(), 0.0);
      const PolicyBatch pb{mb_features, mb_actions, mb_log_prob, mb_adv, size};
      const PolicyStep ps = policy_objective_and_grad(agent.policy, pb, config.clip, ws, policy_grad);
      adam_step(agent.policy.params(), policy_grad, agent.policy_opt, config.lr_actor, adam);

      std::fill(value_grad.begin(), value_grad.end(), 0.0);
      const double vl = value_loss_and_grad(agent.value, mb_features, mb_returns, size, ws, value_grad);
      adam_step(agent.value.params(), value_grad, agent.value_opt, config.lr_critic, adam);

      stats.objective += ps.objective;
      stats.clip_fraction += ps.clip_fraction;
      stats.value_loss += vl;
      ++steps;
    }
  }
  stats.objective /= steps;
  stats.clip_fraction /= steps;
  stats.value_loss /= steps;
  ++agent.updates;
  return stats;
}

EvalTally evaluate_agent(const EnvConfig& env_config, const PpoAgent& agent, const AgentOptions& options,
                         int episodes, std::uint64_t seed) {
  const BranchingPolicy policy(agent.policy, options);
  return evaluate_policy(env_config, policy, episodes, seed, streams::kEvaluation);
}

TrainResult train(const EnvConfig& env_config, const TrainConfig& config, std::uint64_t seed,
                  const TrainHooks& hooks) {
  config.ppo.validate();
  config.agent.prior.validate();
  if (config.eval_cadence < 1) throw ValidationError("eval.cadence", "must be at least 1");
  if (config.curve_eval_episodes < 1) throw ValidationError("eval.curve_episodes", "must be at least 1");
  env_config.validate();

  TrainResult result;
  result.agent = PpoAgent::create(env_config.num_devices, config.ppo.hidden, seed);
  result.training_tally = EvalTally(env_config.num_devices);
  PpoAgent& agent = result.agent;
  const int beta = config.ppo.episodes_per_update;
  const int updates = config.ppo.num_updates();

  std::int64_t episodes_seen = 0;
  std::int64_t next_eval = 0;
  auto evaluate_point = [&](std::int64_t update) {
    const EvalTally tally = evaluate_agent(env_config, agent, config.agent, config.curve_eval_episodes, seed);
    CurvePoint p{seed, update, episodes_seen, tally.score(), tally.mean_reward()};
    result.curve.push_back(p);
    if (hooks.on_curve_point) hooks.on_curve_point(p);
  };

  for (int u = 0; u < updates; ++u) {
    if (episodes_seen >= next_eval) {
      evaluate_point(u);
      next_eval += config.eval_cadence;
    }
    std::vector<Trajectory> batch(beta);
    std::vector<std::exception_ptr> failures(beta);
#pragma omp parallel for schedule(dynamic)
    for (int b = 0; b < beta; ++b) {
      try {
        Environment env(env_config);
        Rng rng = make_rng(seed, streams::kTraining, static_cast<std::uint64_t>(u) * beta + b);
        batch[b] = collect_episode(agent.policy, config.agent, env, rng);
      } catch (...) {
        failures[b] = std::current_exception();
      }
    }
    for (const auto& f : failures)
      if (f) std::rethrow_exception(f);
    for (const Trajectory& tr : batch) result.training_tally.merge(tr.tally);

    Rng shuffle_rng = make_rng(seed, streams::kShuffle, static_cast<std::uint64_t>(u));
    const UpdateStats stats = ppo_update(agent, batch, config.ppo, shuffle_rng);
    episodes_seen += beta;
    if (hooks.on_update) hooks.on_update(u, stats);
    if (config.checkpoint_cadence > 0 && (u + 1) % config.checkpoint_cadence == 0 && hooks.on_checkpoint)
      hooks.on_checkpoint(agent);
  }
  if (result.curve.empty() || result.curve.back().episodes_seen != episodes_seen) evaluate_point(updates);
  return result;
}

}  // namespace noma
