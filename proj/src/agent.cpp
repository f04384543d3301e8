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

#include "noma/agent.hpp"
#include "noma/error.hpp"

namespace noma {

PpoAgent PpoAgent::create(int num_devices, int hidden, std::uint64_t seed) {
  PpoAgent a;
  const int input = feature_size(num_devices);
  a.policy = Mlp(input, {hidden, hidden}, num_devices);
  a.value = Mlp(input, {hidden, hidden}, 1);
  Rng policy_rng = make_rng(seed, streams::kInit, 0);
  Rng value_rng = make_rng(seed, streams::kInit, 1);
  a.policy.init_uniform(policy_rng);
  a.value.init_uniform(value_rng);
  a.policy_opt = AdamState(a.policy.num_params());
  a.value_opt = AdamState(a.value.num_params());
  return a;
}

Decision decide(const Mlp& policy, const AgentOptions& options, const AgentState& state, const Environment& env,
                Rng& rng, MlpWorkspace& ws) {
  const int k_total = state.num_devices();
  if (policy.output_size() != k_total || policy.input_size() != feature_size(k_total))
    throw Error(ErrorCode::kDimensionMismatch, "policy network does not match K");
  Decision d;
  const std::vector<double> oracle =
      options.features.channel == ChannelFeatures::kOracle ? env.true_powers() : std::vector<double>{};
  d.features = preprocess(state, options.features, oracle);
  const auto logits = policy.forward(d.features, 1, ws);
  d.logits.assign(logits.begin(), logits.end());
  d.probs.resize(k_total);
  for (int k = 0; k < k_total; ++k) d.probs[k] = sigmoid(d.logits[k]);

  if (options.use_prior) {
    const BufferMatrix& buffers =
        options.prior_source == PriorSource::kTrueBuffers ? env.state().buffers : state.buffer_estimate;
    const auto prior =
        combined_prior(buffers, state.power_estimate, state.age_active, options.slots, options.prior, rng);
    d.posterior = posterior_policy(d.probs, prior, options.prior.smoothing);
  } else {
    d.posterior = d.probs;
  }

  d.action = ActionVector(k_total);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int k = 0; k < k_total; ++k) {
    if (options.greedy)
      d.action[k] = d.posterior[k] > 0.5 ? 1 : 0;
    else
      d.action[k] = uniform(rng) < d.posterior[k] ? 1 : 0;
  }
  d.log_prob = joint_log_prob_from_logits(d.logits, d.action.poll);
  return d;
}

ActionVector BranchingPolicy::act(const AgentState& state, const Environment& env, Rng& rng) const {
  MlpWorkspace ws;
  return decide(policy_, options_, state, env, rng, ws).action;
}

}  // namespace noma
