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

#include <exception>
#include <numeric>

#include "noma/error.hpp"
#include "noma/evaluation.hpp"

namespace noma {

namespace {

std::uint64_t sum(const std::vector<std::uint64_t>& v) { return std::accumulate(v.begin(), v.end(), std::uint64_t{0}); }

}  // namespace

void EvalTally::add_episode(const Environment& env, double episode_reward) {
  const PacketLedger& ledger = env.ledger();
  const BufferMatrix& buffers = env.state().buffers;
  for (std::size_t k = 0; k < generated.size(); ++k) {
    generated[k] += ledger.generated[k];
    delivered[k] += ledger.delivered[k];
    expired[k] += ledger.expired[k];
    residual[k] += buffers.row_total(static_cast<int>(k));
  }
  total_reward += episode_reward;
  ++episodes;
  audit.merge(env.audit());
}

void EvalTally::merge(const EvalTally& other) {
  if (other.generated.size() != generated.size()) throw Error(ErrorCode::kDimensionMismatch, "tallies differ in K");
  for (std::size_t k = 0; k < generated.size(); ++k) {
    generated[k] += other.generated[k];
    delivered[k] += other.delivered[k];
    expired[k] += other.expired[k];
    residual[k] += other.residual[k];
  }
  total_reward += other.total_reward;
  episodes += other.episodes;
  audit.merge(other.audit);
}

std::uint64_t EvalTally::total_generated() const { return sum(generated); }
std::uint64_t EvalTally::total_delivered() const { return sum(delivered); }
std::uint64_t EvalTally::total_expired() const { return sum(expired); }
std::uint64_t EvalTally::total_residual() const { return sum(residual); }

bool EvalTally::conserves() const {
  for (std::size_t k = 0; k < generated.size(); ++k)
    if (generated[k] != delivered[k] + expired[k] + residual[k]) return false;
  return audit.conservation_failures == 0;
}

double EvalTally::score() const { return urllc_score(total_delivered(), total_delivered() + total_expired()); }

std::vector<double> EvalTally::device_scores() const {
  std::vector<double> out;
  for (std::size_t k = 0; k < generated.size(); ++k)
    if (delivered[k] + expired[k] > 0) out.push_back(urllc_score(delivered[k], delivered[k] + expired[k]));
  return out;
}

double EvalTally::jain() const { return jain_index(device_scores()); }

double EvalTally::mean_reward() const { return episodes ? total_reward / static_cast<double>(episodes) : 0.0; }

EvalTally run_episode(Environment& env, const SchedulingPolicy& policy, Rng& rng, std::vector<FrameRecord>* trace) {
  AgentState state = env.reset(rng);
  double reward = 0.0;
  while (!env.done()) {
    const std::int64_t frame = env.state().frame;
    const ActionVector action = policy.act(state, env, rng);
    const StepResult step = env.step(action, rng);
    reward += step.reward;
    if (trace)
      trace->push_back({frame, action, step.observation.active, step.observation.decoded, step.reward});
    state = update_agent_state(state, step.observation, action);
  }
  EvalTally tally(env.num_devices());
  tally.add_episode(env, reward);
  return tally;
}

EvalTally evaluate_policy(const EnvConfig& config, const SchedulingPolicy& policy, int episodes, std::uint64_t seed,
                          std::uint64_t stream) {
  if (episodes < 1) throw Error(ErrorCode::kInvalidArgument, "evaluation needs at least one episode");
  std::vector<EvalTally> per_episode(episodes);
  std::vector<std::exception_ptr> failures(episodes);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < episodes; ++i) {
    try {
      Environment env(config);
      Rng rng = make_rng(seed, stream, static_cast<std::uint64_t>(i));
      per_episode[i] = run_episode(env, policy, rng);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  EvalTally total(config.num_devices);
  for (const EvalTally& t : per_episode) total.merge(t);
  return total;
}

}  // namespace noma
