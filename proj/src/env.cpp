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
#include <numeric>

#include "noma/env.hpp"
#include "noma/error.hpp"

namespace noma {

namespace {

__extension__ using Wide = unsigned __int128;

int bump(int age) { return age == AgentState::kNever ? age : age + 1; }

double reciprocal_age(int age) { return age == AgentState::kNever ? 0.0 : 1.0 / age; }

double power_feature(double eta, double threshold) {
  if (!(eta > 0.0)) return -1.0;
  return std::clamp(std::log10(eta / threshold), -4.0, 4.0) / 4.0;
}

}  // namespace

int ActionVector::count() const {
  return static_cast<int>(std::count_if(poll.begin(), poll.end(), [](std::uint8_t v) { return v != 0; }));
}

AgentState AgentState::initial(int num_devices, int depth) {
  AgentState s;
  s.buffer_estimate = BufferMatrix(num_devices, depth);
  s.power_estimate.assign(num_devices, 0.0);
  s.age_polled.assign(num_devices, kNever);
  s.age_active.assign(num_devices, kNever);
  s.age_success.assign(num_devices, kNever);
  return s;
}

AgentState update_agent_state(const AgentState& prev, const Observation& obs, const ActionVector& prev_action) {
  const int k_total = prev.num_devices();
  if (prev_action.size() != k_total || static_cast<int>(obs.active.size()) != k_total ||
      static_cast<int>(obs.decoded.size()) != k_total)
    throw Error(ErrorCode::kDimensionMismatch, "agent state update with inconsistent K");
  AgentState next = prev;
  const int depth = prev.buffer_estimate.depth();
  for (int k = 0; k < k_total; ++k) {
    next.age_polled[k] = prev_action[k] ? 1 : bump(prev.age_polled[k]);
    next.age_active[k] = obs.active[k] ? 1 : bump(prev.age_active[k]);
    next.age_success[k] = obs.decoded[k] ? 1 : bump(prev.age_success[k]);
    if (obs.active[k]) next.power_estimate[k] = obs.observed_powers[k];

    auto row = next.buffer_estimate.row(k);
    if (obs.decoded[k]) {
      const auto seen = obs.observed_buffers.row(k);
      std::copy(seen.begin(), seen.end(), row.begin());
    }
    // One frame has passed: drop deadline-1 entries and shift the rest.
    for (int d = 0; d + 1 < depth; ++d) row[d] = row[d + 1];
    if (depth > 0) row[depth - 1] = 0;
  }
  next.last_reward = obs.last_reward;
  return next;
}

void EnvConfig::validate() const {
  if (num_devices < 1) throw ValidationError("K", "at least one device is required");
  if (num_devices > 64) throw ValidationError("K", "at most 64 devices are supported");
  phy.validate();
  traffic.validate();
  if (traffic.num_devices() != num_devices)
    throw ValidationError("traffic", "per-device traffic parameters do not match K");
  if (episode_length < 1) throw ValidationError("episode_length", "must be at least 1");
  if (placement == Placement::kRing && !(ring_radius > 0.0))
    throw ValidationError("topology.ring_radius", "must be positive");
}

void EpisodeAudit::merge(const EpisodeAudit& other) {
  episodes += other.episodes;
  conservation_failures += other.conservation_failures;
  frames += other.frames;
  overloaded_frames += other.overloaded_frames;
  overloaded_with_reward += other.overloaded_with_reward;
}

Environment::Environment(EnvConfig config) : config_(std::move(config)) {
  config_.validate();
  traffic_ = config_.traffic;
  ledger_ = PacketLedger(config_.num_devices);
}

AgentState Environment::reset(Rng& rng) {
  const int k_total = config_.num_devices;
  const PhyConfig& phy = config_.phy;

  if (config_.random_offsets && traffic_.model == TrafficModel::kPeriodic) {
    std::uniform_int_distribution<int> pick(0, traffic_.period_frames - 1);
    for (int k = 0; k < k_total; ++k) traffic_.offset[k] = pick(rng);
  }

  auto draw_link = [&](Rng& r) {
    std::vector<Position> positions = config_.placement == Placement::kRing
                                          ? ring_positions(k_total, config_.ring_radius, phy, r)
                                          : uniform_positions(k_total, phy, r);
    return make_link_budget(std::move(positions), phy, r);
  };
  if (config_.fixed_topology) {
    if (!fixed_link_) {
      Rng topology_rng = make_rng(config_.topology_seed, streams::kTopology);
      fixed_link_ = draw_link(topology_rng);
    }
    state_.link = *fixed_link_;
  } else {
    state_.link = draw_link(rng);
  }

  const double a = jakes_coefficient(phy.device_speed, phy.carrier_frequency, config_.frame_duration());
  state_.fading = FadingMatrix::draw(phy.num_antennas, std::vector<double>(k_total, a), rng);
  state_.buffers = BufferMatrix(k_total, traffic_.max_deadline());
  state_.frame = 0;

  Observation& obs = state_.last_observation;
  obs.active.assign(k_total, 0);
  obs.decoded.assign(k_total, 0);
  obs.observed_buffers = BufferMatrix(k_total, traffic_.max_deadline());
  obs.observed_powers.assign(k_total, 0.0);
  obs.last_reward = 0;

  ledger_ = PacketLedger(k_total);
  counters_ = EpisodeAudit{};
  return AgentState::initial(k_total, traffic_.max_deadline());
}

StepResult Environment::step(const ActionVector& action, Rng& rng) {
  const int k_total = config_.num_devices;
  if (action.size() != k_total) throw Error(ErrorCode::kDimensionMismatch, "action length differs from K");
  if (state_.buffers.num_devices() != k_total) throw Error(ErrorCode::kInvalidArgument, "step before reset");

  std::vector<int> active_ids;
  for (int k = 0; k < k_total; ++k)
    if (action[k] && !state_.buffers.row_empty(k)) active_ids.push_back(k);

  const DecodeOutcome outcome =
      decode_frame(active_ids, state_.fading, state_.link, config_.phy, action.count(), rng);

  StepResult result;
  Observation& obs = result.observation;
  obs.active.assign(k_total, 0);
  obs.decoded = outcome.decoded;
  obs.observed_powers.assign(k_total, 0.0);
  for (std::size_t i = 0; i < outcome.active.size(); ++i) {
    obs.active[outcome.active[i]] = 1;
    obs.observed_powers[outcome.active[i]] = outcome.power[i];
  }
  int reward = 0;
  for (int k = 0; k < k_total; ++k) reward += obs.decoded[k];

  const BufferMatrix after_decode = remove_decoded(state_.buffers, obs.decoded);
  obs.observed_buffers = BufferMatrix(k_total, after_decode.depth());
  for (int k = 0; k < k_total; ++k) {
    if (!obs.decoded[k]) continue;
    const auto src = after_decode.row(k);
    auto dst = obs.observed_buffers.row(k);
    for (std::size_t d = 0; d < src.size(); ++d) dst[d] = std::min(src[d], kObservedCountCap);
  }
  obs.last_reward = reward;

  result.arrivals = generate_arrivals(state_.frame, traffic_, rng);
  AgingResult aged = age_and_admit(after_decode, result.arrivals, traffic_.deadline_frames);
  result.expired = std::move(aged.expired);
  state_.buffers = std::move(aged.buffers);

  for (int k = 0; k < k_total; ++k) {
    ledger_.generated[k] += result.arrivals[k];
    ledger_.delivered[k] += obs.decoded[k];
    ledger_.expired[k] += result.expired[k];
  }

  const int users = static_cast<int>(active_ids.size());
  ++counters_.frames;
  if (users > config_.phy.sic_limit) {
    ++counters_.overloaded_frames;
    if (reward > 0) ++counters_.overloaded_with_reward;
  }

  state_.fading = evolve_fading(state_.fading, rng);
  ++state_.frame;
  state_.last_observation = obs;

  result.reward = reward;
  result.num_active = users;
  return result;
}

std::vector<double> Environment::true_powers() const {
  std::vector<double> out(config_.num_devices);
  for (int k = 0; k < config_.num_devices; ++k)
    out[k] = received_power(config_.phy.tx_power, state_.link.large_scale_gain[k], state_.fading.device(k));
  return out;
}

EpisodeAudit Environment::audit() const {
  EpisodeAudit a = counters_;
  a.episodes = 1;
  a.conservation_failures = ledger_.conserves(state_.buffers) ? 0 : 1;
  return a;
}

void preprocess_into(const AgentState& state, const FeatureConfig& config, std::span<const double> oracle_powers,
                     std::span<double> out) {
  const int k_total = state.num_devices();
  if (static_cast<int>(out.size()) != feature_size(k_total))
    throw Error(ErrorCode::kDimensionMismatch, "feature buffer must hold 5K+1 values");
  if (config.channel == ChannelFeatures::kOracle && static_cast<int>(oracle_powers.size()) != k_total)
    throw Error(ErrorCode::kDimensionMismatch, "oracle powers must have one entry per device");
  for (int k = 0; k < k_total; ++k) {
    const auto hol = head_of_line(state.buffer_estimate.row(k));
    out[k] = hol ? 1.0 / *hol : 0.0;
    out[k_total + k] = reciprocal_age(state.age_polled[k]);
    out[2 * k_total + k] = reciprocal_age(state.age_active[k]);
    out[3 * k_total + k] = reciprocal_age(state.age_success[k]);
    double power = 0.0;
    switch (config.channel) {
      case ChannelFeatures::kEstimate:
        if (state.age_active[k] != AgentState::kNever)
          power = power_feature(state.power_estimate[k], config.power_threshold);
        break;
      case ChannelFeatures::kOracle:
        power = power_feature(oracle_powers[k], config.power_threshold);
        break;
      case ChannelFeatures::kNone:
        break;
    }
    out[4 * k_total + k] = power;
  }
  out[5 * k_total] = state.last_reward;
}

std::vector<double> preprocess(const AgentState& state, const FeatureConfig& config,
                               std::span<const double> oracle_powers) {
  std::vector<double> out(feature_size(state.num_devices()));
  preprocess_into(state, config, oracle_powers, out);
  return out;
}

double urllc_score(std::uint64_t delivered, std::uint64_t generated) {
  if (generated == 0) throw Error(ErrorCode::kUndefinedScore, "no packets were generated");
  if (delivered > generated) throw Error(ErrorCode::kInvalidArgument, "more packets delivered than generated");
  return static_cast<double>(delivered) / static_cast<double>(generated);
}

double jain_index(std::span<const double> scores) {
  if (scores.empty()) throw Error(ErrorCode::kEmptyInput, "Jain index of an empty score list");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : scores) {
    if (x < 0.0) throw Error(ErrorCode::kInvalidArgument, "Jain index needs nonnegative scores");
    sum += x;
    sum_sq += x * x;
  }
  if (!(sum_sq > 0.0)) throw Error(ErrorCode::kUndefinedScore, "Jain index of all-zero scores");
  return sum * sum / (static_cast<double>(scores.size()) * sum_sq);
}

std::uint64_t action_space_size(int num_devices, int sic_limit) {
  if (num_devices < 1 || num_devices > 63) throw Error(ErrorCode::kInvalidArgument, "K must lie in [1, 63]");
  if (sic_limit < 1 || sic_limit > num_devices) throw Error(ErrorCode::kInvalidArgument, "B must lie in [1, K]");
  std::uint64_t excluded = 0;
  Wide binom = 1;
  for (int k = 0; k < sic_limit; ++k) {
    excluded += static_cast<std::uint64_t>(binom);
    binom = binom * static_cast<unsigned>(num_devices - k) / static_cast<unsigned>(k + 1);
  }
  return (std::uint64_t{1} << num_devices) - excluded;
}

}  // namespace noma
