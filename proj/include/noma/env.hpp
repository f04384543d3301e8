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
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "noma/phy.hpp"
#include "noma/rng.hpp"
#include "noma/traffic.hpp"

namespace noma {

// Binary polling decision, one entry per device.
struct ActionVector {
  std::vector<std::uint8_t> poll;

  ActionVector() = default;
  explicit ActionVector(int num_devices) : poll(num_devices, 0) {}
  explicit ActionVector(std::vector<std::uint8_t> flags) : poll(std::move(flags)) {}

  int size() const { return static_cast<int>(poll.size()); }
  std::uint8_t operator[](int k) const { return poll[k]; }
  std::uint8_t& operator[](int k) { return poll[k]; }
  int count() const;

  bool operator==(const ActionVector&) const = default;
};

// Buffer entries reported by a device are 3-bit counters.
inline constexpr std::uint32_t kObservedCountCap = 7;

// Feedback received at the end of a frame.
struct Observation {
  std::vector<std::uint8_t> active;   // u
  std::vector<std::uint8_t> decoded;  // phi, subset of active
  // Buffer status carried by decoded packets, net of the delivered packet and
  // saturated at kObservedCountCap. Zero rows for everyone else.
  BufferMatrix observed_buffers;
  std::vector<double> observed_powers;  // eta for active devices, zero elsewhere
  int last_reward = 0;

  bool operator==(const Observation&) const = default;
};

struct AgentState {
  static constexpr int kNever = std::numeric_limits<int>::max();

  BufferMatrix buffer_estimate;
  std::vector<double> power_estimate;
  std::vector<int> age_polled;
  std::vector<int> age_active;
  std::vector<int> age_success;
  int last_reward = 0;

  static AgentState initial(int num_devices, int depth);
  int num_devices() const { return static_cast<int>(power_estimate.size()); }

  bool operator==(const AgentState&) const = default;
};

// f^A: folds the newest observation and the action that produced it into
// the agent state.
AgentState update_agent_state(const AgentState& prev, const Observation& obs, const ActionVector& prev_action);

enum class Placement { kUniform, kRing };

struct EnvConfig {
  int num_devices = 0;
  PhyConfig phy;
  TrafficConfig traffic;
  Protocol protocol = Protocol::kScheduled5Slot;
  Placement placement = Placement::kUniform;
  double ring_radius = 10.0;  // m, horizontal distance for kRing
  bool fixed_topology = false;
  std::uint64_t topology_seed = 0;
  bool random_offsets = false;  // redraw periodic offsets every episode
  int episode_length = 200;

  double frame_duration() const { return phy.frame_duration(protocol); }
  int sic_limit() const { return phy.sic_limit; }
  void validate() const;
};

struct EnvState {
  BufferMatrix buffers;
  FadingMatrix fading;
  LinkBudget link;
  Observation last_observation;
  std::int64_t frame = 0;
};

struct StepResult {
  Observation observation;
  int reward = 0;
  int num_active = 0;
  std::vector<std::uint32_t> arrivals;
  std::vector<std::uint32_t> expired;
};

// Invariant counters accumulated over simulated episodes.
struct EpisodeAudit {
  std::uint64_t episodes = 0;
  std::uint64_t conservation_failures = 0;
  std::uint64_t frames = 0;
  std::uint64_t overloaded_frames = 0;       // more active devices than the SIC limit
  std::uint64_t overloaded_with_reward = 0;  // must stay zero

  void merge(const EpisodeAudit& other);
  bool clean() const { return conservation_failures == 0 && overloaded_with_reward == 0; }
};

class Environment {
 public:
  explicit Environment(EnvConfig config);

  // Starts a new episode: empty buffers, fresh fading and (unless the
  // topology is fixed) fresh device positions.
  AgentState reset(Rng& rng);

  // One frame: active = polled with a nonempty buffer, SIC decoding,
  // reward, buffer transition, arrivals and fading evolution.
  StepResult step(const ActionVector& action, Rng& rng);

  const EnvConfig& config() const { return config_; }
  const EnvState& state() const { return state_; }
  const TrafficConfig& traffic() const { return traffic_; }
  const PacketLedger& ledger() const { return ledger_; }
  int num_devices() const { return config_.num_devices; }
  bool done() const { return state_.frame >= config_.episode_length; }

  // Current received powers of every device; the oracle feed for full-CSI agents.
  std::vector<double> true_powers() const;

  // Audit of the episode so far, including a conservation check.
  EpisodeAudit audit() const;

 private:
  EnvConfig config_;
  TrafficConfig traffic_;
  EnvState state_;
  PacketLedger ledger_;
  EpisodeAudit counters_;
  std::optional<LinkBudget> fixed_link_;
};

enum class ChannelFeatures { kEstimate, kNone, kOracle };

struct FeatureConfig {
  double power_threshold = 1.0;  // eta*, the reference for the power block
  ChannelFeatures channel = ChannelFeatures::kEstimate;
};

inline int feature_size(int num_devices) { return 5 * num_devices + 1; }

// [1/d_hol | 1/tau_p | 1/tau_a | 1/tau_s | power | last reward], 5K+1 values.
// Empty estimates and never-seen ages map to 0. The power block is
// log10(eta/eta*) clipped to [-4, 4] and scaled to [-1, 1].
std::vector<double> preprocess(const AgentState& state, const FeatureConfig& config,
                               std::span<const double> oracle_powers = {});
void preprocess_into(const AgentState& state, const FeatureConfig& config, std::span<const double> oracle_powers,
                     std::span<double> out);

// Delivered over generated; throws kUndefinedScore without packets.
double urllc_score(std::uint64_t delivered, std::uint64_t generated);

// (sum x)^2 / (n sum x^2).
double jain_index(std::span<const double> scores);

// 2^K - sum_{k<B} C(K, k): actions polling at least B devices.
std::uint64_t action_space_size(int num_devices, int sic_limit);

}  // namespace noma
