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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "noma/env.hpp"
#include "noma/rng.hpp"
#include "noma/traffic.hpp"

namespace noma {

struct PriorConfig {
  double power_threshold = 0.0;  // eta*, W
  int staleness_frames = 63;     // tau*
  double smoothing = 0.1;        // kappa; 0 gives the hard mask

  void validate() const;
};

// Polls the `slots` devices with the smallest head-of-line delay. Empty
// buffers are never polled; ties are broken uniformly at random.
ActionVector edf_schedule(const BufferMatrix& buffers, int slots, Rng& rng);

// 0 for devices whose last known channel is both fresh and weak.
std::vector<std::uint8_t> channel_prior(std::span<const double> power_estimate, std::span<const int> age_active,
                                        const PriorConfig& config);

// EDF on the buffer estimate, masked by the channel prior.
std::vector<std::uint8_t> combined_prior(const BufferMatrix& buffer_estimate, std::span<const double> power_estimate,
                                         std::span<const int> age_active, int slots, const PriorConfig& config,
                                         Rng& rng);

// q_k = pi_k f'_k / (pi_k f'_k + 1 - pi_k) with f'_k = f_k + kappa (1 - f_k).
std::vector<double> posterior_policy(std::span<const double> branch_probs, std::span<const std::uint8_t> prior,
                                     double smoothing);
void posterior_policy_into(std::span<const double> branch_probs, std::span<const std::uint8_t> prior,
                           double smoothing, std::span<double> out);

// Uniformly random subset of min(slots, K) devices.
ActionVector random_schedule(int num_devices, int slots, Rng& rng);

// Proactive grant-free retransmission: Bernoulli(p) if a packet is waiting.
bool sa_transmit_decision(bool has_packet, double p, Rng& rng);

// Grid point with the highest score; ties go to the smaller probability.
double optimize_sa_probability(std::span<const double> grid, const std::function<double(double)>& score);

// Frame-level decision rule. Implementations are immutable after
// construction so one instance can serve several environments at once.
class SchedulingPolicy {
 public:
  virtual ~SchedulingPolicy() = default;
  virtual ActionVector act(const AgentState& state, const Environment& env, Rng& rng) const = 0;
  virtual std::string name() const = 0;
};

class RandomPolicy final : public SchedulingPolicy {
 public:
  explicit RandomPolicy(int slots) : slots_(slots) {}
  ActionVector act(const AgentState& state, const Environment& env, Rng& rng) const override;
  std::string name() const override { return "random"; }

 private:
  int slots_;
};

// EDF with access to the true buffers.
class EdfOraclePolicy final : public SchedulingPolicy {
 public:
  explicit EdfOraclePolicy(int slots) : slots_(slots) {}
  ActionVector act(const AgentState& state, const Environment& env, Rng& rng) const override;
  std::string name() const override { return "edf_oracle"; }

 private:
  int slots_;
};

// Each backlogged device transmits with probability p; the returned vector
// holds the transmit decisions.
class SlottedAlohaPolicy final : public SchedulingPolicy {
 public:
  explicit SlottedAlohaPolicy(double p);
  ActionVector act(const AgentState& state, const Environment& env, Rng& rng) const override;
  std::string name() const override { return "sa_noma_sic"; }
  double probability() const { return p_; }

 private:
  double p_;
};

}  // namespace noma
