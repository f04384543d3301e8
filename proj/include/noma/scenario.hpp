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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noma/agent.hpp"
#include "noma/env.hpp"
#include "noma/ppo.hpp"

namespace noma {

inline constexpr std::string_view kScenarioFormat = "noma-scenario/1";

enum class AgentKind {
  kNomaPpo,
  kNomaPpoNoPrior,
  kNomaPpoNoCsi,
  kNomaPpoFullCsi,
  kRandom,
  kEdfOracle,
  kSaNomaSic,
};

std::string_view to_string(AgentKind agent);
std::optional<AgentKind> parse_agent(std::string_view name);
bool is_learning_agent(AgentKind agent);
// Grant-free access for slotted ALOHA, polling for everything else.
Protocol required_protocol(AgentKind agent);

std::string_view to_string(Protocol protocol);
std::optional<Protocol> parse_protocol(std::string_view name);

// Physical-layer settings in file units. Gains and powers are in dB/dBm,
// speed in km/h, everything else in SI units.
struct PhySettings {
  double carrier_frequency = 4e9;
  double bandwidth = 38.16e6;
  double subcarrier_spacing = 30e3;
  double delay_spread = 100e-9;
  double symbol_info_duration = 33.33e-6;
  double cyclic_prefix_duration = 2.34e-6;
  int num_antennas = 4;
  int sic_limit = 3;
  int packet_bits = (32 + 46 + 14) * 8;
  double noise_psd_dbm_hz = -174.0;
  double noise_figure_db = 5.0;
  double tx_power_dbm = 23.0;
  double bs_antenna_gain_db = 5.0;
  double device_antenna_gain_db = 0.0;
  double bs_height = 3.0;
  double device_height = 1.5;
  double layout_width = 50.0;
  double layout_length = 120.0;
  double device_speed_kmh = 3.0;
  bool shadowing = false;
  double shadowing_sigma_db = 8.03;

  PhyConfig to_config() const;
  bool operator==(const PhySettings&) const = default;
};

struct TrafficSettings {
  TrafficModel model = TrafficModel::kPoisson;
  double interarrival_ms = 2.0;
  double deadline_ms = 1.0;
  std::optional<int> deadline_frames;  // derived from deadline_ms when unset
  std::optional<int> period_frames;    // derived from interarrival_ms when unset
  double arrival_prob = 1.0;           // periodic model
  bool random_offsets = false;         // periodic model, redrawn every episode

  bool operator==(const TrafficSettings&) const = default;
};

struct TopologySettings {
  Placement placement = Placement::kUniform;
  double ring_radius = 10.0;
  bool fixed = false;
  std::uint64_t seed = 0;

  bool operator==(const TopologySettings&) const = default;
};

struct PriorSettings {
  double smoothing = 0.1;
  std::optional<int> staleness_frames;     // coherence time in frames when unset
  double target_error = 1e-5;              // defines eta* when no threshold is given
  std::optional<double> power_threshold;   // W
  PriorSource source = PriorSource::kEstimate;

  bool operator==(const PriorSettings&) const = default;
};

struct EvalSettings {
  int episodes = 500;
  int curve_episodes = 50;
  int cadence = 250;
  bool greedy = false;

  bool operator==(const EvalSettings&) const = default;
};

struct SaSettings {
  std::vector<double> grid = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45,
                              0.5,  0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9};
  int episodes_per_point = 100;
  std::optional<double> probability;  // skip the sweep when set

  bool operator==(const SaSettings&) const = default;
};

struct Scenario {
  int num_devices = 0;
  AgentKind agent = AgentKind::kNomaPpo;
  std::optional<Protocol> protocol;
  PhySettings phy;
  TrafficSettings traffic;
  TopologySettings topology;
  int episode_length = 200;
  PpoConfig ppo;
  PriorSettings prior;
  EvalSettings eval;
  SaSettings sa;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  int checkpoint_cadence = 0;

  Protocol resolved_protocol() const { return protocol.value_or(required_protocol(agent)); }
  double frame_duration() const;
  int deadline_frames() const;
  int period_frames() const;
  double rate_per_frame() const;
  int staleness_frames() const;
  double power_threshold() const;

  // Throws ValidationError naming the first offending field.
  void validate() const;

  EnvConfig env_config() const;
  AgentOptions agent_options() const;

  bool operator==(const Scenario&) const = default;
};

// Milliseconds to whole frames, rounding down (a packet must be served
// inside its deadline). Exact multiples are not lost to rounding noise.
int frames_within(double milliseconds, double frame_duration);

Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_text(std::string_view text);
Scenario load_scenario(const std::string& path);

// Every key with its current value, one per line, in a stable order.
std::string format_scenario(const Scenario& scenario);
void save_scenario(const std::string& path, const Scenario& scenario);

// FNV-1a over the canonical text form.
std::uint64_t scenario_hash(const Scenario& scenario);

}  // namespace noma
