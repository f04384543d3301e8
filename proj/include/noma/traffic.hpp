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
#include <optional>
#include <span>
#include <vector>

#include "noma/rng.hpp"

namespace noma {

enum class TrafficModel { kPeriodic, kPoisson };

struct TrafficConfig {
  TrafficModel model = TrafficModel::kPeriodic;
  int period_frames = 11;              // N_p
  std::vector<double> arrival_prob;    // q_k, periodic model
  std::vector<int> offset;             // f_k in [0, N_p)
  std::vector<double> rate_per_frame;  // lambda_k T_f, Poisson model
  std::vector<int> deadline_frames;    // delta_k >= 1

  int num_devices() const { return static_cast<int>(deadline_frames.size()); }
  int max_deadline() const;
  void validate() const;

  // Same parameters for every device.
  static TrafficConfig periodic(int num_devices, int period_frames, double arrival_prob, int deadline_frames);
  static TrafficConfig poisson(int num_devices, double rate_per_frame, int deadline_frames);
};

// Packet counts per device and time-to-deadline. Deadlines are 1-indexed:
// at(k, 1) holds the packets that expire at the end of the current frame.
class BufferMatrix {
 public:
  BufferMatrix() = default;
  BufferMatrix(int num_devices, int depth)
      : num_devices_(num_devices), depth_(depth), counts_(static_cast<std::size_t>(num_devices) * depth, 0) {}

  int num_devices() const { return num_devices_; }
  int depth() const { return depth_; }

  std::uint32_t& at(int k, int deadline) { return counts_[index(k, deadline)]; }
  std::uint32_t at(int k, int deadline) const { return counts_[index(k, deadline)]; }

  std::span<const std::uint32_t> row(int k) const {
    return {counts_.data() + static_cast<std::size_t>(k) * depth_, static_cast<std::size_t>(depth_)};
  }
  std::span<std::uint32_t> row(int k) {
    return {counts_.data() + static_cast<std::size_t>(k) * depth_, static_cast<std::size_t>(depth_)};
  }

  std::uint64_t row_total(int k) const;
  std::uint64_t total() const;
  bool row_empty(int k) const { return row_total(k) == 0; }

  bool operator==(const BufferMatrix&) const = default;

 private:
  std::size_t index(int k, int deadline) const {
    return static_cast<std::size_t>(k) * depth_ + static_cast<std::size_t>(deadline - 1);
  }

  int num_devices_ = 0;
  int depth_ = 0;
  std::vector<std::uint32_t> counts_;
};

// Packets generated by each device during frame t.
std::vector<std::uint32_t> generate_arrivals(std::int64_t t, const TrafficConfig& config, Rng& rng);

// Smallest time-to-deadline with a pending packet (1-indexed), if any.
std::optional<int> head_of_line(std::span<const std::uint32_t> row);

// Removes one head-of-line packet from every decoded device. Throws
// kBufferInconsistency if a decoded device has nothing buffered.
BufferMatrix remove_decoded(const BufferMatrix& buffers, std::span<const std::uint8_t> decoded);

struct AgingResult {
  BufferMatrix buffers;
  std::vector<std::uint32_t> expired;
};

// End-of-frame aging: packets at deadline 1 expire, the rest move one
// deadline closer, then arrivals enter at deadline delta_k.
AgingResult age_and_admit(const BufferMatrix& buffers, std::span<const std::uint32_t> arrivals,
                          std::span<const int> deadline_frames);

// Full buffer dynamics of one frame: decode removals, aging and arrivals.
AgingResult buffer_transition(const BufferMatrix& buffers, std::span<const std::uint8_t> decoded,
                              std::span<const std::uint32_t> arrivals, std::span<const int> deadline_frames);

// Running packet bookkeeping for one device population.
struct PacketLedger {
  std::vector<std::uint64_t> generated;
  std::vector<std::uint64_t> delivered;
  std::vector<std::uint64_t> expired;

  explicit PacketLedger(int num_devices = 0)
      : generated(num_devices, 0), delivered(num_devices, 0), expired(num_devices, 0) {}

  std::uint64_t total_generated() const;
  std::uint64_t total_delivered() const;
  std::uint64_t total_expired() const;
  // generated == delivered + expired + residual, per device.
  bool conserves(const BufferMatrix& residual) const;
};

}  // namespace noma
