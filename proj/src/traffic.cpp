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
#include <numeric>

#include "noma/error.hpp"
#include "noma/traffic.hpp"

namespace noma {

int TrafficConfig::max_deadline() const {
  return deadline_frames.empty() ? 0 : *std::max_element(deadline_frames.begin(), deadline_frames.end());
}

void TrafficConfig::validate() const {
  const auto k = deadline_frames.size();
  if (k == 0) throw ValidationError("K", "traffic needs at least one device");
  for (int d : deadline_frames)
    if (d < 1) throw ValidationError("traffic.deadline_frames", "must be at least 1");
  if (model == TrafficModel::kPeriodic) {
    if (period_frames < 1) throw ValidationError("traffic.period_frames", "must be at least 1");
    if (arrival_prob.size() != k || offset.size() != k)
      throw ValidationError("traffic.arrival_prob", "one entry per device required");
    for (double q : arrival_prob)
      if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("traffic.arrival_prob", "must lie in [0, 1]");
    for (int f : offset)
      if (f < 0 || f >= period_frames) throw ValidationError("traffic.offsets", "must lie in [0, period)");
  } else {
    if (rate_per_frame.size() != k) throw ValidationError("traffic.interarrival_ms", "one rate per device required");
    for (double r : rate_per_frame)
      if (!(r >= 0.0)) throw ValidationError("traffic.interarrival_ms", "rate must be nonnegative");
  }
}

TrafficConfig TrafficConfig::periodic(int num_devices, int period_frames, double arrival_prob, int deadline_frames) {
  TrafficConfig c;
  c.model = TrafficModel::kPeriodic;
  c.period_frames = period_frames;
  c.arrival_prob.assign(num_devices, arrival_prob);
  c.offset.assign(num_devices, 0);
  c.deadline_frames.assign(num_devices, deadline_frames);
  return c;
}

TrafficConfig TrafficConfig::poisson(int num_devices, double rate_per_frame, int deadline_frames) {
  TrafficConfig c;
  c.model = TrafficModel::kPoisson;
  c.rate_per_frame.assign(num_devices, rate_per_frame);
  c.deadline_frames.assign(num_devices, deadline_frames);
  return c;
}

std::uint64_t BufferMatrix::row_total(int k) const {
  const auto r = row(k);
  return std::accumulate(r.begin(), r.end(), std::uint64_t{0});
}

std::uint64_t BufferMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::vector<std::uint32_t> generate_arrivals(std::int64_t t, const TrafficConfig& config, Rng& rng) {
  const int k_total = config.num_devices();
  std::vector<std::uint32_t> out(k_total, 0);
  if (config.model == TrafficModel::kPeriodic) {
    for (int k = 0; k < k_total; ++k) {
      if (t % config.period_frames != config.offset[k]) continue;
      std::bernoulli_distribution arrival(config.arrival_prob[k]);
      out[k] = arrival(rng) ? 1 : 0;
    }
  } else {
    for (int k = 0; k < k_total; ++k) {
      const double rate = config.rate_per_frame[k];
      if (!(rate > 0.0)) continue;
      std::poisson_distribution<std::uint32_t> count(rate);
      out[k] = count(rng);
    }
  }
  return out;
}

std::optional<int> head_of_line(std::span<const std::uint32_t> row) {
  for (std::size_t d = 0; d < row.size(); ++d)
    if (row[d] > 0) return static_cast<int>(d) + 1;
  return std::nullopt;
}

BufferMatrix remove_decoded(const BufferMatrix& buffers, std::span<const std::uint8_t> decoded) {
  if (static_cast<int>(decoded.size()) != buffers.num_devices())
    throw Error(ErrorCode::kDimensionMismatch, "decoded flags do not match the buffer rows");
  BufferMatrix out = buffers;
  for (int k = 0; k < buffers.num_devices(); ++k) {
    if (!decoded[k]) continue;
    const auto hol = head_of_line(out.row(k));
    if (!hol)
      throw Error(ErrorCode::kBufferInconsistency, "device " + std::to_string(k) + " decoded with an empty buffer");
    --out.at(k, *hol);
  }
  return out;
}

AgingResult age_and_admit(const BufferMatrix& buffers, std::span<const std::uint32_t> arrivals,
                          std::span<const int> deadline_frames) {
  const int k_total = buffers.num_devices();
  const int depth = buffers.depth();
  if (static_cast<int>(arrivals.size()) != k_total || static_cast<int>(deadline_frames.size()) != k_total)
    throw Error(ErrorCode::kDimensionMismatch, "arrivals or deadlines do not match the buffer rows");
  AgingResult out{BufferMatrix(k_total, depth), std::vector<std::uint32_t>(k_total, 0)};
  for (int k = 0; k < k_total; ++k) {
    const auto src = buffers.row(k);
    auto dst = out.buffers.row(k);
    out.expired[k] = depth > 0 ? src[0] : 0;
    for (int d = 1; d < depth; ++d) dst[d - 1] = src[d];
    if (arrivals[k] > 0) {
      const int deadline = deadline_frames[k];
      if (deadline < 1 || deadline > depth) throw Error(ErrorCode::kInvalidArgument, "deadline outside buffer depth");
      out.buffers.at(k, deadline) += arrivals[k];
    }
  }
  return out;
}

AgingResult buffer_transition(const BufferMatrix& buffers, std::span<const std::uint8_t> decoded,
                              std::span<const std::uint32_t> arrivals, std::span<const int> deadline_frames) {
  return age_and_admit(remove_decoded(buffers, decoded), arrivals, deadline_frames);
}

std::uint64_t PacketLedger::total_generated() const {
  return std::accumulate(generated.begin(), generated.end(), std::uint64_t{0});
}
std::uint64_t PacketLedger::total_delivered() const {
  return std::accumulate(delivered.begin(), delivered.end(), std::uint64_t{0});
}
std::uint64_t PacketLedger::total_expired() const {
  return std::accumulate(expired.begin(), expired.end(), std::uint64_t{0});
}

bool PacketLedger::conserves(const BufferMatrix& residual) const {
  for (int k = 0; k < residual.num_devices(); ++k)
    if (generated[k] != delivered[k] + expired[k] + residual.row_total(k)) return false;
  return true;
}

}  // namespace noma
