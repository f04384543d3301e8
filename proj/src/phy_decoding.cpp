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
#include <numbers>
#include <numeric>

#include "noma/error.hpp"
#include "noma/phy.hpp"

namespace noma {

double received_power(double tx_power, double gain, std::span<const Complex> h) {
  double norm2 = 0.0;
  for (const Complex& c : h) norm2 += std::norm(c);
  return tx_power * gain * norm2;
}

std::vector<int> decoding_order(std::span<const double> powers) {
  if (powers.empty()) throw Error(ErrorCode::kEmptyInput, "decoding order of an empty active set");
  std::vector<int> order(powers.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return powers[a] > powers[b]; });
  return order;
}

double cross_interference(std::span<const Complex> h_k, std::span<const Complex> h_j, double tx_power_j,
                          double gain_j) {
  if (h_k.size() != h_j.size()) throw Error(ErrorCode::kDimensionMismatch, "antenna counts differ");
  double norm2 = 0.0;
  Complex inner{0.0, 0.0};
  for (std::size_t i = 0; i < h_k.size(); ++i) {
    norm2 += std::norm(h_k[i]);
    inner += std::conj(h_k[i]) * h_j[i];
  }
  if (!(norm2 > 0.0)) throw Error(ErrorCode::kDegenerateCombiner, "zero combining vector");
  return tx_power_j * gain_j * std::norm(inner) / norm2;
}

double sic_sinr(std::size_t target_rank, std::span<const int> order, std::span<const std::uint8_t> decoded,
                std::span<const double> powers, const InterferenceMatrix& cross, double noise_power) {
  const int target = order[target_rank];
  double interference = 0.0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (r == target_rank) continue;
    const int j = order[r];
    if (r < target_rank && decoded[j]) continue;  // cancelled
    interference += cross(j, target);
  }
  return powers[target] / (interference + noise_power);
}

double no_sic_sinr(int target, std::span<const double> powers, const InterferenceMatrix& cross,
                   double noise_power) {
  double interference = 0.0;
  for (int j = 0; j < static_cast<int>(powers.size()); ++j)
    if (j != target) interference += cross(j, target);
  return powers[target] / (interference + noise_power);
}

int pilot_count(double bandwidth, double delay_spread) {
  if (!(delay_spread > 0.0)) throw Error(ErrorCode::kInvalidArgument, "delay spread must be positive");
  const double coherence_bandwidth = 1.0 / (2.0 * delay_spread);
  // Guard against 1.0000000000000002 style overshoot of exact ratios.
  const double ratio = bandwidth / coherence_bandwidth;
  return std::max(1, static_cast<int>(std::ceil(ratio - 1e-9)));
}

int channel_uses(double bandwidth, int pilots_per_device, int num_polled, double subcarrier_spacing,
                 double info_duration) {
  const double data_bandwidth = bandwidth - static_cast<double>(pilots_per_device) * num_polled * subcarrier_spacing;
  const double uses = std::floor(data_bandwidth * info_duration);
  if (!(uses >= 1.0))
    throw Error(ErrorCode::kPilotOverload,
                "no channel uses left for " + std::to_string(num_polled) + " polled devices");
  return static_cast<int>(uses);
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double awgn_capacity(double sinr) { return std::log2(1.0 + sinr); }

double awgn_dispersion(double sinr) {
  constexpr double log2e = std::numbers::log2e;
  return sinr / 2.0 * (sinr + 2.0) / ((sinr + 1.0) * (sinr + 1.0)) * log2e * log2e;
}

double fbl_error_probability(double sinr, int blocklength, int payload_bits) {
  if (blocklength < 1 || payload_bits < 1)
    throw Error(ErrorCode::kInvalidArgument, "blocklength and payload must be positive");
  if (!(sinr > 0.0)) return 1.0;
  if (std::isinf(sinr)) return 0.0;
  const double n = blocklength;
  const double rate = static_cast<double>(payload_bits) / n;
  const double x = std::sqrt(n / awgn_dispersion(sinr)) * (awgn_capacity(sinr) - rate);
  return std::clamp(q_function(x), 0.0, 1.0);
}

double invert_error_for_power(double target_error, int blocklength, int payload_bits, double noise_power) {
  if (!(target_error > 0.0 && target_error < 1.0))
    throw Error(ErrorCode::kInvalidArgument, "target error must lie in (0, 1)");
  if (!(noise_power > 0.0)) throw Error(ErrorCode::kInvalidArgument, "noise power must be positive");
  // Bisection in log-SINR; the error probability decreases in SINR.
  double lo = std::log(1e-12);
  double hi = std::log(1e12);
  auto err = [&](double log_sinr) { return fbl_error_probability(std::exp(log_sinr), blocklength, payload_bits); };
  if (err(hi) > target_error || err(lo) < target_error)
    throw Error(ErrorCode::kNoSolution, "target error outside the reachable range");
  for (int it = 0; it < 400 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (err(mid) > target_error)
      lo = mid;
    else
      hi = mid;
  }
  // Pick the bracket end closer to the target.
  const double e_lo = std::abs(err(lo) - target_error);
  const double e_hi = std::abs(err(hi) - target_error);
  return std::exp(e_lo < e_hi ? lo : hi) * noise_power;
}

DecodeOutcome decode_frame(std::span<const int> active, const FadingMatrix& fading, const LinkBudget& link,
                           const PhyConfig& config, int num_polled, Rng& rng) {
  DecodeOutcome out;
  out.decoded.assign(fading.num_devices(), 0);
  out.active.assign(active.begin(), active.end());
  std::sort(out.active.begin(), out.active.end());
  const int users = static_cast<int>(out.active.size());
  const int pilots = pilot_count(config.bandwidth, config.delay_spread);
  out.blocklength = channel_uses(config.bandwidth, pilots, num_polled, config.subcarrier_spacing,
                                 config.symbol_info_duration);
  if (users == 0) return out;

  out.power.resize(users);
  for (int i = 0; i < users; ++i) {
    const int k = out.active[i];
    out.power[i] = received_power(config.tx_power, link.large_scale_gain[k], fading.device(k));
  }
  InterferenceMatrix cross(users);
  for (int j = 0; j < users; ++j)
    for (int i = 0; i < users; ++i)
      if (i != j)
        cross(j, i) = cross_interference(fading.device(out.active[i]), fading.device(out.active[j]), config.tx_power,
                                         link.large_scale_gain[out.active[j]]);

  const std::vector<int> local_order = decoding_order(out.power);
  out.order.reserve(users);
  for (int i : local_order) out.order.push_back(out.active[i]);

  out.sinr.assign(users, 0.0);
  out.error_prob.assign(users, 1.0);
  std::vector<std::uint8_t> local_decoded(users, 0);
  const double noise = config.noise_power();
  const bool decodable = users <= config.sic_limit;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (std::size_t rank = 0; rank < local_order.size(); ++rank) {
    const int i = local_order[rank];
    out.sinr[i] = sic_sinr(rank, local_order, local_decoded, out.power, cross, noise);
    out.error_prob[i] = fbl_error_probability(out.sinr[i], out.blocklength, config.packet_bits);
    if (!decodable) continue;  // diagnostics only; nothing is cancelled
    local_decoded[i] = uniform(rng) >= out.error_prob[i] ? 1 : 0;
    out.decoded[out.active[i]] = local_decoded[i];
  }
  return out;
}

}  // namespace noma
