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
#include "noma/schedulers.hpp"

namespace noma {

void PriorConfig::validate() const {
  if (!(power_threshold >= 0.0)) throw ValidationError("prior.power_threshold", "must be nonnegative");
  if (staleness_frames < 0) throw ValidationError("prior.staleness_frames", "must be nonnegative");
  if (!(smoothing >= 0.0 && smoothing <= 1.0)) throw ValidationError("prior.smoothing", "must lie in [0, 1]");
}

ActionVector edf_schedule(const BufferMatrix& buffers, int slots, Rng& rng) {
  if (slots < 1) throw Error(ErrorCode::kInvalidArgument, "EDF needs at least one slot");
  const int k_total = buffers.num_devices();
  std::vector<std::pair<int, int>> candidates;  // (head-of-line, device)
  for (int k = 0; k < k_total; ++k)
    if (const auto hol = head_of_line(buffers.row(k))) candidates.emplace_back(*hol, k);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  ActionVector action(k_total);
  const int picks = std::min<int>(slots, static_cast<int>(candidates.size()));
  for (int i = 0; i < picks; ++i) action[candidates[i].second] = 1;
  return action;
}

std::vector<std::uint8_t> channel_prior(std::span<const double> power_estimate, std::span<const int> age_active,
                                        const PriorConfig& config) {
  if (power_estimate.size() != age_active.size())
    throw Error(ErrorCode::kDimensionMismatch, "power and age vectors differ in length");
  std::vector<std::uint8_t> mask(power_estimate.size(), 1);
  for (std::size_t k = 0; k < mask.size(); ++k)
    if (power_estimate[k] <= config.power_threshold && age_active[k] <= config.staleness_frames) mask[k] = 0;
  return mask;
}

std::vector<std::uint8_t> combined_prior(const BufferMatrix& buffer_estimate, std::span<const double> power_estimate,
                                         std::span<const int> age_active, int slots, const PriorConfig& config,
                                         Rng& rng) {
  const ActionVector edf = edf_schedule(buffer_estimate, slots, rng);
  std::vector<std::uint8_t> prior = channel_prior(power_estimate, age_active, config);
  if (static_cast<int>(prior.size()) != edf.size())
    throw Error(ErrorCode::kDimensionMismatch, "buffer estimate and power estimate differ in K");
  for (std::size_t k = 0; k < prior.size(); ++k) prior[k] = prior[k] && edf.poll[k];
  return prior;
}

void posterior_policy_into(std::span<const double> branch_probs, std::span<const std::uint8_t> prior,
                           double smoothing, std::span<double> out) {
  if (branch_probs.size() != prior.size() || out.size() != prior.size())
    throw Error(ErrorCode::kDimensionMismatch, "policy and prior differ in length");
  for (std::size_t k = 0; k < prior.size(); ++k) {
    const double pi = branch_probs[k];
    const double f = prior[k] ? 1.0 : smoothing;
    const double on = pi * f;
    const double denom = on + (1.0 - pi);
    out[k] = denom > 0.0 ? on / denom : 0.0;
  }
}

std::vector<double> posterior_policy(std::span<const double> branch_probs, std::span<const std::uint8_t> prior,
                                     double smoothing) {
  std::vector<double> out(prior.size());
  posterior_policy_into(branch_probs, prior, smoothing, out);
  return out;
}

ActionVector random_schedule(int num_devices, int slots, Rng& rng) {
  if (slots < 0) throw Error(ErrorCode::kInvalidArgument, "negative slot count");
  ActionVector action(num_devices);
  const int picks = std::min(slots, num_devices);
  std::vector<int> ids(num_devices);
  std::iota(ids.begin(), ids.end(), 0);
  for (int i = 0; i < picks; ++i) {
    std::uniform_int_distribution<int> pick(i, num_devices - 1);
    std::swap(ids[i], ids[pick(rng)]);
    action[ids[i]] = 1;
  }
  return action;
}

bool sa_transmit_decision(bool has_packet, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "transmit probability outside [0, 1]");
  if (!has_packet) return false;
  std::bernoulli_distribution transmit(p);
  return transmit(rng);
}

double optimize_sa_probability(std::span<const double> grid, const std::function<double(double)>& score) {
  if (grid.empty()) throw Error(ErrorCode::kEmptyInput, "empty probability grid");
  double best_p = grid[0];
  double best = score(best_p);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double s = score(grid[i]);
    if (s > best || (s == best && grid[i] < best_p)) {
      best = s;
      best_p = grid[i];
    }
  }
  return best_p;
}

ActionVector RandomPolicy::act(const AgentState&, const Environment& env, Rng& rng) const {
  return random_schedule(env.num_devices(), slots_, rng);
}

ActionVector EdfOraclePolicy::act(const AgentState&, const Environment& env, Rng& rng) const {
  return edf_schedule(env.state().buffers, slots_, rng);
}

SlottedAlohaPolicy::SlottedAlohaPolicy(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "transmit probability outside [0, 1]");
}

ActionVector SlottedAlohaPolicy::act(const AgentState&, const Environment& env, Rng& rng) const {
  const BufferMatrix& buffers = env.state().buffers;
  ActionVector action(env.num_devices());
  for (int k = 0; k < env.num_devices(); ++k) action[k] = sa_transmit_decision(!buffers.row_empty(k), p_, rng);
  return action;
}

}  // namespace noma
