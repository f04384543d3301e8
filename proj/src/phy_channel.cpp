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

#include <cmath>
#include <numbers>

#include "noma/error.hpp"
#include "noma/phy.hpp"

namespace noma {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

int slots_per_frame(Protocol protocol) { return protocol == Protocol::kScheduled5Slot ? 5 : 4; }

void PhyConfig::validate() const {
  auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(field, "must be strictly positive");
  };
  positive(carrier_frequency, "phy.carrier_frequency");
  positive(bandwidth, "phy.bandwidth");
  positive(subcarrier_spacing, "phy.subcarrier_spacing");
  positive(delay_spread, "phy.delay_spread");
  positive(symbol_info_duration, "phy.symbol_info_duration");
  positive(cyclic_prefix_duration, "phy.cyclic_prefix_duration");
  positive(noise_psd, "phy.noise_psd_dbm_hz");
  positive(noise_figure, "phy.noise_figure_db");
  positive(tx_power, "phy.tx_power_dbm");
  positive(bs_antenna_gain, "phy.bs_antenna_gain_db");
  positive(device_antenna_gain, "phy.device_antenna_gain_db");
  positive(bs_height, "phy.bs_height");
  positive(device_height, "phy.device_height");
  positive(layout_width, "phy.layout_width");
  positive(layout_length, "phy.layout_length");
  positive(device_speed, "phy.device_speed_kmh");
  if (num_antennas < 1) throw ValidationError("phy.num_antennas", "must be at least 1");
  if (sic_limit < 1) throw ValidationError("phy.sic_limit", "must be at least 1");
  if (packet_bits < 1) throw ValidationError("phy.packet_bits", "must be at least 1");
  if (shadowing_sigma_db < 0.0) throw ValidationError("phy.shadowing_sigma_db", "must be nonnegative");
}

double jakes_coefficient(double speed, double carrier_frequency, double frame_duration) {
  const double argument = 2.0 * std::numbers::pi * speed * carrier_frequency * frame_duration / kSpeedOfLight;
  return std::cyl_bessel_j(0.0, argument);
}

double coherence_time(double carrier_frequency, double speed) {
  if (!(speed > 0.0)) throw Error(ErrorCode::kUndefinedCoherence, "device speed must be positive");
  return kSpeedOfLight / (8.0 * carrier_frequency * speed);
}

FadingMatrix::FadingMatrix(int num_antennas, int num_devices, std::vector<double> correlation)
    : num_antennas_(num_antennas),
      num_devices_(num_devices),
      coefficients_(static_cast<std::size_t>(num_antennas) * num_devices),
      correlation_(std::move(correlation)) {
  if (static_cast<int>(correlation_.size()) != num_devices)
    throw Error(ErrorCode::kDimensionMismatch, "one correlation coefficient per device");
  for (double a : correlation_)
    if (!(std::abs(a) <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "correlation outside [-1, 1]");
}

namespace {

// Circularly symmetric complex Gaussian with the given total variance.
Complex complex_gaussian(double variance, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = std::sqrt(variance / 2.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {scale * re, scale * im};
}

}  // namespace

FadingMatrix FadingMatrix::draw(int num_antennas, std::vector<double> correlation, Rng& rng) {
  const int num_devices = static_cast<int>(correlation.size());
  FadingMatrix m(num_antennas, num_devices, std::move(correlation));
  for (auto& h : m.coefficients_) h = complex_gaussian(1.0, rng);
  return m;
}

FadingMatrix evolve_fading(const FadingMatrix& state, Rng& rng) {
  FadingMatrix next = state;
  for (int k = 0; k < state.num_devices(); ++k) {
    const double a = state.correlation()[k];
    const double innovation = std::max(0.0, 1.0 - a * a);
    for (Complex& h : next.device(k)) h = a * h + complex_gaussian(innovation, rng);
  }
  return next;
}

Position base_station_position(const PhyConfig& config) {
  return {config.layout_width / 2.0, config.layout_length / 2.0, config.bs_height};
}

double distance_3d(const Position& a, const Position& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

double inh_nlos_path_loss_db(double distance, double carrier_frequency) {
  const double fc_ghz = carrier_frequency / 1e9;
  const double los = 32.4 + 17.3 * std::log10(distance) + 20.0 * std::log10(fc_ghz);
  const double nlos = 38.3 * std::log10(distance) + 17.30 + 24.9 * std::log10(fc_ghz);
  return std::max(los, nlos);
}

double path_gain(const Position& device, const PhyConfig& config, Rng& rng) {
  const double d = distance_3d(device, base_station_position(config));
  if (!(d > 0.0)) throw Error(ErrorCode::kDegenerateGeometry, "device located at the BS antenna");
  double loss_db = inh_nlos_path_loss_db(d, config.carrier_frequency);
  if (config.shadowing) {
    std::normal_distribution<double> shadow(0.0, config.shadowing_sigma_db);
    loss_db += shadow(rng);
  }
  return config.bs_antenna_gain * config.device_antenna_gain * std::pow(10.0, -loss_db / 10.0);
}

std::vector<Position> uniform_positions(int num_devices, const PhyConfig& config, Rng& rng) {
  std::uniform_real_distribution<double> ux(0.0, config.layout_width);
  std::uniform_real_distribution<double> uy(0.0, config.layout_length);
  std::vector<Position> out;
  out.reserve(num_devices);
  for (int k = 0; k < num_devices; ++k) {
    const double x = ux(rng);
    const double y = uy(rng);
    out.push_back({x, y, config.device_height});
  }
  return out;
}

std::vector<Position> ring_positions(int num_devices, double radius, const PhyConfig& config, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const Position bs = base_station_position(config);
  std::vector<Position> out;
  out.reserve(num_devices);
  for (int k = 0; k < num_devices; ++k) {
    const double theta = angle(rng);
    out.push_back({bs.x + radius * std::cos(theta), bs.y + radius * std::sin(theta), config.device_height});
  }
  return out;
}

LinkBudget make_link_budget(std::vector<Position> positions, const PhyConfig& config, Rng& rng) {
  LinkBudget link;
  link.large_scale_gain.reserve(positions.size());
  for (const Position& p : positions) link.large_scale_gain.push_back(path_gain(p, config, rng));
  link.positions = std::move(positions);
  return link;
}

}  // namespace noma
