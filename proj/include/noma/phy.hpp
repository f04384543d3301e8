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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "noma/rng.hpp"

namespace noma {

using Complex = std::complex<double>;

inline constexpr double kSpeedOfLight = 299'792'458.0;

double db_to_linear(double db);
double dbm_to_watt(double dbm);

// Frame layout. The polled protocol spends five symbols per frame (poll,
// guard, uplink, guard, ack); grant-free access drops the poll symbol.
enum class Protocol { kScheduled5Slot, kGrantFree4Slot };

int slots_per_frame(Protocol protocol);

struct PhyConfig {
  double carrier_frequency = 4e9;           // Hz
  double bandwidth = 38.16e6;               // Hz, occupied signal bandwidth
  double subcarrier_spacing = 30e3;         // Hz
  double delay_spread = 100e-9;             // s
  double symbol_info_duration = 33.33e-6;   // s
  double cyclic_prefix_duration = 2.34e-6;  // s
  int num_antennas = 4;
  int sic_limit = 3;
  int packet_bits = (32 + 46 + 14) * 8;
  double noise_psd = dbm_to_watt(-174.0);  // W/Hz
  double noise_figure = db_to_linear(5.0);
  double tx_power = dbm_to_watt(23.0);  // W
  double bs_antenna_gain = db_to_linear(5.0);
  double device_antenna_gain = db_to_linear(0.0);
  double bs_height = 3.0;      // m
  double device_height = 1.5;  // m
  double layout_width = 50.0;  // m
  double layout_length = 120.0;
  double device_speed = 3.0 / 3.6;  // m/s
  bool shadowing = false;
  double shadowing_sigma_db = 8.03;

  double symbol_duration() const { return symbol_info_duration + cyclic_prefix_duration; }
  double frame_duration(Protocol protocol) const { return slots_per_frame(protocol) * symbol_duration(); }
  // sigma_n^2 = N0 * W * NF
  double noise_power() const { return noise_psd * bandwidth * noise_figure; }

  // Throws ValidationError naming the offending field.
  void validate() const;
};

// J0(2 pi v fc Tf / c): one-frame correlation of the Gauss-Markov fading.
double jakes_coefficient(double speed, double carrier_frequency, double frame_duration);

// c / (8 fc v). Throws kUndefinedCoherence for a static device.
double coherence_time(double carrier_frequency, double speed);

// Small-scale fading of every device, one column of n_a coefficients per device.
class FadingMatrix {
 public:
  FadingMatrix() = default;
  FadingMatrix(int num_antennas, int num_devices, std::vector<double> correlation);

  // h_ki ~ CN(0, 1) for every antenna and device.
  static FadingMatrix draw(int num_antennas, std::vector<double> correlation, Rng& rng);

  int num_antennas() const { return num_antennas_; }
  int num_devices() const { return num_devices_; }

  std::span<const Complex> device(int k) const {
    return {coefficients_.data() + static_cast<std::size_t>(k) * num_antennas_,
            static_cast<std::size_t>(num_antennas_)};
  }
  std::span<Complex> device(int k) {
    return {coefficients_.data() + static_cast<std::size_t>(k) * num_antennas_,
            static_cast<std::size_t>(num_antennas_)};
  }
  std::span<const Complex> coefficients() const { return coefficients_; }
  std::span<const double> correlation() const { return correlation_; }

  bool operator==(const FadingMatrix&) const = default;

 private:
  int num_antennas_ = 0;
  int num_devices_ = 0;
  std::vector<Complex> coefficients_;
  std::vector<double> correlation_;
};

// h(t) = a h(t-1) + z, z ~ CN(0, 1 - a^2), drawn per antenna and per device.
FadingMatrix evolve_fading(const FadingMatrix& state, Rng& rng);

struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Position&) const = default;
};

Position base_station_position(const PhyConfig& config);
double distance_3d(const Position& a, const Position& b);

// 38.901 InH-Office NLOS path loss in dB (max of the LOS and NLOS fits).
double inh_nlos_path_loss_db(double distance_3d, double carrier_frequency);

// G_b G_d 10^(-PL/10), times a log-normal shadowing draw when enabled.
// Throws kDegenerateGeometry if the device sits on the BS antenna.
double path_gain(const Position& device, const PhyConfig& config, Rng& rng);

struct LinkBudget {
  std::vector<Position> positions;
  std::vector<double> large_scale_gain;

  bool operator==(const LinkBudget&) const = default;
};

// Devices uniformly distributed in the layout rectangle.
std::vector<Position> uniform_positions(int num_devices, const PhyConfig& config, Rng& rng);
// Devices on a horizontal circle of the given radius around the BS.
std::vector<Position> ring_positions(int num_devices, double radius, const PhyConfig& config,
                                     Rng& rng);
LinkBudget make_link_budget(std::vector<Position> positions, const PhyConfig& config, Rng& rng);

// eta = p g ||h||^2
double received_power(double tx_power, double gain, std::span<const Complex> h);

// Indices sorted by decreasing power; equal powers keep ascending index.
std::vector<int> decoding_order(std::span<const double> powers);

// Interference from j on k after MRC towards k: p_j g_j |h_k^H h_j|^2 / ||h_k||^2.
double cross_interference(std::span<const Complex> h_k, std::span<const Complex> h_j,
                          double tx_power_j, double gain_j);

// Square matrix of eta_jk between the devices of one frame.
class InterferenceMatrix {
 public:
  explicit InterferenceMatrix(int size = 0) : size_(size), values_(static_cast<std::size_t>(size) * size) {}

  int size() const { return size_; }
  // Interference of `source` on `target`.
  double& operator()(int source, int target) { return values_[static_cast<std::size_t>(source) * size_ + target]; }
  double operator()(int source, int target) const {
    return values_[static_cast<std::size_t>(source) * size_ + target];
  }

 private:
  int size_;
  std::vector<double> values_;
};

// SINR of the device at position `target_rank` of `order` under SIC. All
// indices are local to the frame (0..U-1). `decoded[j]` is consulted only
// for devices earlier in the order.
double sic_sinr(std::size_t target_rank, std::span<const int> order, std::span<const std::uint8_t> decoded,
                std::span<const double> powers, const InterferenceMatrix& cross, double noise_power);

// SINR at the combiner output with every other device as interference.
double no_sic_sinr(int target, std::span<const double> powers, const InterferenceMatrix& cross,
                   double noise_power);

// ceil(W / W_c) with W_c = 1/(2 T_d); at least one pilot.
int pilot_count(double bandwidth, double delay_spread);

// floor((W - n_p U df) T_i). Throws kPilotOverload when nothing is left.
int channel_uses(double bandwidth, int pilots_per_device, int num_polled, double subcarrier_spacing,
                 double info_duration);

// Gaussian tail Q(x) = 0.5 erfc(x / sqrt 2).
double q_function(double x);

// Shannon capacity per complex channel use and channel dispersion.
double awgn_capacity(double sinr);
double awgn_dispersion(double sinr);

// Normal approximation of the block error rate for L bits in n channel uses.
// Defined as 1 at zero SINR and clamped to [0, 1].
double fbl_error_probability(double sinr, int blocklength, int payload_bits);

// Received power whose interference-free error probability equals
// `target_error`. Throws kNoSolution if the target cannot be bracketed.
double invert_error_for_power(double target_error, int blocklength, int payload_bits, double noise_power);

struct DecodeOutcome {
  std::vector<int> active;           // ascending device indices
  std::vector<int> order;            // device indices, first decoded first
  std::vector<double> power;         // eta per active device, aligned with `active`
  std::vector<double> sinr;          // aligned with `active`
  std::vector<double> error_prob;    // aligned with `active`
  std::vector<std::uint8_t> decoded;  // one flag per device (size K)
  int blocklength = 0;
};

// One uplink frame: SIC over the active devices with Bernoulli decoding
// outcomes. Nothing decodes when more than `sic_limit` devices are active.
DecodeOutcome decode_frame(std::span<const int> active, const FadingMatrix& fading, const LinkBudget& link,
                           const PhyConfig& config, int num_polled, Rng& rng);

}  // namespace noma
