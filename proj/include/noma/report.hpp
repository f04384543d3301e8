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

#include "noma/evaluation.hpp"
#include "noma/trainer.hpp"

namespace noma {

inline constexpr std::string_view kReportFormat = "noma-report/1";
inline constexpr std::string_view kCurveHeader = "seed,update,episodes_seen,urllc_score,mean_reward";

struct SeedReport {
  std::uint64_t seed = 0;
  std::uint64_t episodes = 0;
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t expired = 0;
  std::uint64_t residual = 0;
  double urllc_score = 0.0;
  double jain = 0.0;
  double mean_reward = 0.0;
  std::vector<double> device_scores;
  std::optional<double> sa_probability;

  static SeedReport from_tally(std::uint64_t seed, const EvalTally& tally);
  bool operator==(const SeedReport&) const = default;
};

struct RunReport {
  std::string format{kReportFormat};
  std::string agent;
  std::string config;       // canonical scenario text
  std::string config_hash;  // 16 hex digits
  std::vector<CurvePoint> curve;
  std::vector<SeedReport> seeds;
  double mean_score = 0.0;
  double score_std = 0.0;  // sample standard deviation over seeds
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t expired = 0;
  std::uint64_t residual = 0;
  std::uint64_t conservation_failures = 0;
  std::uint64_t overloaded_frames = 0;
  std::uint64_t overloaded_with_reward = 0;
  double wall_clock_s = 0.0;

  // Recomputes the cross-seed aggregates from `seeds`.
  void summarize();
  bool conserves() const { return generated == delivered + expired + residual && conservation_failures == 0; }
  bool operator==(const RunReport&) const = default;
};

std::string report_to_json(const RunReport& report);
RunReport report_from_json(std::string_view text);
RunReport load_report(const std::string& path);

void write_curve_header(std::ostream& out);
void write_curve_row(std::ostream& out, const CurvePoint& point);
std::string curve_csv(const std::vector<CurvePoint>& curve);

// NDJSON, one object per frame.
void write_trace(std::ostream& out, const std::vector<FrameRecord>& trace);

// Writes curve.csv and report.json into `out_dir` (created if missing).
void emit_metrics(const RunReport& report, const std::string& out_dir);

}  // namespace noma
