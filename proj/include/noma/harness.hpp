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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "noma/report.hpp"
#include "noma/scenario.hpp"

namespace noma {

struct RunOptions {
  std::optional<std::string> out_dir;
  std::optional<std::vector<std::uint64_t>> seeds;  // replaces the scenario's list
  std::optional<std::string> trace_path;            // NDJSON of the first evaluation episode
  std::function<void(const std::string&)> log;
};

// Random, EDF oracle or slotted ALOHA with the given probability.
std::unique_ptr<SchedulingPolicy> make_baseline(const Scenario& scenario, double sa_probability = 0.0);

struct SweepPoint {
  double probability = 0.0;
  double urllc_score = 0.0;
};

// Scores every grid point on its own evaluation stream and returns the
// best probability (ties to the smaller one).
double sweep_sa(const Scenario& scenario, std::uint64_t seed, std::vector<SweepPoint>* table = nullptr);

// Learning agents: train per seed, evaluate the final policy. Baselines:
// evaluation only (slotted ALOHA optimizes p first unless it is fixed).
RunReport run_training(const Scenario& scenario, const RunOptions& options = {});

// Frozen-policy evaluation of a checkpoint (learning agents) or a baseline.
RunReport run_evaluation(const Scenario& scenario, const std::optional<std::string>& checkpoint,
                         const RunOptions& options = {});

}  // namespace noma
