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
#include <string_view>

namespace noma {

enum class Architecture { kNomaPpo, kBdq, kIdrqnAgent };

std::optional<Architecture> parse_architecture(std::string_view name);
std::string_view to_string(Architecture arch);

// 2 in out
std::uint64_t linear_flops(std::uint64_t in, std::uint64_t out);

// K gated recurrent cells of width H on inputs of width H_in:
// 6 H K (H_in + H) + 10 H K.
std::uint64_t gru_flops(std::uint64_t hidden, std::uint64_t num_devices, std::uint64_t input);

// Forward-pass FLOPs of one decision, following the per-architecture
// accounting below. noma_ppo counts two H x H products; the two-hidden-layer
// network built by PpoAgent has one.
//   noma_ppo:    2 H H_in + 2 (2 H^2) + 2 H K + 3 H
//   bdq:         2 H H_in + 3 (2 H^2) + 3 H + 6 H K
//   idrqn_agent: gru_flops(H, K, H_in)
std::uint64_t flops_estimate(Architecture arch, std::uint64_t num_devices, std::uint64_t hidden, std::uint64_t input);

}  // namespace noma
