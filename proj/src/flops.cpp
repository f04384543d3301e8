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

#include "noma/error.hpp"
#include "noma/flops.hpp"

namespace noma {

std::optional<Architecture> parse_architecture(std::string_view name) {
  if (name == "noma_ppo") return Architecture::kNomaPpo;
  if (name == "bdq") return Architecture::kBdq;
  if (name == "idrqn_agent") return Architecture::kIdrqnAgent;
  return std::nullopt;
}

std::string_view to_string(Architecture arch) {
  switch (arch) {
    case Architecture::kNomaPpo:
      return "noma_ppo";
    case Architecture::kBdq:
      return "bdq";
    case Architecture::kIdrqnAgent:
      return "idrqn_agent";
  }
  return "unknown";
}

std::uint64_t linear_flops(std::uint64_t in, std::uint64_t out) { return 2 * in * out; }

std::uint64_t gru_flops(std::uint64_t hidden, std::uint64_t num_devices, std::uint64_t input) {
  return 6 * hidden * num_devices * (input + hidden) + 10 * hidden * num_devices;
}

std::uint64_t flops_estimate(Architecture arch, std::uint64_t num_devices, std::uint64_t hidden, std::uint64_t input) {
  if (num_devices == 0 || hidden == 0 || input == 0) throw Error(ErrorCode::kInvalidArgument, "sizes must be positive");
  const std::uint64_t h = hidden;
  switch (arch) {
    case Architecture::kNomaPpo:
      return linear_flops(input, h) + 2 * linear_flops(h, h) + linear_flops(h, num_devices) + 3 * h;
    case Architecture::kBdq:
      return linear_flops(input, h) + 3 * linear_flops(h, h) + 3 * h + 6 * h * num_devices;
    case Architecture::kIdrqnAgent:
      return gru_flops(h, num_devices, input);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown architecture");
}

}  // namespace noma
