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
#include <string>
#include <vector>

#include "noma/agent.hpp"

namespace noma {

// Binary layout, all integers and floats little-endian:
//   "NOMACKPT" | u32 version | u32 K | u32 H | u32 input | u32 policy layers
//   | u32 value layers | (u32 in, u32 out) per layer | i64 update counter
//   | i64 policy Adam step | i64 value Adam step | u64 parameter count
//   | f64 policy params | f64 value params | f64 policy m, v | f64 value m, v
inline constexpr std::uint32_t kCheckpointVersion = 1;

void write_checkpoint(std::ostream& out, const PpoAgent& agent);
PpoAgent read_checkpoint(std::istream& in);

void save_checkpoint(const std::string& path, const PpoAgent& agent);
PpoAgent load_checkpoint(const std::string& path);

std::vector<std::uint8_t> checkpoint_bytes(const PpoAgent& agent);

}  // namespace noma
