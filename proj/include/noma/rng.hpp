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
#include <random>

namespace noma {

using Rng = std::mt19937_64;

// Independent stream for (seed, stream, index). Used to give every episode,
// update and worker its own generator so results do not depend on the
// number of OpenMP threads.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t index = 0);

// Well-known stream identifiers.
namespace streams {
inline constexpr std::uint64_t kTopology = 1;
inline constexpr std::uint64_t kTraining = 2;
inline constexpr std::uint64_t kEvaluation = 3;
inline constexpr std::uint64_t kInit = 4;
inline constexpr std::uint64_t kShuffle = 5;
inline constexpr std::uint64_t kPolicy = 6;
inline constexpr std::uint64_t kSweep = 7;
}  // namespace streams

}  // namespace noma
