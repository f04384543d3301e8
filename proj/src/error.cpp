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

namespace noma {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kUndefinedCoherence: return "undefined coherence time";
    case ErrorCode::kDegenerateGeometry: return "degenerate geometry";
    case ErrorCode::kEmptyInput: return "empty input";
    case ErrorCode::kDegenerateCombiner: return "degenerate combiner";
    case ErrorCode::kPilotOverload: return "pilot overload";
    case ErrorCode::kNoSolution: return "no solution";
    case ErrorCode::kBufferInconsistency: return "buffer inconsistency";
    case ErrorCode::kUndefinedScore: return "undefined score";
    case ErrorCode::kNumericalFault: return "numerical fault";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kValidation: return "validation error";
    case ErrorCode::kCheckpoint: return "checkpoint error";
    case ErrorCode::kIo: return "io error";
  }
  return "unknown error";
}

}  // namespace noma
