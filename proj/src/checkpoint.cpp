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

#include <bit>
#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

#include "noma/checkpoint.hpp"
#include "noma/error.hpp"

namespace noma {

namespace {

constexpr char kMagic[8] = {'N', 'O', 'M', 'A', 'C', 'K', 'P', 'T'};

template <typename T>
void put(std::ostream& out, T value) {
  std::uint8_t bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  std::uint8_t bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T)))
    throw Error(ErrorCode::kCheckpoint, "checkpoint is truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

void put_array(std::ostream& out, std::span<const double> values) {
  for (double v : values) put<double>(out, v);
}

void get_array(std::istream& in, std::span<double> values) {
  for (double& v : values) v = get<double>(in);
}

void put_shapes(std::ostream& out, const Mlp& net) {
  for (const DenseShape& s : net.layers()) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.in));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.out));
  }
}

void check_shapes(std::istream& in, const Mlp& net, const char* which) {
  for (const DenseShape& s : net.layers()) {
    const auto a = get<std::uint32_t>(in);
    const auto b = get<std::uint32_t>(in);
    if (static_cast<int>(a) != s.in || static_cast<int>(b) != s.out)
      throw Error(ErrorCode::kCheckpoint, std::string(which) + " layer shapes do not match the header");
  }
}

}  // namespace

void write_checkpoint(std::ostream& out, const PpoAgent& agent) {
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(agent.num_devices()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(agent.hidden()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(agent.policy.input_size()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(agent.policy.layers().size()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(agent.value.layers().size()));
  put_shapes(out, agent.policy);
  put_shapes(out, agent.value);
  put<std::int64_t>(out, agent.updates);
  put<std::int64_t>(out, agent.policy_opt.step);
  put<std::int64_t>(out, agent.value_opt.step);
  put<std::uint64_t>(out, agent.policy.num_params() + agent.value.num_params());
  put_array(out, agent.policy.params());
  put_array(out, agent.value.params());
  put_array(out, agent.policy_opt.m);
  put_array(out, agent.policy_opt.v);
  put_array(out, agent.value_opt.m);
  put_array(out, agent.value_opt.v);
  if (!out) throw Error(ErrorCode::kIo, "failed to write checkpoint");
}

PpoAgent read_checkpoint(std::istream& in) {
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw Error(ErrorCode::kCheckpoint, "not a checkpoint file");
  const auto version = get<std::uint32_t>(in);
  if (version != kCheckpointVersion)
    throw Error(ErrorCode::kCheckpoint, "unsupported checkpoint version " + std::to_string(version));
  const auto k = get<std::uint32_t>(in);
  const auto h = get<std::uint32_t>(in);
  const auto input = get<std::uint32_t>(in);
  const auto policy_layers = get<std::uint32_t>(in);
  const auto value_layers = get<std::uint32_t>(in);
  if (k < 1 || h < 1 || static_cast<int>(input) != feature_size(static_cast<int>(k)) || policy_layers != 3 ||
      value_layers != 3)
    throw Error(ErrorCode::kCheckpoint, "checkpoint header describes an unsupported network");

  PpoAgent agent;
  agent.policy = Mlp(static_cast<int>(input), {static_cast<int>(h), static_cast<int>(h)}, static_cast<int>(k));
  agent.value = Mlp(static_cast<int>(input), {static_cast<int>(h), static_cast<int>(h)}, 1);
  check_shapes(in, agent.policy, "policy");
  check_shapes(in, agent.value, "value");
  agent.updates = get<std::int64_t>(in);
  agent.policy_opt = AdamState(agent.policy.num_params());
  agent.value_opt = AdamState(agent.value.num_params());
  agent.policy_opt.step = get<std::int64_t>(in);
  agent.value_opt.step = get<std::int64_t>(in);
  const auto count = get<std::uint64_t>(in);
  if (count != agent.policy.num_params() + agent.value.num_params())
    throw Error(ErrorCode::kCheckpoint, "parameter count does not match the layer shapes");
  get_array(in, agent.policy.params());
  get_array(in, agent.value.params());
  get_array(in, agent.policy_opt.m);
  get_array(in, agent.policy_opt.v);
  get_array(in, agent.value_opt.m);
  get_array(in, agent.value_opt.v);
  if (in.peek() != std::char_traits<char>::eof()) throw Error(ErrorCode::kCheckpoint, "trailing bytes in checkpoint");
  return agent;
}

void save_checkpoint(const std::string& path, const PpoAgent& agent) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  write_checkpoint(out, agent);
}

PpoAgent load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_checkpoint(in);
}

std::vector<std::uint8_t> checkpoint_bytes(const PpoAgent& agent) {
  std::ostringstream out(std::ios::binary);
  write_checkpoint(out, agent);
  const std::string s = out.str();
  return {s.begin(), s.end()};
}

}  // namespace noma
