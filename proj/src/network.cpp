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

#include "noma/error.hpp"
#include "noma/kernels.hpp"
#include "noma/network.hpp"

namespace noma {

Mlp::Mlp(int input, std::vector<int> hidden, int output) {
  if (input < 1 || output < 1) throw Error(ErrorCode::kInvalidArgument, "network sizes must be positive");
  std::vector<int> widths;
  widths.push_back(input);
  for (int h : hidden) {
    if (h < 1) throw Error(ErrorCode::kInvalidArgument, "hidden width must be positive");
    widths.push_back(h);
  }
  widths.push_back(output);
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    DenseShape s;
    s.in = widths[l];
    s.out = widths[l + 1];
    s.weight_offset = offset;
    offset += static_cast<std::size_t>(s.in) * s.out;
    s.bias_offset = offset;
    offset += s.out;
    layers_.push_back(s);
  }
  params_.assign(offset, 0.0);
}

void Mlp::init_uniform(Rng& rng) {
  for (const DenseShape& s : layers_) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(s.in));
    std::uniform_real_distribution<double> u(-bound, bound);
    for (std::size_t j = 0; j < static_cast<std::size_t>(s.in) * s.out; ++j) params_[s.weight_offset + j] = u(rng);
    for (int o = 0; o < s.out; ++o) params_[s.bias_offset + o] = 0.0;
  }
}

std::span<const double> Mlp::forward(std::span<const double> x, int batch, MlpWorkspace& ws) const {
  if (static_cast<long>(x.size()) != static_cast<long>(batch) * input_size())
    throw Error(ErrorCode::kDimensionMismatch, "input block does not match the network input size");
  ws.batch = batch;
  ws.activations.resize(layers_.size());
  const double* in = x.data();
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const DenseShape& s = layers_[l];
    auto& act = ws.activations[l];
    act.resize(static_cast<std::size_t>(batch) * s.out);
    kernels::dense_forward(in, batch, s.in, params_.data() + s.weight_offset, params_.data() + s.bias_offset, s.out,
                           act.data());
    if (l + 1 < layers_.size()) kernels::relu(act.data(), act.size());
    in = act.data();
  }
  return ws.activations.back();
}

void Mlp::backward(std::span<const double> x, std::span<const double> d_output, MlpWorkspace& ws,
                   std::span<double> grad) const {
  const int batch = ws.batch;
  if (grad.size() != params_.size()) throw Error(ErrorCode::kDimensionMismatch, "gradient buffer size");
  if (static_cast<long>(d_output.size()) != static_cast<long>(batch) * output_size())
    throw Error(ErrorCode::kDimensionMismatch, "output gradient does not match the recorded batch");
  ws.delta.assign(d_output.begin(), d_output.end());
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const DenseShape& s = layers_[l];
    const double* layer_in = l == 0 ? x.data() : ws.activations[l - 1].data();
    kernels::dense_backward_params(ws.delta.data(), layer_in, batch, s.in, s.out, grad.data() + s.weight_offset,
                                   grad.data() + s.bias_offset);
    if (l == 0) break;
    ws.delta_next.resize(static_cast<std::size_t>(batch) * s.in);
    kernels::dense_backward_input(ws.delta.data(), batch, s.out, params_.data() + s.weight_offset, s.in,
                                  ws.delta_next.data());
    kernels::relu_backward(ws.activations[l - 1].data(), ws.delta_next.data(), ws.delta_next.size());
    ws.delta.swap(ws.delta_next);
  }
}

std::uint64_t Mlp::dense_flops() const {
  std::uint64_t total = 0;
  for (const DenseShape& s : layers_) total += 2ULL * s.in * s.out;
  return total;
}

}  // namespace noma
