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
#include <span>
#include <vector>

#include "noma/rng.hpp"

namespace noma {

struct DenseShape {
  int in = 0;
  int out = 0;
  std::size_t weight_offset = 0;  // [out x in] block in the flat parameter array
  std::size_t bias_offset = 0;

  bool operator==(const DenseShape&) const = default;
};

// Activations of one batched forward pass, kept for the backward pass.
struct MlpWorkspace {
  int batch = 0;
  std::vector<std::vector<double>> activations;  // one per layer output
  std::vector<double> delta;
  std::vector<double> delta_next;
};

// Fully connected network with ReLU hidden layers and an affine output.
// All weights and biases live in one flat array so optimizers and
// checkpoints can treat the network as a single vector.
class Mlp {
 public:
  Mlp() = default;
  Mlp(int input, std::vector<int> hidden, int output);

  int input_size() const { return layers_.empty() ? 0 : layers_.front().in; }
  int output_size() const { return layers_.empty() ? 0 : layers_.back().out; }
  const std::vector<DenseShape>& layers() const { return layers_; }
  std::size_t num_params() const { return params_.size(); }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  // Weights ~ U(-1/sqrt(in), 1/sqrt(in)); biases zero.
  void init_uniform(Rng& rng);

  // Forward pass over a row-major [batch x input] block. Returns the
  // [batch x output] block, which lives inside the workspace.
  std::span<const double> forward(std::span<const double> x, int batch, MlpWorkspace& ws) const;

  // Accumulates dLoss/dparams into `grad` for the pass recorded in `ws`.
  void backward(std::span<const double> x, std::span<const double> d_output, MlpWorkspace& ws,
                std::span<double> grad) const;

  // 2 in out per layer.
  std::uint64_t dense_flops() const;

  bool operator==(const Mlp&) const = default;

 private:
  std::vector<DenseShape> layers_;
  std::vector<double> params_;
};

}  // namespace noma
