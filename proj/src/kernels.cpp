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

#include "noma/kernels.hpp"

#include <algorithm>

namespace noma::kernels {

namespace {

// Below this many multiply-adds the fork/join cost dominates.
constexpr long kParallelWork = 1L << 15;

bool worth_threads(int rows, int a, int b) { return static_cast<long>(rows) * a * b >= kParallelWork; }

}  // namespace

void dense_forward(const double* x, int batch, int in, const double* w, const double* b, int out, double* y) {
#pragma omp parallel for schedule(static) if (worth_threads(batch, in, out))
  for (int n = 0; n < batch; ++n) {
    const double* xr = x + static_cast<std::size_t>(n) * in;
    double* yr = y + static_cast<std::size_t>(n) * out;
    for (int o = 0; o < out; ++o) {
      const double* wr = w + static_cast<std::size_t>(o) * in;
      double acc = 0.0;
#pragma omp simd reduction(+ : acc)
      for (int i = 0; i < in; ++i) acc += xr[i] * wr[i];
      yr[o] = acc + b[o];
    }
  }
}

void dense_backward_input(const double* dy, int batch, int out, const double* w, int in, double* dx) {
#pragma omp parallel for schedule(static) if (worth_threads(batch, in, out))
  for (int n = 0; n < batch; ++n) {
    const double* g = dy + static_cast<std::size_t>(n) * out;
    double* dr = dx + static_cast<std::size_t>(n) * in;
    std::fill(dr, dr + in, 0.0);
    for (int o = 0; o < out; ++o) {
      const double go = g[o];
      if (go == 0.0) continue;
      const double* wr = w + static_cast<std::size_t>(o) * in;
#pragma omp simd
      for (int i = 0; i < in; ++i) dr[i] += go * wr[i];
    }
  }
}

void dense_backward_params(const double* dy, const double* x, int batch, int in, int out, double* dw, double* db) {
#pragma omp parallel for schedule(static) if (worth_threads(batch, in, out))
  for (int o = 0; o < out; ++o) {
    double* wr = dw + static_cast<std::size_t>(o) * in;
    double bias = 0.0;
    for (int n = 0; n < batch; ++n) {
      const double g = dy[static_cast<std::size_t>(n) * out + o];
      if (g == 0.0) continue;
      bias += g;
      const double* xr = x + static_cast<std::size_t>(n) * in;
#pragma omp simd
      for (int i = 0; i < in; ++i) wr[i] += g * xr[i];
    }
    db[o] += bias;
  }
}

void relu(double* v, std::size_t count) {
#pragma omp simd
  for (std::size_t j = 0; j < count; ++j) v[j] = v[j] > 0.0 ? v[j] : 0.0;
}

void relu_backward(const double* activation, double* grad, std::size_t count) {
#pragma omp simd
  for (std::size_t j = 0; j < count; ++j)
    if (!(activation[j] > 0.0)) grad[j] = 0.0;
}

namespace reference {

void dense_forward(const double* x, int batch, int in, const double* w, const double* b, int out, double* y) {
  for (int n = 0; n < batch; ++n)
    for (int o = 0; o < out; ++o) {
      double acc = b[o];
      for (int i = 0; i < in; ++i) acc += x[n * in + i] * w[o * in + i];
      y[n * out + o] = acc;
    }
}

void dense_backward_input(const double* dy, int batch, int out, const double* w, int in, double* dx) {
  for (int n = 0; n < batch; ++n)
    for (int i = 0; i < in; ++i) {
      double acc = 0.0;
      for (int o = 0; o < out; ++o) acc += dy[n * out + o] * w[o * in + i];
      dx[n * in + i] = acc;
    }
}

void dense_backward_params(const double* dy, const double* x, int batch, int in, int out, double* dw, double* db) {
  for (int o = 0; o < out; ++o)
    for (int i = 0; i < in; ++i) {
      double acc = 0.0;
      for (int n = 0; n < batch; ++n) acc += dy[n * out + o] * x[n * in + i];
      dw[o * in + i] += acc;
    }
  for (int o = 0; o < out; ++o) {
    double acc = 0.0;
    for (int n = 0; n < batch; ++n) acc += dy[n * out + o];
    db[o] += acc;
  }
}

}  // namespace reference

}  // namespace noma::kernels
