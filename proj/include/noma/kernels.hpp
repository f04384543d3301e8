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

#include <cstddef>

// Dense-layer kernels. Matrices are row-major; weights are stored as
// [out x in]. The OpenMP versions split work over independent rows so the
// result of one row never depends on the batch size or the thread count.
namespace noma::kernels {

// y[n, o] = b[o] + sum_i x[n, i] w[o, i]
void dense_forward(const double* x, int batch, int in, const double* w, const double* b, int out, double* y);

// dx[n, i] = sum_o dy[n, o] w[o, i]
void dense_backward_input(const double* dy, int batch, int out, const double* w, int in, double* dx);

// dw[o, i] += sum_n dy[n, o] x[n, i];  db[o] += sum_n dy[n, o]
void dense_backward_params(const double* dy, const double* x, int batch, int in, int out, double* dw, double* db);

// In-place max(0, v).
void relu(double* v, std::size_t count);

// g[j] = 0 wherever the forward activation a[j] was clamped.
void relu_backward(const double* activation, double* grad, std::size_t count);

// Straightforward single-threaded loops, kept as the numerical reference.
namespace reference {
void dense_forward(const double* x, int batch, int in, const double* w, const double* b, int out, double* y);
void dense_backward_input(const double* dy, int batch, int out, const double* w, int in, double* dx);
void dense_backward_params(const double* dy, const double* x, int batch, int in, int out, double* dw, double* db);
}  // namespace reference

}  // namespace noma::kernels
