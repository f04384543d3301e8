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

// Serial reference against the OpenMP kernels on a PPO minibatch shape
// (batch 128 through a 256-wide hidden layer). Thread count follows
// OMP_NUM_THREADS.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "noma/kernels.hpp"

namespace k = noma::kernels;

namespace {

struct Layer {
  int batch, in, out;
  std::vector<double> x, w, b, y, dy, dx, dw, db;

  Layer(int batch_, int in_, int out_) : batch(batch_), in(in_), out(out_) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto fill = [&](std::vector<double>& v, std::size_t n) {
      v.resize(n);
      for (double& e : v) e = u(rng);
    };
    fill(x, static_cast<std::size_t>(batch) * in);
    fill(w, static_cast<std::size_t>(out) * in);
    fill(b, out);
    fill(dy, static_cast<std::size_t>(batch) * out);
    y.assign(static_cast<std::size_t>(batch) * out, 0.0);
    dx.assign(x.size(), 0.0);
    dw.assign(w.size(), 0.0);
    db.assign(b.size(), 0.0);
  }
};

Layer make(const benchmark::State& state) {
  return Layer(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), static_cast<int>(state.range(2)));
}

// Multiply-adds counted as two FLOPs; backward does two products.
void flops_counter(benchmark::State& state, const Layer& l, double products = 1.0) {
  state.counters["flops"] = benchmark::Counter(products * 2.0 * l.batch * l.in * l.out, benchmark::Counter::kIsIterationInvariantRate);
}

void BM_forward_reference(benchmark::State& state) {
  Layer l = make(state);
  for (auto _ : state) {
    k::reference::dense_forward(l.x.data(), l.batch, l.in, l.w.data(), l.b.data(), l.out, l.y.data());
    benchmark::DoNotOptimize(l.y.data());
  }
  flops_counter(state, l);
}

void BM_forward_openmp(benchmark::State& state) {
  Layer l = make(state);
  for (auto _ : state) {
    k::dense_forward(l.x.data(), l.batch, l.in, l.w.data(), l.b.data(), l.out, l.y.data());
    benchmark::DoNotOptimize(l.y.data());
  }
  flops_counter(state, l);
}

void BM_backward_reference(benchmark::State& state) {
  Layer l = make(state);
  for (auto _ : state) {
    k::reference::dense_backward_input(l.dy.data(), l.batch, l.out, l.w.data(), l.in, l.dx.data());
    k::reference::dense_backward_params(l.dy.data(), l.x.data(), l.batch, l.in, l.out, l.dw.data(), l.db.data());
    benchmark::DoNotOptimize(l.dw.data());
  }
  flops_counter(state, l, 2.0);
}

void BM_backward_openmp(benchmark::State& state) {
  Layer l = make(state);
  for (auto _ : state) {
    k::dense_backward_input(l.dy.data(), l.batch, l.out, l.w.data(), l.in, l.dx.data());
    k::dense_backward_params(l.dy.data(), l.x.data(), l.batch, l.in, l.out, l.dw.data(), l.db.data());
    benchmark::DoNotOptimize(l.dw.data());
  }
  flops_counter(state, l, 2.0);
}

void shapes(benchmark::internal::Benchmark* b) {
  b->Args({128, 256, 256})->Args({128, 91, 256})->Args({1, 256, 256})->Unit(benchmark::kMicrosecond);
}

}  // namespace

BENCHMARK(BM_forward_reference)->Apply(shapes);
BENCHMARK(BM_forward_openmp)->Apply(shapes);
BENCHMARK(BM_backward_reference)->Apply(shapes);
BENCHMARK(BM_backward_openmp)->Apply(shapes);

BENCHMARK_MAIN();
