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
#include <random>
#include <vector>

#include <omp.h>

#include "doctest.h"
#include "noma/kernels.hpp"

namespace k = noma::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// Sparse rows exercise the zero-gradient shortcuts.
void sprinkle_zeros(std::vector<double>& v, std::mt19937_64& rng) {
  for (double& x : v)
    if (rng() % 4 == 0) x = 0.0;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]) / (1.0 + std::abs(b[i])));
  CHECK(worst <= 1e-12);
}

struct Shape {
  int batch, in, out;
};

}  // namespace

TEST_CASE("dense kernels agree with the serial reference") {
  std::mt19937_64 rng(1);
  for (const Shape s : {Shape{1, 1, 1}, Shape{3, 7, 5}, Shape{17, 41, 3}, Shape{128, 256, 256}, Shape{64, 81, 16}}) {
    CAPTURE(s.batch);
    CAPTURE(s.in);
    CAPTURE(s.out);
    const auto x = random_vector(static_cast<std::size_t>(s.batch) * s.in, rng);
    const auto w = random_vector(static_cast<std::size_t>(s.out) * s.in, rng);
    const auto b = random_vector(s.out, rng);
    auto dy = random_vector(static_cast<std::size_t>(s.batch) * s.out, rng);
    sprinkle_zeros(dy, rng);

    std::vector<double> y(static_cast<std::size_t>(s.batch) * s.out), y_ref(y.size());
    k::dense_forward(x.data(), s.batch, s.in, w.data(), b.data(), s.out, y.data());
    k::reference::dense_forward(x.data(), s.batch, s.in, w.data(), b.data(), s.out, y_ref.data());
    check_close(y, y_ref);

    std::vector<double> dx(x.size(), 7.0), dx_ref(x.size());
    k::dense_backward_input(dy.data(), s.batch, s.out, w.data(), s.in, dx.data());
    k::reference::dense_backward_input(dy.data(), s.batch, s.out, w.data(), s.in, dx_ref.data());
    check_close(dx, dx_ref);

    // Parameter gradients accumulate into what is already there.
    auto dw = random_vector(w.size(), rng);
    auto db = random_vector(b.size(), rng);
    auto dw_ref = dw;
    auto db_ref = db;
    k::dense_backward_params(dy.data(), x.data(), s.batch, s.in, s.out, dw.data(), db.data());
    k::reference::dense_backward_params(dy.data(), x.data(), s.batch, s.in, s.out, dw_ref.data(), db_ref.data());
    check_close(dw, dw_ref);
    check_close(db, db_ref);
  }
}

TEST_CASE("kernel results do not depend on the thread count") {
  std::mt19937_64 rng(2);
  const int batch = 128, in = 256, out = 256;
  const auto x = random_vector(static_cast<std::size_t>(batch) * in, rng);
  const auto w = random_vector(static_cast<std::size_t>(out) * in, rng);
  const auto b = random_vector(out, rng);
  const auto dy = random_vector(static_cast<std::size_t>(batch) * out, rng);

  auto run = [&](int threads) {
    omp_set_num_threads(threads);
    std::vector<double> y(static_cast<std::size_t>(batch) * out);
    std::vector<double> dx(x.size());
    std::vector<double> dw(w.size(), 0.0), db(b.size(), 0.0);
    k::dense_forward(x.data(), batch, in, w.data(), b.data(), out, y.data());
    k::dense_backward_input(dy.data(), batch, out, w.data(), in, dx.data());
    k::dense_backward_params(dy.data(), x.data(), batch, in, out, dw.data(), db.data());
    y.insert(y.end(), dx.begin(), dx.end());
    y.insert(y.end(), dw.begin(), dw.end());
    y.insert(y.end(), db.begin(), db.end());
    return y;
  };
  const int saved = omp_get_max_threads();
  const auto one = run(1);
  const auto four = run(4);
  omp_set_num_threads(saved);
  CHECK(one == four);
}

TEST_CASE("ReLU and its backward mask") {
  std::vector<double> v = {-1.0, 0.0, 2.0, -0.0, 3.5};
  k::relu(v.data(), v.size());
  CHECK(v == std::vector<double>{0.0, 0.0, 2.0, 0.0, 3.5});
  std::vector<double> g = {1.0, 1.0, 1.0, 1.0, 1.0};
  k::relu_backward(v.data(), g.data(), g.size());
  CHECK(g == std::vector<double>{0.0, 0.0, 1.0, 0.0, 1.0});
}
