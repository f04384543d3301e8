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

#include <algorithm>
#include <list>

#include "doctest.h"
#include "noma/error.hpp"
#include "noma/traffic.hpp"

using namespace noma;

namespace {

// Every packet tracked individually by its remaining frames.
struct PacketQueue {
  std::vector<std::list<int>> packets;
  std::vector<std::uint64_t> expired;

  explicit PacketQueue(int k) : packets(k), expired(k, 0) {}

  void step(const std::vector<std::uint8_t>& decoded, const std::vector<std::uint32_t>& arrivals,
            const std::vector<int>& deadlines) {
    for (std::size_t k = 0; k < packets.size(); ++k) {
      auto& q = packets[k];
      if (decoded[k]) q.erase(std::min_element(q.begin(), q.end()));
      std::list<int> kept;
      for (int d : q) {
        if (d == 1)
          ++expired[k];
        else
          kept.push_back(d - 1);
      }
      for (std::uint32_t i = 0; i < arrivals[k]; ++i) kept.push_back(deadlines[k]);
      q = std::move(kept);
    }
  }

  bool matches(const BufferMatrix& b) const {
    for (std::size_t k = 0; k < packets.size(); ++k)
      for (int d = 1; d <= b.depth(); ++d)
        if (b.at(static_cast<int>(k), d) != std::count(packets[k].begin(), packets[k].end(), d)) return false;
    return true;
  }
};

}  // namespace

TEST_CASE("buffer matrix basics") {
  BufferMatrix b(2, 3);
  CHECK(b.total() == 0);
  CHECK(b.row_empty(0));
  b.at(1, 2) = 4;
  b.at(1, 3) = 1;
  CHECK(b.row_total(1) == 5);
  CHECK(b.total() == 5);
  CHECK(head_of_line(b.row(1)) == 2);
  CHECK_FALSE(head_of_line(b.row(0)).has_value());
}

TEST_CASE("removal takes the head-of-line packet") {
  BufferMatrix b(2, 4);
  b.at(0, 3) = 2;
  b.at(0, 4) = 1;
  const std::vector<std::uint8_t> decoded = {1, 0};
  const BufferMatrix out = remove_decoded(b, decoded);
  CHECK(out.at(0, 3) == 1);
  CHECK(out.at(0, 4) == 1);
  CHECK_THROWS_AS(remove_decoded(b, std::vector<std::uint8_t>{0, 1}), Error);
  CHECK_THROWS_AS(remove_decoded(b, std::vector<std::uint8_t>{1}), Error);
}

TEST_CASE("aging expires deadline-one packets and admits arrivals at delta") {
  BufferMatrix b(2, 3);
  b.at(0, 1) = 2;
  b.at(0, 3) = 1;
  const std::vector<std::uint32_t> arrivals = {1, 3};
  const std::vector<int> deadlines = {3, 2};
  const AgingResult r = age_and_admit(b, arrivals, deadlines);
  CHECK(r.expired == std::vector<std::uint32_t>{2, 0});
  CHECK(r.buffers.at(0, 2) == 1);
  CHECK(r.buffers.at(0, 3) == 1);
  CHECK(r.buffers.at(1, 2) == 3);
  CHECK(r.buffers.total() == 5);
}

TEST_CASE("buffer dynamics agree with a per-packet queue") {
  Rng rng = make_rng(21);
  const int k_total = 5;
  const std::vector<int> deadlines = {1, 2, 3, 5, 7};
  const int depth = 7;
  TrafficConfig traffic = TrafficConfig::poisson(k_total, 0.6, 1);
  traffic.deadline_frames = deadlines;

  BufferMatrix buffers(k_total, depth);
  PacketQueue queue(k_total);
  PacketLedger ledger(k_total);
  for (int t = 0; t < 5000; ++t) {
    std::vector<std::uint8_t> decoded(k_total, 0);
    for (int k = 0; k < k_total; ++k)
      if (!buffers.row_empty(k) && (rng() % 3 == 0)) decoded[k] = 1;
    const auto arrivals = generate_arrivals(t, traffic, rng);
    const AgingResult r = buffer_transition(buffers, decoded, arrivals, deadlines);
    queue.step(decoded, arrivals, deadlines);
    for (int k = 0; k < k_total; ++k) {
      ledger.generated[k] += arrivals[k];
      ledger.delivered[k] += decoded[k];
      ledger.expired[k] += r.expired[k];
    }
    buffers = r.buffers;
    REQUIRE(queue.matches(buffers));
    REQUIRE(ledger.conserves(buffers));
  }
  CHECK(ledger.expired == queue.expired);
}

TEST_CASE("periodic arrivals follow the offsets") {
  TrafficConfig c = TrafficConfig::periodic(3, 11, 1.0, 5);
  c.offset = {0, 4, 10};
  Rng rng = make_rng(2);
  for (int t = 0; t < 44; ++t) {
    const auto a = generate_arrivals(t, c, rng);
    for (int k = 0; k < 3; ++k) CHECK(a[k] == (t % 11 == c.offset[k] ? 1u : 0u));
  }
}

TEST_CASE("periodic arrivals thin with the arrival probability") {
  TrafficConfig c = TrafficConfig::periodic(1, 2, 0.3, 5);
  Rng rng = make_rng(4);
  std::uint64_t count = 0;
  const int periods = 100000;
  for (int t = 0; t < 2 * periods; ++t) count += generate_arrivals(t, c, rng)[0];
  CHECK(static_cast<double>(count) / periods == doctest::Approx(0.3).epsilon(0.02));
}

TEST_CASE("Poisson arrivals have the configured mean") {
  TrafficConfig c = TrafficConfig::poisson(2, 0.0892, 5);
  c.rate_per_frame[1] = 0.0;
  Rng rng = make_rng(8);
  std::uint64_t count = 0;
  const int frames = 200000;
  for (int t = 0; t < frames; ++t) {
    const auto a = generate_arrivals(t, c, rng);
    count += a[0];
    CHECK(a[1] == 0);
  }
  CHECK(static_cast<double>(count) / frames == doctest::Approx(0.0892).epsilon(0.03));
}

TEST_CASE("traffic validation names the field") {
  TrafficConfig c = TrafficConfig::periodic(2, 11, 1.0, 5);
  CHECK_NOTHROW(c.validate());
  c.offset[1] = 11;
  try {
    c.validate();
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "traffic.offsets");
  }
  TrafficConfig p = TrafficConfig::poisson(2, -1.0, 5);
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = TrafficConfig::poisson(2, 0.1, 0);
  CHECK_THROWS_AS(p.validate(), ValidationError);
}
