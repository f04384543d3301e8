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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "noma/checkpoint.hpp"
#include "noma/error.hpp"
#include "noma/flops.hpp"
#include "noma/report.hpp"
#include "noma/scenario.hpp"

using namespace noma;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("noma_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

PpoAgent trained_looking_agent() {
  PpoAgent a = PpoAgent::create(3, 8, 42);
  Rng rng = make_rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  for (double& x : a.policy_opt.m) x = n(rng);
  for (double& x : a.policy_opt.v) x = std::abs(n(rng));
  for (double& x : a.value_opt.m) x = n(rng);
  for (double& x : a.value_opt.v) x = std::abs(n(rng));
  a.policy_opt.step = 17;
  a.value_opt.step = 18;
  a.updates = 9;
  return a;
}

std::string error_field(const std::string& text) {
  try {
    parse_scenario_text(text);
  } catch (const ValidationError& e) {
    return e.field();
  } catch (const ParseError& e) {
    return "line " + std::to_string(e.line());
  }
  return "";
}

}  // namespace

TEST_CASE("checkpoint round trip is byte exact") {
  const PpoAgent a = trained_looking_agent();
  const auto bytes = checkpoint_bytes(a);
  std::stringstream ss(std::string(bytes.begin(), bytes.end()));
  const PpoAgent b = read_checkpoint(ss);
  CHECK(b == a);
  CHECK(checkpoint_bytes(b) == bytes);

  const fs::path dir = scratch_dir("ckpt");
  save_checkpoint((dir / "a.bin").string(), a);
  CHECK(load_checkpoint((dir / "a.bin").string()) == a);
  CHECK(fs::file_size(dir / "a.bin") == bytes.size());
}

TEST_CASE("checkpoint header layout") {
  const PpoAgent a = PpoAgent::create(3, 8, 1);
  const auto bytes = checkpoint_bytes(a);
  CHECK(std::string(bytes.begin(), bytes.begin() + 8) == "NOMACKPT");
  auto u32 = [&](std::size_t at) {
    return static_cast<std::uint32_t>(bytes[at]) | static_cast<std::uint32_t>(bytes[at + 1]) << 8 |
           static_cast<std::uint32_t>(bytes[at + 2]) << 16 | static_cast<std::uint32_t>(bytes[at + 3]) << 24;
  };
  CHECK(u32(8) == kCheckpointVersion);
  CHECK(u32(12) == 3);
  CHECK(u32(16) == 8);
  CHECK(u32(20) == 16);
  const std::size_t params = a.policy.num_params() + a.value.num_params();
  const std::size_t header = 8 + 4 * 6 + 4 * 2 * 6 + 8 * 4;
  CHECK(bytes.size() == header + 8 * 3 * params);
}

TEST_CASE("corrupt checkpoints are rejected") {
  const auto bytes = checkpoint_bytes(PpoAgent::create(2, 4, 1));
  auto read = [](std::vector<std::uint8_t> b) {
    std::stringstream ss(std::string(b.begin(), b.end()));
    return read_checkpoint(ss);
  };
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(read(bad_magic), Error);
  auto bad_version = bytes;
  bad_version[8] = 99;
  CHECK_THROWS_AS(read(bad_version), Error);
  CHECK_THROWS_AS(read(std::vector<std::uint8_t>(bytes.begin(), bytes.end() - 1)), Error);
  auto trailing = bytes;
  trailing.push_back(0);
  CHECK_THROWS_AS(read(trailing), Error);
  CHECK_THROWS_AS(load_checkpoint("/nonexistent/ckpt.bin"), Error);
}

TEST_CASE("FLOPs formulas at H = 256") {
  for (std::uint64_t k : {1, 4, 18, 54}) {
    const std::uint64_t input = 5 * k + 1;
    CHECK(flops_estimate(Architecture::kNomaPpo, k, 256, input) == 3072 * k + 263424);
    CHECK(flops_estimate(Architecture::kBdq, k, 256, input) == 4096 * k + 394496);
    CHECK(flops_estimate(Architecture::kIdrqnAgent, k, 256, 7) == 406528 * k);
  }
  CHECK(linear_flops(3, 4) == 24);
  CHECK(gru_flops(2, 3, 5) == 6 * 2 * 3 * 7 + 10 * 2 * 3);
  CHECK(parse_architecture("bdq") == Architecture::kBdq);
  CHECK_FALSE(parse_architecture("lstm").has_value());
  CHECK(to_string(Architecture::kIdrqnAgent) == "idrqn_agent");
  CHECK_THROWS_AS(flops_estimate(Architecture::kBdq, 0, 256, 1), Error);
  // The estimate counts one more H x H product than the two-layer trunk.
  const PpoAgent agent = PpoAgent::create(6, 256, 0);
  CHECK(agent.policy.dense_flops() + linear_flops(256, 256) + 3 * 256 ==
        flops_estimate(Architecture::kNomaPpo, 6, 256, 31));
}

TEST_CASE("scenario defaults and derived values") {
  const Scenario s = parse_scenario_text("K = 6\n");
  CHECK(s.num_devices == 6);
  CHECK(s.resolved_protocol() == Protocol::kScheduled5Slot);
  CHECK(s.frame_duration() == doctest::Approx(178.35e-6));
  CHECK(s.deadline_frames() == 5);
  CHECK(s.period_frames() == 11);
  CHECK(s.staleness_frames() == 63);
  CHECK(s.rate_per_frame() == doctest::Approx(178.35e-6 / 2e-3));
  CHECK(s.power_threshold() == doctest::Approx(2.88374e-13).epsilon(1e-5));

  const Scenario sa = parse_scenario_text("K = 6\nagent = sa_noma_sic\n");
  CHECK(sa.resolved_protocol() == Protocol::kGrantFree4Slot);
  CHECK(sa.deadline_frames() == 7);
  CHECK(sa.env_config().frame_duration() == doctest::Approx(142.68e-6));
}

TEST_CASE("frames_within rounds down except on exact multiples") {
  CHECK(frames_within(1.0, 178.35e-6) == 5);
  CHECK(frames_within(1.0, 142.68e-6) == 7);
  CHECK(frames_within(1.0, 0.2e-3) == 5);
  CHECK(frames_within(0.1, 178.35e-6) == 0);
}

TEST_CASE("scenario text round trips") {
  const std::string text =
      "format = noma-scenario/1\n"
      "K = 5  # devices\n"
      "agent = noma_ppo_no_prior\n"
      "traffic.model = periodic\n"
      "traffic.arrival_prob = 0.35\n"
      "traffic.offsets = random\n"
      "topology.placement = ring\n"
      "topology.ring_radius = 12.5\n"
      "ppo.lr_actor = 0.0003\n"
      "ppo.hidden = 32\n"
      "prior.source = true_buffers\n"
      "prior.staleness_frames = 40\n"
      "sa.grid = 0.1,0.2,0.7\n"
      "seeds = 3,9\n";
  const Scenario s = parse_scenario_text(text);
  CHECK(s.agent == AgentKind::kNomaPpoNoPrior);
  CHECK(s.traffic.model == TrafficModel::kPeriodic);
  CHECK(s.traffic.random_offsets);
  CHECK(s.ppo.lr_actor == 0.0003);
  CHECK(s.prior.source == PriorSource::kTrueBuffers);
  CHECK(s.seeds == std::vector<std::uint64_t>{3, 9});
  CHECK(s.sa.grid == std::vector<double>{0.1, 0.2, 0.7});

  const std::string canonical = format_scenario(s);
  const Scenario again = parse_scenario_text(canonical);
  CHECK(again == s);
  CHECK(format_scenario(again) == canonical);
  CHECK(scenario_hash(again) == scenario_hash(s));

  Scenario other = s;
  other.ppo.hidden = 33;
  CHECK(scenario_hash(other) != scenario_hash(s));

  const fs::path dir = scratch_dir("scenario");
  save_scenario((dir / "s.conf").string(), s);
  CHECK(load_scenario((dir / "s.conf").string()) == s);
}

TEST_CASE("scenario errors name the line or the field") {
  CHECK(error_field("") == "K");
  CHECK(error_field("K = 0\n") == "K");
  CHECK(error_field("K = 4\nK = 5\n") == "line 2");
  CHECK(error_field("K = 4\nbogus = 1\n") == "line 2");
  CHECK(error_field("K = four\n") == "line 1");
  CHECK(error_field("# header\nK 4\n") == "line 2");
  CHECK(error_field("format = other/2\nK = 4\n") == "line 1");
  CHECK(error_field("K = 4\nagent = dqn\n") == "line 2");
  CHECK(error_field("K = 4\nseeds = 1,,2\n") == "line 2");
  CHECK(error_field("K = 4\nagent = sa_noma_sic\nprotocol = scheduled_5slot\n") == "protocol");
  CHECK(error_field("K = 4\nppo.clip = 1.5\n") == "ppo.clip");
  CHECK(error_field("K = 4\nphy.bandwidth = -1\n") == "phy.bandwidth");
  CHECK(error_field("K = 4\ntraffic.deadline_ms = 0.1\n") == "traffic.deadline_ms");
  CHECK(error_field("K = 4\nprior.smoothing = 2\n") == "prior.smoothing");
  CHECK(error_field("K = 4\nsa.grid = 0.5,1.5\n") == "sa.grid");
  CHECK_THROWS_AS(load_scenario("/nonexistent/s.conf"), Error);
}

TEST_CASE("agent and protocol names") {
  for (AgentKind a : {AgentKind::kNomaPpo, AgentKind::kNomaPpoNoPrior, AgentKind::kNomaPpoNoCsi,
                      AgentKind::kNomaPpoFullCsi, AgentKind::kRandom, AgentKind::kEdfOracle, AgentKind::kSaNomaSic})
    CHECK(parse_agent(to_string(a)) == a);
  CHECK(is_learning_agent(AgentKind::kNomaPpoNoCsi));
  CHECK_FALSE(is_learning_agent(AgentKind::kEdfOracle));
  CHECK(parse_protocol("grantfree_4slot") == Protocol::kGrantFree4Slot);
  CHECK_FALSE(parse_protocol("tdma").has_value());
}

TEST_CASE("agent options follow the agent kind") {
  CHECK_FALSE(parse_scenario_text("K = 4\nagent = noma_ppo_no_prior\n").agent_options().use_prior);
  CHECK(parse_scenario_text("K = 4\nagent = noma_ppo_no_csi\n").agent_options().features.channel ==
        ChannelFeatures::kNone);
  const AgentOptions full = parse_scenario_text("K = 4\nagent = noma_ppo_full_csi\nphy.sic_limit = 2\n").agent_options();
  CHECK(full.features.channel == ChannelFeatures::kOracle);
  CHECK(full.use_prior);
  CHECK(full.slots == 2);
  CHECK(full.prior.staleness_frames == 63);
}

TEST_CASE("curve CSV") {
  std::ostringstream out;
  write_curve_header(out);
  CHECK(out.str() == std::string(kCurveHeader) + "\n");
  const std::vector<CurvePoint> curve = {{1, 0, 0, 0.5, 10.0}, {1, 4, 32, 0.1 + 0.2, 12.25}};
  const std::string csv = curve_csv(curve);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == kCurveHeader);
  std::getline(in, line);
  CHECK(line == "1,0,0,0.5,10");
  std::getline(in, line);
  CHECK(std::stod(line.substr(line.find(",32,") + 4)) == 0.1 + 0.2);
}

TEST_CASE("report JSON round trip") {
  RunReport r;
  r.agent = "noma_ppo";
  r.config = "K = 4\n";
  r.config_hash = "0123456789abcdef";
  r.curve = {{1, 0, 0, 0.25, 3.0}, {2, 5, 40, 0.75, 4.5}};
  EvalTally t(2);
  t.episodes = 3;
  t.generated = {10, 12};
  t.delivered = {9, 11};
  t.expired = {1, 0};
  t.residual = {0, 1};
  t.total_reward = 20.0;
  r.seeds.push_back(SeedReport::from_tally(1, t));
  t.delivered = {8, 10};
  t.expired = {2, 1};
  r.seeds.push_back(SeedReport::from_tally(2, t));
  r.seeds.back().sa_probability = 0.35;
  r.summarize();
  CHECK(r.generated == 44);
  CHECK(r.delivered == 38);
  CHECK(r.conserves());
  CHECK(r.seeds[0].urllc_score == doctest::Approx(20.0 / 21.0));
  CHECK(r.mean_score == doctest::Approx((20.0 / 21.0 + 18.0 / 21.0) / 2.0));
  CHECK(r.score_std == doctest::Approx(std::sqrt(2.0) / 21.0));

  const RunReport back = report_from_json(report_to_json(r));
  CHECK(back == r);
  CHECK_THROWS_AS(report_from_json("{\"format\": \"noma-report/0\"}"), Error);
  CHECK_THROWS_AS(report_from_json("not json"), Error);

  const fs::path dir = scratch_dir("report") / "nested";
  emit_metrics(r, dir.string());
  CHECK(load_report((dir / "report.json").string()) == r);
  std::ifstream curve(dir / "curve.csv");
  std::string header;
  std::getline(curve, header);
  CHECK(header == kCurveHeader);
}

TEST_CASE("trace NDJSON has one object per frame") {
  std::vector<FrameRecord> trace(3);
  for (int i = 0; i < 3; ++i) {
    trace[i].frame = i;
    trace[i].action = ActionVector(std::vector<std::uint8_t>{1, 0});
    trace[i].active = {1, 0};
    trace[i].decoded = {static_cast<std::uint8_t>(i % 2), 0};
    trace[i].reward = i % 2;
  }
  std::ostringstream out;
  write_trace(out, trace);
  std::istringstream in(out.str());
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    CHECK(line.find("\"frame\":" + std::to_string(count)) != std::string::npos);
    ++count;
  }
  CHECK(count == 3);
}
