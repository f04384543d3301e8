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
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "noma/error.hpp"
#include "noma/report.hpp"

namespace noma {

using nlohmann::json;

SeedReport SeedReport::from_tally(std::uint64_t seed, const EvalTally& tally) {
  SeedReport r;
  r.seed = seed;
  r.episodes = tally.episodes;
  r.generated = tally.total_generated();
  r.delivered = tally.total_delivered();
  r.expired = tally.total_expired();
  r.residual = tally.total_residual();
  r.urllc_score = tally.score();
  r.device_scores = tally.device_scores();
  r.jain = tally.jain();
  r.mean_reward = tally.mean_reward();
  return r;
}

void RunReport::summarize() {
  generated = delivered = expired = residual = 0;
  double sum = 0.0;
  for (const SeedReport& s : seeds) {
    generated += s.generated;
    delivered += s.delivered;
    expired += s.expired;
    residual += s.residual;
    sum += s.urllc_score;
  }
  const double n = static_cast<double>(seeds.size());
  mean_score = seeds.empty() ? 0.0 : sum / n;
  double var = 0.0;
  for (const SeedReport& s : seeds) var += (s.urllc_score - mean_score) * (s.urllc_score - mean_score);
  score_std = seeds.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
}

namespace {

json curve_to_json(const CurvePoint& p) {
  return {{"seed", p.seed},
          {"update", p.update},
          {"episodes_seen", p.episodes_seen},
          {"urllc_score", p.urllc_score},
          {"mean_reward", p.mean_reward}};
}

json seed_to_json(const SeedReport& s) {
  json j = {{"seed", s.seed},
            {"episodes", s.episodes},
            {"generated", s.generated},
            {"delivered", s.delivered},
            {"expired", s.expired},
            {"residual", s.residual},
            {"urllc_score", s.urllc_score},
            {"jain", s.jain},
            {"mean_reward", s.mean_reward},
            {"device_scores", s.device_scores}};
  j["sa_probability"] = s.sa_probability ? json(*s.sa_probability) : json(nullptr);
  return j;
}

}  // namespace

std::string report_to_json(const RunReport& r) {
  json j;
  j["format"] = r.format;
  j["agent"] = r.agent;
  j["config"] = r.config;
  j["config_hash"] = r.config_hash;
  j["curve"] = json::array();
  for (const CurvePoint& p : r.curve) j["curve"].push_back(curve_to_json(p));
  j["seeds"] = json::array();
  for (const SeedReport& s : r.seeds) j["seeds"].push_back(seed_to_json(s));
  j["mean_score"] = r.mean_score;
  j["score_std"] = r.score_std;
  j["generated"] = r.generated;
  j["delivered"] = r.delivered;
  j["expired"] = r.expired;
  j["residual"] = r.residual;
  j["conservation_failures"] = r.conservation_failures;
  j["overloaded_frames"] = r.overloaded_frames;
  j["overloaded_with_reward"] = r.overloaded_with_reward;
  j["wall_clock_s"] = r.wall_clock_s;
  return j.dump(2) + "\n";
}

RunReport report_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    RunReport r;
    r.format = j.at("format").get<std::string>();
    if (r.format != kReportFormat) throw Error(ErrorCode::kParse, "unsupported report format " + r.format);
    r.agent = j.at("agent").get<std::string>();
    r.config = j.at("config").get<std::string>();
    r.config_hash = j.at("config_hash").get<std::string>();
    for (const json& p : j.at("curve"))
      r.curve.push_back({p.at("seed").get<std::uint64_t>(), p.at("update").get<std::int64_t>(),
                         p.at("episodes_seen").get<std::int64_t>(), p.at("urllc_score").get<double>(),
                         p.at("mean_reward").get<double>()});
    for (const json& s : j.at("seeds")) {
      SeedReport sr;
      sr.seed = s.at("seed").get<std::uint64_t>();
      sr.episodes = s.at("episodes").get<std::uint64_t>();
      sr.generated = s.at("generated").get<std::uint64_t>();
      sr.delivered = s.at("delivered").get<std::uint64_t>();
      sr.expired = s.at("expired").get<std::uint64_t>();
      sr.residual = s.at("residual").get<std::uint64_t>();
      sr.urllc_score = s.at("urllc_score").get<double>();
      sr.jain = s.at("jain").get<double>();
      sr.mean_reward = s.at("mean_reward").get<double>();
      sr.device_scores = s.at("device_scores").get<std::vector<double>>();
      if (!s.at("sa_probability").is_null()) sr.sa_probability = s.at("sa_probability").get<double>();
      r.seeds.push_back(std::move(sr));
    }
    r.mean_score = j.at("mean_score").get<double>();
    r.score_std = j.at("score_std").get<double>();
    r.generated = j.at("generated").get<std::uint64_t>();
    r.delivered = j.at("delivered").get<std::uint64_t>();
    r.expired = j.at("expired").get<std::uint64_t>();
    r.residual = j.at("residual").get<std::uint64_t>();
    r.conservation_failures = j.at("conservation_failures").get<std::uint64_t>();
    r.overloaded_frames = j.at("overloaded_frames").get<std::uint64_t>();
    r.overloaded_with_reward = j.at("overloaded_with_reward").get<std::uint64_t>();
    r.wall_clock_s = j.at("wall_clock_s").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed report: ") + e.what());
  }
}

RunReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return report_from_json(buf.str());
}

void write_curve_header(std::ostream& out) { out << kCurveHeader << '\n'; }

void write_curve_row(std::ostream& out, const CurvePoint& p) {
  std::ostringstream row;
  row << std::setprecision(17) << p.seed << ',' << p.update << ',' << p.episodes_seen << ',' << p.urllc_score << ','
      << p.mean_reward << '\n';
  out << row.str();
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
  std::ostringstream out;
  write_curve_header(out);
  for (const CurvePoint& p : curve) write_curve_row(out, p);
  return out.str();
}

void write_trace(std::ostream& out, const std::vector<FrameRecord>& trace) {
  for (const FrameRecord& r : trace) {
    json j = {{"frame", r.frame},
              {"action", r.action.poll},
              {"active", r.active},
              {"decoded", r.decoded},
              {"reward", r.reward}};
    out << j.dump() << '\n';
  }
}

void emit_metrics(const RunReport& report, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir + ": " + ec.message());
  const std::filesystem::path dir(out_dir);
  {
    std::ofstream csv(dir / "curve.csv", std::ios::trunc);
    if (!csv) throw Error(ErrorCode::kIo, "cannot write curve.csv in " + out_dir);
    csv << curve_csv(report.curve);
  }
  std::ofstream js(dir / "report.json", std::ios::trunc);
  if (!js) throw Error(ErrorCode::kIo, "cannot write report.json in " + out_dir);
  js << report_to_json(report);
  if (!js) throw Error(ErrorCode::kIo, "failed to write report.json");
}

}  // namespace noma
