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

// Acceptance checks. Each criterion prints one PASS or FAIL line; INFO lines
// carry diagnostics that do not gate anything. Exit status is nonzero when
// any criterion in the selected group fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "history_oracle.hpp"
#include "noma/agent.hpp"
#include "noma/env.hpp"
#include "noma/evaluation.hpp"
#include "noma/flops.hpp"
#include "noma/harness.hpp"
#include "noma/network.hpp"
#include "noma/phy.hpp"
#include "noma/ppo.hpp"
#include "noma/scenario.hpp"
#include "noma/trainer.hpp"
#include "oracles.hpp"

using namespace noma;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and budgets.
constexpr double kLag1Tol = 0.01;
constexpr double kVarianceTol = 0.02;
constexpr int kFadingChains = 10000;
constexpr int kFadingSteps = 10;  // 1e5 evolutions per speed
constexpr double kFblTol = 1e-9;
constexpr double kInversionTol = 1e-9;
constexpr double kGaeTol = 1e-10;
constexpr double kGradTol = 1e-4;
constexpr double kGradFloor = 1e-10;
constexpr double kSmokeScore = 0.95;
constexpr double kSmokeMargin = 0.05;
constexpr double kEdfCeiling = 0.99;
constexpr double kPriorMark = 0.9;
constexpr int kSeedsNeeded = 4;
constexpr double kSmokeBudgetS = 30.0 * 60.0;
constexpr double kTrendBudgetS = 2.0 * 3600.0;

int failures = 0;

void verdict(int id, bool pass, const std::string& what, const std::string& detail, double seconds) {
  if (!pass) ++failures;
  std::printf("%s  [%d] %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
}

void info(const std::string& line) {
  std::printf("INFO  %s\n", line.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Accumulates audits from every run the group performs.
struct AuditTotals {
  std::uint64_t episodes_checked = 0;
  std::uint64_t conservation_failures = 0;
  std::uint64_t overloaded_frames = 0;
  std::uint64_t overloaded_with_reward = 0;

  void add(const EvalTally& t) {
    episodes_checked += t.episodes;
    conservation_failures += t.audit.conservation_failures + (t.conserves() ? 0 : 1);
    overloaded_frames += t.audit.overloaded_frames;
    overloaded_with_reward += t.audit.overloaded_with_reward;
  }
  void add(const RunReport& r) {
    for (const SeedReport& s : r.seeds) episodes_checked += s.episodes;
    conservation_failures += r.conservation_failures + (r.conserves() ? 0 : 1);
    overloaded_frames += r.overloaded_frames;
    overloaded_with_reward += r.overloaded_with_reward;
  }
};

void audit_verdicts(const AuditTotals& a, double seconds) {
  verdict(6, a.conservation_failures == 0, "conservation",
          std::to_string(a.conservation_failures) + " failures over " + std::to_string(a.episodes_checked) +
              " audited episodes",
          seconds);
  verdict(10, a.overloaded_with_reward == 0, "SIC hard limit",
          std::to_string(a.overloaded_with_reward) + " rewarded frames among " + std::to_string(a.overloaded_frames) +
              " overloaded frames",
          seconds);
}

std::vector<double> uniform_block(std::size_t n, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

template <class F>
std::vector<double> central_difference(std::span<double> params, F&& objective, double h = 1e-6) {
  std::vector<double> out(params.size());
  for (std::size_t j = 0; j < params.size(); ++j) {
    const double saved = params[j];
    params[j] = saved + h;
    const double up = objective();
    params[j] = saved - h;
    const double down = objective();
    params[j] = saved;
    out[j] = (up - down) / (2.0 * h);
  }
  return out;
}

// Largest relative deviation, ignoring entries both below the floor.
double worst_relative(const std::vector<double>& analytic, const std::vector<double>& numeric) {
  double worst = 0.0;
  for (std::size_t j = 0; j < analytic.size(); ++j) {
    const double diff = std::abs(analytic[j] - numeric[j]);
    if (diff <= kGradFloor) continue;
    worst = std::max(worst, diff / std::max(std::abs(analytic[j]), std::abs(numeric[j])));
  }
  return worst;
}

// ---------------------------------------------------------------- fast group

void derived_parity() {
  Stopwatch sw;
  const PhyConfig c;
  const double tf = c.frame_duration(Protocol::kScheduled5Slot);
  const double tc_ms = std::round(coherence_time(c.carrier_frequency, c.device_speed) * 1e4) / 10.0;
  const int tc_frames = static_cast<int>(std::floor(coherence_time(c.carrier_frequency, c.device_speed) / tf));
  const double interarrival = std::round(2e-3 / tf * 10.0) / 10.0;
  const std::uint64_t actions = action_space_size(18, 3);
  auto line = [](Architecture a, std::uint64_t input_of_k1, std::uint64_t input_of_k2) {
    const std::uint64_t f1 = flops_estimate(a, 1, 256, input_of_k1);
    const std::uint64_t f2 = flops_estimate(a, 2, 256, input_of_k2);
    return std::pair<std::uint64_t, std::uint64_t>{f2 - f1, 2 * f1 - f2};
  };
  const auto ppo = line(Architecture::kNomaPpo, 6, 11);
  const auto bdq = line(Architecture::kBdq, 6, 11);
  const auto idrqn = line(Architecture::kIdrqnAgent, 7, 7);
  const bool pass = tc_ms == 11.2 && tc_frames == 63 && interarrival == 11.2 && actions == 261972 &&
                    ppo == std::pair<std::uint64_t, std::uint64_t>{3072, 263424} &&
                    bdq == std::pair<std::uint64_t, std::uint64_t>{4096, 394496} &&
                    idrqn == std::pair<std::uint64_t, std::uint64_t>{406528, 0};
  std::ostringstream d;
  d << "Tc " << tc_ms << " ms, " << tc_frames << " frames, interarrival " << interarrival << " frames, |A| "
    << actions << ", FLOPs " << ppo.first << "K+" << ppo.second << " / " << bdq.first << "K+" << bdq.second << " / "
    << idrqn.first << "K";
  verdict(1, pass, "derived quantities", d.str(), sw.seconds());
}

void channel_statistics() {
  Stopwatch sw;
  const PhyConfig c;
  const double tf = c.frame_duration(Protocol::kScheduled5Slot);
  bool pass = true;
  std::ostringstream d;
  std::uint64_t stream = 0;
  for (double kmh : {3.0, 30.0, 120.0, 500.0}) {
    const double a = jakes_coefficient(kmh / 3.6, c.carrier_frequency, tf);
    Rng rng = make_rng(2024, ++stream);
    FadingMatrix h = FadingMatrix::draw(c.num_antennas, std::vector<double>(kFadingChains, a), rng);
    long double cross = 0.0L, power = 0.0L;
    std::size_t count = 0;
    for (int s = 0; s < kFadingSteps; ++s) {
      FadingMatrix next = evolve_fading(h, rng);
      const auto prev = h.coefficients();
      const auto cur = next.coefficients();
      for (std::size_t i = 0; i < cur.size(); ++i) {
        cross += (std::conj(prev[i]) * cur[i]).real();
        power += std::norm(prev[i]);
      }
      count += cur.size();
      h = std::move(next);
    }
    const double lag1 = static_cast<double>(cross / power);
    const double variance = static_cast<double>(power / count);
    pass = pass && std::abs(lag1 - a) <= kLag1Tol && std::abs(variance - 1.0) <= kVarianceTol;
    d << kmh << " km/h: a " << fmt("%.6f", a) << " lag1 " << fmt("%.6f", lag1) << " var " << fmt("%.4f", variance)
      << "; ";
  }
  verdict(2, pass, "fading statistics", d.str() + std::to_string(kFadingChains * kFadingSteps) + " evolutions each",
          sw.seconds());
}

void finite_blocklength() {
  Stopwatch sw;
  double worst = 0.0;
  for (int n : {200, 736, 1247, 1263, 1271}) {
    for (double db = -5.0; db <= 20.0; db += 0.25) {
      const double sinr = db_to_linear(db);
      const double expected = static_cast<double>(oracle::block_error(sinr, n, 736));
      worst = std::max(worst, std::abs(fbl_error_probability(sinr, n, 736) - expected));
    }
  }
  const bool half = fbl_error_probability(1.0, 736, 736) == 0.5;
  bool monotone = true;
  double prev = 1.0;
  for (double db = -10.0; db <= 20.0; db += 0.01) {
    const double e = fbl_error_probability(db_to_linear(db), 1263, 736);
    monotone = monotone && e <= prev;
    prev = e;
  }
  const PhyConfig c;
  const double noise = c.noise_power();
  double round_trip = 0.0;
  for (double target : {1e-2, 1e-3, 1e-5, 1e-7, 1e-9}) {
    for (int n : {736, 1247, 1263}) {
      const double eta = invert_error_for_power(target, n, 736, noise);
      const double eps = fbl_error_probability(eta / noise, n, 736);
      round_trip = std::max(round_trip, std::abs(eps - target) / target);
      const double back = invert_error_for_power(eps, n, 736, noise);
      round_trip = std::max(round_trip, std::abs(back - eta) / eta);
    }
  }
  const bool pass = worst <= kFblTol && half && monotone && round_trip <= kInversionTol;
  verdict(3, pass, "finite blocklength",
          "max |eps - oracle| " + fmt("%.2e", worst) + ", eps(C=L/n) " + (half ? "0.5" : "not 0.5") +
              (monotone ? ", monotone" : ", NOT monotone") + ", inversion rel " + fmt("%.2e", round_trip),
          sw.seconds());
}

void learning_math() {
  Stopwatch sw;
  Rng rng = make_rng(4);
  double gae_worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    const double gamma = std::uniform_real_distribution<double>(0.0, 0.99)(rng);
    const double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto r = uniform_block(n, 0.0, 3.0, rng);
    auto v = uniform_block(n + 1, -5.0, 5.0, rng);
    if (trial % 2) v.back() = 0.0;
    const auto fast = gae(r, v, gamma, lambda);
    const auto slow = oracle::gae_double_sum(r, v, gamma, lambda);
    for (std::size_t t = 0; t < n; ++t) gae_worst = std::max(gae_worst, std::abs(fast[t] - slow[t]));
  }

  // Exact comparison needs both summation orders to be exact: integer
  // rewards with dyadic discounts.
  bool rtg_exact = true;
  for (double gamma : {0.0, 0.5, 1.0}) {
    std::vector<double> r(40);
    for (double& x : r) x = static_cast<double>(rng() % 4);
    const auto fast = rewards_to_go(r, gamma);
    for (std::size_t t = 0; t < r.size(); ++t) {
      double slow = 0.0;
      for (std::size_t s = t; s < r.size(); ++s) slow += std::pow(gamma, static_cast<double>(s - t)) * r[s];
      rtg_exact = rtg_exact && fast[t] == slow;
    }
  }

  const int k = 3, hidden = 8, batch = 12;
  const int in = feature_size(k);
  PpoAgent agent = PpoAgent::create(k, hidden, 7);
  const auto features = uniform_block(static_cast<std::size_t>(batch) * in, 0.0, 1.0, rng);

  double grad_worst = 0.0;
  {
    const auto d_out = uniform_block(static_cast<std::size_t>(batch) * k, -1.0, 1.0, rng);
    MlpWorkspace ws;
    agent.policy.forward(features, batch, ws);
    std::vector<double> grad(agent.policy.num_params(), 0.0);
    agent.policy.backward(features, d_out, ws, grad);
    auto objective = [&] {
      MlpWorkspace w;
      const auto y = agent.policy.forward(features, batch, w);
      return std::inner_product(y.begin(), y.end(), d_out.begin(), 0.0);
    };
    grad_worst = std::max(grad_worst, worst_relative(grad, central_difference(agent.policy.params(), objective)));
  }
  {
    std::vector<std::uint8_t> actions(static_cast<std::size_t>(batch) * k);
    for (auto& a : actions) a = rng() & 1;
    const auto adv = uniform_block(batch, -1.0, 1.0, rng);
    MlpWorkspace ws;
    const auto logits = agent.policy.forward(features, batch, ws);
    std::vector<double> old_lp(batch);
    for (int i = 0; i < batch; ++i)
      old_lp[i] = joint_log_prob_from_logits(logits.subspan(i * k, k), std::span(actions).subspan(i * k, k)) +
                  std::uniform_real_distribution<double>(-0.08, 0.08)(rng);
    const PolicyBatch pb{features, actions, old_lp, adv, batch};
    std::vector<double> grad(agent.policy.num_params(), 0.0);
    policy_objective_and_grad(agent.policy, pb, 0.2, ws, grad);
    auto objective = [&] {
      MlpWorkspace w;
      std::vector<double> g(agent.policy.num_params(), 0.0);
      return policy_objective_and_grad(agent.policy, pb, 0.2, w, g).objective;
    };
    auto numeric = central_difference(agent.policy.params(), objective);
    for (double& v : numeric) v = -v;
    grad_worst = std::max(grad_worst, worst_relative(grad, numeric));
  }
  {
    const auto returns = uniform_block(batch, 0.0, 3.0, rng);
    MlpWorkspace ws;
    std::vector<double> grad(agent.value.num_params(), 0.0);
    value_loss_and_grad(agent.value, features, returns, batch, ws, grad);
    auto objective = [&] {
      MlpWorkspace w;
      std::vector<double> g(agent.value.num_params(), 0.0);
      return value_loss_and_grad(agent.value, features, returns, batch, w, g);
    };
    grad_worst = std::max(grad_worst, worst_relative(grad, central_difference(agent.value.params(), objective)));
  }

  const bool pass = gae_worst <= kGaeTol && rtg_exact && grad_worst <= kGradTol;
  verdict(4, pass, "learning math",
          "GAE max abs " + fmt("%.2e", gae_worst) + ", rewards-to-go " + (rtg_exact ? "exact" : "INEXACT") +
              ", gradient max rel " + fmt("%.2e", grad_worst),
          sw.seconds());
}

void state_sufficiency(AuditTotals& audits) {
  Stopwatch sw;
  const int k_total = 6;
  std::uint64_t frames = 0, mismatches = 0;
  for (std::uint64_t episode = 0; episode < 100; ++episode) {
    EnvConfig c;
    c.num_devices = k_total;
    c.phy.sic_limit = 3;
    c.episode_length = 200;
    if (episode % 2) {
      c.traffic = TrafficConfig::periodic(k_total, 11, 0.8, 5);
      c.random_offsets = true;
    } else {
      c.traffic = TrafficConfig::poisson(k_total, 0.2, 5);
    }
    Environment env(c);
    Rng rng = make_rng(episode, 99);
    AgentState state = env.reset(rng);
    const int depth = env.traffic().max_deadline();
    std::vector<oracle::HistoryStep> history;
    while (!env.done()) {
      ActionVector a(k_total);
      for (int k = 0; k < k_total; ++k) a[k] = (rng() % 5 < 2) ? 1 : 0;
      const StepResult r = env.step(a, rng);
      history.push_back({a, r.observation});
      state = update_agent_state(state, r.observation, a);
      mismatches += !(state == oracle::agent_state_from_history(history, k_total, depth));
      ++frames;
    }
    EvalTally t(k_total);
    t.add_episode(env, 0.0);
    t.audit = env.audit();
    audits.add(t);
  }
  verdict(5, mismatches == 0, "agent-state sufficiency",
          std::to_string(mismatches) + " mismatches over " + std::to_string(frames) + " frames in 100 episodes",
          sw.seconds());
}

// Heavy load on eight devices with every scheduler, so overloaded frames
// actually occur.
void policy_audits(AuditTotals& audits) {
  EnvConfig c;
  c.num_devices = 8;
  c.phy.sic_limit = 3;
  c.traffic = TrafficConfig::poisson(8, 0.3, 5);
  const RandomPolicy random(3);
  const EdfOraclePolicy edf(3);
  const SlottedAlohaPolicy aloha(0.7);
  for (const SchedulingPolicy* p : std::initializer_list<const SchedulingPolicy*>{&random, &edf, &aloha})
    audits.add(evaluate_policy(c, *p, 200, 31));
  const PpoAgent untrained = PpoAgent::create(8, 16, 5);
  AgentOptions opts;
  audits.add(evaluate_agent(c, untrained, opts, 200, 32));
  opts.use_prior = false;
  audits.add(evaluate_agent(c, untrained, opts, 200, 33));
}

void run_fast() {
  derived_parity();
  channel_statistics();
  finite_blocklength();
  learning_math();
  AuditTotals audits;
  Stopwatch sw;
  state_sufficiency(audits);
  policy_audits(audits);
  audit_verdicts(audits, sw.seconds());
}

// --------------------------------------------------------- learning groups

RunReport run_agent(Scenario s, AgentKind agent, const std::string& label) {
  s.agent = agent;
  Stopwatch sw;
  RunReport r = run_training(s, {});
  std::ostringstream d;
  d << label << " K=" << s.num_devices << ": mean " << fmt("%.4f", r.mean_score) << " sd "
    << fmt("%.4f", r.score_std) << " seeds";
  for (const SeedReport& seed : r.seeds) d << ' ' << fmt("%.4f", seed.urllc_score);
  d << " (" << fmt("%.0f", sw.seconds()) << " s)";
  info(d.str());
  return r;
}

// Episodes seen at the first curve point reaching the mark, per seed.
std::vector<double> episodes_to_mark(const RunReport& r, double mark) {
  std::vector<double> out;
  for (const SeedReport& seed : r.seeds) {
    double first = std::numeric_limits<double>::infinity();
    for (const CurvePoint& p : r.curve)
      if (p.seed == seed.seed && p.urllc_score >= mark) {
        first = static_cast<double>(p.episodes_seen);
        break;
      }
    out.push_back(first);
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

void run_smoke(const fs::path& configs) {
  const Scenario s = load_scenario((configs / "smoke_k4.conf").string());
  AuditTotals audits;
  Stopwatch sw;
  const RunReport ppo = run_agent(s, AgentKind::kNomaPpo, "noma_ppo");
  const RunReport random = run_agent(s, AgentKind::kRandom, "random");
  const RunReport edf = run_agent(s, AgentKind::kEdfOracle, "edf_oracle");
  const double smoke_seconds = sw.seconds();
  for (const RunReport* r : {&ppo, &random, &edf}) audits.add(*r);

  int good = 0;
  std::ostringstream seeds;
  for (std::size_t i = 0; i < ppo.seeds.size(); ++i) {
    const double p = ppo.seeds[i].urllc_score;
    const double q = random.seeds[i].urllc_score;
    const bool ok = p >= kSmokeScore && p >= q + kSmokeMargin;
    good += ok;
    seeds << (i ? " " : "") << ppo.seeds[i].seed << ':' << fmt("%.4f", p) << '/' << fmt("%.4f", q) << (ok ? "+" : "-");
  }
  const bool pass = good >= kSeedsNeeded && edf.mean_score >= kEdfCeiling && smoke_seconds <= kSmokeBudgetS;
  verdict(7, pass, "learning smoke",
          std::to_string(good) + "/5 seeds with PPO >= " + fmt("%.2f", kSmokeScore) + " and >= Random + " +
              fmt("%.2f", kSmokeMargin) + " [seed:ppo/random " + seeds.str() + "], EDF " +
              fmt("%.4f", edf.mean_score) + ", " + fmt("%.0f", smoke_seconds) + " s of " +
              fmt("%.0f", kSmokeBudgetS),
          smoke_seconds);

  Stopwatch ablation;
  const RunReport no_prior = run_agent(s, AgentKind::kNomaPpoNoPrior, "noma_ppo_no_prior");
  audits.add(no_prior);
  const auto with = episodes_to_mark(ppo, kPriorMark);
  const auto without = episodes_to_mark(no_prior, kPriorMark);
  int no_later = 0;
  for (std::size_t i = 0; i < with.size(); ++i) no_later += with[i] <= without[i];
  verdict(9, no_later >= kSeedsNeeded, "prior ablation",
          "episodes to " + fmt("%.1f", kPriorMark) + " with prior [" + join(with) + "] vs without [" + join(without) +
              "], " + std::to_string(no_later) + "/5 seeds no later",
          ablation.seconds());

  Scenario oracle_prior = s;
  oracle_prior.prior.source = PriorSource::kTrueBuffers;
  const RunReport true_buffers = run_agent(oracle_prior, AgentKind::kNomaPpo, "noma_ppo prior from true buffers");
  audits.add(true_buffers);
  info("episodes to " + fmt("%.1f", kPriorMark) + " with a true-buffer prior [" +
       join(episodes_to_mark(true_buffers, kPriorMark)) + "]");

  audit_verdicts(audits, sw.seconds());
}

double standard_error(const RunReport& r) { return r.score_std / std::sqrt(static_cast<double>(r.seeds.size())); }

void run_trend(const fs::path& configs) {
  AuditTotals audits;
  Stopwatch sw;
  bool pass = true;
  std::ostringstream d;
  for (const char* name : {"trend_k4.conf", "trend_k8.conf"}) {
    const Scenario s = load_scenario((configs / name).string());
    const std::vector<RunReport> ranked = {
        run_agent(s, AgentKind::kEdfOracle, "edf_oracle"), run_agent(s, AgentKind::kNomaPpo, "noma_ppo"),
        run_agent(s, AgentKind::kSaNomaSic, "sa_noma_sic"), run_agent(s, AgentKind::kRandom, "random")};
    d << "K=" << s.num_devices << ':';
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      audits.add(ranked[i]);
      d << ' ' << ranked[i].agent << ' ' << fmt("%.4f", ranked[i].mean_score);
      if (i + 1 == ranked.size()) break;
      const double gap = ranked[i].mean_score - ranked[i + 1].mean_score;
      const double pooled = std::hypot(standard_error(ranked[i]), standard_error(ranked[i + 1]));
      const bool ok = gap >= -pooled;
      pass = pass && ok;
      d << (ok ? " >=" : " <") << " (gap " << fmt("%+.4f", gap) << ", se " << fmt("%.4f", pooled) << ")";
    }
    d << "; ";
  }
  const double seconds = sw.seconds();
  pass = pass && seconds <= kTrendBudgetS;
  verdict(8, pass, "ordering trend", d.str() + fmt("%.0f", seconds) + " s of " + fmt("%.0f", kTrendBudgetS), seconds);
  audit_verdicts(audits, seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string group = "fast";
  std::string configs = NOMA_CONFIG_DIR;
  app.add_option("--group", group, "fast, smoke or trend")->check(CLI::IsMember({"fast", "smoke", "trend"}));
  app.add_option("--configs", configs, "directory holding the scenario files");
  CLI11_PARSE(app, argc, argv);

  try {
    if (group == "fast")
      run_fast();
    else if (group == "smoke")
      run_smoke(configs);
    else
      run_trend(configs);
  } catch (const std::exception& e) {
    std::printf("FAIL  %s group aborted: %s\n", group.c_str(), e.what());
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
