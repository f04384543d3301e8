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

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "noma/error.hpp"
#include "noma/scenario.hpp"

namespace noma {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Raised by the value converters; the parser attaches the line number.
struct BadValue {
  std::string message;
};

double to_double(const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw BadValue{"expected a number, got '" + v + "'"};
  return out;
}

long long to_integer(const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw BadValue{"expected an integer, got '" + v + "'"};
  return out;
}

int to_int(const std::string& v) {
  const long long x = to_integer(v);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw BadValue{"integer out of range: " + v};
  return static_cast<int>(x);
}

bool to_bool(const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw BadValue{"expected true or false, got '" + v + "'"};
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw BadValue{"empty list entry"};
    out.push_back(item);
  }
  if (out.empty()) throw BadValue{"empty list"};
  return out;
}

std::string fmt(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fmt(int v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

std::string_view to_string(TrafficModel m) { return m == TrafficModel::kPeriodic ? "periodic" : "aperiodic"; }
std::string_view to_string(Placement p) { return p == Placement::kRing ? "ring" : "uniform"; }
std::string_view to_string(PriorSource s) { return s == PriorSource::kTrueBuffers ? "true_buffers" : "estimate"; }

struct Field {
  std::function<void(Scenario&, const std::string&)> set;
  std::function<std::string(const Scenario&)> get;
};

using FieldTable = std::vector<std::pair<std::string, Field>>;

template <typename T>
Field number(T Scenario::*group, double T::*member) {
  return {[=](Scenario& s, const std::string& v) { (s.*group).*member = to_double(v); },
          [=](const Scenario& s) { return fmt((s.*group).*member); }};
}

template <typename T>
Field integer(T Scenario::*group, int T::*member) {
  return {[=](Scenario& s, const std::string& v) { (s.*group).*member = to_int(v); },
          [=](const Scenario& s) { return fmt((s.*group).*member); }};
}

template <typename T>
Field boolean(T Scenario::*group, bool T::*member) {
  return {[=](Scenario& s, const std::string& v) { (s.*group).*member = to_bool(v); },
          [=](const Scenario& s) { return fmt((s.*group).*member); }};
}

template <typename T, typename V>
Field optional_value(T Scenario::*group, std::optional<V> T::*member) {
  return {[=](Scenario& s, const std::string& v) {
            if (v == "auto") {
              ((s.*group).*member).reset();
            } else if constexpr (std::is_same_v<V, int>) {
              (s.*group).*member = to_int(v);
            } else {
              (s.*group).*member = to_double(v);
            }
          },
          [=](const Scenario& s) {
            const auto& o = (s.*group).*member;
            return o ? fmt(*o) : std::string("auto");
          }};
}

const FieldTable& fields() {
  static const FieldTable table = [] {
    FieldTable t;
    t.emplace_back("K", Field{[](Scenario& s, const std::string& v) { s.num_devices = to_int(v); },
                              [](const Scenario& s) { return fmt(s.num_devices); }});
    t.emplace_back("agent", Field{[](Scenario& s, const std::string& v) {
                                    const auto a = parse_agent(v);
                                    if (!a) throw BadValue{"unknown agent '" + v + "'"};
                                    s.agent = *a;
                                  },
                                  [](const Scenario& s) { return std::string(to_string(s.agent)); }});
    t.emplace_back("protocol", Field{[](Scenario& s, const std::string& v) {
                                       if (v == "auto") {
                                         s.protocol.reset();
                                         return;
                                       }
                                       const auto p = parse_protocol(v);
                                       if (!p) throw BadValue{"unknown protocol '" + v + "'"};
                                       s.protocol = *p;
                                     },
                                     [](const Scenario& s) {
                                       return s.protocol ? std::string(to_string(*s.protocol)) : std::string("auto");
                                     }});
    t.emplace_back("episode_length", Field{[](Scenario& s, const std::string& v) { s.episode_length = to_int(v); },
                                           [](const Scenario& s) { return fmt(s.episode_length); }});
    t.emplace_back("seeds", Field{[](Scenario& s, const std::string& v) {
                                    s.seeds.clear();
                                    for (const auto& item : split_list(v)) {
                                      const long long x = to_integer(item);
                                      if (x < 0) throw BadValue{"seeds must be nonnegative"};
                                      s.seeds.push_back(static_cast<std::uint64_t>(x));
                                    }
                                  },
                                  [](const Scenario& s) {
                                    std::string out;
                                    for (std::size_t i = 0; i < s.seeds.size(); ++i)
                                      out += (i ? "," : "") + std::to_string(s.seeds[i]);
                                    return out;
                                  }});
    t.emplace_back("checkpoint.cadence",
                   Field{[](Scenario& s, const std::string& v) { s.checkpoint_cadence = to_int(v); },
                         [](const Scenario& s) { return fmt(s.checkpoint_cadence); }});

    using P = PhySettings;
    auto phy = &Scenario::phy;
    t.emplace_back("phy.carrier_frequency", number(phy, &P::carrier_frequency));
    t.emplace_back("phy.bandwidth", number(phy, &P::bandwidth));
    t.emplace_back("phy.subcarrier_spacing", number(phy, &P::subcarrier_spacing));
    t.emplace_back("phy.delay_spread", number(phy, &P::delay_spread));
    t.emplace_back("phy.symbol_info_duration", number(phy, &P::symbol_info_duration));
    t.emplace_back("phy.cyclic_prefix_duration", number(phy, &P::cyclic_prefix_duration));
    t.emplace_back("phy.num_antennas", integer(phy, &P::num_antennas));
    t.emplace_back("phy.sic_limit", integer(phy, &P::sic_limit));
    t.emplace_back("phy.packet_bits", integer(phy, &P::packet_bits));
    t.emplace_back("phy.noise_psd_dbm_hz", number(phy, &P::noise_psd_dbm_hz));
    t.emplace_back("phy.noise_figure_db", number(phy, &P::noise_figure_db));
    t.emplace_back("phy.tx_power_dbm", number(phy, &P::tx_power_dbm));
    t.emplace_back("phy.bs_antenna_gain_db", number(phy, &P::bs_antenna_gain_db));
    t.emplace_back("phy.device_antenna_gain_db", number(phy, &P::device_antenna_gain_db));
    t.emplace_back("phy.bs_height", number(phy, &P::bs_height));
    t.emplace_back("phy.device_height", number(phy, &P::device_height));
    t.emplace_back("phy.layout_width", number(phy, &P::layout_width));
    t.emplace_back("phy.layout_length", number(phy, &P::layout_length));
    t.emplace_back("phy.device_speed_kmh", number(phy, &P::device_speed_kmh));
    t.emplace_back("phy.shadowing", boolean(phy, &P::shadowing));
    t.emplace_back("phy.shadowing_sigma_db", number(phy, &P::shadowing_sigma_db));

    using T = TrafficSettings;
    auto traffic = &Scenario::traffic;
    t.emplace_back("traffic.model", Field{[](Scenario& s, const std::string& v) {
                                            if (v == "periodic")
                                              s.traffic.model = TrafficModel::kPeriodic;
                                            else if (v == "aperiodic")
                                              s.traffic.model = TrafficModel::kPoisson;
                                            else
                                              throw BadValue{"traffic model must be periodic or aperiodic"};
                                          },
                                          [](const Scenario& s) { return std::string(to_string(s.traffic.model)); }});
    t.emplace_back("traffic.interarrival_ms", number(traffic, &T::interarrival_ms));
    t.emplace_back("traffic.deadline_ms", number(traffic, &T::deadline_ms));
    t.emplace_back("traffic.deadline_frames", optional_value(traffic, &T::deadline_frames));
    t.emplace_back("traffic.period_frames", optional_value(traffic, &T::period_frames));
    t.emplace_back("traffic.arrival_prob", number(traffic, &T::arrival_prob));
    t.emplace_back("traffic.offsets", Field{[](Scenario& s, const std::string& v) {
                                              if (v == "zero")
                                                s.traffic.random_offsets = false;
                                              else if (v == "random")
                                                s.traffic.random_offsets = true;
                                              else
                                                throw BadValue{"offsets must be zero or random"};
                                            },
                                            [](const Scenario& s) {
                                              return std::string(s.traffic.random_offsets ? "random" : "zero");
                                            }});

    using G = TopologySettings;
    auto topo = &Scenario::topology;
    t.emplace_back("topology.placement", Field{[](Scenario& s, const std::string& v) {
                                                 if (v == "uniform")
                                                   s.topology.placement = Placement::kUniform;
                                                 else if (v == "ring")
                                                   s.topology.placement = Placement::kRing;
                                                 else
                                                   throw BadValue{"placement must be uniform or ring"};
                                               },
                                               [](const Scenario& s) {
                                                 return std::string(to_string(s.topology.placement));
                                               }});
    t.emplace_back("topology.ring_radius", number(topo, &G::ring_radius));
    t.emplace_back("topology.fixed", boolean(topo, &G::fixed));
    t.emplace_back("topology.seed", Field{[](Scenario& s, const std::string& v) {
                                            const long long x = to_integer(v);
                                            if (x < 0) throw BadValue{"topology seed must be nonnegative"};
                                            s.topology.seed = static_cast<std::uint64_t>(x);
                                          },
                                          [](const Scenario& s) { return std::to_string(s.topology.seed); }});

    auto ppo_num = [](double PpoConfig::*m) {
      return Field{[=](Scenario& s, const std::string& v) { s.ppo.*m = to_double(v); },
                   [=](const Scenario& s) { return fmt(s.ppo.*m); }};
    };
    auto ppo_int = [](int PpoConfig::*m) {
      return Field{[=](Scenario& s, const std::string& v) { s.ppo.*m = to_int(v); },
                   [=](const Scenario& s) { return fmt(s.ppo.*m); }};
    };
    auto ppo_bool = [](bool PpoConfig::*m) {
      return Field{[=](Scenario& s, const std::string& v) { s.ppo.*m = to_bool(v); },
                   [=](const Scenario& s) { return fmt(s.ppo.*m); }};
    };
    t.emplace_back("ppo.discount", ppo_num(&PpoConfig::discount));
    t.emplace_back("ppo.gae_lambda", ppo_num(&PpoConfig::gae_lambda));
    t.emplace_back("ppo.clip", ppo_num(&PpoConfig::clip));
    t.emplace_back("ppo.lr_actor", ppo_num(&PpoConfig::lr_actor));
    t.emplace_back("ppo.lr_critic", ppo_num(&PpoConfig::lr_critic));
    t.emplace_back("ppo.minibatch", ppo_int(&PpoConfig::minibatch));
    t.emplace_back("ppo.episodes_per_update", ppo_int(&PpoConfig::episodes_per_update));
    t.emplace_back("ppo.epochs", ppo_int(&PpoConfig::epochs));
    t.emplace_back("ppo.hidden", ppo_int(&PpoConfig::hidden));
    t.emplace_back("ppo.total_episodes", ppo_int(&PpoConfig::total_episodes));
    t.emplace_back("ppo.adam_beta1", ppo_num(&PpoConfig::adam_beta1));
    t.emplace_back("ppo.adam_beta2", ppo_num(&PpoConfig::adam_beta2));
    t.emplace_back("ppo.adam_epsilon", ppo_num(&PpoConfig::adam_epsilon));
    t.emplace_back("ppo.normalize_advantages", ppo_bool(&PpoConfig::normalize_advantages));
    t.emplace_back("ppo.absolute_discount_exponent", ppo_bool(&PpoConfig::absolute_discount_exponent));

    using R = PriorSettings;
    auto prior = &Scenario::prior;
    t.emplace_back("prior.smoothing", number(prior, &R::smoothing));
    t.emplace_back("prior.staleness_frames", optional_value(prior, &R::staleness_frames));
    t.emplace_back("prior.target_error", number(prior, &R::target_error));
    t.emplace_back("prior.power_threshold", optional_value(prior, &R::power_threshold));
    t.emplace_back("prior.source", Field{[](Scenario& s, const std::string& v) {
                                           if (v == "estimate")
                                             s.prior.source = PriorSource::kEstimate;
                                           else if (v == "true_buffers")
                                             s.prior.source = PriorSource::kTrueBuffers;
                                           else
                                             throw BadValue{"prior source must be estimate or true_buffers"};
                                         },
                                         [](const Scenario& s) { return std::string(to_string(s.prior.source)); }});

    using E = EvalSettings;
    auto eval = &Scenario::eval;
    t.emplace_back("eval.episodes", integer(eval, &E::episodes));
    t.emplace_back("eval.curve_episodes", integer(eval, &E::curve_episodes));
    t.emplace_back("eval.cadence", integer(eval, &E::cadence));
    t.emplace_back("eval.greedy", boolean(eval, &E::greedy));

    t.emplace_back("sa.grid", Field{[](Scenario& s, const std::string& v) {
                                      s.sa.grid.clear();
                                      for (const auto& item : split_list(v)) s.sa.grid.push_back(to_double(item));
                                    },
                                    [](const Scenario& s) {
                                      std::string out;
                                      for (std::size_t i = 0; i < s.sa.grid.size(); ++i)
                                        out += (i ? "," : "") + fmt(s.sa.grid[i]);
                                      return out;
                                    }});
    t.emplace_back("sa.episodes_per_point", integer(&Scenario::sa, &SaSettings::episodes_per_point));
    t.emplace_back("sa.probability", optional_value(&Scenario::sa, &SaSettings::probability));
    return t;
  }();
  return table;
}

const Field* find_field(const std::string& key) {
  for (const auto& [name, field] : fields())
    if (name == key) return &field;
  return nullptr;
}

}  // namespace

std::string_view to_string(AgentKind agent) {
  switch (agent) {
    case AgentKind::kNomaPpo:
      return "noma_ppo";
    case AgentKind::kNomaPpoNoPrior:
      return "noma_ppo_no_prior";
    case AgentKind::kNomaPpoNoCsi:
      return "noma_ppo_no_csi";
    case AgentKind::kNomaPpoFullCsi:
      return "noma_ppo_full_csi";
    case AgentKind::kRandom:
      return "random";
    case AgentKind::kEdfOracle:
      return "edf_oracle";
    case AgentKind::kSaNomaSic:
      return "sa_noma_sic";
  }
  return "unknown";
}

std::optional<AgentKind> parse_agent(std::string_view name) {
  for (AgentKind a : {AgentKind::kNomaPpo, AgentKind::kNomaPpoNoPrior, AgentKind::kNomaPpoNoCsi,
                      AgentKind::kNomaPpoFullCsi, AgentKind::kRandom, AgentKind::kEdfOracle, AgentKind::kSaNomaSic})
    if (to_string(a) == name) return a;
  return std::nullopt;
}

bool is_learning_agent(AgentKind agent) {
  return agent == AgentKind::kNomaPpo || agent == AgentKind::kNomaPpoNoPrior || agent == AgentKind::kNomaPpoNoCsi ||
         agent == AgentKind::kNomaPpoFullCsi;
}

Protocol required_protocol(AgentKind agent) {
  return agent == AgentKind::kSaNomaSic ? Protocol::kGrantFree4Slot : Protocol::kScheduled5Slot;
}

std::string_view to_string(Protocol protocol) {
  return protocol == Protocol::kGrantFree4Slot ? "grantfree_4slot" : "scheduled_5slot";
}

std::optional<Protocol> parse_protocol(std::string_view name) {
  if (name == "scheduled_5slot") return Protocol::kScheduled5Slot;
  if (name == "grantfree_4slot") return Protocol::kGrantFree4Slot;
  return std::nullopt;
}

PhyConfig PhySettings::to_config() const {
  PhyConfig c;
  c.carrier_frequency = carrier_frequency;
  c.bandwidth = bandwidth;
  c.subcarrier_spacing = subcarrier_spacing;
  c.delay_spread = delay_spread;
  c.symbol_info_duration = symbol_info_duration;
  c.cyclic_prefix_duration = cyclic_prefix_duration;
  c.num_antennas = num_antennas;
  c.sic_limit = sic_limit;
  c.packet_bits = packet_bits;
  c.noise_psd = dbm_to_watt(noise_psd_dbm_hz);
  c.noise_figure = db_to_linear(noise_figure_db);
  c.tx_power = dbm_to_watt(tx_power_dbm);
  c.bs_antenna_gain = db_to_linear(bs_antenna_gain_db);
  c.device_antenna_gain = db_to_linear(device_antenna_gain_db);
  c.bs_height = bs_height;
  c.device_height = device_height;
  c.layout_width = layout_width;
  c.layout_length = layout_length;
  c.device_speed = device_speed_kmh / 3.6;
  c.shadowing = shadowing;
  c.shadowing_sigma_db = shadowing_sigma_db;
  return c;
}

int frames_within(double milliseconds, double frame_duration) {
  return static_cast<int>(std::floor(milliseconds * 1e-3 / frame_duration + 1e-9));
}

double Scenario::frame_duration() const { return phy.to_config().frame_duration(resolved_protocol()); }

int Scenario::deadline_frames() const {
  return traffic.deadline_frames.value_or(frames_within(traffic.deadline_ms, frame_duration()));
}

int Scenario::period_frames() const {
  if (traffic.period_frames) return *traffic.period_frames;
  return static_cast<int>(std::lround(traffic.interarrival_ms * 1e-3 / frame_duration()));
}

double Scenario::rate_per_frame() const { return frame_duration() / (traffic.interarrival_ms * 1e-3); }

int Scenario::staleness_frames() const {
  if (prior.staleness_frames) return *prior.staleness_frames;
  const PhyConfig c = phy.to_config();
  if (!(c.device_speed > 0.0)) return std::numeric_limits<int>::max();
  return frames_within(coherence_time(c.carrier_frequency, c.device_speed) * 1e3, frame_duration());
}

double Scenario::power_threshold() const {
  if (prior.power_threshold) return *prior.power_threshold;
  const PhyConfig c = phy.to_config();
  const int pilots = pilot_count(c.bandwidth, c.delay_spread);
  const int n = channel_uses(c.bandwidth, pilots, 1, c.subcarrier_spacing, c.symbol_info_duration);
  return invert_error_for_power(prior.target_error, n, c.packet_bits, c.noise_power());
}

void Scenario::validate() const {
  if (num_devices < 1) throw ValidationError("K", "the number of devices must be given and positive");
  if (num_devices > 64) throw ValidationError("K", "at most 64 devices are supported");
  if (protocol && *protocol != required_protocol(agent))
    throw ValidationError("protocol", std::string(to_string(agent)) + " requires " +
                                          std::string(to_string(required_protocol(agent))));
  phy.to_config().validate();
  if (!(traffic.interarrival_ms > 0.0)) throw ValidationError("traffic.interarrival_ms", "must be positive");
  if (!(traffic.deadline_ms > 0.0)) throw ValidationError("traffic.deadline_ms", "must be positive");
  if (traffic.deadline_frames && *traffic.deadline_frames < 1)
    throw ValidationError("traffic.deadline_frames", "must be at least 1");
  if (deadline_frames() < 1) throw ValidationError("traffic.deadline_ms", "shorter than one frame");
  if (traffic.period_frames && *traffic.period_frames < 1)
    throw ValidationError("traffic.period_frames", "must be at least 1");
  if (traffic.model == TrafficModel::kPeriodic && period_frames() < 1)
    throw ValidationError("traffic.interarrival_ms", "shorter than one frame");
  if (!(traffic.arrival_prob >= 0.0 && traffic.arrival_prob <= 1.0))
    throw ValidationError("traffic.arrival_prob", "must lie in [0, 1]");
  if (!(topology.ring_radius > 0.0)) throw ValidationError("topology.ring_radius", "must be positive");
  if (episode_length < 1) throw ValidationError("episode_length", "must be at least 1");
  if (checkpoint_cadence < 0) throw ValidationError("checkpoint.cadence", "must be nonnegative");
  if (seeds.empty()) throw ValidationError("seeds", "at least one seed is required");
  ppo.validate();
  if (!(prior.smoothing >= 0.0 && prior.smoothing <= 1.0))
    throw ValidationError("prior.smoothing", "must lie in [0, 1]");
  if (prior.staleness_frames && *prior.staleness_frames < 0)
    throw ValidationError("prior.staleness_frames", "must be nonnegative");
  if (!(prior.target_error > 0.0 && prior.target_error < 1.0))
    throw ValidationError("prior.target_error", "must lie in (0, 1)");
  if (prior.power_threshold && !(*prior.power_threshold >= 0.0))
    throw ValidationError("prior.power_threshold", "must be nonnegative");
  if (eval.episodes < 1) throw ValidationError("eval.episodes", "must be at least 1");
  if (eval.curve_episodes < 1) throw ValidationError("eval.curve_episodes", "must be at least 1");
  if (eval.cadence < 1) throw ValidationError("eval.cadence", "must be at least 1");
  if (sa.grid.empty()) throw ValidationError("sa.grid", "must not be empty");
  for (double p : sa.grid)
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("sa.grid", "probabilities must lie in [0, 1]");
  if (sa.episodes_per_point < 1) throw ValidationError("sa.episodes_per_point", "must be at least 1");
  if (sa.probability && !(*sa.probability >= 0.0 && *sa.probability <= 1.0))
    throw ValidationError("sa.probability", "must lie in [0, 1]");
}

EnvConfig Scenario::env_config() const {
  validate();
  EnvConfig c;
  c.num_devices = num_devices;
  c.phy = phy.to_config();
  c.protocol = resolved_protocol();
  const int deadline = deadline_frames();
  if (traffic.model == TrafficModel::kPeriodic)
    c.traffic = TrafficConfig::periodic(num_devices, period_frames(), traffic.arrival_prob, deadline);
  else
    c.traffic = TrafficConfig::poisson(num_devices, rate_per_frame(), deadline);
  c.random_offsets = traffic.random_offsets;
  c.placement = topology.placement;
  c.ring_radius = topology.ring_radius;
  c.fixed_topology = topology.fixed;
  c.topology_seed = topology.seed;
  c.episode_length = episode_length;
  c.validate();
  return c;
}

AgentOptions Scenario::agent_options() const {
  AgentOptions o;
  o.use_prior = agent != AgentKind::kNomaPpoNoPrior;
  o.prior.power_threshold = power_threshold();
  o.prior.staleness_frames = staleness_frames();
  o.prior.smoothing = prior.smoothing;
  o.prior_source = prior.source;
  o.features.power_threshold = o.prior.power_threshold;
  o.features.channel = agent == AgentKind::kNomaPpoNoCsi     ? ChannelFeatures::kNone
                       : agent == AgentKind::kNomaPpoFullCsi ? ChannelFeatures::kOracle
                                                             : ChannelFeatures::kEstimate;
  o.slots = phy.sic_limit;
  o.greedy = eval.greedy;
  return o;
}

Scenario parse_scenario(std::istream& in) {
  Scenario s;
  std::map<std::string, int> seen;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key");
    if (value.empty()) throw ParseError(line_no, "missing value for '" + key + "'");
    if (auto it = seen.find(key); it != seen.end())
      throw ParseError(line_no, "duplicate key '" + key + "' (first on line " + std::to_string(it->second) + ")");
    seen.emplace(key, line_no);
    if (key == "format") {
      if (value != kScenarioFormat) throw ParseError(line_no, "unsupported format '" + value + "'");
      continue;
    }
    const Field* field = find_field(key);
    if (!field) throw ParseError(line_no, "unknown key '" + key + "'");
    try {
      field->set(s, value);
    } catch (const BadValue& e) {
      throw ParseError(line_no, key + ": " + e.message);
    }
  }
  s.validate();
  return s;
}

Scenario parse_scenario_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_scenario(in);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open scenario " + path);
  return parse_scenario(in);
}

std::string format_scenario(const Scenario& scenario) {
  std::string out = "format = " + std::string(kScenarioFormat) + "\n";
  for (const auto& [name, field] : fields()) out += name + " = " + field.get(scenario) + "\n";
  return out;
}

void save_scenario(const std::string& path, const Scenario& scenario) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  out << format_scenario(scenario);
  if (!out) throw Error(ErrorCode::kIo, "failed to write " + path);
}

std::uint64_t scenario_hash(const Scenario& scenario) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : format_scenario(scenario)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace noma
