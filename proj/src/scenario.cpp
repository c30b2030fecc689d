#include "antmesh/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include "antmesh/presets.hpp"

namespace antmesh {

std::string_view to_string(RoutingAlgorithm a) {
  switch (a) {
    case RoutingAlgorithm::antmesh: return "antmesh";
    case RoutingAlgorithm::static_min_hop: return "static";
    case RoutingAlgorithm::hopant: return "hopant";
  }
  return "antmesh";
}

std::optional<RoutingAlgorithm> parse_routing(std::string_view s) {
  if (s == "antmesh") return RoutingAlgorithm::antmesh;
  if (s == "static") return RoutingAlgorithm::static_min_hop;
  if (s == "hopant") return RoutingAlgorithm::hopant;
  return std::nullopt;
}

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

double to_double(std::string_view v, std::string_view what) {
  double out = 0.0;
  const auto t = trim(v);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc{} || p != t.data() + t.size() || !std::isfinite(out)) {
    throw ConfigError(0, std::string(what) + ": expected a number, got '" + std::string(t) + "'");
  }
  return out;
}

std::int64_t to_int(std::string_view v, std::string_view what) {
  std::int64_t out = 0;
  const auto t = trim(v);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc{} || p != t.data() + t.size()) {
    throw ConfigError(0, std::string(what) + ": expected an integer, got '" + std::string(t) + "'");
  }
  return out;
}

bool to_bool(std::string_view v, std::string_view what) {
  const auto t = trim(v);
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  throw ConfigError(0, std::string(what) + ": expected true or false, got '" + std::string(t) + "'");
}

void check(bool ok, std::string_view what, std::string_view rule) {
  if (!ok) throw ConfigError(0, std::string(what) + " must be " + std::string(rule));
}

double ranged(std::string_view v, std::string_view what, double lo, double hi) {
  const double x = to_double(v, what);
  char rule[96];
  std::snprintf(rule, sizeof rule, "in [%g, %g]", lo, hi);
  check(x >= lo && x <= hi, what, rule);
  return x;
}

double positive(std::string_view v, std::string_view what) {
  const double x = to_double(v, what);
  check(x > 0.0, what, "positive");
  return x;
}

double nonnegative(std::string_view v, std::string_view what) {
  const double x = to_double(v, what);
  check(x >= 0.0, what, "nonnegative");
  return x;
}

std::int64_t int_at_least(std::string_view v, std::string_view what, std::int64_t lo) {
  const std::int64_t x = to_int(v, what);
  check(x >= lo, what, "at least " + std::to_string(lo));
  return x;
}

SimTime seconds(std::string_view v, std::string_view what) { return SimTime::from_seconds(nonnegative(v, what)); }

std::string num(double v) {
  // Shortest text that reads back to the same value.
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string secs(SimTime t) { return num(static_cast<double>(t.us()) / 1e6); }

NodeId node_id(std::string_view v, std::string_view what) {
  const auto x = to_int(v, what);
  check(x >= 0 && x < static_cast<std::int64_t>(kBroadcast), what, "a node id");
  return static_cast<NodeId>(x);
}

FlowSpec parse_flow(std::string_view text) {
  const auto w = words(text);
  if (w.empty()) throw ConfigError(0, "flow: missing id");
  FlowSpec f;
  f.id = std::string(w[0]);
  if (f.id.find('=') != std::string::npos) throw ConfigError(0, "flow: the first word must be the flow id");
  bool has_src = false;
  std::set<std::string_view> seen;
  for (std::size_t i = 1; i < w.size(); ++i) {
    const auto eq = w[i].find('=');
    if (eq == std::string_view::npos) throw ConfigError(0, "flow: expected key=value, got '" + std::string(w[i]) + "'");
    const auto k = w[i].substr(0, eq);
    const auto v = w[i].substr(eq + 1);
    if (!seen.insert(k).second) throw ConfigError(0, "flow: repeated key '" + std::string(k) + "'");
    if (k == "src") {
      f.src = node_id(v, "flow src");
      has_src = true;
    } else if (k == "dst") {
      if (v == "random_gateway") {
        f.dst.reset();
      } else {
        f.dst = node_id(v, "flow dst");
      }
    } else if (k == "rate") {
      f.rate_pps = positive(v, "flow rate");
    } else if (k == "start") {
      f.start = seconds(v, "flow start");
    } else if (k == "stop") {
      f.stop = seconds(v, "flow stop");
    } else if (k == "size") {
      f.pkt_bits = static_cast<std::uint32_t>(int_at_least(v, "flow size", 1) * 8);
    } else {
      throw ConfigError(0, "flow: unknown key '" + std::string(k) + "'");
    }
  }
  if (!has_src) throw ConfigError(0, "flow: src is required");
  return f;
}

LoadAction parse_event(std::string_view text) {
  const auto w = words(text);
  if (w.size() != 3) throw ConfigError(0, "event: expected '<time> start|stop <flow,...>'");
  LoadAction a;
  a.at = seconds(w[0], "event time");
  if (w[1] == "start") {
    a.add = true;
  } else if (w[1] == "stop") {
    a.add = false;
  } else {
    throw ConfigError(0, "event: action must be start or stop");
  }
  for (auto id : split(w[2], ',')) {
    if (id.empty()) throw ConfigError(0, "event: empty flow id");
    a.flows.emplace_back(id);
  }
  return a;
}

NodeConfig parse_node(std::string_view text, std::size_t expected_id, double bandwidth) {
  const auto w = words(text);
  if (w.size() < 4 || w.size() > 5) throw ConfigError(0, "node: expected '<id> <x> <y> <ch,...> [gateway]'");
  const auto id = to_int(w[0], "node id");
  if (id != static_cast<std::int64_t>(expected_id)) {
    throw ConfigError(0, "node ids must be dense and in order; expected " + std::to_string(expected_id));
  }
  NodeConfig n;
  n.pos = {nonnegative(w[1], "node x"), nonnegative(w[2], "node y")};
  for (auto ch : split(w[3], ',')) {
    n.radios.push_back(Radio{static_cast<int>(int_at_least(ch, "channel", 1)), bandwidth});
  }
  if (w.size() == 5) {
    if (w[4] != "gateway") throw ConfigError(0, "node: unexpected '" + std::string(w[4]) + "'");
    n.gateway = true;
  }
  return n;
}

const std::set<std::string_view> kSweepKeys{"p0",      "ant_rate", "flow_rate",       "speed",
                                            "routing", "window",   "mobile_fraction", "ant_sources",
                                            "hello_interval", "use_rts_cts_overhead", "p_fail"};

// Parser state that only matters while reading one document.
struct ParseState {
  bool nodes_from_text = false;
  bool flows_from_text = false;
  bool events_from_text = false;
};

void set_in_section(Scenario& s, std::string_view section, std::string_view key, std::string_view value,
                    ParseState* st) {
  if (section == "topology") {
    auto& t = s.topology;
    if (key == "preset") {
      auto p = topology_preset(value);
      if (!p) throw ConfigError(0, "unknown topology preset '" + std::string(value) + "'");
      if (st && st->nodes_from_text) throw ConfigError(0, "topology preset after node lines");
      t = *p;
    } else if (key == "area_width") {
      t.params.area_width = positive(value, key);
    } else if (key == "area_height") {
      t.params.area_height = positive(value, key);
    } else if (key == "tx_range") {
      t.params.tx_range = positive(value, key);
    } else if (key == "interference_multiplier") {
      t.params.interference_multiplier = positive(value, key);
    } else if (key == "bandwidth") {
      t.bandwidth_bps = positive(value, key);
      for (auto& n : t.nodes) {
        for (auto& r : n.radios) r.bandwidth_bps = t.bandwidth_bps;
      }
    } else if (key == "node") {
      if (st && !st->nodes_from_text) {
        t.nodes.clear();
        st->nodes_from_text = true;
      }
      t.nodes.push_back(parse_node(value, t.nodes.size(), t.bandwidth_bps));
    } else {
      throw ConfigError(0, "unknown key '" + std::string(key) + "' in [topology]");
    }
  } else if (section == "mac") {
    auto& m = s.mac;
    auto us = [&](std::int64_t& field) { field = int_at_least(value, key, 0); };
    if (key == "t_rts") {
      us(m.constants.t_rts);
    } else if (key == "t_cts") {
      us(m.constants.t_cts);
    } else if (key == "t_ack") {
      us(m.constants.t_ack);
    } else if (key == "t_sifs") {
      us(m.constants.t_sifs);
    } else if (key == "t_difs") {
      us(m.constants.t_difs);
    } else if (key == "p_fail") {
      m.p_fail = ranged(value, key, 0.0, 1.0);
    } else if (key == "retry_limit") {
      m.retry_limit = static_cast<int>(int_at_least(value, key, 1));
    } else if (key == "buffer") {
      m.buffer = static_cast<std::size_t>(int_at_least(value, key, 1));
    } else if (key == "use_rts_cts_overhead") {
      m.use_rts_cts_overhead = to_bool(value, key);
    } else if (key == "ttl") {
      m.ttl = static_cast<int>(int_at_least(value, key, 1));
    } else {
      throw ConfigError(0, "unknown key '" + std::string(key) + "' in [mac]");
    }
  } else if (section == "routing") {
    auto& p = s.routing.params;
    if (key == "algorithm") {
      auto a = parse_routing(value);
      if (!a) throw ConfigError(0, "algorithm must be antmesh, static or hopant");
      s.routing.algorithm = *a;
    } else if (key == "p0") {
      p.p0 = ranged(value, key, 0.0, 1.0);
    } else if (key == "ant_rate") {
      p.ant_rate_hz = nonnegative(value, key);
    } else if (key == "hello_interval") {
      p.hello_interval = SimTime::from_seconds(positive(value, key));
    } else if (key == "window") {
      p.window = static_cast<std::size_t>(int_at_least(value, key, 1));
    } else if (key == "delta_p_cap") {
      p.delta_p_cap = positive(value, key);
    } else if (key == "ant_sources") {
      auto a = parse_ant_sources(value);
      if (!a) throw ConfigError(0, "ant_sources must be flows or all");
      p.ant_sources = *a;
    } else {
      throw ConfigError(0, "unknown key '" + std::string(key) + "' in [routing]");
    }
  } else if (section == "traffic") {
    if (key == "flow") {
      if (st && !st->flows_from_text) {
        s.flows.clear();
        st->flows_from_text = true;
      }
      s.flows.push_back(parse_flow(value));
    } else {
      throw ConfigError(0, "unknown key '" + std::string(key) + "' in [traffic]");
    }
  } else if (section == "load") {
    if (key == "event") {
      if (st && !st->events_from_text) {
        s.load.clear();
        st->events_from_text = true;
      }
      s.load.push_back(parse_event(value));
    } else {
      throw ConfigError(0, "unknown key '" + std::string(key) + "' in [load]");
    }
  } else if (section == "mobility") {
    auto& m = s.mobility;
    if (key == "speed") {
      m.speed_mps = nonnegative(value, key);
    } else if (key == "mobile_fraction") {
      m.mobile_fraction = ranged(value, key, 0.0, 1.0);
    } else if (key == "pause") {
      m.pause_s = nonnegative(value, key);
    } else if (key == "tick") {
      m.tick = SimTime::from_seconds(positive(value, key));
      check(m.tick.us() > 0, key, "at least one microsecond");
    } else {
      throw ConfigError(0, "unknown key '" + std::string(key) + "' in [mobility]");
    }
  } else if (section == "run") {
    auto& r = s.run;
    if (key == "horizon") {
      r.horizon = SimTime::from_seconds(positive(value, key));
    } else if (key == "seeds") {
      r.seeds = parse_seed_list(value);
    } else if (key == "warmup") {
      r.warmup = seconds(value, key);
    } else if (key == "sample_interval") {
      r.sample_interval = SimTime::from_seconds(positive(value, key));
      check(r.sample_interval.us() > 0, key, "at least one microsecond");
    } else if (key == "learning_epsilon") {
      r.learning_epsilon = positive(value, key);
    } else if (key == "settle_windows") {
      r.settle_windows = static_cast<int>(int_at_least(value, key, 1));
    } else if (key == "dump_at") {
      r.dump_at.clear();
      for (auto t : split(value, ',')) {
        if (!t.empty()) r.dump_at.push_back(seconds(t, key));
      }
    } else {
      throw ConfigError(0, "unknown key '" + std::string(key) + "' in [run]");
    }
  } else if (section == "sweep") {
    if (!kSweepKeys.count(key)) throw ConfigError(0, "key '" + std::string(key) + "' cannot be swept");
    SweepAxis axis{std::string(key), {}};
    for (auto v : split(value, ',')) {
      if (v.empty()) throw ConfigError(0, "sweep " + std::string(key) + ": empty value");
      // Validate each value against a scratch copy so errors surface at parse time.
      Scenario scratch = s;
      apply_setting(scratch, key, v);
      axis.values.emplace_back(v);
    }
    auto it = std::find_if(s.sweep.begin(), s.sweep.end(), [&](const SweepAxis& a) { return a.key == key; });
    if (it != s.sweep.end()) {
      *it = std::move(axis);
    } else {
      s.sweep.push_back(std::move(axis));
    }
  } else {
    throw ConfigError(0, "unknown section [" + std::string(section) + "]");
  }
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  const auto t = trim(text);
  const auto dots = t.find("..");
  if (dots != std::string_view::npos) {
    const auto a = to_int(t.substr(0, dots), "seed range start");
    const auto b = to_int(t.substr(dots + 2), "seed range end");
    if (a < 0 || b < a) throw ConfigError(0, "seed range must be a..b with 0 <= a <= b");
    for (auto s = a; s <= b; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
  } else {
    for (auto v : split(t, ',')) {
      const auto s = to_int(v, "seed");
      if (s < 0) throw ConfigError(0, "seeds must be nonnegative");
      seeds.push_back(static_cast<std::uint64_t>(s));
    }
  }
  if (seeds.empty()) throw ConfigError(0, "seed list is empty");
  return seeds;
}

void apply_setting(Scenario& s, std::string_view key, std::string_view value) {
  value = trim(value);
  const auto dot = key.find('.');
  if (dot != std::string_view::npos) return set_in_section(s, key.substr(0, dot), key.substr(dot + 1), value, nullptr);
  if (key == "p0" || key == "ant_rate" || key == "window" || key == "ant_sources" || key == "hello_interval") {
    return set_in_section(s, "routing", key, value, nullptr);
  }
  if (key == "routing") return set_in_section(s, "routing", "algorithm", value, nullptr);
  if (key == "speed" || key == "mobile_fraction") return set_in_section(s, "mobility", key, value, nullptr);
  if (key == "use_rts_cts_overhead" || key == "p_fail") return set_in_section(s, "mac", key, value, nullptr);
  if (key == "flow_rate") {
    const double r = positive(value, key);
    for (auto& f : s.flows) f.rate_pps = r;
    return;
  }
  throw ConfigError(0, "unknown setting '" + std::string(key) + "'");
}

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  if (auto grid = topology_preset("grid15")) s.topology = *grid;
  s.name = "default";
  ParseState st;
  std::string section;
  bool any_section = false;
  bool any_global = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;
    try {
      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError(0, "malformed section header");
        section = std::string(trim(line.substr(1, line.size() - 2)));
        static const std::set<std::string_view> known{"topology", "mac",      "routing", "traffic",
                                                      "load",     "mobility", "run",     "sweep"};
        if (!known.count(section)) throw ConfigError(0, "unknown section [" + section + "]");
        any_section = true;
        // A [traffic] or [load] section replaces whatever a preset declared.
        if (section == "traffic" && !st.flows_from_text) {
          s.flows.clear();
          st.flows_from_text = true;
        } else if (section == "load" && !st.events_from_text) {
          s.load.clear();
          st.events_from_text = true;
        }
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ConfigError(0, "expected 'key = value'");
      const auto key = trim(line.substr(0, eq));
      const auto value = trim(line.substr(eq + 1));
      if (key.empty()) throw ConfigError(0, "missing key");
      if (!any_section) {
        if (key == "preset") {
          if (any_global) throw ConfigError(0, "preset must come first");
          auto p = scenario_preset(value);
          if (!p) throw ConfigError(0, "unknown preset '" + std::string(value) + "'");
          s = *p;
        } else if (key == "name") {
          if (value.empty()) throw ConfigError(0, "name must not be empty");
          s.name = std::string(value);
        } else {
          throw ConfigError(0, "unknown key '" + std::string(key) + "' outside any section");
        }
        any_global = true;
        continue;
      }
      set_in_section(s, section, key, value, &st);
    } catch (const ConfigError& e) {
      if (e.line() != 0) throw;
      throw ConfigError(line_no, e.what());
    }
  }
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "name = " << s.name << "\n\n[topology]\n";
  const auto& t = s.topology;
  out << "area_width = " << num(t.params.area_width) << "\n";
  out << "area_height = " << num(t.params.area_height) << "\n";
  out << "tx_range = " << num(t.params.tx_range) << "\n";
  out << "interference_multiplier = " << num(t.params.interference_multiplier) << "\n";
  out << "bandwidth = " << num(t.bandwidth_bps) << "\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    out << "node = " << i << ' ' << num(n.pos.x) << ' ' << num(n.pos.y) << ' ';
    for (std::size_t r = 0; r < n.radios.size(); ++r) out << (r ? "," : "") << n.radios[r].channel;
    if (n.gateway) out << " gateway";
    out << "\n";
  }
  const auto& m = s.mac;
  out << "\n[mac]\n";
  out << "t_rts = " << m.constants.t_rts << "\nt_cts = " << m.constants.t_cts << "\nt_ack = " << m.constants.t_ack
      << "\nt_sifs = " << m.constants.t_sifs << "\nt_difs = " << m.constants.t_difs << "\n";
  out << "p_fail = " << num(m.p_fail) << "\nretry_limit = " << m.retry_limit << "\nbuffer = " << m.buffer
      << "\nuse_rts_cts_overhead = " << (m.use_rts_cts_overhead ? "true" : "false") << "\nttl = " << m.ttl << "\n";
  const auto& p = s.routing.params;
  out << "\n[routing]\nalgorithm = " << to_string(s.routing.algorithm) << "\np0 = " << num(p.p0)
      << "\nant_rate = " << num(p.ant_rate_hz) << "\nhello_interval = " << secs(p.hello_interval)
      << "\nwindow = " << p.window << "\ndelta_p_cap = " << num(p.delta_p_cap)
      << "\nant_sources = " << to_string(p.ant_sources) << "\n";
  out << "\n[traffic]\n";
  for (const auto& f : s.flows) {
    out << "flow = " << f.id << " src=" << f.src << " dst=" << (f.dst ? std::to_string(*f.dst) : "random_gateway")
        << " rate=" << num(f.rate_pps) << " start=" << secs(f.start);
    if (f.stop) out << " stop=" << secs(*f.stop);
    out << " size=" << f.pkt_bits / 8 << "\n";
  }
  out << "\n[load]\n";
  for (const auto& a : s.load) {
    out << "event = " << secs(a.at) << (a.add ? " start " : " stop ");
    for (std::size_t i = 0; i < a.flows.size(); ++i) out << (i ? "," : "") << a.flows[i];
    out << "\n";
  }
  const auto& mo = s.mobility;
  out << "\n[mobility]\nspeed = " << num(mo.speed_mps) << "\nmobile_fraction = " << num(mo.mobile_fraction)
      << "\npause = " << num(mo.pause_s) << "\ntick = " << secs(mo.tick) << "\n";
  const auto& r = s.run;
  out << "\n[run]\nhorizon = " << secs(r.horizon) << "\nseeds = ";
  for (std::size_t i = 0; i < r.seeds.size(); ++i) out << (i ? "," : "") << r.seeds[i];
  out << "\nwarmup = " << secs(r.warmup) << "\nsample_interval = " << secs(r.sample_interval)
      << "\nlearning_epsilon = " << num(r.learning_epsilon) << "\nsettle_windows = " << r.settle_windows << "\n";
  if (!r.dump_at.empty()) {
    out << "dump_at = ";
    for (std::size_t i = 0; i < r.dump_at.size(); ++i) out << (i ? "," : "") << secs(r.dump_at[i]);
    out << "\n";
  }
  if (!s.sweep.empty()) {
    out << "\n[sweep]\n";
    for (const auto& a : s.sweep) {
      out << a.key << " = ";
      for (std::size_t i = 0; i < a.values.size(); ++i) out << (i ? "," : "") << a.values[i];
      out << "\n";
    }
  }
  return out.str();
}

void validate(const Scenario& s) {
  if (s.topology.nodes.empty()) throw ConfigError(0, "topology has no nodes");
  try {
    Topology topo(s.topology.params, s.topology.nodes);
    const auto n = topo.size();
    for (const auto& f : s.flows) {
      if (f.src >= n) throw ConfigError(0, "flow '" + f.id + "': src " + std::to_string(f.src) + " does not exist");
      if (f.dst && *f.dst >= n) {
        throw ConfigError(0, "flow '" + f.id + "': dst " + std::to_string(*f.dst) + " does not exist");
      }
    }
    RngStream scratch(0, kTrafficStream);
    apply_load_script(s.flows, s.load, topo.gateways(), s.run.horizon, scratch);
  } catch (const TopologyError& e) {
    throw ConfigError(0, std::string("topology: ") + e.what());
  } catch (const TrafficError& e) {
    throw ConfigError(0, std::string("traffic: ") + e.what());
  }
  if (!(s.run.horizon > s.run.warmup)) throw ConfigError(0, "horizon must be greater than warmup");
  if (s.run.seeds.empty()) throw ConfigError(0, "seed list is empty");
  for (const auto& a : s.sweep) {
    Scenario scratch = s;
    for (const auto& v : a.values) apply_setting(scratch, a.key, v);
  }
}

std::string flow_summary(const Scenario& s) {
  double rate = 0.0;
  for (const auto& f : s.flows) rate = std::max(rate, f.rate_pps);
  return std::to_string(s.flows.size()) + "@" + num(rate);
}

}  // namespace antmesh
