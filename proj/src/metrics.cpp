#include "antmesh/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "json.hpp"

namespace antmesh {

std::string_view to_string(DropCause cause) {
  switch (cause) {
    case DropCause::queue_overflow: return "queue-overflow";
    case DropCause::mac_loss: return "mac-loss";
    case DropCause::ttl_expired: return "ttl-expired";
    case DropCause::no_route: return "no-route";
    case DropCause::horizon_cut: return "horizon-cut";
  }
  return "unknown";
}

std::uint64_t MetricsLedger::total_loss() const { return std::accumulate(loss.begin(), loss.end(), std::uint64_t{0}); }

double measurement_seconds(const MetricsLedger& l) { return (l.measure_end - l.measure_start).seconds(); }

double throughput_bps(const MetricsLedger& l) {
  const double s = measurement_seconds(l);
  return s > 0.0 ? static_cast<double>(l.delivered_bits) / s : 0.0;
}

double flow_throughput_bps(const MetricsLedger& l, std::size_t flow) {
  const double s = measurement_seconds(l);
  if (s <= 0.0 || flow >= l.flow_delivered_bits.size()) return 0.0;
  return static_cast<double>(l.flow_delivered_bits[flow]) / s;
}

double nrl(const MetricsLedger& l) {
  return static_cast<double>(l.control_tx_hops) / static_cast<double>(std::max<std::uint64_t>(1, l.data_delivered));
}

double delivery_fraction(const MetricsLedger& l) {
  if (l.data_sent == 0) return 0.0;
  return static_cast<double>(l.data_delivered) / static_cast<double>(l.data_sent);
}

double mean_delay_us(const MetricsLedger& l) {
  if (l.measured_delays.empty()) return 0.0;
  // Integer sum keeps the mean exact and order independent.
  std::int64_t sum = 0;
  for (const auto& s : l.measured_delays) sum += s.delay_us;
  return static_cast<double>(sum) / static_cast<double>(l.measured_delays.size());
}

double loss_ratio(const MetricsLedger& l) {
  if (l.data_sent == 0) return 0.0;
  return 1.0 - delivery_fraction(l);
}

double loss_ratio(const MetricsLedger& l, DropCause cause) {
  if (l.data_sent == 0) return 0.0;
  return static_cast<double>(l.loss_of(cause)) / static_cast<double>(l.data_sent);
}

std::vector<std::optional<double>> windowed_delay(std::span<const DelaySample> samples, SimTime start, SimTime end,
                                                  SimTime window) {
  std::vector<std::optional<double>> out;
  if (window.us() <= 0 || end <= start) return out;
  const auto n = static_cast<std::size_t>((end - start).us() / window.us());
  std::vector<std::int64_t> sum(n, 0);
  std::vector<std::int64_t> count(n, 0);
  for (const auto& s : samples) {
    if (s.delivered_at < start || s.delivered_at >= end) continue;
    const auto i = static_cast<std::size_t>((s.delivered_at - start).us() / window.us());
    if (i >= n) continue;
    sum[i] += s.delay_us;
    ++count[i];
  }
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (count[i] == 0) {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(static_cast<double>(sum[i]) / static_cast<double>(count[i]));
    }
  }
  return out;
}

std::optional<std::int64_t> learning_time(const LearningTimeProbe& probe,
                                          std::span<const std::optional<double>> windows) {
  if (windows.empty() || probe.settle_windows <= 0) return std::nullopt;
  const std::size_t n = windows.size();
  const std::size_t tail = std::max<std::size_t>(1, (n + 3) / 4);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = n - tail; i < n; ++i) {
    if (windows[i]) {
      sum += *windows[i];
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  const double steady = sum / static_cast<double>(count);
  auto in_band = [&](std::size_t i) {
    return windows[i] && std::abs(*windows[i] - steady) <= probe.epsilon * steady;
  };
  const auto need = static_cast<std::size_t>(probe.settle_windows);
  std::size_t run = 0;
  for (std::size_t i = 0; i < n; ++i) {
    run = in_band(i) ? run + 1 : 0;
    if (run == need) return static_cast<std::int64_t>(i + 1 - need) * probe.window.us();
  }
  return std::nullopt;
}

std::optional<std::int64_t> learning_time(const LearningTimeProbe& probe, std::span<const DelaySample> samples) {
  const auto windows = windowed_delay(samples, probe.change_point, probe.interval_end, probe.window);
  return learning_time(probe, windows);
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string csv_header() {
  return "scenario,routing,seed,p0,ant_rate,flows,node_speed,mobile_fraction,throughput_bps,mean_delay_us,pdf,nrl,"
         "loss_queue,loss_mac,loss_ttl,loss_noroute,learning_time_us";
}

std::string csv_row(const RunInfo& info, const MetricsLedger& l) {
  std::string learning;
  // The first change point after warm-up; earlier ones overlap start-up.
  const auto probe = std::find_if(l.probes.begin(), l.probes.end(),
                                  [&](const LearningTimeProbe& p) { return p.change_point >= l.measure_start; });
  if (probe != l.probes.end()) {
    const auto t = learning_time(*probe, l.delay_samples);
    learning = t ? std::to_string(*t) : "-1";
  }
  std::string row;
  row += csv_field(info.scenario) + ',';
  row += csv_field(info.routing) + ',';
  row += std::to_string(info.seed) + ',';
  row += fmt("%g", info.p0) + ',';
  row += fmt("%g", info.ant_rate) + ',';
  row += csv_field(info.flows) + ',';
  row += fmt("%g", info.node_speed) + ',';
  row += fmt("%g", info.mobile_fraction) + ',';
  row += fmt("%.3f", throughput_bps(l)) + ',';
  row += fmt("%.3f", mean_delay_us(l)) + ',';
  row += fmt("%.6f", delivery_fraction(l)) + ',';
  row += fmt("%.6f", nrl(l)) + ',';
  row += std::to_string(l.loss_of(DropCause::queue_overflow)) + ',';
  row += std::to_string(l.loss_of(DropCause::mac_loss)) + ',';
  row += std::to_string(l.loss_of(DropCause::ttl_expired)) + ',';
  row += std::to_string(l.loss_of(DropCause::no_route)) + ',';
  row += learning;
  return row;
}

namespace {

nlohmann::json samples_json(const std::vector<DelaySample>& v) {
  auto arr = nlohmann::json::array();
  for (const auto& s : v) arr.push_back({s.delivered_at.us(), s.delay_us});
  return arr;
}

std::vector<DelaySample> samples_from(const nlohmann::json& arr) {
  std::vector<DelaySample> out;
  for (const auto& e : arr) out.push_back({SimTime::from_us(e.at(0).get<std::int64_t>()), e.at(1).get<std::int64_t>()});
  return out;
}

}  // namespace

std::string ledger_to_json(const MetricsLedger& l) {
  nlohmann::json j;
  j["measure_start_us"] = l.measure_start.us();
  j["measure_end_us"] = l.measure_end.us();
  j["data_sent"] = l.data_sent;
  j["data_delivered"] = l.data_delivered;
  j["delivered_bits"] = l.delivered_bits;
  j["control_tx_hops"] = l.control_tx_hops;
  j["fsa_tx"] = l.fsa_tx;
  j["bsa_tx"] = l.bsa_tx;
  j["hsa_tx"] = l.hsa_tx;
  j["ants_launched"] = l.ants_launched;
  j["ants_completed"] = l.ants_completed;
  j["ants_died"] = l.ants_died;
  j["stale_estimates"] = l.stale_estimates;
  j["loss"] = l.loss;
  j["flow_delivered_bits"] = l.flow_delivered_bits;
  j["delay_samples"] = samples_json(l.delay_samples);
  j["measured_delays"] = samples_json(l.measured_delays);
  auto probes = nlohmann::json::array();
  for (const auto& p : l.probes) {
    probes.push_back({{"change_point_us", p.change_point.us()},
                      {"interval_end_us", p.interval_end.us()},
                      {"window_us", p.window.us()},
                      {"epsilon", p.epsilon},
                      {"settle_windows", p.settle_windows}});
  }
  j["probes"] = probes;
  return j.dump();
}

MetricsLedger ledger_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  MetricsLedger l;
  l.measure_start = SimTime::from_us(j.at("measure_start_us").get<std::int64_t>());
  l.measure_end = SimTime::from_us(j.at("measure_end_us").get<std::int64_t>());
  l.data_sent = j.at("data_sent").get<std::uint64_t>();
  l.data_delivered = j.at("data_delivered").get<std::uint64_t>();
  l.delivered_bits = j.at("delivered_bits").get<std::uint64_t>();
  l.control_tx_hops = j.at("control_tx_hops").get<std::uint64_t>();
  l.fsa_tx = j.at("fsa_tx").get<std::uint64_t>();
  l.bsa_tx = j.at("bsa_tx").get<std::uint64_t>();
  l.hsa_tx = j.at("hsa_tx").get<std::uint64_t>();
  l.ants_launched = j.at("ants_launched").get<std::uint64_t>();
  l.ants_completed = j.at("ants_completed").get<std::uint64_t>();
  l.ants_died = j.at("ants_died").get<std::uint64_t>();
  l.stale_estimates = j.at("stale_estimates").get<std::uint64_t>();
  l.loss = j.at("loss").get<std::array<std::uint64_t, kLossCauses>>();
  l.flow_delivered_bits = j.at("flow_delivered_bits").get<std::vector<std::uint64_t>>();
  l.delay_samples = samples_from(j.at("delay_samples"));
  l.measured_delays = samples_from(j.at("measured_delays"));
  for (const auto& p : j.at("probes")) {
    LearningTimeProbe probe;
    probe.change_point = SimTime::from_us(p.at("change_point_us").get<std::int64_t>());
    probe.interval_end = SimTime::from_us(p.at("interval_end_us").get<std::int64_t>());
    probe.window = SimTime::from_us(p.at("window_us").get<std::int64_t>());
    probe.epsilon = p.at("epsilon").get<double>();
    probe.settle_windows = p.at("settle_windows").get<int>();
    l.probes.push_back(probe);
  }
  return l;
}

}  // namespace antmesh
