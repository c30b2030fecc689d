#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "antmesh/mac.hpp"
#include "antmesh/sim_time.hpp"

namespace antmesh {

inline constexpr std::size_t kLossCauses = 5;

std::string_view to_string(DropCause cause);

struct DelaySample {
  SimTime delivered_at{};
  std::int64_t delay_us = 0;
  bool operator==(const DelaySample&) const = default;
};

/// Settling criterion for learning-time measurement.
struct LearningTimeProbe {
  SimTime change_point{};
  SimTime interval_end{};  // next change point or the horizon
  SimTime window = SimTime::from_us(500'000);
  double epsilon = 0.10;
  int settle_windows = 3;
  bool operator==(const LearningTimeProbe&) const = default;
};

/// Raw counters of one run. Everything reported is derived from this.
///
/// Data counters only include packets born inside the measurement interval
/// [measure_start, measure_end); control transmissions are counted when they
/// start inside it.
struct MetricsLedger {
  SimTime measure_start{};
  SimTime measure_end{};
  std::uint64_t data_sent = 0;
  std::uint64_t data_delivered = 0;
  std::uint64_t delivered_bits = 0;
  std::uint64_t control_tx_hops = 0;
  std::uint64_t fsa_tx = 0;
  std::uint64_t bsa_tx = 0;
  std::uint64_t hsa_tx = 0;
  std::uint64_t ants_launched = 0;
  std::uint64_t ants_completed = 0;
  std::uint64_t ants_died = 0;
  std::uint64_t stale_estimates = 0;
  std::array<std::uint64_t, kLossCauses> loss{};
  std::vector<std::uint64_t> flow_delivered_bits;
  /// Every delivered packet, including those born before measure_start;
  /// used for learning-time series.
  std::vector<DelaySample> delay_samples;
  std::vector<DelaySample> measured_delays;
  std::vector<LearningTimeProbe> probes;

  void record_loss(DropCause cause) { ++loss[static_cast<std::size_t>(cause)]; }
  std::uint64_t loss_of(DropCause cause) const { return loss[static_cast<std::size_t>(cause)]; }
  std::uint64_t total_loss() const;
  bool operator==(const MetricsLedger&) const = default;
};

double measurement_seconds(const MetricsLedger& l);
/// Delivered payload bits per second over the measurement interval.
double throughput_bps(const MetricsLedger& l);
double flow_throughput_bps(const MetricsLedger& l, std::size_t flow);
/// Control transmissions per delivered data packet.
double nrl(const MetricsLedger& l);
double delivery_fraction(const MetricsLedger& l);
double mean_delay_us(const MetricsLedger& l);
double loss_ratio(const MetricsLedger& l);
double loss_ratio(const MetricsLedger& l, DropCause cause);

/// Mean delay per window [start + i*w, start + (i+1)*w) up to `end`;
/// empty windows are nullopt.
std::vector<std::optional<double>> windowed_delay(std::span<const DelaySample> samples, SimTime start, SimTime end,
                                                  SimTime window);

/// First offset (a multiple of the window) from which `settle_windows`
/// consecutive window means stay within epsilon of the steady-state mean,
/// taken as the mean of the final quarter of windows. nullopt when the
/// series never settles.
std::optional<std::int64_t> learning_time(const LearningTimeProbe& probe,
                                          std::span<const std::optional<double>> windows);
std::optional<std::int64_t> learning_time(const LearningTimeProbe& probe, std::span<const DelaySample> samples);

/// Identification columns of one CSV row.
struct RunInfo {
  std::string scenario;
  std::string routing;
  std::uint64_t seed = 0;
  double p0 = 0.0;
  double ant_rate = 0.0;
  std::string flows;
  double node_speed = 0.0;
  double mobile_fraction = 0.0;
};

std::string csv_header();
std::string csv_row(const RunInfo& info, const MetricsLedger& ledger);

std::string ledger_to_json(const MetricsLedger& l);
MetricsLedger ledger_from_json(const std::string& text);

}  // namespace antmesh
