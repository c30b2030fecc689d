#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "antmesh/metrics.hpp"
#include "antmesh/scenario.hpp"

namespace antmesh {

/// One point of a sweep's cartesian product.
struct SweepPoint {
  std::vector<std::pair<std::string, std::string>> settings;
  Scenario scenario;
};

/// Cartesian product over the scenario's sweep axes, first axis varying
/// slowest. A scenario without axes yields one point. Extra axes (for
/// example from the command line) replace same-named scenario axes.
std::vector<SweepPoint> expand_sweep(const Scenario& s, const std::vector<SweepAxis>& extra = {});

struct RunOutput {
  RunInfo info;
  MetricsLedger ledger;
  std::string trace;
  std::string tables;
  std::string error;  // non-empty when the run aborted
  bool ok() const { return error.empty(); }
};

struct RunRequest {
  bool trace = false;
  bool dump_tables = false;
};

RunInfo run_info(const Scenario& s, std::uint64_t seed);
RunOutput run_single(const Scenario& s, std::uint64_t seed, RunRequest request = {});

struct Job {
  std::size_t point = 0;
  std::uint64_t seed = 0;
};

/// Jobs in output order: seed-major, then sweep point.
std::vector<Job> plan_jobs(std::size_t points, const std::vector<std::uint64_t>& seeds);

/// Reference implementation: one run after another.
std::vector<RunOutput> run_jobs_serial(const std::vector<SweepPoint>& points, const std::vector<Job>& jobs,
                                       RunRequest request = {});
/// Same results as run_jobs_serial, runs spread over OpenMP threads.
std::vector<RunOutput> run_jobs_parallel(const std::vector<SweepPoint>& points, const std::vector<Job>& jobs,
                                         RunRequest request = {}, int threads = 0);

/// Header plus one row per run, in the given order.
std::string to_csv(const std::vector<RunOutput>& runs);

}  // namespace antmesh
