#include "antmesh/experiment.hpp"

#include <algorithm>
#include <sstream>

#ifdef ANTMESH_HAVE_OPENMP
#include <omp.h>
#endif

#include "antmesh/network.hpp"

namespace antmesh {

std::vector<SweepPoint> expand_sweep(const Scenario& s, const std::vector<SweepAxis>& extra) {
  std::vector<SweepAxis> axes = s.sweep;
  for (const SweepAxis& e : extra) {
    auto it = std::find_if(axes.begin(), axes.end(), [&](const SweepAxis& a) { return a.key == e.key; });
    if (it != axes.end()) {
      *it = e;
    } else {
      axes.push_back(e);
    }
  }
  Scenario base = s;
  base.sweep.clear();
  std::vector<SweepPoint> points{{{}, base}};
  for (const SweepAxis& axis : axes) {
    std::vector<SweepPoint> next;
    for (const SweepPoint& p : points) {
      for (const std::string& v : axis.values) {
        SweepPoint q = p;
        apply_setting(q.scenario, axis.key, v);
        q.settings.emplace_back(axis.key, v);
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  return points;
}

RunInfo run_info(const Scenario& s, std::uint64_t seed) {
  RunInfo info;
  info.scenario = s.name;
  info.routing = std::string(to_string(s.routing.algorithm));
  info.seed = seed;
  info.p0 = s.routing.params.p0;
  info.ant_rate = s.routing.params.ant_rate_hz;
  info.flows = flow_summary(s);
  info.node_speed = s.mobility.speed_mps;
  info.mobile_fraction = s.mobility.mobile_fraction;
  return info;
}

RunOutput run_single(const Scenario& s, std::uint64_t seed, RunRequest request) {
  RunOutput out;
  out.info = run_info(s, seed);
  std::ostringstream trace;
  std::ostringstream tables;
  try {
    RunOptions opts;
    if (request.trace) opts.trace = &trace;
    if (request.dump_tables) opts.table_dump = &tables;
    Network net(s, seed, opts);
    out.ledger = net.run();
  } catch (const std::exception& e) {
    out.error = "scenario '" + s.name + "' seed " + std::to_string(seed) + ": " + e.what();
  }
  out.trace = trace.str();
  out.tables = tables.str();
  return out;
}

std::vector<Job> plan_jobs(std::size_t points, const std::vector<std::uint64_t>& seeds) {
  std::vector<Job> jobs;
  jobs.reserve(points * seeds.size());
  for (std::uint64_t seed : seeds) {
    for (std::size_t p = 0; p < points; ++p) jobs.push_back({p, seed});
  }
  return jobs;
}

std::vector<RunOutput> run_jobs_serial(const std::vector<SweepPoint>& points, const std::vector<Job>& jobs,
                                       RunRequest request) {
  std::vector<RunOutput> out;
  out.reserve(jobs.size());
  for (const Job& j : jobs) out.push_back(run_single(points.at(j.point).scenario, j.seed, request));
  return out;
}

std::vector<RunOutput> run_jobs_parallel(const std::vector<SweepPoint>& points, const std::vector<Job>& jobs,
                                         RunRequest request, int threads) {
  std::vector<RunOutput> out(jobs.size());
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
#ifdef ANTMESH_HAVE_OPENMP
  if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#else
  (void)threads;
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    // Each run owns its whole simulation; results land in their own slot.
    const Job& j = jobs[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = run_single(points.at(j.point).scenario, j.seed, request);
  }
  return out;
}

std::string to_csv(const std::vector<RunOutput>& runs) {
  std::string csv = csv_header() + "\n";
  for (const RunOutput& r : runs) {
    if (!r.ok()) continue;
    csv += csv_row(r.info, r.ledger) + "\n";
  }
  return csv;
}

}  // namespace antmesh
