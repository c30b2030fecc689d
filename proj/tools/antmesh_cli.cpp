// Command-line front end: run scenarios and presets, validate files, list
// presets.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "antmesh/experiment.hpp"
#include "antmesh/presets.hpp"
#include "antmesh/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeAbort = 2;

// A scenario argument is either a file or a preset name.
antmesh::Scenario load(const std::string& arg) {
  std::ifstream in(arg);
  if (in) {
    std::stringstream text;
    text << in.rdbuf();
    return antmesh::parse_scenario(text.str());
  }
  if (auto p = antmesh::scenario_preset(arg)) return *p;
  throw antmesh::ConfigError(0, "'" + arg + "' is neither a readable file nor a preset");
}

// "p0=0.2,0.5,0.8" -> axis
antmesh::SweepAxis parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw antmesh::ConfigError(0, "--sweep expects key=v1,v2,...");
  antmesh::SweepAxis axis{text.substr(0, eq), {}};
  std::stringstream values(text.substr(eq + 1));
  std::string v;
  while (std::getline(values, v, ',')) {
    if (v.empty()) throw antmesh::ConfigError(0, "--sweep " + axis.key + ": empty value");
    axis.values.push_back(v);
  }
  if (axis.values.empty()) throw antmesh::ConfigError(0, "--sweep " + axis.key + ": no values");
  return axis;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ant-colony routing simulator for multi-radio mesh networks"};
  app.require_subcommand(1);

  std::string scenario_arg;
  std::string seeds_arg;
  std::vector<std::string> sweeps;
  bool trace = false;
  bool dump = false;
  bool serial = false;
  int threads = 0;
  std::string out_path;
  std::string trace_path;

  auto* run = app.add_subcommand("run", "Run a scenario file or preset");
  run->add_option("scenario", scenario_arg, "Scenario file or preset name")->required();
  run->add_option("--seeds", seeds_arg, "Seed range a..b or list a,b,c");
  run->add_option("--sweep", sweeps, "Sweep axis key=v1,v2,... (repeatable)");
  run->add_flag("--trace", trace, "Write the event trace");
  run->add_option("--trace-out", trace_path, "Trace file (default: stderr)");
  run->add_flag("--dump-tables", dump, "Write routing tables at the scenario's dump_at times");
  run->add_option("--out", out_path, "CSV output file (default: stdout)");
  run->add_flag("--serial", serial, "Run jobs one after another");
  run->add_option("--threads", threads, "Worker threads (default: all)");

  std::string validate_arg;
  auto* val = app.add_subcommand("validate", "Check a scenario and print its explicit form");
  val->add_option("scenario", validate_arg, "Scenario file or preset name")->required();

  auto* presets = app.add_subcommand("presets", "List built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  if (presets->parsed()) {
    for (const auto& p : antmesh::preset_list()) std::cout << p.name << "\t" << p.description << "\n";
    return kOk;
  }

  try {
    if (val->parsed()) {
      const auto s = load(validate_arg);
      antmesh::validate(s);
      std::cout << antmesh::serialize_scenario(s);
      return kOk;
    }

    auto s = load(scenario_arg);
    if (!seeds_arg.empty()) s.run.seeds = antmesh::parse_seed_list(seeds_arg);
    std::vector<antmesh::SweepAxis> extra;
    for (const auto& sw : sweeps) extra.push_back(parse_sweep(sw));
    antmesh::validate(s);
    const auto points = antmesh::expand_sweep(s, extra);
    for (const auto& p : points) antmesh::validate(p.scenario);
    const auto jobs = antmesh::plan_jobs(points.size(), s.run.seeds);
    const antmesh::RunRequest req{trace, dump};
    const auto results = serial ? antmesh::run_jobs_serial(points, jobs, req)
                                : antmesh::run_jobs_parallel(points, jobs, req, threads);

    const std::string csv = antmesh::to_csv(results);
    if (out_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(out_path);
      if (!out) throw antmesh::ConfigError(0, "cannot write " + out_path);
      out << csv;
    }
    if (trace || dump) {
      std::ofstream file;
      if (!trace_path.empty()) file.open(trace_path);
      std::ostream& sink = trace_path.empty() ? std::cerr : file;
      for (const auto& r : results) {
        sink << "# " << r.info.scenario << " seed=" << r.info.seed << "\n" << r.trace << r.tables;
      }
    }
    int status = kOk;
    for (const auto& r : results) {
      if (!r.ok()) {
        std::cerr << "error: " << r.error << "\n";
        status = kRuntimeAbort;
      }
    }
    return status;
  } catch (const antmesh::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeAbort;
  }
}
