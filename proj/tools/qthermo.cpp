// qthermo: experiment runner.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/experiments.hpp"

namespace {

std::vector<qthermo::ExperimentConfig> load_configs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qthermo::InvalidConfig("cannot open config file " + path);
  qthermo::ordered_json doc;
  try {
    doc = qthermo::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw qthermo::InvalidConfig(path + ": " + e.what());
  }
  std::vector<qthermo::ExperimentConfig> out;
  if (doc.is_array()) {
    for (const auto& item : doc) out.push_back(qthermo::config_from_json(item));
  } else {
    out.push_back(qthermo::config_from_json(doc));
  }
  if (out.empty()) throw qthermo::InvalidConfig(path + " holds no configs");
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qthermo::InvalidConfig("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum work cloning and masking experiments"};
  app.set_version_flag("--version", std::string(QTHERMO_VERSION));
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List registered experiments and their thresholds");

  auto* run = app.add_subcommand("run", "Run experiments and write a report");
  std::string config_path;
  std::string experiment;
  qthermo::ExperimentConfig cli_cfg;
  std::string out_path;
  std::string format = "json";
  std::size_t threads = 1;
  auto* config_opt = run->add_option("--config", config_path, "Config file (object or array of objects)");
  auto* exp_opt = run->add_option("--experiment", experiment, "Experiment name");
  config_opt->excludes(exp_opt);
  auto* dim_opt = run->add_option("--dim", cli_cfg.dim, "System dimension")->excludes(config_opt);
  auto* seed_opt = run->add_option("--seed", cli_cfg.seed, "Seed")->excludes(config_opt);
  auto* restarts_opt = run->add_option("--restarts", cli_cfg.restarts, "Search restarts")->excludes(config_opt);
  auto* samples_opt = run->add_option("--samples", cli_cfg.samples, "Samples")->excludes(config_opt);
  auto* grid_opt = run->add_option("--grid", cli_cfg.grid, "Scan grid resolution")->excludes(config_opt);
  run->add_option("--out", out_path, "Report path; overrides output_path");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");
  (void)dim_opt, (void)seed_opt, (void)restarts_opt, (void)samples_opt, (void)grid_opt;

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& info : qthermo::registered_experiments()) {
        std::cout << info.name << "\n  " << info.description << "\n";
        for (const auto& [metric, value] : info.thresholds)
          std::cout << "    " << metric << " = " << qthermo::format_double(value) << "\n";
      }
      return 0;
    }

    std::vector<qthermo::ExperimentConfig> configs;
    if (!config_path.empty()) {
      configs = load_configs(config_path);
    } else if (!experiment.empty()) {
      qthermo::ordered_json j = qthermo::config_to_json(cli_cfg);
      j["experiment"] = experiment;
      j.erase("hamiltonian");
      configs.push_back(qthermo::config_from_json(j));
    } else {
      std::cerr << "run: one of --config or --experiment is required\n";
      return 2;
    }

    qthermo::RunOptions options;
    options.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;

    std::vector<qthermo::ExperimentReport> reports;
    for (const auto& c : configs) {
      reports.push_back(qthermo::run(c, options));
      const auto& r = reports.back();
      std::fprintf(stderr, "%-28s %-11s %.2fs\n", c.experiment.c_str(),
                   std::string(qthermo::to_string(r.verdict)).c_str(), r.wall_time);
    }

    const auto fmt = format == "csv" ? qthermo::ReportFormat::Csv : qthermo::ReportFormat::Json;
    // --out collects everything; otherwise reports go to their config's
    // output_path, with an empty path meaning stdout.
    std::vector<std::string> dests;
    for (const auto& r : reports) {
      const std::string d = out_path.empty() ? r.config.output_path : out_path;
      if (std::find(dests.begin(), dests.end(), d) == dests.end()) dests.push_back(d);
    }
    for (const auto& d : dests) {
      std::vector<qthermo::ExperimentReport> group;
      for (const auto& r : reports)
        if ((out_path.empty() ? r.config.output_path : out_path) == d) group.push_back(r);
      write_output(d, qthermo::report(group, fmt));
    }
    return qthermo::exit_code(reports);
  } catch (const qthermo::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
