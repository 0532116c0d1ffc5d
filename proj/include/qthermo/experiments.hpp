// experiments.hpp
// Named, seeded experiments and their reports.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qthermo/json_io.hpp"

namespace qthermo {

enum class Verdict { Pass, Fail, ReportOnly };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

struct ExperimentConfig {
  std::string experiment;
  std::size_t dim = 0;  // 0: the experiment's default dimension sweep
  std::uint64_t seed = 42;
  std::size_t restarts = 50;
  std::size_t samples = 100;
  std::size_t grid = 0;  // 0: experiment default (energy-preserving scan only)
  // Threshold overrides keyed by the metric they bound.
  std::map<std::string, double> tolerances;
  std::optional<std::vector<double>> hamiltonian;  // diagonal energies
  std::string output_path;

  bool operator==(const ExperimentConfig&) const = default;
};

// Throws UnknownExperiment / InvalidConfig.
ExperimentConfig config_from_json(const ordered_json& j);
ordered_json config_to_json(const ExperimentConfig& c);

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<std::pair<std::string, double>> metrics;
  Verdict verdict = Verdict::Fail;
  std::vector<std::string> diagnostics;
  double wall_time = 0.0;
  std::string artifact_version;

  // NaN when absent.
  double metric(std::string_view name) const;
  bool operator==(const ExperimentReport&) const = default;
};

struct ExperimentInfo {
  std::string name;
  std::string description;
  // Default thresholds, keyed by metric name; overridable via
  // ExperimentConfig::tolerances.
  std::vector<std::pair<std::string, double>> thresholds;
};

std::span<const ExperimentInfo> registered_experiments();
const ExperimentInfo& find_experiment(std::string_view name);

struct RunOptions {
  // Worker threads for sample loops and search restarts. Results do not
  // depend on this value.
  std::size_t threads = 1;
};

// Validates the config, then executes it. Numerical failures inside the
// experiment turn into a FAIL verdict with diagnostics.
ExperimentReport run(const ExperimentConfig& config, const RunOptions& options = {});

enum class ReportFormat { Json, Csv };

// Throws EmptyInput on an empty list.
std::string report(std::span<const ExperimentReport> reports, ReportFormat format);
std::vector<ExperimentReport> parse_json_report(std::string_view document);

ordered_json report_to_json(const ExperimentReport& r);
ExperimentReport report_from_json(const ordered_json& j);

// Exit status convention: 0 iff no report has verdict FAIL.
int exit_code(std::span<const ExperimentReport> reports);

}  // namespace qthermo
