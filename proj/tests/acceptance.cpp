// Acceptance suite: one pass/fail line per criterion.
// Usage: acceptance [criterion ...]   (no arguments: all criteria)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "qthermo/experiments.hpp"

using namespace qthermo;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string lim(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) out_.pass = false;
    if (!out_.detail.empty()) out_.detail += "; ";
    out_.detail += (ok ? "" : "NOT ") + what;
  }
  void below(const ExperimentReport& r, const char* metric, double limit) {
    const double v = r.metric(metric);
    require(v < limit, std::string(metric) + "=" + format_double(v) + " < " + lim(limit));
  }
  void above(const ExperimentReport& r, const char* metric, double limit) {
    const double v = r.metric(metric);
    require(v > limit, std::string(metric) + "=" + format_double(v) + " > " + lim(limit));
  }
  void at_least(const ExperimentReport& r, const char* metric, double limit) {
    const double v = r.metric(metric);
    require(v >= limit, std::string(metric) + "=" + format_double(v) + " >= " + lim(limit));
  }
  void verdict(const ExperimentReport& r, Verdict expected) {
    require(r.verdict == expected, "verdict " + std::string(to_string(r.verdict)));
    for (const auto& d : r.diagnostics) out_.detail += " [" + d + "]";
  }
  void runtime(const ExperimentReport& r, double limit) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "runtime %.2fs < %.0fs", r.wall_time, limit);
    require(r.wall_time < limit, buf);
  }
  Outcome done() const { return out_; }

 private:
  Outcome out_;
};

ExperimentReport run_named(const std::string& name, std::size_t samples = 100, std::size_t restarts = 50) {
  ExperimentConfig c;
  c.experiment = name;
  c.samples = samples;
  c.restarts = restarts;
  return run(c);
}

Outcome ergotropy_oracle() {
  const auto r = run_named("ergotropy-oracle", 200);
  Check c;
  c.verdict(r, Verdict::Pass);
  c.require(r.metric("pairs") == 200, "200 pairs");
  c.below(r, "max_double_sum_error", 1e-10);
  c.below(r, "max_permutation_error", 1e-12);
  c.at_least(r, "min_haar_margin", -1e-12);
  c.require(r.metric("haar_samples_per_pair") >= 1e4, "1e4 Haar unitaries per pair");
  c.runtime(r, 60);
  return c.done();
}

Outcome energy_clone() {
  const auto r = run_named("energy-clone", 100);
  Check c;
  c.verdict(r, Verdict::Pass);
  c.below(r, "max_marginal_energy_error", 1e-10);
  c.require(r.metric("inputs_checked") == 4 * 200 * 5, "4 dims x 200 inputs x 5 Hamiltonians");
  c.runtime(r, 30);
  return c.done();
}

Outcome energy_split() {
  const auto r = run_named("energy-split", 50);
  Check c;
  c.verdict(r, Verdict::Pass);
  c.below(r, "max_system_split_error", 1e-10);
  c.below(r, "max_ancilla_split_error", 1e-10);
  c.below(r, "max_unitarity_error", 1e-10);
  c.runtime(r, 30);
  return c.done();
}

Outcome mask_diagonal() {
  const auto r = run_named("mask-diagonal", 50);
  Check c;
  c.verdict(r, Verdict::Pass);
  c.below(r, "max_marginal_asymmetry", 1e-12);
  c.below(r, "max_population_error", 1e-12);
  c.require(r.metric("passive_failures") == 0, "passive_failures=0");
  c.below(r, "max_energy_error", 1e-12);
  c.runtime(r, 30);
  return c.done();
}

Outcome nosignal() {
  const auto r = run_named("nosignal-demo", 100);
  Check c;
  c.verdict(r, Verdict::Pass);
  c.at_least(r, "min_trace_distance", 0.125 - 1e-12);
  c.at_least(r, "min_witness", 0.125 - 1e-12);
  c.runtime(r, 10);
  return c.done();
}

Outcome four_party() {
  const auto r = run_named("mask-four-party", 100);
  Check c;
  c.verdict(r, Verdict::Pass);
  c.below(r, "max_marginal_deviation", 1e-12);
  c.below(r, "max_marginal_ergotropy", 1e-10);
  c.runtime(r, 10);
  return c.done();
}

Outcome lemma_scan() {
  const auto r = run_named("nogo-mask-energy-preserving");
  Check c;
  c.verdict(r, Verdict::ReportOnly);
  c.at_least(r, "grid_points", 1e4);
  c.at_least(r, "min_input_ergotropy", 0.1);
  c.below(r, "control_objective", 1e-6);
  c.above(r, "best_objective", 1e-3);
  c.runtime(r, 120);
  return c.done();
}

Outcome search(const char* name) {
  const auto r = run_named(name);
  Check c;
  c.verdict(r, Verdict::ReportOnly);
  c.require(r.metric("restarts") == 50, "50 restarts");
  if (!std::isnan(r.metric("control_masker_objective"))) c.below(r, "control_masker_objective", 1e-10);
  c.below(r, "control_objective", 1e-6);
  c.above(r, "best_objective", 1e-2);
  c.runtime(r, 300);
  return c.done();
}

Outcome identities() {
  const auto r = run_named("evolution-check", 100);
  Check c;
  c.verdict(r, Verdict::Pass);
  c.below(r, "max_bloch_roundtrip_error", 1e-12);
  c.below(r, "max_purity_relation_error", 1e-10);
  c.below(r, "max_energy_linearity_error", 1e-12);
  c.below(r, "max_equi_energetic_error", 1e-12);
  c.below(r, "max_energy_drift", 1e-10);
  c.require(r.metric("qubit_samples") > 0, "qubit samples present");
  c.below(r, "max_cross_product_error", 1e-4);
  c.runtime(r, 30);
  return c.done();
}

Outcome determinism() {
  Check c;
  for (const auto& info : registered_experiments()) {
    ExperimentConfig cfg;
    cfg.experiment = info.name;
    cfg.samples = info.name == "ergotropy-oracle" ? 12 : 100;
    cfg.restarts = 6;
    cfg.grid = 8;
    std::vector<std::string> docs;
    for (std::size_t threads : {1, 4, 1}) {
      auto r = run(cfg, RunOptions{threads});
      r.wall_time = 0.0;
      docs.push_back(report(std::vector<ExperimentReport>{r}, ReportFormat::Json));
    }
    c.require(docs[0] == docs[1] && docs[0] == docs[2], info.name + " identical");
  }
  return c.done();
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "ergotropy oracle equivalence", ergotropy_oracle},
      {2, "energy cloning", energy_clone},
      {3, "energy splitting", energy_split},
      {4, "diagonal work masking", mask_diagonal},
      {5, "no-signaling witness", nosignal},
      {6, "four-party masking", four_party},
      {7, "energy-preserving masker scan", lemma_scan},
      {8, "work-cloner search with control", [] { return search("nogo-clone"); }},
      {9, "universal-masker search with control", [] { return search("nogo-mask-universal"); }},
      {10, "Bloch-radius search with control", [] { return search("nogo-bloch-radius"); }},
      {11, "Bloch and energy identities", identities},
      {12, "determinism", determinism},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (const auto& c : criteria) selected.push_back(c.id);

  int failures = 0;
  for (int id : selected) {
    const Criterion* crit = nullptr;
    for (const auto& c : criteria)
      if (c.id == id) crit = &c;
    if (!crit) {
      std::printf("criterion %d: FAIL (no such criterion)\n", id);
      ++failures;
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = crit->fn();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %-40s %s (%.1fs) %s\n", id, crit->title, o.pass ? "PASS" : "FAIL", secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
