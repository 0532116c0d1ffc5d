#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "qthermo/errors.hpp"
#include "qthermo/experiments.hpp"

using namespace qthermo;

namespace {

ExperimentConfig small(const std::string& name) {
  ExperimentConfig c;
  c.experiment = name;
  c.samples = 8;
  c.restarts = 2;
  c.grid = 4;
  return c;
}

std::string without_wall_time(ExperimentReport r) {
  r.wall_time = 0.0;
  const std::vector<ExperimentReport> one{r};
  return report(one, ReportFormat::Json);
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("registry lists the eleven experiments") {
    const std::vector<std::string> expected{"ergotropy-oracle", "energy-clone",      "energy-split",
                                            "mask-diagonal",    "mask-four-party",   "nosignal-demo",
                                            "nogo-clone",       "nogo-mask-energy-preserving",
                                            "nogo-mask-universal", "nogo-bloch-radius", "evolution-check"};
    CHECK(registered_experiments().size() == expected.size());
    for (const auto& name : expected) CHECK(find_experiment(name).name == name);
    CHECK_THROWS_AS(find_experiment("nope"), UnknownExperiment);
  }

  TEST_CASE("config parsing and defaults") {
    const auto c = config_from_json(ordered_json::parse(R"({"experiment": "energy-clone"})"));
    CHECK(c.seed == 42);
    CHECK(c.restarts == 50);
    CHECK(c.samples == 100);
    CHECK(c.dim == 0);
    CHECK(config_from_json(config_to_json(c)) == c);

    const auto full = config_from_json(ordered_json::parse(
        R"({"experiment": "mask-diagonal", "dim": 3, "seed": 7, "samples": 5,
            "tolerances": {"max_energy_error": 1e-9}, "hamiltonian": [0, 2, 4], "output_path": "x.json"})"));
    CHECK(full.hamiltonian->size() == 3);
    CHECK(full.tolerances.at("max_energy_error") == 1e-9);
    CHECK(config_from_json(config_to_json(full)) == full);
  }

  TEST_CASE("config errors") {
    auto parse = [](const char* s) { return config_from_json(ordered_json::parse(s)); };
    CHECK_THROWS_AS(parse(R"({"experiment": "warp-drive"})"), UnknownExperiment);
    CHECK_THROWS_AS(parse(R"({"dim": 2})"), InvalidConfig);
    CHECK_THROWS_AS(parse(R"({"experiment": "energy-clone", "dim": -1})"), InvalidConfig);
    CHECK_THROWS_AS(parse(R"({"experiment": "energy-clone", "dim": 1})"), InvalidConfig);
    CHECK_THROWS_AS(parse(R"({"experiment": "energy-clone", "samples": 0})"), InvalidConfig);
    CHECK_THROWS_AS(parse(R"({"experiment": "energy-clone", "colour": "red"})"), InvalidConfig);
    CHECK_THROWS_AS(parse(R"({"experiment": "energy-clone", "tolerances": {"bogus": 1}})"), InvalidConfig);
    CHECK_THROWS_AS(parse(R"({"experiment": "energy-clone", "dim": 2, "hamiltonian": [0, 1, 2]})"), InvalidConfig);
    CHECK_THROWS_AS(parse(R"({"experiment": "energy-clone", "seed": "x"})"), InvalidConfig);
    CHECK_THROWS_AS(config_from_json(ordered_json::array()), InvalidConfig);

    auto c = small("energy-clone");
    c.experiment = "unknown";
    CHECK_THROWS_AS(run(c), UnknownExperiment);
    c = small("nogo-bloch-radius");
    c.dim = 3;
    CHECK_THROWS_AS(run(c), InvalidConfig);
  }

  TEST_CASE("energy-clone example") {
    ExperimentConfig c;
    c.experiment = "energy-clone";
    c.dim = 3;
    const auto r = run(c);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.metric("max_marginal_energy_error") < 1e-10);
    CHECK(r.artifact_version == QTHERMO_VERSION);
  }

  TEST_CASE("nosignal-demo example") {
    ExperimentConfig c;
    c.experiment = "nosignal-demo";
    const auto r = run(c);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.metric("min_trace_distance") >= 0.125 - 1e-12);
  }

  TEST_CASE("tolerance overrides change the verdict") {
    auto c = small("nosignal-demo");
    c.tolerances["min_trace_distance"] = 2.0;
    const auto r = run(c);
    CHECK(r.verdict == Verdict::Fail);
    CHECK_FALSE(r.diagnostics.empty());
    const std::vector<ExperimentReport> one{r};
    CHECK(exit_code(one) == 1);
  }

  TEST_CASE("numerical breakdown becomes a FAIL verdict") {
    auto c = small("evolution-check");
    c.hamiltonian = std::vector<double>{0.0, 1e300};
    ExperimentReport r;
    CHECK_NOTHROW(r = run(c));
    CHECK(r.verdict == Verdict::Fail);
    CHECK_FALSE(r.diagnostics.empty());
  }

  TEST_CASE("hamiltonian overrides must fit the experiment") {
    auto c = small("mask-four-party");
    c.hamiltonian = std::vector<double>{0.0, 1.0, 2.0};
    CHECK_THROWS_AS(run(c), InvalidConfig);
    c.hamiltonian = std::vector<double>{0.0, std::nan("")};
    CHECK_THROWS_AS(run(c), InvalidConfig);
  }

  TEST_CASE("nogo experiments are REPORT-ONLY with controls") {
    auto c = small("nogo-mask-universal");
    const auto r = run(c);
    CHECK(r.verdict == Verdict::ReportOnly);
    CHECK(r.metric("control_objective") < 1e-6);
    CHECK(std::isfinite(r.metric("best_objective")));
    const std::vector<ExperimentReport> one{r};
    CHECK(exit_code(one) == 0);

    auto e = small("nogo-mask-energy-preserving");
    const auto re = run(e);
    CHECK(re.verdict == Verdict::ReportOnly);
    CHECK(re.metric("control_objective") < 1e-12);
    CHECK(re.metric("min_input_ergotropy") >= 0.1);
  }

  TEST_CASE("reports are deterministic across thread counts") {
    for (const auto& info : registered_experiments()) {
      CAPTURE(info.name);
      auto c = small(info.name);
      const auto a = run(c, RunOptions{1});
      const auto b = run(c, RunOptions{4});
      const auto again = run(c, RunOptions{1});
      CHECK(without_wall_time(a) == without_wall_time(b));
      CHECK(without_wall_time(a) == without_wall_time(again));
      CHECK(a.verdict != Verdict::Fail);
    }
  }

  TEST_CASE("JSON report round-trips") {
    auto c = small("mask-four-party");
    const std::vector<ExperimentReport> reports{run(c)};
    const auto text = report(reports, ReportFormat::Json);
    const auto parsed = parse_json_report(text);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0] == reports[0]);
    CHECK(report(parsed, ReportFormat::Json) == text);
    CHECK(text.find("\"verdict\": \"PASS\"") != std::string::npos);
  }

  TEST_CASE("JSON numbers carry 17 significant digits") {
    ExperimentReport r;
    r.config = small("energy-clone");
    r.metrics = {{"x", 0.1}, {"one", 1.0}};
    r.verdict = Verdict::Pass;
    const std::vector<ExperimentReport> one{r};
    const auto text = report(one, ReportFormat::Json);
    CHECK(text.find("0.10000000000000001") != std::string::npos);
    CHECK(text.find("\"one\": 1.0") != std::string::npos);
  }

  TEST_CASE("CSV has a header and one row per report") {
    const std::vector<ExperimentReport> reports{run(small("energy-clone")), run(small("nosignal-demo"))};
    const auto csv = report(reports, ReportFormat::Csv);
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t pos; (pos = csv.find('\n', start)) != std::string::npos; start = pos + 1)
      lines.push_back(csv.substr(start, pos - start));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].rfind("config.experiment,", 0) == 0);
    CHECK(lines[0].find("metrics.max_marginal_energy_error") != std::string::npos);
    CHECK(lines[0].find("metrics.min_trace_distance") != std::string::npos);
    CHECK(lines[1].rfind("energy-clone,", 0) == 0);
    CHECK(lines[2].rfind("nosignal-demo,", 0) == 0);
  }

  TEST_CASE("report errors and verdict tokens") {
    CHECK_THROWS_AS(report({}, ReportFormat::Json), EmptyInput);
    CHECK(to_string(Verdict::Pass) == "PASS");
    CHECK(to_string(Verdict::Fail) == "FAIL");
    CHECK(to_string(Verdict::ReportOnly) == "REPORT-ONLY");
    CHECK(verdict_from_string("REPORT-ONLY") == Verdict::ReportOnly);
    CHECK_THROWS_AS(verdict_from_string("MAYBE"), InvalidConfig);
    CHECK_THROWS_AS(parse_json_report("{}"), InvalidConfig);
    CHECK_THROWS_AS(parse_json_report("not json"), InvalidConfig);
  }

  TEST_CASE("exit code ignores REPORT-ONLY") {
    ExperimentReport pass, fail, report_only;
    pass.verdict = Verdict::Pass;
    fail.verdict = Verdict::Fail;
    report_only.verdict = Verdict::ReportOnly;
    CHECK(exit_code(std::vector<ExperimentReport>{pass, report_only}) == 0);
    CHECK(exit_code(std::vector<ExperimentReport>{pass, fail, report_only}) == 1);
  }
}
