#include <catch_amalgamated.hpp>

#include "splitlab/report.hpp"
#include "splitlab/suites.hpp"

using namespace splitlab;

namespace {

ExperimentConfig small(const std::string& command) {
  ExperimentConfig c;
  c.command = command;
  c.trials = 200;
  c.horizon = 6;
  return c;
}

}  // namespace

TEST_CASE("exit codes follow the check statuses", "[report]") {
  RunReport r;
  r.config.command = "arcsine";
  CHECK(exit_code(r) == 2);
  r.checks.push_back(CheckResult{});
  CHECK(exit_code(r) == 0);
  r.checks.back().status = Status::tie_skip;
  CHECK(exit_code(r) == 0);
  r.checks.push_back(CheckResult{});
  r.checks.back().status = Status::fail;
  CHECK(exit_code(r) == 1);
}

TEST_CASE("rendered reports are canonical", "[report]") {
  auto r = run_suite(small("verify-characterization"));
  const auto text = render_report(r);
  REQUIRE(text.back() == '\n');
  CHECK(text.find("\n\n") == std::string::npos);
  // Top-level keys appear in sorted order.
  const auto at = [&](const char* key) { return text.find(std::string("\n  \"") + key + "\""); };
  CHECK(at("checks") < at("command"));
  CHECK(at("command") < at("config"));
  CHECK(at("config") < at("seed"));
  CHECK(at("version") < at("wall_time_ms"));
  CHECK(at("wall_time_ms") < at("workers"));
  CHECK(text.find("\"wall_time_ms\": null") != std::string::npos);
  CHECK(render_report(run_suite(small("verify-characterization"))) == text);
}

TEST_CASE("witnesses survive the JSON round trip", "[report]") {
  ViolationWitness w;
  w.check_name = "honesty";
  w.window = IncrementWindow({0.1, -1.0 / 3.0, 2.5e-300, -7.0}, -2);
  w.m = 0;
  w.n = 4;
  w.k = 1;
  w.l = 3;
  w.detail = "x";
  w.lhs = std::int64_t{2};
  w.rhs = std::vector<std::int64_t>{1, 2};
  const auto back = witness_from_json(nlohmann::json::parse(witness_to_json(w).dump()));
  CHECK(back == w);
  CHECK_THROWS_AS(witness_from_json(nlohmann::json{{"check_name", "eq-main"}}), std::invalid_argument);
}

TEST_CASE("worker count does not change the report", "[report]") {
  for (const char* cmd : {"verify-characterization", "arcsine", "factorize"}) {
    auto one = small(cmd);
    auto four = one;
    four.workers = 4;
    CHECK(report_to_json(run_suite(one))["checks"] == report_to_json(run_suite(four))["checks"]);
  }
}

TEST_CASE("config validation", "[report]") {
  auto bad = [](auto edit) {
    auto c = small("verify-characterization");
    edit(c);
    return c;
  };
  CHECK_THROWS_AS(run_suite(bad([](auto& c) { c.command = "nope"; })), ConfigError);
  CHECK_THROWS_AS(run_suite(bad([](auto& c) { c.family = "argmax:identity"; })), ConfigError);
  CHECK_THROWS_AS(run_suite(bad([](auto& c) { c.law = "normal"; })), ConfigError);
  CHECK_THROWS_AS(run_suite(bad([](auto& c) { c.alpha = 0.0; })), ConfigError);
  CHECK_THROWS_AS(run_suite(bad([](auto& c) { c.ties = "latest"; })), ConfigError);
  CHECK_THROWS_AS(run_suite(bad([](auto& c) { c.workers = 0; })), ConfigError);
  CHECK_THROWS_AS(run_suite(bad([](auto& c) {
                    c.command = "split-stats";
                    c.trials = 49;
                  })),
                  ConfigError);
  CHECK_THROWS_AS(run_suite(bad([](auto& c) {
                    c.command = "factorize";
                    c.v = {0.0};
                  })),
                  ConfigError);
  CHECK_THROWS_AS(run_suite(bad([](auto& c) { c.command = "verify-jconstruct"; })), ConfigError);
}

TEST_CASE("tie policy resolves from the law", "[report]") {
  auto c = small("arcsine");
  CHECK(resolve_ties(c) == TiePolicy::flag);
  c.law = "rademacher";
  CHECK(resolve_ties(c) == TiePolicy::earliest);
  c.ties = "flag";
  CHECK(resolve_ties(c) == TiePolicy::flag);
}

TEST_CASE("flagged rademacher ties are counted, not failed", "[report]") {
  auto c = small("verify-characterization");
  c.law = "rademacher";
  c.ties = "flag";
  auto r = run_suite(c);
  for (const auto& check : r.checks) {
    CHECK(check.n_ties > 0);
    CHECK(check.status != Status::fail);
  }
}

TEST_CASE("invalid chooser is reported by chooser-validity", "[report]") {
  auto c = small("verify-jconstruct");
  c.family = "jconstruct:first-entry";
  auto r = run_suite(c);
  CHECK(exit_code(r) == 1);
  bool seen = false;
  for (const auto& check : r.checks)
    if (check.name == "chooser-validity") {
      seen = true;
      CHECK(check.status == Status::fail);
      CHECK_FALSE(check.witnesses.empty());
    }
  CHECK(seen);
}
