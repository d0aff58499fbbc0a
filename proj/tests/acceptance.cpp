// Acceptance run: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "splitlab/report.hpp"
#include "splitlab/suites.hpp"

using namespace splitlab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

ExperimentConfig make(const std::string& command) {
  ExperimentConfig c;
  c.command = command;
  c.seed = 20240601;
  return c;
}

const CheckResult& find(const RunReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  throw std::runtime_error("missing check " + name);
}

std::size_t witnesses(const RunReport& r) {
  std::size_t n = 0;
  for (const auto& c : r.checks) n += c.n_violations;
  return n;
}

const std::vector<std::string> kDiffuse{"gaussian:1", "uniform:1", "laplace:1", "cauchy:1"};
const std::vector<std::string> kKappas{"identity", "negation", "cubepoly", "sine"};

Outcome characterization_grid(const std::vector<std::string>& families) {
  Outcome o;
  std::size_t bad = 0, ties = 0, runs = 0;
  for (const auto& fam : families)
    for (const auto& law : kDiffuse) {
      auto c = make("verify-characterization");
      c.family = fam;
      c.law = law;
      c.trials = 10000;
      c.horizon = 12;
      const auto r = run_suite(c);
      bad += witnesses(r);
      for (const auto& check : r.checks) ties = std::max(ties, check.n_ties);
      ++runs;
    }
  o.ok = bad == 0 && ties < 10;
  o.detail = std::to_string(runs) + " runs, witnesses " + std::to_string(bad) + ", tie-skips " +
             std::to_string(ties);
  return o;
}

Outcome c1() {
  std::vector<std::string> fams;
  for (const auto& k : kKappas) fams.push_back("argmin:" + k);
  return characterization_grid(fams);
}

ExperimentConfig atom_config() {
  auto c = make("verify-characterization");
  c.law = "rademacher";
  c.ties = "earliest";
  c.horizon = 2;
  c.trials = 100;
  return c;
}

Outcome c2() {
  const auto r = run_suite(atom_config());
  const auto& refl = find(r, "reflection-identity");
  return {refl.n_violations >= 1 && !refl.witnesses.empty(),
          std::to_string(refl.n_violations) + " reflection-identity witnesses in 100 paths"};
}

Outcome c3() {
  Outcome o;
  std::string d;
  for (const auto& law : kDiffuse) {
    auto c = make("arcsine");
    c.law = law;
    c.n = 10;
    c.trials = 100000;
    const auto& chk = run_suite(c).checks.front();
    o.ok = o.ok && chk.status == Status::pass && *chk.p_value >= 0.01;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s p=%.3f, ", law.c_str(), *chk.p_value);
    d += buf;
  }
  auto c = make("arcsine");
  c.n = 2;
  c.trials = 1000000;
  const auto r = run_suite(c);
  const double f1 = r.checks.front().details["empirical"][1].get<double>();
  o.ok = o.ok && std::fabs(f1 - 0.25) < 0.005;
  char buf[64];
  std::snprintf(buf, sizeof buf, "P(tau_2=1)=%.4f", f1);
  o.detail = d + buf;
  return o;
}

Outcome c4() {
  Outcome o;
  double min_p = HUGE_VAL;
  std::size_t checks = 0;
  for (const char* fam : {"argmin:identity", "argmin:cubepoly"}) {
    auto c = make("split-stats");
    c.family = fam;
    c.p = {0.1, 0.3};
    c.trials = 100000;
    c.buffer = 4;
    c.depth = 4;
    c.perm_b = 999;
    const auto r = run_suite(c);
    for (const auto& chk : r.checks) {
      ++checks;
      o.ok = o.ok && chk.status == Status::pass;
      min_p = std::min(min_p, *chk.p_value / *chk.alpha);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu tests, smallest p/alpha %.2f", checks, min_p);
  o.detail = buf;
  return o;
}

Outcome c5() {
  auto c = make("factorize");
  c.p = {0.2, 0.5};
  c.v = {0.5, 0.9, 1.0};
  c.trials = 100000;
  const auto r = run_suite(c);
  Outcome o;
  double worst = 0.0;
  for (const auto& chk : r.checks) {
    const double target = chk.details["target"].get<double>();
    const double se = chk.details["standard_error"].get<double>();
    const double diff = std::fabs(*chk.statistic - target);
    if (chk.name.find("v=1]") != std::string::npos)
      o.ok = o.ok && diff == 0.0 && target == 1.0;
    else
      o.ok = o.ok && diff < 3.0 * se, worst = std::max(worst, diff / se);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "6 cells, worst |diff|/SE %.2f, v=1 exact", worst);
  o.detail = buf;
  return o;
}

Outcome c6() {
  auto s = make("verify-selfdual");
  s.rule = "ladder-desc";
  s.trials = 10000;
  auto t = make("verify-roundtrip");
  t.rule = "ladder-desc";
  t.family = "bracket:ladder-desc";
  t.trials = 10000;
  const auto a = run_suite(s), b = run_suite(t);
  const auto w = witnesses(a) + witnesses(b);
  return {w == 0 && exit_code(a) == 0 && exit_code(b) == 0,
          "4 checks on 10000 paths, witnesses " + std::to_string(w)};
}

Outcome c7() {
  auto a = make("verify-jconstruct");
  a.family = "jconstruct:identity";
  a.horizon = 16;
  a.trials = 10000;
  const auto ra = run_suite(a);
  const auto mism = find(ra, "recovers-minima").n_violations;

  const auto grid = characterization_grid({"jconstruct:identity,cubepoly"});
  auto b = make("verify-jconstruct");
  b.family = "jconstruct:identity,cubepoly";
  b.trials = 10000;
  const auto rb = run_suite(b);
  const auto& d = find(rb, "differs-from-extrema").details;
  const double fmin = d["fraction_vs_argmin_identity"].get<double>();
  const double fmax = d["fraction_vs_argmin_negation"].get<double>();
  char buf[160];
  std::snprintf(buf, sizeof buf, "minima mismatches %zu; mixed chooser: %s, validity %s, differs %.4f / %.4f",
                mism, grid.detail.c_str(), to_string(find(rb, "chooser-validity").status), fmin, fmax);
  return {mism == 0 && grid.ok && exit_code(rb) == 0 && fmin >= 0.01 && fmax >= 0.01, buf};
}

Outcome c8() {
  const auto cfg = atom_config();
  const auto first = render_report(run_suite(cfg));
  const auto second = render_report(run_suite(cfg));
  auto four = cfg;
  four.workers = 4;
  const auto other = report_to_json(run_suite(four));
  const auto path = std::filesystem::temp_directory_path() / "splitlab_acceptance_report.json";
  emit_report(run_suite(cfg), path.string());

  auto replay = make("replay");
  replay.report = path.string();
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_suite(replay);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::filesystem::remove(path);
  bool reproduced = !r.checks.empty();
  for (const auto& c : r.checks)
    reproduced = reproduced && c.status == Status::fail && c.details["reproduces_witness"] == true;
  const bool same = first == second && other["checks"] == report_to_json(run_suite(cfg))["checks"];
  char buf[128];
  std::snprintf(buf, sizeof buf, "byte-identical %s, %zu witnesses replayed in %.3f s", same ? "yes" : "no",
                r.checks.size(), secs);
  return {same && reproduced && secs < 1.0, buf};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "characterization", 60, c1},  {2, "atom obstruction", 1, c2},
      {3, "arcsine universality", 30, c3}, {4, "splitting statistics", 300, c4},
      {5, "factorization", 30, c5},     {6, "self-duality and bijection", 30, c6},
      {7, "exhaustion", 120, c7},       {8, "determinism and replay", 60, c8}};
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.ok && secs < c.limit_s;
    failed += !ok;
    std::printf("criterion %d %s: %s | %s | %.2f s (limit %.0f s)\n", c.id, ok ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs, c.limit_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
