#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "splitlab/config.hpp"
#include "splitlab/report.hpp"
#include "splitlab/suites.hpp"

namespace {

const char* kDescriptions[][2] = {
    {"verify-characterization", "eq-main, reflection identity and honesty on random paths"},
    {"verify-selfdual", "self-duality and regeneration of a stopping rule"},
    {"verify-roundtrip", "family -> rule -> family and rule -> family -> rule"},
    {"verify-jconstruct", "chooser recursion: minima recovery, chooser validity, characterization"},
    {"split-stats", "KS and independence tests on the split pieces at geometric times"},
    {"arcsine", "chi-square of tau_n against the discrete arcsine law"},
    {"factorize", "E[v^tau_g]^2 against p / (1 - (1-p) v)"},
    {"replay", "re-run witnesses from a report or a pasted window"},
};

}  // namespace

int main(int argc, char** argv) {
  using namespace splitlab;
  ExperimentConfig cfg;
  CLI::App app{"Pathwise and statistical checks for splitting families of random walks", "splitlab"};
  app.set_config("--config", "", "Plain-text config file (key = value); flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  app.add_option("--law", cfg.law, "Increment law: gaussian|uniform|laplace|cauchy[:scale] or rademacher");
  app.add_option("--family", cfg.family, "argmin:<kappa> | bracket:<rule> | jconstruct:<kappa>,...");
  app.add_option("--rule", cfg.rule, "ladder-desc[:kappa] | ladder-asc[:kappa] | never | const:<k>");
  app.add_option("--p", cfg.p, "Geometric parameters")->delimiter(',');
  app.add_option("--v", cfg.v, "Generating-function arguments for factorize")->delimiter(',');
  app.add_option("--horizon", cfg.horizon, "Path length for pathwise checks");
  app.add_option("--n", cfg.n, "Walk length for arcsine; witness index n for replay");
  app.add_option("--trials", cfg.trials, "Paths or kept trials");
  app.add_option("--buffer", cfg.buffer, "Left/right buffer of split pieces");
  app.add_option("--depth", cfg.depth, "Functional depth j for split-stats");
  app.add_option("--alpha", cfg.alpha, "Significance level");
  app.add_option("--seed", cfg.seed, "Master seed");
  app.add_option("--workers", cfg.workers, "OpenMP threads");
  app.add_option("--ties", cfg.ties, "auto|flag|earliest");
  app.add_option("--perm-b", cfg.perm_b, "Permutations for the independence test");
  app.add_option("--perm-sample", cfg.perm_sample, "Records entering the independence test");
  app.add_option("--max-witnesses", cfg.max_witnesses, "Witnesses stored per check");
  app.add_option("--out", cfg.out, "Report path (stdout when omitted)");
  app.add_option("--dump-samples", cfg.dump_samples, "CSV dump of split-stats records");
  app.add_flag("--timing", cfg.timing, "Record wall_time_ms (reports then differ between runs)");
  app.add_option("--report", cfg.report, "replay: report whose witnesses are re-run");
  app.add_option("--check", cfg.check, "replay: check name");
  app.add_option("--window", cfg.window, "replay: increments, comma separated")->delimiter(',');
  app.add_option("--start-index", cfg.start_index, "replay: index before the first increment");
  app.add_option("--m", cfg.m, "replay: witness index m");
  app.add_option("--k", cfg.k, "replay: witness index k");
  app.add_option("--l", cfg.l, "replay: witness index l");

  for (const auto& [name, text] : kDescriptions) app.add_subcommand(name, text)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  RunReport report;
  try {
    report = run_suite(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "splitlab: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "splitlab: " << e.what() << '\n';
    return 2;
  }

  for (const auto& c : report.checks)
    std::cerr << c.name << ": " << to_string(c.status) << " (paths " << c.n_paths << ", ties "
              << c.n_ties << ", violations " << c.n_violations << ")\n";
  try {
    if (cfg.out.empty())
      std::cout << render_report(report);
    else
      emit_report(report, cfg.out);
  } catch (const std::exception& e) {
    std::cerr << "splitlab: " << e.what() << '\n';
    return 2;
  }
  return exit_code(report);
}
