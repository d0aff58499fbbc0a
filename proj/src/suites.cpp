#include "splitlab/suites.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include <omp.h>

#include "splitlab/descriptors.hpp"
#include "splitlab/errors.hpp"
#include "splitlab/experiment.hpp"
#include "splitlab/laws.hpp"
#include "splitlab/stats.hpp"
#include "splitlab/sweeps.hpp"
#include "splitlab/util.hpp"

namespace splitlab {

using nlohmann::json;

namespace {

// Folds per-path verdicts into one check, keeping the first few witnesses.
class Tally {
 public:
  Tally(std::string name, std::size_t cap) : cap_(cap) { r_.name = std::move(name); }

  void add(const Verdict& v) {
    ++r_.n_paths;
    switch (v.status) {
      case Status::pass: break;
      case Status::tie_skip: ++r_.n_ties; break;
      case Status::precondition: ++preconditions_; break;
      case Status::fail:
        ++r_.n_violations;
        if (r_.witnesses.size() < cap_ && v.witness) r_.witnesses.push_back(*v.witness);
        break;
    }
  }

  CheckResult finish() {
    if (preconditions_ > 0) r_.details["n_precondition"] = preconditions_;
    if (r_.n_violations > 0)
      r_.status = Status::fail;
    else if (r_.n_paths > 0 && r_.n_ties + preconditions_ == r_.n_paths)
      r_.status = Status::tie_skip;
    else
      r_.status = Status::pass;
    return r_;
  }

 private:
  CheckResult r_;
  std::size_t cap_;
  std::size_t preconditions_ = 0;
};

CheckResult from_test(std::string name, const TestReport& t) {
  CheckResult c;
  c.name = std::move(name);
  c.n_paths = t.n_a;
  c.statistic = t.statistic;
  c.p_value = t.p_value;
  c.alpha = t.alpha;
  c.status = t.passed() ? Status::pass : Status::fail;
  c.details["n_a"] = t.n_a;
  c.details["n_b"] = t.n_b;
  for (const auto& [key, value] : t.extras) c.details[key] = value;
  return c;
}

struct Context {
  const ExperimentConfig& cfg;
  Execution ex;
  TiePolicy ties;
  IncrementLaw law;
};

template <class Fn>
auto wrap_config(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(e.what());
  }
}

SplittingFamily family_of(const Context& c) {
  return wrap_config([&] { return parse_family(c.cfg.family, c.ties); });
}
StoppingTimeRule rule_of(const Context& c) {
  return wrap_config([&] { return parse_rule(c.cfg.rule, c.ties); });
}

std::string tag(const std::string& base, std::initializer_list<std::pair<const char*, double>> kv) {
  std::string s = base + "[";
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) s += ",";
    s += std::string(k) + "=" + format_double(v);
    first = false;
  }
  return s + "]";
}

IncrementWindow path(const Context& c, std::size_t i, std::size_t len) {
  return sample_increments(c.law, len, c.cfg.seed, i);
}

std::vector<CheckResult> characterization(const Context& c) {
  const auto tau = family_of(c);
  const std::size_t H = c.cfg.horizon;
  auto vs = map_indices<CharacterizationVerdicts>(c.cfg.trials, c.ex, [&](std::size_t i) {
    return sweep_characterization(tau, path(c, i, H), H);
  });
  Tally eq(check_names::eq_main, c.cfg.max_witnesses), refl(check_names::reflection, c.cfg.max_witnesses),
      hon(check_names::honesty, c.cfg.max_witnesses);
  for (const auto& v : vs) {
    eq.add(v.eq_main);
    refl.add(v.reflection);
    hon.add(v.honesty);
  }
  return {eq.finish(), refl.finish(), hon.finish()};
}

std::vector<CheckResult> selfdual(const Context& c) {
  const auto gamma = rule_of(c);
  const std::size_t H = c.cfg.horizon;
  auto vs = map_indices<SelfDualVerdicts>(c.cfg.trials, c.ex, [&](std::size_t i) {
    return sweep_selfdual(gamma, path(c, i, H), H);
  });
  Tally sd(check_names::self_duality, c.cfg.max_witnesses), rg(check_names::regenerative, c.cfg.max_witnesses);
  for (const auto& v : vs) {
    sd.add(v.self_duality);
    rg.add(v.regenerative);
  }
  return {sd.finish(), rg.finish()};
}

std::vector<CheckResult> roundtrip(const Context& c) {
  const auto tau = family_of(c);
  const auto gamma = rule_of(c);
  const std::size_t H = c.cfg.horizon;
  auto vs = map_indices<std::pair<Verdict, Verdict>>(c.cfg.trials, c.ex, [&](std::size_t i) {
    const auto w = path(c, i, H);
    return std::make_pair(check_roundtrip_family(tau, w, H), check_roundtrip_rule(gamma, w, H));
  });
  Tally fam(check_names::roundtrip_family, c.cfg.max_witnesses), rule(check_names::roundtrip_rule, c.cfg.max_witnesses);
  for (const auto& [a, b] : vs) {
    fam.add(a);
    rule.add(b);
  }
  return {fam.finish(), rule.finish()};
}

struct JPath {
  Verdict recovers, validity;
  CharacterizationVerdicts ch;
  int vs_min = -1;  // -1 tie, 0 same, 1 different on the first two increments
  int vs_max = -1;
};

std::vector<CheckResult> jconstruct(const Context& c) {
  const std::string prefix = "jconstruct:";
  if (c.cfg.family.rfind(prefix, 0) != 0)
    throw ConfigError("verify-jconstruct needs a jconstruct:<chooser> family");
  if (c.cfg.horizon < 2) throw ConfigError("verify-jconstruct needs horizon >= 2");
  const auto tau = family_of(c);
  const auto chooser =
      wrap_config([&] { return parse_chooser(c.cfg.family.substr(prefix.size()), c.ties); });
  const auto argmin = argmin_family(OddMap::identity(), c.ties);
  const auto argmax = argmin_family(OddMap::negation(), c.ties);
  const std::size_t H = c.cfg.horizon;

  auto vs = map_indices<JPath>(c.cfg.trials, c.ex, [&](std::size_t i) {
    const auto w = path(c, i, H);
    JPath r;
    r.recovers = check_recovers_minima(w, H);
    for (std::size_t n = 1; n <= H && r.validity.status == Status::pass; ++n)
      r.validity = check_chooser_validity(chooser, w, n);
    try {
      r.ch = sweep_characterization(tau, w, H);
    } catch (const ChooserConflict&) {
      // An invalid chooser has no well-defined family; chooser-validity reports it.
      r.ch = {Verdict::precondition(), Verdict::precondition(), Verdict::precondition()};
    }
    try {
      const auto two = w.core(2);
      const auto t = tau(two);
      r.vs_min = t != argmin(two);
      r.vs_max = t != argmax(two);
    } catch (const TieDetected&) {
    } catch (const ChooserConflict&) {
    }
    return r;
  });

  const std::size_t cap = c.cfg.max_witnesses;
  Tally rec(check_names::recovers_minima, cap), val(check_names::chooser_validity, cap),
      eq(check_names::eq_main, cap), refl(check_names::reflection, cap), hon(check_names::honesty, cap);
  std::size_t compared = 0, diff_min = 0, diff_max = 0;
  for (const auto& v : vs) {
    rec.add(v.recovers);
    val.add(v.validity);
    eq.add(v.ch.eq_main);
    refl.add(v.ch.reflection);
    hon.add(v.ch.honesty);
    if (v.vs_min >= 0) {
      ++compared;
      diff_min += v.vs_min;
      diff_max += v.vs_max;
    }
  }
  CheckResult differs;
  differs.name = "differs-from-extrema";
  differs.n_paths = vs.size();
  differs.n_ties = vs.size() - compared;
  const double f_min = compared ? static_cast<double>(diff_min) / compared : 0.0;
  const double f_max = compared ? static_cast<double>(diff_max) / compared : 0.0;
  differs.statistic = std::min(f_min, f_max);
  differs.details = {{"window_length", 2},
                     {"fraction_vs_argmin_identity", f_min},
                     {"fraction_vs_argmin_negation", f_max},
                     {"informational", true}};
  return {rec.finish(), val.finish(), eq.finish(), refl.finish(), hon.finish(), differs};
}

std::vector<CheckResult> split_stats(const Context& c) {
  const auto tau = family_of(c);
  const std::size_t j = c.cfg.depth;
  const double alpha_each = c.cfg.alpha / 5.0;
  static const char* coords[] = {"tau", "endpoint", "min", "max", "positive"};

  std::ofstream dump;
  if (!c.cfg.dump_samples.empty()) {
    dump.open(c.cfg.dump_samples, std::ios::binary);
    if (!dump) throw std::runtime_error("cannot open '" + c.cfg.dump_samples + "' for writing");
    dump << "p,tau,co_tau";
    for (const char* side : {"pre", "post"})
      for (int k = 1; k < 5; ++k) dump << ',' << side << '_' << coords[k];
    dump << '\n';
  }

  std::vector<CheckResult> out;
  for (std::size_t pi = 0; pi < c.cfg.p.size(); ++pi) {
    const double p = c.cfg.p[pi];
    ExperimentSettings s;
    s.p = p;
    s.buffer = c.cfg.buffer;
    s.trials = c.cfg.trials;
    s.seed = c.cfg.seed;
    s.stream_base = static_cast<std::uint64_t>(pi) << 40;
    const auto run = splitting_experiment(tau, c.law, s, c.ex);

    std::vector<std::vector<double>> left(5), right(5);
    VectorSample pre_side, post_side;
    for (std::size_t t = 0; t < run.records.size(); ++t) {
      const auto& r = run.records[t];
      const auto a = piece_functionals(r.pre, j);
      const auto b = piece_functionals(r.post, j);
      left[0].push_back(static_cast<double>(r.tau));
      right[0].push_back(static_cast<double>(r.co_tau));
      for (int k = 0; k < 4; ++k) {
        left[k + 1].push_back(a[k]);
        right[k + 1].push_back(b[k]);
      }
      if (t < c.cfg.perm_sample) {
        const std::array<double, 5> x{static_cast<double>(r.tau), a[0], a[1], a[2], a[3]};
        const std::array<double, 5> y{static_cast<double>(r.co_tau), b[0], b[1], b[2], b[3]};
        pre_side.push(x);
        post_side.push(y);
      }
      if (dump.is_open()) {
        dump << format_double(p) << ',' << r.tau << ',' << r.co_tau;
        for (double x : a) dump << ',' << format_double(x);
        for (double x : b) dump << ',' << format_double(x);
        dump << '\n';
      }
    }

    const double tie_fraction = static_cast<double>(run.ties) / static_cast<double>(run.attempted);
    json common = {{"attempted", run.attempted},
                   {"tie_dropped", run.ties},
                   {"suspect", c.law.diffuse() && tie_fraction > 1e-6}};
    for (int k = 0; k < 5; ++k) {
      auto t = ks_two_sample(left[k], right[k]);
      t.alpha = alpha_each;
      auto r = from_test(tag(std::string("ks-") + coords[k], {{"p", p}}), t);
      r.n_ties = run.ties;
      r.details.update(common);
      out.push_back(std::move(r));
    }
    auto t = permutation_independence(pre_side, post_side, c.cfg.perm_b, c.cfg.seed ^ (0x9e3779b97f4a7c15ULL + pi), c.ex);
    t.alpha = c.cfg.alpha;
    auto r = from_test(tag("independence", {{"p", p}}), t);
    r.n_ties = run.ties;
    r.details.update(common);
    out.push_back(std::move(r));
  }
  if (dump.is_open()) {
    dump.close();
    if (!dump) throw std::runtime_error("failed writing '" + c.cfg.dump_samples + "'");
  }
  return out;
}

std::vector<CheckResult> arcsine(const Context& c) {
  const auto tau = family_of(c);
  const std::size_t n = c.cfg.n;
  auto taus = map_indices<std::int64_t>(c.cfg.trials, c.ex, [&](std::size_t i) -> std::int64_t {
    try {
      return static_cast<std::int64_t>(tau(path(c, i, n).values()));
    } catch (const TieDetected&) {
      return -1;
    }
  });
  std::vector<std::uint64_t> counts(n + 1, 0);
  std::size_t ties = 0;
  for (auto t : taus) {
    if (t < 0)
      ++ties;
    else
      ++counts[static_cast<std::size_t>(t)];
  }
  const auto pmf = arcsine_pmf(n);
  const std::size_t kept = c.cfg.trials - ties;
  if (kept == 0) throw ConfigError("every arcsine sample was a tie");
  auto t = chi_square_gof(counts, pmf);
  t.alpha = c.cfg.alpha;
  auto r = from_test("arcsine-chi-square", t);
  r.n_paths = c.cfg.trials;
  r.n_ties = ties;
  std::vector<double> freq;
  for (auto k : counts) freq.push_back(static_cast<double>(k) / static_cast<double>(kept));
  r.details["counts"] = counts;
  r.details["empirical"] = freq;
  r.details["expected"] = pmf;
  return {r};
}

std::vector<CheckResult> factorize(const Context& c) {
  const auto tau = family_of(c);
  std::vector<CheckResult> out;
  for (std::size_t pi = 0; pi < c.cfg.p.size(); ++pi)
    for (std::size_t vi = 0; vi < c.cfg.v.size(); ++vi) {
      const double p = c.cfg.p[pi], v = c.cfg.v[vi];
      const auto base = static_cast<std::uint64_t>(pi * c.cfg.v.size() + vi) << 40;
      auto t = factorization_check(tau, c.law, p, v, c.cfg.trials, c.cfg.seed, base, c.ex);
      out.push_back(from_test(tag("factorization", {{"p", p}, {"v", v}}), t));
    }
  return out;
}

ReplayContext replay_context(const std::string& family, const std::string& rule, TiePolicy ties) {
  ReplayContext ctx;
  try {
    ctx.family = parse_family(family, ties);
  } catch (const std::exception&) {
  }
  try {
    ctx.rule = parse_rule(rule, ties);
  } catch (const std::exception&) {
  }
  const std::string prefix = "jconstruct:";
  if (family.rfind(prefix, 0) == 0) {
    try {
      ctx.chooser = parse_chooser(family.substr(prefix.size()), ties);
    } catch (const std::exception&) {
    }
  }
  return ctx;
}

CheckResult replay_one(const ViolationWitness& w, const ReplayContext& ctx, std::size_t cap,
                       const ViolationWitness* original) {
  Tally t("replay:" + w.check_name, cap);
  const Verdict v = wrap_config([&] { return replay_witness(w, ctx); });
  t.add(v);
  auto r = t.finish();
  if (v.status == Status::precondition) r.details["precondition"] = true;
  if (original) r.details["reproduces_witness"] = v.witness && *v.witness == *original;
  return r;
}

std::vector<CheckResult> replay(const Context& c) {
  std::vector<CheckResult> out;
  if (!c.cfg.report.empty()) {
    std::ifstream f(c.cfg.report, std::ios::binary);
    if (!f) throw ConfigError("cannot read report '" + c.cfg.report + "'");
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("report is not valid JSON: ") + e.what());
    }
    const auto& conf = j.at("config");
    const std::string ties_text = conf.value("ties", std::string("flag"));
    const TiePolicy ties = ties_text == "earliest" ? TiePolicy::earliest : TiePolicy::flag;
    const auto ctx = replay_context(conf.value("family", std::string()), conf.value("rule", std::string()), ties);
    for (const auto& check : j.at("checks"))
      for (const auto& wj : check.value("witnesses", json::array())) {
        const auto w = wrap_config([&] { return witness_from_json(wj); });
        out.push_back(replay_one(w, ctx, c.cfg.max_witnesses, &w));
      }
    if (out.empty()) throw ConfigError("report holds no witnesses to replay");
    return out;
  }
  if (c.cfg.check.empty() || c.cfg.window.empty())
    throw ConfigError("replay needs --report, or --check with --window");
  ViolationWitness w;
  w.check_name = c.cfg.check;
  w.window = wrap_config([&] { return IncrementWindow(c.cfg.window, c.cfg.start_index); });
  w.m = c.cfg.m;
  w.n = static_cast<std::int64_t>(c.cfg.n);
  w.k = c.cfg.k;
  w.l = c.cfg.l;
  out.push_back(replay_one(w, replay_context(c.cfg.family, c.cfg.rule, c.ties), c.cfg.max_witnesses, nullptr));
  return out;
}

}  // namespace

RunReport run_suite(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto started = std::chrono::steady_clock::now();
  Context c{cfg, cfg.workers > 1 ? Execution::parallel : Execution::serial, resolve_ties(cfg),
            wrap_config([&] { return parse_law(cfg.law); })};
  omp_set_num_threads(static_cast<int>(cfg.workers));

  static const std::map<std::string, std::function<std::vector<CheckResult>(const Context&)>> suites{
      {"verify-characterization", characterization},
      {"verify-selfdual", selfdual},
      {"verify-roundtrip", roundtrip},
      {"verify-jconstruct", jconstruct},
      {"split-stats", split_stats},
      {"arcsine", arcsine},
      {"factorize", factorize},
      {"replay", replay}};
  RunReport report;
  report.config = cfg;
  report.checks = suites.at(cfg.command)(c);
  if (cfg.timing)
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace splitlab
