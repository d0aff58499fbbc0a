#include "splitlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "splitlab/errors.hpp"
#include "splitlab/rng.hpp"

namespace splitlab {

namespace {

void require_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("geometric parameter must lie in (0,1)");
}

double geometric_cdf(double p, std::size_t k) {
  return -std::expm1(static_cast<double>(k + 1) * std::log1p(-p));
}

struct Trial {
  std::size_t g = 0;
  IncrementWindow w;
};

Trial draw_trial(const IncrementLaw& law, double p, std::size_t buffer, std::uint64_t seed,
                 std::uint64_t stream) {
  CounterRng rng(seed, stream);
  Trial t;
  t.g = sample_geometric(p, rng.uniform());
  std::vector<double> xs(t.g + 2 * buffer);
  for (double& x : xs) x = law.sample(rng);
  t.w = IncrementWindow(std::move(xs), -static_cast<std::int64_t>(buffer));
  return t;
}

// Runs index batches until `wanted` trials produced a value; a batch's size
// depends only on the previous counts, never on scheduling.
template <class Value, class Fn>
std::vector<Value> collect_kept(std::size_t wanted, Execution ex, std::size_t& attempted,
                                std::size_t& dropped, Fn&& fn) {
  std::vector<Value> kept;
  kept.reserve(wanted);
  attempted = 0;
  dropped = 0;
  std::size_t batch = wanted;
  while (kept.size() < wanted) {
    const std::size_t base = attempted;
    auto got = map_indices<std::optional<Value>>(batch, ex, [&](std::size_t i) { return fn(base + i); });
    attempted += batch;
    for (auto& v : got) {
      if (!v) {
        ++dropped;
        continue;
      }
      if (kept.size() < wanted) kept.push_back(std::move(*v));
    }
    batch = std::max<std::size_t>(2 * (wanted - kept.size()), 16);
    if (attempted > 64 * wanted + 1024) throw std::runtime_error("too many tie trials; law is not diffuse enough");
  }
  return kept;
}

}  // namespace

std::size_t sample_geometric(double p, double u) {
  require_p(p);
  if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("uniform draw must lie in [0,1)");
  const double guess = std::floor(std::log1p(-u) / std::log1p(-p));
  auto k = static_cast<std::size_t>(std::max(guess, 0.0));
  // Rounding can put the guess one step off either way.
  while (k > 0 && u < geometric_cdf(p, k - 1)) --k;
  while (!(u < geometric_cdf(p, k))) ++k;
  return k;
}

PieceRecord make_piece_record(const SplittingFamily& tau, const IncrementWindow& w, std::size_t g) {
  PieceRecord r;
  r.tau = tau(w.core(g));
  r.co_tau = g - r.tau;
  const auto at = static_cast<std::int64_t>(r.tau);
  r.pre = reflect_about(w, at);
  r.post = shift(w, at);
  return r;
}

ExperimentOutput splitting_experiment(const SplittingFamily& tau, const IncrementLaw& law,
                                      const ExperimentSettings& s, Execution ex) {
  require_p(s.p);
  ExperimentOutput out;
  out.records = collect_kept<PieceRecord>(
      s.trials, ex, out.attempted, out.ties, [&](std::size_t t) -> std::optional<PieceRecord> {
        Trial trial = draw_trial(law, s.p, s.buffer, s.seed, s.stream_base + t);
        try {
          return make_piece_record(tau, trial.w, trial.g);
        } catch (const TieDetected&) {
          return std::nullopt;
        }
      });
  return out;
}

std::array<double, 4> piece_functionals(const IncrementWindow& w, std::size_t j) {
  if (j > w.size()) throw std::out_of_range("functional depth exceeds the piece length");
  double x = 0.0, lo = 0.0, hi = 0.0, positive = 0.0;
  for (std::size_t k = 0; k < j; ++k) {
    x += w[k];
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    if (w[k] > 0.0) positive += 1.0;
  }
  return {x, lo, hi, positive};
}

TestReport factorization_check(const SplittingFamily& tau, const IncrementLaw& law, double p,
                               double v, std::size_t trials, std::uint64_t seed,
                               std::uint64_t stream_base, Execution ex) {
  require_p(p);
  if (!(v > 0.0 && v <= 1.0)) throw std::domain_error("v must lie in (0,1]");
  if (trials < 2) throw std::domain_error("factorization check needs at least 2 trials");
  std::size_t attempted = 0, ties = 0;
  auto powers = collect_kept<double>(trials, ex, attempted, ties,
                                     [&](std::size_t t) -> std::optional<double> {
                                       Trial trial = draw_trial(law, p, 0, seed, stream_base + t);
                                       try {
                                         const auto k = tau(trial.w.core(trial.g));
                                         return std::pow(v, static_cast<double>(k));
                                       } catch (const TieDetected&) {
                                         return std::nullopt;
                                       }
                                     });
  const double n = static_cast<double>(powers.size());
  const double mean = pairwise_sum(powers) / n;
  std::vector<double> sq(powers.size());
  std::transform(powers.begin(), powers.end(), sq.begin(),
                 [mean](double x) { return (x - mean) * (x - mean); });
  const double var = pairwise_sum(sq) / (n - 1.0);
  const double se_mean = std::sqrt(var / n);
  const double se = 2.0 * std::fabs(mean) * se_mean;
  const double estimate = mean * mean;
  // Written so that v = 1 gives exactly 1.
  const double target = p / (p + (1.0 - p) * (1.0 - v));
  const double diff = estimate - target;

  TestReport r;
  r.name = "factorization";
  r.statistic = estimate;
  r.n_a = powers.size();
  r.alpha = std::erfc(3.0 / std::sqrt(2.0));
  if (se > 0.0)
    r.p_value = std::erfc(std::fabs(diff / se) / std::sqrt(2.0));
  else
    r.p_value = diff == 0.0 ? 1.0 : 0.0;
  r.extras = {{"target", target}, {"standard_error", se}, {"mean_v_pow_tau", mean},
              {"ties", static_cast<double>(ties)}, {"attempted", static_cast<double>(attempted)}};
  return r;
}

}  // namespace splitlab
