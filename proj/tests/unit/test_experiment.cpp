#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "splitlab/descriptors.hpp"
#include "splitlab/experiment.hpp"

using namespace splitlab;
using Catch::Approx;

namespace {

// Least k with u < sum_{i<=k} p (1-p)^i, by direct summation.
std::size_t geometric_by_summation(double p, double u) {
  double cdf = 0.0, term = p;
  for (std::size_t k = 0;; ++k) {
    cdf += term;
    if (u < cdf) return k;
    term *= 1.0 - p;
  }
}

}  // namespace

TEST_CASE("geometric inverse cdf examples", "[experiment]") {
  CHECK(sample_geometric(0.5, 0.99) == 6);
  CHECK(sample_geometric(0.5, 0.0) == 0);
  CHECK(sample_geometric(0.2, 0.2) == 1);
  for (double bad : {0.0, 1.0, -0.1, 1.5}) CHECK_THROWS_AS(sample_geometric(bad, 0.5), std::domain_error);
}

TEST_CASE("geometric draws agree with cumulative summation", "[experiment]") {
  for (double p : {0.05, 0.1, 0.3, 0.5, 0.9}) {
    for (int i = 0; i < 2000; ++i) {
      const double u = (i + 0.37) / 2000.0;
      // Skip points within rounding distance of a cdf jump.
      const std::size_t k = geometric_by_summation(p, u);
      const double upper = 1.0 - std::pow(1.0 - p, static_cast<double>(k + 1));
      const double lower = 1.0 - std::pow(1.0 - p, static_cast<double>(k));
      if (std::fabs(u - upper) < 1e-12 || std::fabs(u - lower) < 1e-12) continue;
      REQUIRE(sample_geometric(p, u) == k);
    }
  }
}

TEST_CASE("piece record worked example", "[experiment]") {
  auto tau = parse_family("argmin:identity", TiePolicy::flag);
  IncrementWindow w({0.4, -0.7, 1.2, 0.9}, -1);
  auto r = make_piece_record(tau, w, 2);
  CHECK(r.tau == 1);
  CHECK(r.co_tau == 1);
  CHECK(r.pre.values()[0] == 0.7);
  CHECK(r.pre.values()[1] == -0.4);
  CHECK(r.pre.size() == 2);
  CHECK(r.post == IncrementWindow({1.2, 0.9}));

  auto empty = make_piece_record(tau, IncrementWindow({0.3, -0.2}, -1), 0);
  CHECK(empty.tau == 0);
  CHECK(empty.co_tau == 0);
  CHECK(empty.pre.size() == 1);
  CHECK(empty.pre.values()[0] == -0.3);
  CHECK(empty.post.size() == 1);
  CHECK(empty.post.values()[0] == -0.2);
}

TEST_CASE("piece functionals examples", "[experiment]") {
  using A = std::array<double, 4>;
  CHECK(piece_functionals(IncrementWindow({1.0, -3.0}), 2) == A{-2.0, -2.0, 1.0, 1.0});
  CHECK(piece_functionals(IncrementWindow({4.0, 5.0}), 0) == A{0, 0, 0, 0});
  CHECK(piece_functionals(IncrementWindow({0.5}), 1) == A{0.5, 0, 0.5, 1});
  CHECK_THROWS_AS(piece_functionals(IncrementWindow({0.5}), 2), std::out_of_range);
}

TEST_CASE("experiment records honour the piece layout", "[experiment]") {
  auto tau = parse_family("argmin:cubepoly", TiePolicy::flag);
  ExperimentSettings s;
  s.p = 0.2;
  s.buffer = 3;
  s.trials = 300;
  s.seed = 5;
  auto out = splitting_experiment(tau, parse_law("gaussian:1"), s);
  REQUIRE(out.records.size() == 300);
  CHECK(out.ties == 0);
  for (const auto& r : out.records) {
    REQUIRE(r.pre.size() == r.tau + 3);
    REQUIRE(r.post.size() == r.co_tau + 3);
    // Rebuild the original increments from both pieces and re-split.
    const std::size_t g = r.tau + r.co_tau;
    std::vector<double> orig(g + 6);
    for (std::size_t k = 1; k <= r.tau + 3; ++k) orig[r.tau + 3 - k] = -r.pre.values()[k - 1];
    for (std::size_t k = 1; k <= r.co_tau + 3; ++k) orig[r.tau + 3 + k - 1] = r.post.values()[k - 1];
    REQUIRE(make_piece_record(tau, IncrementWindow(orig, -3), g) == r);
  }
}

TEST_CASE("tau plus co-tau has the geometric mean", "[experiment]") {
  auto tau = parse_family("argmin:identity", TiePolicy::flag);
  ExperimentSettings s;
  s.p = 0.3;
  s.buffer = 0;
  s.trials = 100000;
  s.seed = 17;
  auto out = splitting_experiment(tau, parse_law("gaussian:1"), s);
  double sum = 0.0, sq = 0.0;
  for (const auto& r : out.records) {
    const double g = static_cast<double>(r.tau + r.co_tau);
    sum += g;
    sq += g * g;
  }
  const double n = static_cast<double>(out.records.size());
  const double mean = sum / n;
  const double se = std::sqrt((sq / n - mean * mean) / n);
  CHECK(std::fabs(mean - 7.0 / 3.0) < 3.0 * se);
}

TEST_CASE("serial and parallel experiments agree", "[experiment]") {
  auto tau = parse_family("argmin:identity", TiePolicy::flag);
  ExperimentSettings s;
  s.p = 0.1;
  s.trials = 500;
  s.seed = 2;
  auto law = parse_law("laplace:1");
  CHECK(splitting_experiment(tau, law, s, Execution::serial).records ==
        splitting_experiment(tau, law, s, Execution::parallel).records);
}

TEST_CASE("rademacher ties are dropped and topped up", "[experiment]") {
  auto tau = parse_family("argmin:identity", TiePolicy::flag);
  ExperimentSettings s;
  s.p = 0.3;
  s.trials = 200;
  auto out = splitting_experiment(tau, parse_law("rademacher"), s);
  CHECK(out.records.size() == 200);
  CHECK(out.ties > 0);
  CHECK(out.attempted >= out.ties + 200);
}

TEST_CASE("factorization identity examples", "[experiment]") {
  auto tau = parse_family("argmin:identity", TiePolicy::flag);
  auto law = parse_law("gaussian:1");
  auto exact = factorization_check(tau, law, 0.3, 1.0, 1000, 1);
  CHECK(exact.statistic == 1.0);
  CHECK(*exact.p_value == 1.0);

  auto r = factorization_check(tau, law, 0.5, 0.5, 20000, 4);
  CHECK(r.extras[0].second == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(r.passed());

  // v -> 0: E[v^tau] tends to P(tau_g = 0) = sqrt(p).
  auto small = factorization_check(tau, law, 0.2, 1e-3, 100000, 8);
  CHECK(small.passed());
  const double mean = small.extras[2].second;
  const double se_mean = small.extras[1].second / (2.0 * mean);
  CHECK(std::fabs(mean - std::sqrt(0.2)) < 3.0 * se_mean + 1e-3);

  CHECK_THROWS_AS(factorization_check(tau, law, 0.5, 0.0, 100, 1), std::domain_error);
  CHECK_THROWS_AS(factorization_check(tau, law, 1.0, 0.5, 100, 1), std::domain_error);
}
