#include "splitlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "splitlab/rng.hpp"

namespace splitlab {

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Jacobi-theta form, fast for small lambda.
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double s = 0.0;
    for (int k = 1; k < 200; k += 2) {
      const double term = std::exp(-static_cast<double>(k) * k * c);
      s += term;
      if (term < 1e-18) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s, 0.0, 1.0);
  }
  double s = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

TestReport ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::domain_error("KS test needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  // The remaining tail ends at 1 for one side; the gap there is covered by
  // the last step above.
  TestReport r;
  r.name = "ks-two-sample";
  r.statistic = d;
  r.n_a = x.size();
  r.n_b = y.size();
  r.p_value = kolmogorov_survival(std::sqrt(na * nb / (na + nb)) * d);
  return r;
}

TestReport chi_square_gof(std::span<const std::uint64_t> counts, std::span<const double> probs) {
  if (counts.size() != probs.size() || counts.empty())
    throw std::domain_error("chi-square needs matching nonempty counts and probabilities");
  double total_p = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::domain_error("negative probability");
    total_p += p;
  }
  if (std::fabs(total_p - 1.0) > 1e-12) throw std::domain_error("probabilities do not sum to 1");
  const double n = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  double stat = 0.0;
  int bins = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (probs[k] == 0.0) {
      if (counts[k] > 0) throw std::domain_error("observation in a zero-probability bin");
      continue;
    }
    ++bins;
    const double e = n * probs[k];
    const double diff = static_cast<double>(counts[k]) - e;
    stat += diff * diff / e;
  }
  TestReport r;
  r.name = "chi-square";
  r.statistic = stat;
  r.n_a = static_cast<std::size_t>(n);
  const int dof = bins - 1;
  r.p_value = dof <= 0 ? 1.0 : boost::math::gamma_q(0.5 * dof, 0.5 * stat);
  r.extras.emplace_back("dof", dof);
  return r;
}

void VectorSample::push(std::span<const double> row) {
  if (dim == 0) dim = row.size();
  if (row.size() != dim) throw std::invalid_argument("row dimension mismatch");
  data.insert(data.end(), row.begin(), row.end());
}

namespace {

// Double-centred Euclidean distance matrix, row-major n x n.
std::vector<double> centred_distances(const VectorSample& s) {
  const std::size_t n = s.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double acc = 0.0;
      auto a = s.row(i);
      auto b = s.row(j);
      for (std::size_t c = 0; c < s.dim; ++c) acc += (a[c] - b[c]) * (a[c] - b[c]);
      d[i * n + j] = d[j * n + i] = std::sqrt(acc);
    }
  std::vector<double> row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    row_mean[i] = pairwise_sum(std::span<const double>(d).subspan(i * n, n)) / static_cast<double>(n);
    grand += row_mean[i];
  }
  grand /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] += grand - row_mean[i] - row_mean[j];
  return d;
}

double mean_product(const std::vector<double>& a, const std::vector<double>& b, std::size_t n,
                     const std::vector<std::size_t>* perm) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* ar = &a[i * n];
    double row = 0.0;
    if (perm) {
      const double* br = &b[(*perm)[i] * n];
      for (std::size_t j = 0; j < n; ++j) row += ar[j] * br[(*perm)[j]];
    } else {
      const double* br = &b[i * n];
      for (std::size_t j = 0; j < n; ++j) row += ar[j] * br[j];
    }
    total += row;
  }
  return total / (static_cast<double>(n) * static_cast<double>(n));
}

void check_pairs(const VectorSample& x, const VectorSample& y) {
  if (x.size() != y.size()) throw std::domain_error("independence test needs paired samples");
  if (x.size() < 2) throw std::domain_error("independence test needs at least 2 pairs");
}

}  // namespace

double distance_correlation(const VectorSample& x, const VectorSample& y) {
  check_pairs(x, y);
  const std::size_t n = x.size();
  const auto a = centred_distances(x);
  const auto b = centred_distances(y);
  const double vx = mean_product(a, a, n, nullptr);
  const double vy = mean_product(b, b, n, nullptr);
  if (vx <= 0.0 || vy <= 0.0) return 0.0;
  const double cov = mean_product(a, b, n, nullptr);
  return std::sqrt(std::max(cov, 0.0) / std::sqrt(vx * vy));
}

TestReport permutation_independence(const VectorSample& x, const VectorSample& y, std::size_t B,
                                    std::uint64_t seed, Execution ex) {
  check_pairs(x, y);
  if (B < 99) throw std::domain_error("permutation test needs B >= 99");
  const std::size_t n = x.size();
  const auto a = centred_distances(x);
  const auto b = centred_distances(y);
  const double vx = mean_product(a, a, n, nullptr);
  const double vy = mean_product(b, b, n, nullptr);

  TestReport r;
  r.name = "distance-correlation-permutation";
  r.n_a = n;
  r.n_b = n;
  r.extras.emplace_back("permutations", static_cast<double>(B));
  if (vx <= 0.0 || vy <= 0.0) {
    r.statistic = 0.0;
    r.p_value = 1.0;
    return r;
  }
  const double norm = std::sqrt(vx * vy);
  auto dcor = [&](double cov) { return std::sqrt(std::max(cov, 0.0) / norm); };
  const double observed = dcor(mean_product(a, b, n, nullptr));

  auto exceed = map_indices<char>(B, ex, [&](std::size_t k) -> char {
    CounterRng rng(seed, k);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    return dcor(mean_product(a, b, n, &perm)) >= observed;
  });
  const auto hits = static_cast<double>(std::count(exceed.begin(), exceed.end(), 1));
  r.statistic = observed;
  r.p_value = (1.0 + hits) / (static_cast<double>(B) + 1.0);
  return r;
}

std::vector<double> arcsine_pmf(std::size_t n) {
  std::vector<double> u(n + 1);
  u[0] = 1.0;
  for (std::size_t j = 1; j <= n; ++j)
    u[j] = u[j - 1] * static_cast<double>(2 * j - 1) / static_cast<double>(2 * j);
  std::vector<double> pmf(n + 1);
  for (std::size_t k = 0; k <= n; ++k) pmf[k] = u[k] * u[n - k];
  return pmf;
}

}  // namespace splitlab
