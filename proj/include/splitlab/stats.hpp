#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "splitlab/parallel.hpp"

namespace splitlab {

struct TestReport {
  std::string name;
  double statistic = 0.0;
  std::optional<double> p_value;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double alpha = 0.01;
  /// Named auxiliary numbers (targets, standard errors, ...).
  std::vector<std::pair<std::string, double>> extras;

  bool passed() const { return !p_value || *p_value >= alpha; }
};

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

/// Two-sample Kolmogorov-Smirnov statistic with the asymptotic p-value at
/// effective size n_a n_b / (n_a + n_b). Throws std::domain_error on an
/// empty sample.
TestReport ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Pearson goodness of fit, dof = (bins with positive probability) - 1.
/// Throws std::domain_error if probs do not sum to 1 within 1e-12, have a
/// negative entry, or a zero-probability bin has a positive count.
TestReport chi_square_gof(std::span<const std::uint64_t> counts, std::span<const double> probs);

/// Row-major sample of fixed-dimension vectors.
struct VectorSample {
  std::size_t dim = 0;
  std::vector<double> data;

  std::size_t size() const { return dim == 0 ? 0 : data.size() / dim; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data).subspan(i * dim, dim);
  }
  void push(std::span<const double> row);
};

/// Sample distance correlation (V-statistic, Euclidean distances). Zero when
/// either side has zero distance variance.
double distance_correlation(const VectorSample& x, const VectorSample& y);

/// Permutation test of independence with distance correlation:
/// p = (1 + #{permuted >= observed}) / (B + 1). Permutation b is drawn from
/// stream b of `seed`. Throws std::domain_error for fewer than 2 pairs, a
/// size mismatch, or B < 99.
TestReport permutation_independence(const VectorSample& x, const VectorSample& y, std::size_t B,
                                    std::uint64_t seed, Execution ex = Execution::parallel);

/// Law of the argmin of a tie-free symmetric walk on [0, n]:
/// pmf(k) = u_k u_{n-k}, u_j = C(2j, j) / 4^j.
std::vector<double> arcsine_pmf(std::size_t n);

}  // namespace splitlab
