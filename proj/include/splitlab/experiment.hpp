#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "splitlab/families.hpp"
#include "splitlab/laws.hpp"
#include "splitlab/parallel.hpp"
#include "splitlab/stats.hpp"
#include "splitlab/window.hpp"

namespace splitlab {

/// Inverse-cdf draw from P(g = k) = p (1-p)^k; the result k is the least
/// with u < 1 - (1-p)^(k+1). Throws std::domain_error unless 0 < p < 1.
std::size_t sample_geometric(double p, double u);

struct PieceRecord {
  std::size_t tau = 0;
  std::size_t co_tau = 0;
  IncrementWindow pre;   // reflected piece, tau + buffer entries
  IncrementWindow post;  // shifted piece, co_tau + buffer entries

  bool operator==(const PieceRecord&) const = default;
};

/// Splits a window holding increments -buffer+1 .. g+buffer at tau_g.
PieceRecord make_piece_record(const SplittingFamily& tau, const IncrementWindow& w, std::size_t g);

struct ExperimentSettings {
  double p = 0.3;
  std::size_t buffer = 4;
  std::size_t trials = 1000;  // kept trials
  std::uint64_t seed = 1;
  std::uint64_t stream_base = 0;
};

struct ExperimentOutput {
  std::vector<PieceRecord> records;
  std::size_t attempted = 0;
  std::size_t ties = 0;
};

/// Trial t uses stream stream_base + t: one uniform for g, then the
/// g + 2 buffer increments. Tie trials are dropped and further trials are
/// drawn until `trials` records are kept.
ExperimentOutput splitting_experiment(const SplittingFamily& tau, const IncrementLaw& law,
                                      const ExperimentSettings& settings,
                                      Execution ex = Execution::parallel);

/// (X_j, min and max of the walk on [0, j], number of positive increments
/// among the first j). Throws std::out_of_range if j > len(w).
std::array<double, 4> piece_functionals(const IncrementWindow& w, std::size_t j);

/// Monte-Carlo E[v^tau_g] squared against p / (1 - (1-p) v). The p-value is
/// two-sided normal on the propagated standard error; alpha is the 3-SE
/// level. Throws std::domain_error for p outside (0,1) or v outside (0,1].
TestReport factorization_check(const SplittingFamily& tau, const IncrementLaw& law,
                               double p, double v, std::size_t trials, std::uint64_t seed,
                               std::uint64_t stream_base = 0, Execution ex = Execution::parallel);

}  // namespace splitlab
