#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splitlab/odd_map.hpp"

namespace splitlab {

enum class TiePolicy {
  earliest,  ///< smallest index among tied candidates
  flag,      ///< throw TieDetected
};

/// Values of a family on every sub-window (i, j] of a base window of
/// length N, 0 <= i <= j <= N. Entry (i, j) is relative to i, so the
/// doubly-indexed time is i + at(i, j).
class TauTable {
 public:
  explicit TauTable(std::size_t n);

  std::size_t horizon() const noexcept { return n_; }
  std::size_t at(std::size_t i, std::size_t j) const { return cells_[i * (n_ + 1) + j]; }
  void set(std::size_t i, std::size_t j, std::size_t v) {
    cells_[i * (n_ + 1) + j] = static_cast<std::uint32_t>(v);
  }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> cells_;
};

/// An adapted family of random times: maps an n-increment prefix to a time
/// in [0, n]. The evaluator sees nothing but the prefix, which makes
/// adaptedness structural.
class SplittingFamily {
 public:
  using EvalFn = std::function<std::size_t(std::span<const double>)>;
  using TableFn = std::function<TauTable(std::span<const double>)>;

  /// When no table function is given, tables are filled by evaluating every
  /// sub-window.
  SplittingFamily(std::string descriptor, EvalFn eval, TableFn table = {});

  /// Throws std::logic_error if the evaluator leaves [0, n].
  std::size_t operator()(std::span<const double> w) const;
  TauTable table(std::span<const double> w) const;

  const std::string& descriptor() const noexcept { return descriptor_; }

 private:
  std::string descriptor_;
  EvalFn eval_;
  TableFn table_;
};

/// First-hit rule of a stopping time on increment prefixes. nullopt means
/// the rule has not fired within the window (censored at its length).
class StoppingTimeRule {
 public:
  using HitFn = std::function<std::optional<std::size_t>(std::span<const double>)>;

  StoppingTimeRule(std::string descriptor, HitFn hit);

  /// Throws std::logic_error if the rule reports a time outside [1, N].
  std::optional<std::size_t> first_hit(std::span<const double> w) const;

  const std::string& descriptor() const noexcept { return descriptor_; }

 private:
  std::string descriptor_;
  HitFn hit_;
};

/// Per-level events A_n used to break the min-at-0 / min-at-n dichotomy in
/// the chooser recursion. Valid when exactly one of A_n(w), A_n(reflected w)
/// holds.
class ChooserSet {
 public:
  using Predicate = std::function<bool(std::size_t level, std::span<const double>)>;

  ChooserSet(std::string descriptor, Predicate pred);

  bool operator()(std::size_t level, std::span<const double> w) const {
    return pred_(level, w);
  }
  const std::string& descriptor() const noexcept { return descriptor_; }

 private:
  std::string descriptor_;
  Predicate pred_;
};

/// Sorted iterate times of a stopping rule, always containing 0.
class RangeSet {
 public:
  RangeSet() : points_{0} {}
  explicit RangeSet(std::vector<std::size_t> sorted_points);

  bool contains(std::size_t n) const;
  std::size_t max() const { return points_.back(); }
  /// Largest point <= n.
  std::size_t last_upto(std::size_t n) const;
  const std::vector<std::size_t>& points() const noexcept { return points_; }

  bool operator==(const RangeSet&) const = default;

 private:
  std::vector<std::size_t> points_;
};

/// Index of the minimum of the kappa-walk.
std::size_t argmin_index(std::span<const double> w, const OddMap& kappa, TiePolicy ties);

SplittingFamily argmin_family(OddMap kappa, TiePolicy ties = TiePolicy::flag);

/// m + tau(entries m+1..n). Throws std::out_of_range unless 0 <= m <= n <= len.
std::size_t double_index(const SplittingFamily& tau, std::size_t m, std::size_t n,
                         std::span<const double> w);

/// Iterates 0 = g^0 < g^1 < ... of the rule within [0, horizon], stopping at
/// the first censored step. Throws std::out_of_range if horizon > len.
RangeSet stopping_iterates(const StoppingTimeRule& gamma, std::span<const double> w,
                           std::size_t horizon);

/// Last iterate at or before n.
std::size_t bracket_eval(const StoppingTimeRule& gamma, std::size_t n,
                         std::span<const double> w);

SplittingFamily bracket_family(StoppingTimeRule gamma);

/// First n >= 1 with tau_n = n, or nullopt when none within the window.
std::optional<std::size_t> diag_inf(const SplittingFamily& tau, std::span<const double> w);

StoppingTimeRule diag_inf_rule(SplittingFamily tau);

/// First n with kappa-walk < 0. Under TiePolicy::flag a walk value of
/// exactly 0 before firing throws TieDetected.
StoppingTimeRule descending_ladder(OddMap kappa = OddMap::identity(),
                                   TiePolicy ties = TiePolicy::flag);
/// First n with kappa-walk > 0.
StoppingTimeRule ascending_ladder(OddMap kappa = OddMap::identity(),
                                  TiePolicy ties = TiePolicy::flag);
StoppingTimeRule never_rule();
/// Fires at time k whenever the window is long enough.
StoppingTimeRule constant_rule(std::size_t k);

/// A_n = {sum of kappa_n(increments) < 0}, with kappa_n taken from the
/// level list; past the list, `fallback` is used if given, otherwise the
/// list repeats cyclically. An endpoint of exactly 0 throws TieDetected
/// under TiePolicy::flag and counts as "not in A_n" otherwise.
ChooserSet endpoint_chooser(std::vector<OddMap> levels,
                            std::optional<OddMap> fallback = std::nullopt,
                            TiePolicy ties = TiePolicy::flag);

/// A_n = {first increment < 0} at every level. Valid only at level 1.
ChooserSet first_entry_chooser();

/// Honest family built level by level from a chooser. Evaluation fills a
/// memo table over all sub-windows, O(N^2) chooser calls.
SplittingFamily j_construction(ChooserSet chooser);

/// The memo table itself. Throws ChooserConflict or propagates TieDetected.
TauTable j_table(const ChooserSet& chooser, std::span<const double> w);

enum class ChooserValidity { valid, both_hold, neither_holds };

/// Evaluates A_n on entries 1..n of w and on their reflection about n.
ChooserValidity validate_chooser(const ChooserSet& chooser, std::span<const double> w,
                                 std::size_t n);

const char* to_string(ChooserValidity v);

}  // namespace splitlab
