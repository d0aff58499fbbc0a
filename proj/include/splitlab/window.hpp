#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace splitlab {

class OddMap;

/// A finite block of walk increments. Entry at position p carries the
/// original index start_index + 1 + p, so a window with start_index = -b
/// keeps b entries of left buffer in front of increment 1.
class IncrementWindow {
 public:
  IncrementWindow() = default;

  /// Throws std::invalid_argument if any entry is NaN or infinite.
  explicit IncrementWindow(std::vector<double> values, std::int64_t start_index = 0);

  std::int64_t start_index() const noexcept { return start_index_; }
  std::int64_t first_index() const noexcept { return start_index_ + 1; }
  std::int64_t last_index() const noexcept {
    return start_index_ + static_cast<std::int64_t>(values_.size());
  }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t pos) const { return values_[pos]; }

  /// Entry carrying original index k. Throws std::out_of_range.
  double at_index(std::int64_t k) const;

  bool covers(std::int64_t first, std::int64_t last) const noexcept {
    return first >= first_index() && last <= last_index();
  }

  /// Entries with original indices first..last (inclusive); empty when
  /// last < first. Throws std::out_of_range if not covered.
  std::span<const double> span_of(std::int64_t first, std::int64_t last) const;

  /// The first n increments 1..n, ignoring any left buffer.
  std::span<const double> core(std::size_t n) const;

  bool operator==(const IncrementWindow&) const = default;

 private:
  std::int64_t start_index_ = 0;
  std::vector<double> values_;
};

/// Walk values X_0 = 0, X_1, ..., X_n built from increments.
class WalkView {
 public:
  explicit WalkView(std::span<const double> increments);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

WalkView walk_values(std::span<const double> increments);
WalkView walk_values(const IncrementWindow& w);

/// Increments seen by the time shift by m: entries m+1, m+2, ... re-anchored
/// at index 0. Throws std::out_of_range unless start_index <= m <= last_index.
IncrementWindow shift(const IncrementWindow& w, std::int64_t m);

/// Increments seen by the reflection about m: output entry k is
/// -(entry m-k+1), for k = 1 .. m - start_index (left buffer included).
/// Throws std::out_of_range unless the window covers 1..m.
IncrementWindow reflect_about(const IncrementWindow& w, std::int64_t m);

/// Entrywise image under an odd map; start_index preserved.
IncrementWindow apply_odd_map(const IncrementWindow& w, const OddMap& kappa);

}  // namespace splitlab
