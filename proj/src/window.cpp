#include "splitlab/window.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "splitlab/errors.hpp"
#include "splitlab/odd_map.hpp"

namespace splitlab {

TieDetected::TieDetected(std::vector<std::size_t> indices)
    : std::runtime_error("tie detected"), indices_(std::move(indices)) {}

ChooserConflict::ChooserConflict(std::size_t begin, std::size_t end, std::size_t from_prefix,
                                 std::size_t from_suffix)
    : std::runtime_error("chooser recursion branches disagree on (" + std::to_string(begin) +
                         ", " + std::to_string(end) + "]"),
      begin_(begin),
      end_(end),
      from_prefix_(from_prefix),
      from_suffix_(from_suffix) {}

IncrementWindow::IncrementWindow(std::vector<double> values, std::int64_t start_index)
    : start_index_(start_index), values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("increment window entry is not finite");
  }
}

double IncrementWindow::at_index(std::int64_t k) const {
  if (k < first_index() || k > last_index())
    throw std::out_of_range("index " + std::to_string(k) + " outside window");
  return values_[static_cast<std::size_t>(k - first_index())];
}

std::span<const double> IncrementWindow::span_of(std::int64_t first, std::int64_t last) const {
  if (last < first) return {};
  if (!covers(first, last)) throw std::out_of_range("window does not cover requested indices");
  return std::span<const double>(values_).subspan(static_cast<std::size_t>(first - first_index()),
                                                  static_cast<std::size_t>(last - first + 1));
}

std::span<const double> IncrementWindow::core(std::size_t n) const {
  return span_of(1, static_cast<std::int64_t>(n));
}

WalkView::WalkView(std::span<const double> increments) {
  values_.reserve(increments.size() + 1);
  double x = 0.0;
  values_.push_back(x);
  for (double d : increments) {
    x += d;
    values_.push_back(x);
  }
}

WalkView walk_values(std::span<const double> increments) { return WalkView(increments); }

WalkView walk_values(const IncrementWindow& w) { return WalkView(w.values()); }

IncrementWindow shift(const IncrementWindow& w, std::int64_t m) {
  if (m < w.start_index() || m > w.last_index())
    throw std::out_of_range("shift beyond window");
  auto tail = w.span_of(m + 1, w.last_index());
  return IncrementWindow(std::vector<double>(tail.begin(), tail.end()), 0);
}

IncrementWindow reflect_about(const IncrementWindow& w, std::int64_t m) {
  if (m < 0 || w.start_index() > 0 || w.last_index() < m)
    throw std::out_of_range("reflection needs the window to cover 1..m");
  const std::int64_t len = m - w.start_index();
  std::vector<double> out(static_cast<std::size_t>(len));
  for (std::int64_t k = 1; k <= len; ++k) out[static_cast<std::size_t>(k - 1)] = -w.at_index(m - k + 1);
  return IncrementWindow(std::move(out), 0);
}

IncrementWindow apply_odd_map(const IncrementWindow& w, const OddMap& kappa) {
  std::vector<double> out;
  out.reserve(w.size());
  for (double v : w.values()) out.push_back(kappa(v));
  return IncrementWindow(std::move(out), w.start_index());
}

}  // namespace splitlab
