#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace splitlab {

/// Two or more times share the extremal value; the path lies in a null set
/// for diffuse laws and is skipped rather than tie-broken.
class TieDetected : public std::runtime_error {
 public:
  explicit TieDetected(std::vector<std::size_t> indices);

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

/// The two overlapping branches of the chooser recursion disagree on a
/// sub-window. Cannot happen for a valid chooser.
class ChooserConflict : public std::runtime_error {
 public:
  ChooserConflict(std::size_t begin, std::size_t end, std::size_t from_prefix,
                  std::size_t from_suffix);

  std::size_t begin() const noexcept { return begin_; }
  std::size_t end() const noexcept { return end_; }
  std::size_t from_prefix() const noexcept { return from_prefix_; }
  std::size_t from_suffix() const noexcept { return from_suffix_; }

 private:
  std::size_t begin_;
  std::size_t end_;
  std::size_t from_prefix_;
  std::size_t from_suffix_;
};

}  // namespace splitlab
