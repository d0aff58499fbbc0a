#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

namespace splitlab {

/// An odd real map applied entrywise to increments. The walk of the images
/// is again a symmetric walk adapted to the same noise.
class OddMap {
 public:
  using Fn = std::function<double(double)>;

  OddMap(std::string name, Fn fn);

  static OddMap identity();
  static OddMap negation();
  /// x^3 - x
  static OddMap cubepoly();
  static OddMap sine();
  /// sign(x) |x|^p, p > 0
  static OddMap signpow(double p);

  const std::string& name() const noexcept { return name_; }
  double operator()(double x) const { return fn_(x); }

 private:
  std::string name_;
  Fn fn_;
};

/// Parses identity | negation | cubepoly | sine | signpow:<p>.
/// Throws std::invalid_argument on anything else.
OddMap parse_odd_map(const std::string& text);

/// First sample x with kappa(-x) != -kappa(x), if any.
std::optional<double> find_oddness_violation(const OddMap& kappa,
                                             std::span<const double> samples);

}  // namespace splitlab
