#include "splitlab/odd_map.hpp"

#include <cmath>
#include <stdexcept>

#include "splitlab/util.hpp"

namespace splitlab {

OddMap::OddMap(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

OddMap OddMap::identity() {
  return OddMap("identity", [](double x) { return x; });
}

OddMap OddMap::negation() {
  return OddMap("negation", [](double x) { return -x; });
}

OddMap OddMap::cubepoly() {
  return OddMap("cubepoly", [](double x) { return x * x * x - x; });
}

OddMap OddMap::sine() {
  return OddMap("sine", [](double x) { return std::sin(x); });
}

OddMap OddMap::signpow(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("signpow exponent must be positive");
  return OddMap("signpow:" + format_double(p),
                [p](double x) { return std::copysign(std::pow(std::fabs(x), p), x); });
}

OddMap parse_odd_map(const std::string& text) {
  if (text == "identity") return OddMap::identity();
  if (text == "negation") return OddMap::negation();
  if (text == "cubepoly") return OddMap::cubepoly();
  if (text == "sine") return OddMap::sine();
  if (text.rfind("signpow:", 0) == 0) return OddMap::signpow(parse_double(text.substr(8)));
  throw std::invalid_argument("unknown odd map '" + text + "'");
}

std::optional<double> find_oddness_violation(const OddMap& kappa,
                                             std::span<const double> samples) {
  for (double x : samples) {
    if (kappa(-x) != -kappa(x)) return x;
  }
  return std::nullopt;
}

}  // namespace splitlab
