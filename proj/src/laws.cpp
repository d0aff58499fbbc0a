#include "splitlab/laws.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "splitlab/util.hpp"

namespace splitlab {

double IncrementLaw::sample(CounterRng& rng) const {
  const std::uint64_t bits = rng.next_u64();
  const bool negative = (bits & 1u) != 0;
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
  double magnitude = 1.0;
  switch (kind) {
    case Kind::gaussian: {
      const double v = rng.uniform();
      magnitude = scale * std::sqrt(-2.0 * std::log1p(-u)) * std::fabs(std::cos(2.0 * std::numbers::pi * v));
      break;
    }
    case Kind::uniform: magnitude = scale * u; break;
    case Kind::laplace: magnitude = -scale * std::log1p(-u); break;
    case Kind::cauchy: magnitude = scale * std::tan(0.5 * std::numbers::pi * u); break;
    case Kind::rademacher: magnitude = 1.0; break;
  }
  return negative ? -magnitude : magnitude;
}

std::string IncrementLaw::to_string() const {
  switch (kind) {
    case Kind::gaussian: return "gaussian:" + format_double(scale);
    case Kind::uniform: return "uniform:" + format_double(scale);
    case Kind::laplace: return "laplace:" + format_double(scale);
    case Kind::cauchy: return "cauchy:" + format_double(scale);
    case Kind::rademacher: return "rademacher";
  }
  return "?";
}

IncrementLaw parse_law(const std::string& text) {
  auto pos = text.find(':');
  const std::string kind = text.substr(0, pos);
  IncrementLaw law;
  if (kind == "rademacher") {
    if (pos != std::string::npos) throw std::invalid_argument("rademacher takes no parameter");
    law.kind = IncrementLaw::Kind::rademacher;
    return law;
  }
  if (kind == "gaussian") law.kind = IncrementLaw::Kind::gaussian;
  else if (kind == "uniform") law.kind = IncrementLaw::Kind::uniform;
  else if (kind == "laplace") law.kind = IncrementLaw::Kind::laplace;
  else if (kind == "cauchy") law.kind = IncrementLaw::Kind::cauchy;
  else throw std::invalid_argument("unknown law '" + text + "'");
  law.scale = pos == std::string::npos ? 1.0 : parse_double(text.substr(pos + 1));
  if (!(law.scale > 0.0) || !std::isfinite(law.scale))
    throw std::invalid_argument("law scale must be positive");
  return law;
}

IncrementWindow sample_increments(const IncrementLaw& law, std::size_t count, std::uint64_t seed,
                                  std::uint64_t stream) {
  CounterRng rng(seed, stream);
  std::vector<double> v(count);
  for (auto& x : v) x = law.sample(rng);
  return IncrementWindow(std::move(v), 0);
}

}  // namespace splitlab
