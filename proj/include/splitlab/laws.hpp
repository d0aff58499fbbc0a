#pragma once

#include <cstdint>
#include <string>

#include "splitlab/rng.hpp"
#include "splitlab/window.hpp"

namespace splitlab {

/// Symmetric increment law. Each draw takes its sign from an independent
/// random bit and its magnitude from the law of |xi|, so the law and its
/// negation coincide by construction.
struct IncrementLaw {
  enum class Kind { gaussian, uniform, laplace, cauchy, rademacher };

  Kind kind = Kind::gaussian;
  double scale = 1.0;  ///< sigma, half-width a, b, or c; unused for rademacher

  bool diffuse() const noexcept { return kind != Kind::rademacher; }
  double sample(CounterRng& rng) const;
  std::string to_string() const;
};

/// gaussian:<sigma> | uniform:<a> | laplace:<b> | cauchy:<c> | rademacher.
/// A bare diffuse kind means scale 1. Throws std::invalid_argument.
IncrementLaw parse_law(const std::string& text);

/// count i.i.d. draws from stream `stream` of `seed`, anchored at index 0.
IncrementWindow sample_increments(const IncrementLaw& law, std::size_t count, std::uint64_t seed,
                                  std::uint64_t stream);

}  // namespace splitlab
