#pragma once

#include <cstddef>

#include "splitlab/families.hpp"
#include "splitlab/verify.hpp"
#include "splitlab/window.hpp"

namespace splitlab {

// Path-level sweeps: every index combination up to a horizon on one window.
// The characterization sweep reads all values from two sub-window tables
// (the window and its full reflection); the reference variant calls the
// single-index checkers in the same order and must agree on tie-free paths.

struct CharacterizationVerdicts {
  Verdict eq_main;
  Verdict reflection;
  Verdict honesty;

  bool operator==(const CharacterizationVerdicts&) const = default;
};

CharacterizationVerdicts sweep_characterization(const SplittingFamily& tau,
                                                const IncrementWindow& w, std::size_t horizon);

CharacterizationVerdicts sweep_characterization_reference(const SplittingFamily& tau,
                                                          const IncrementWindow& w,
                                                          std::size_t horizon);

struct SelfDualVerdicts {
  Verdict self_duality;
  Verdict regenerative;
  Verdict roundtrip_family;
  Verdict roundtrip_rule;
};

/// Self-duality for every n <= horizon, regeneration, and both roundtrips
/// with the bracket family of gamma.
SelfDualVerdicts sweep_selfdual(const StoppingTimeRule& gamma, const IncrementWindow& w,
                                std::size_t horizon);

}  // namespace splitlab
