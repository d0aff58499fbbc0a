#pragma once

#include <string>

#include "splitlab/families.hpp"

namespace splitlab {

// Plain-text vocabulary for families and rules:
//
//   argmin:<kappa>
//   bracket:<rule>
//   jconstruct:<kappa>[,<kappa>...][,default=<kappa>]
//
//   ladder-desc[:<kappa>] | ladder-asc[:<kappa>] | never | const:<k>
//
// with kappa one of identity, negation, cubepoly, sine, signpow:<p>.
// A jconstruct level list without a default repeats cyclically.

SplittingFamily parse_family(const std::string& text, TiePolicy ties);
StoppingTimeRule parse_rule(const std::string& text, TiePolicy ties);
ChooserSet parse_chooser(const std::string& text, TiePolicy ties);

}  // namespace splitlab
