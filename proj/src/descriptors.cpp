#include "splitlab/descriptors.hpp"

#include <stdexcept>

#include "splitlab/util.hpp"

namespace splitlab {

namespace {

std::pair<std::string, std::string> head_tail(const std::string& text) {
  auto pos = text.find(':');
  if (pos == std::string::npos) return {text, ""};
  return {text.substr(0, pos), text.substr(pos + 1)};
}

}  // namespace

StoppingTimeRule parse_rule(const std::string& text, TiePolicy ties) {
  auto [kind, rest] = head_tail(text);
  if (kind == "ladder-desc")
    return descending_ladder(rest.empty() ? OddMap::identity() : parse_odd_map(rest), ties);
  if (kind == "ladder-asc")
    return ascending_ladder(rest.empty() ? OddMap::identity() : parse_odd_map(rest), ties);
  if (kind == "never" && rest.empty()) return never_rule();
  if (kind == "const") {
    long long k = parse_integer(rest);
    if (k < 1) throw std::invalid_argument("const rule needs k >= 1");
    return constant_rule(static_cast<std::size_t>(k));
  }
  throw std::invalid_argument("unknown stopping rule '" + text + "'");
}

ChooserSet parse_chooser(const std::string& text, TiePolicy ties) {
  if (text == "first-entry") return first_entry_chooser();
  std::vector<OddMap> levels;
  std::optional<OddMap> fallback;
  for (const auto& item : split(text, ',')) {
    if (item.rfind("default=", 0) == 0) {
      if (fallback) throw std::invalid_argument("chooser has two defaults");
      fallback = parse_odd_map(item.substr(8));
    } else {
      if (fallback) throw std::invalid_argument("chooser default must come last");
      levels.push_back(parse_odd_map(item));
    }
  }
  return endpoint_chooser(std::move(levels), std::move(fallback), ties);
}

SplittingFamily parse_family(const std::string& text, TiePolicy ties) {
  auto [kind, rest] = head_tail(text);
  if (rest.empty()) throw std::invalid_argument("family '" + text + "' lacks parameters");
  if (kind == "argmin") return argmin_family(parse_odd_map(rest), ties);
  if (kind == "bracket") return bracket_family(parse_rule(rest, ties));
  if (kind == "jconstruct") return j_construction(parse_chooser(rest, ties));
  throw std::invalid_argument("unknown family kind '" + kind + "'");
}

}  // namespace splitlab
