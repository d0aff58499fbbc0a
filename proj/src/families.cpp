#include "splitlab/families.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "splitlab/errors.hpp"

namespace splitlab {

TauTable::TauTable(std::size_t n) : n_(n), cells_((n + 1) * (n + 1), 0) {}

SplittingFamily::SplittingFamily(std::string descriptor, EvalFn eval, TableFn table)
    : descriptor_(std::move(descriptor)), eval_(std::move(eval)), table_(std::move(table)) {}

std::size_t SplittingFamily::operator()(std::span<const double> w) const {
  const std::size_t t = eval_(w);
  if (t > w.size())
    throw std::logic_error(descriptor_ + " returned " + std::to_string(t) + " on a window of length " +
                           std::to_string(w.size()));
  return t;
}

TauTable SplittingFamily::table(std::span<const double> w) const {
  if (table_) return table_(w);
  TauTable t(w.size());
  for (std::size_t i = 0; i <= w.size(); ++i)
    for (std::size_t j = i + 1; j <= w.size(); ++j) t.set(i, j, (*this)(w.subspan(i, j - i)));
  return t;
}

StoppingTimeRule::StoppingTimeRule(std::string descriptor, HitFn hit)
    : descriptor_(std::move(descriptor)), hit_(std::move(hit)) {}

std::optional<std::size_t> StoppingTimeRule::first_hit(std::span<const double> w) const {
  auto h = hit_(w);
  if (h && (*h < 1 || *h > w.size()))
    throw std::logic_error(descriptor_ + " fired outside [1, N]");
  return h;
}

ChooserSet::ChooserSet(std::string descriptor, Predicate pred)
    : descriptor_(std::move(descriptor)), pred_(std::move(pred)) {}

RangeSet::RangeSet(std::vector<std::size_t> sorted_points) : points_(std::move(sorted_points)) {
  if (points_.empty() || points_.front() != 0 || !std::is_sorted(points_.begin(), points_.end()))
    throw std::invalid_argument("range set must be sorted and start at 0");
}

bool RangeSet::contains(std::size_t n) const {
  return std::binary_search(points_.begin(), points_.end(), n);
}

std::size_t RangeSet::last_upto(std::size_t n) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), n);
  return *std::prev(it);
}

std::size_t argmin_index(std::span<const double> w, const OddMap& kappa, TiePolicy ties) {
  double x = 0.0;
  double best = 0.0;
  std::size_t best_at = 0;
  std::vector<std::size_t> tied;
  for (std::size_t k = 0; k < w.size(); ++k) {
    x += kappa(w[k]);
    if (x < best) {
      best = x;
      best_at = k + 1;
      tied.clear();
    } else if (x == best) {
      tied.push_back(k + 1);
    }
  }
  if (!tied.empty() && ties == TiePolicy::flag) {
    tied.insert(tied.begin(), best_at);
    throw TieDetected(std::move(tied));
  }
  return best_at;
}

SplittingFamily argmin_family(OddMap kappa, TiePolicy ties) {
  std::string name = "argmin:" + kappa.name();
  return SplittingFamily(std::move(name), [kappa = std::move(kappa), ties](std::span<const double> w) {
    return argmin_index(w, kappa, ties);
  });
}

std::size_t double_index(const SplittingFamily& tau, std::size_t m, std::size_t n,
                         std::span<const double> w) {
  if (m > n || n > w.size()) throw std::out_of_range("double_index needs 0 <= m <= n <= len");
  return m + tau(w.subspan(m, n - m));
}

RangeSet stopping_iterates(const StoppingTimeRule& gamma, std::span<const double> w,
                           std::size_t horizon) {
  if (horizon > w.size()) throw std::out_of_range("horizon exceeds window");
  std::vector<std::size_t> pts{0};
  std::size_t pos = 0;
  while (pos < horizon) {
    auto hit = gamma.first_hit(w.subspan(pos, horizon - pos));
    if (!hit) break;
    pos += *hit;
    pts.push_back(pos);
  }
  return RangeSet(std::move(pts));
}

std::size_t bracket_eval(const StoppingTimeRule& gamma, std::size_t n, std::span<const double> w) {
  return stopping_iterates(gamma, w, n).max();
}

SplittingFamily bracket_family(StoppingTimeRule gamma) {
  std::string name = "bracket:" + gamma.descriptor();
  return SplittingFamily(std::move(name), [gamma = std::move(gamma)](std::span<const double> w) {
    return bracket_eval(gamma, w.size(), w);
  });
}

std::optional<std::size_t> diag_inf(const SplittingFamily& tau, std::span<const double> w) {
  for (std::size_t n = 1; n <= w.size(); ++n) {
    if (tau(w.first(n)) == n) return n;
  }
  return std::nullopt;
}

StoppingTimeRule diag_inf_rule(SplittingFamily tau) {
  std::string name = "diag:" + tau.descriptor();
  return StoppingTimeRule(std::move(name), [tau = std::move(tau)](std::span<const double> w) {
    return diag_inf(tau, w);
  });
}

namespace {

StoppingTimeRule ladder(std::string name, OddMap kappa, TiePolicy ties, bool descending) {
  return StoppingTimeRule(
      std::move(name),
      [kappa = std::move(kappa), ties, descending](std::span<const double> w) -> std::optional<std::size_t> {
        double x = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) {
          x += kappa(w[k]);
          if (descending ? x < 0.0 : x > 0.0) return k + 1;
          if (x == 0.0 && ties == TiePolicy::flag) throw TieDetected({0, k + 1});
        }
        return std::nullopt;
      });
}

std::string with_kappa(const char* base, const OddMap& kappa) {
  return kappa.name() == "identity" ? std::string(base) : std::string(base) + ":" + kappa.name();
}

}  // namespace

StoppingTimeRule descending_ladder(OddMap kappa, TiePolicy ties) {
  auto name = with_kappa("ladder-desc", kappa);
  return ladder(std::move(name), std::move(kappa), ties, true);
}

StoppingTimeRule ascending_ladder(OddMap kappa, TiePolicy ties) {
  auto name = with_kappa("ladder-asc", kappa);
  return ladder(std::move(name), std::move(kappa), ties, false);
}

StoppingTimeRule never_rule() {
  return StoppingTimeRule("never", [](std::span<const double>) { return std::optional<std::size_t>{}; });
}

StoppingTimeRule constant_rule(std::size_t k) {
  if (k == 0) throw std::invalid_argument("a stopping rule fires at times >= 1");
  return StoppingTimeRule("const:" + std::to_string(k), [k](std::span<const double> w) {
    return w.size() >= k ? std::optional<std::size_t>(k) : std::nullopt;
  });
}

ChooserSet endpoint_chooser(std::vector<OddMap> levels, std::optional<OddMap> fallback,
                            TiePolicy ties) {
  if (levels.empty() && !fallback) throw std::invalid_argument("chooser needs at least one level map");
  std::string name;
  for (std::size_t i = 0; i < levels.size(); ++i) name += (i ? "," : "") + levels[i].name();
  if (fallback) name += std::string(levels.empty() ? "" : ",") + "default=" + fallback->name();
  return ChooserSet(std::move(name), [levels = std::move(levels), fallback = std::move(fallback),
                                      ties](std::size_t level, std::span<const double> w) {
    const OddMap* kappa = nullptr;
    if (level >= 1 && level <= levels.size())
      kappa = &levels[level - 1];
    else if (fallback)
      kappa = &*fallback;
    else
      kappa = &levels[(level - 1) % levels.size()];
    double x = 0.0;
    for (double d : w) x += (*kappa)(d);
    if (x == 0.0 && ties == TiePolicy::flag) throw TieDetected({0, w.size()});
    return x < 0.0;
  });
}

ChooserSet first_entry_chooser() {
  return ChooserSet("first-entry", [](std::size_t, std::span<const double> w) {
    return !w.empty() && w[0] < 0.0;
  });
}

TauTable j_table(const ChooserSet& chooser, std::span<const double> w) {
  const std::size_t n = w.size();
  TauTable t(n);
  for (std::size_t s = 1; s <= n; ++s) {
    for (std::size_t i = 0; i + s <= n; ++i) {
      const std::size_t j = i + s;
      const std::size_t a = t.at(i, j - 1);      // tau_{s-1} on (i, j-1]
      const std::size_t b = 1 + t.at(i + 1, j);  // 1 + tau_{s-1} on (i+1, j]
      const bool a_inner = a >= 1 && a + 1 <= s;
      const bool b_inner = b + 1 <= s;  // b >= 1 always
      std::size_t v;
      if (a_inner && b_inner) {
        if (a != b) throw ChooserConflict(i, j, a, b);
        v = a;
      } else if (a_inner) {
        v = b;
      } else if (b_inner) {
        v = a;
      } else {
        // a == 0 and b == s: the chooser decides between the two ends.
        v = chooser(s, w.subspan(i, s)) ? s : 0;
      }
      t.set(i, j, v);
    }
  }
  return t;
}

SplittingFamily j_construction(ChooserSet chooser) {
  std::string name = "jconstruct:" + chooser.descriptor();
  auto table = [chooser](std::span<const double> w) { return j_table(chooser, w); };
  auto eval = [chooser](std::span<const double> w) {
    return j_table(chooser, w).at(0, w.size());
  };
  return SplittingFamily(std::move(name), std::move(eval), std::move(table));
}

ChooserValidity validate_chooser(const ChooserSet& chooser, std::span<const double> w,
                                 std::size_t n) {
  if (n < 1 || n > w.size()) throw std::out_of_range("chooser level outside window");
  std::vector<double> reflected(n);
  for (std::size_t k = 0; k < n; ++k) reflected[k] = -w[n - 1 - k];
  bool here = false;
  bool there = false;
  try {
    here = chooser(n, w.first(n));
    there = chooser(n, reflected);
  } catch (const TieDetected&) {
    return ChooserValidity::neither_holds;
  }
  if (here && there) return ChooserValidity::both_hold;
  if (!here && !there) return ChooserValidity::neither_holds;
  return ChooserValidity::valid;
}

const char* to_string(ChooserValidity v) {
  switch (v) {
    case ChooserValidity::valid: return "valid";
    case ChooserValidity::both_hold: return "both-hold";
    case ChooserValidity::neither_holds: return "neither-holds";
  }
  return "?";
}

}  // namespace splitlab
