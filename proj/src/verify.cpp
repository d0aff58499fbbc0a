#include "splitlab/verify.hpp"

#include <stdexcept>

#include "splitlab/errors.hpp"

namespace splitlab {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::tie_skip: return "tie-skip";
    case Status::precondition: return "precondition";
  }
  return "?";
}

namespace {

using I64 = std::int64_t;

I64 as_i64(std::size_t v) { return static_cast<I64>(v); }

I64 or_minus_one(const std::optional<std::size_t>& v) { return v ? as_i64(*v) : -1; }

std::vector<I64> to_i64(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

ViolationWitness witness(const char* name, const IncrementWindow& w) {
  ViolationWitness out;
  out.check_name = name;
  out.window = w;
  return out;
}

std::vector<double> reflected_core(const IncrementWindow& w, std::size_t n) {
  const IncrementWindow reflected = reflect_about(w, static_cast<I64>(n));
  auto r = reflected.core(n);
  return {r.begin(), r.end()};
}

template <class Fn>
Verdict tie_guard(Fn&& fn) {
  try {
    return fn();
  } catch (const TieDetected&) {
    return Verdict::tie();
  }
}

}  // namespace

Verdict check_eq_main(const SplittingFamily& tau, const IncrementWindow& w, std::size_t m,
                      std::size_t n) {
  return tie_guard([&] {
    auto x = w.core(m + n);
    const bool lhs = tau(x) == m;
    const bool rhs = tau(reflected_core(w, m)) == 0 && tau(x.subspan(m, n)) == 0;
    if (lhs == rhs) return Verdict::pass();
    auto v = witness(check_names::eq_main, w);
    v.m = as_i64(m);
    v.n = as_i64(n);
    v.lhs = lhs;
    v.rhs = rhs;
    return Verdict::violation(std::move(v));
  });
}

Verdict check_reflection_identity(const SplittingFamily& tau, const IncrementWindow& w,
                                  std::size_t n) {
  return tie_guard([&] {
    const std::size_t sum = tau(w.core(n)) + tau(reflected_core(w, n));
    if (sum == n) return Verdict::pass();
    auto v = witness(check_names::reflection, w);
    v.n = as_i64(n);
    v.lhs = as_i64(sum);
    v.rhs = as_i64(n);
    return Verdict::violation(std::move(v));
  });
}

Verdict check_honesty_at(const SplittingFamily& tau, const IncrementWindow& w, std::size_t m,
                         std::size_t n, std::size_t k, std::size_t l) {
  if (!(m <= k && k <= l && l <= n)) throw std::out_of_range("honesty needs m <= k <= l <= n");
  return tie_guard([&] {
    auto x = w.core(n);
    const std::size_t outer = double_index(tau, m, n, x);
    if (outer < k || outer > l) return Verdict::pass();
    const std::size_t inner = double_index(tau, k, l, x);
    if (inner == outer) return Verdict::pass();
    auto v = witness(check_names::honesty, w);
    v.m = as_i64(m);
    v.n = as_i64(n);
    v.k = as_i64(k);
    v.l = as_i64(l);
    v.lhs = as_i64(outer);
    v.rhs = as_i64(inner);
    return Verdict::violation(std::move(v));
  });
}

Verdict check_honesty(const SplittingFamily& tau, const IncrementWindow& w, std::size_t horizon) {
  return tie_guard([&] {
    auto x = w.core(horizon);
    const std::size_t h = horizon;
    std::vector<std::size_t> t((h + 1) * (h + 1), 0);
    for (std::size_t m = 0; m <= h; ++m)
      for (std::size_t n = m; n <= h; ++n) t[m * (h + 1) + n] = double_index(tau, m, n, x);
    for (std::size_t m = 0; m <= h; ++m)
      for (std::size_t n = m; n <= h; ++n) {
        const std::size_t outer = t[m * (h + 1) + n];
        for (std::size_t k = m; k <= n; ++k)
          for (std::size_t l = k; l <= n; ++l) {
            if (outer < k || outer > l) continue;
            const std::size_t inner = t[k * (h + 1) + l];
            if (inner == outer) continue;
            auto v = witness(check_names::honesty, w);
            v.m = as_i64(m);
            v.n = as_i64(n);
            v.k = as_i64(k);
            v.l = as_i64(l);
            v.lhs = as_i64(outer);
            v.rhs = as_i64(inner);
            return Verdict::violation(std::move(v));
          }
      }
    return Verdict::pass();
  });
}

Verdict check_self_duality(const StoppingTimeRule& gamma, const IncrementWindow& w,
                           std::size_t n) {
  return tie_guard([&] {
    const bool lhs = stopping_iterates(gamma, w.core(n), n).contains(n);
    // The reflected window has length n, so "gamma > n" is "not fired".
    const bool rhs = !gamma.first_hit(reflected_core(w, n)).has_value();
    if (lhs == rhs) return Verdict::pass();
    auto v = witness(check_names::self_duality, w);
    v.n = as_i64(n);
    v.lhs = lhs;
    v.rhs = rhs;
    return Verdict::violation(std::move(v));
  });
}

Verdict check_regenerative(const StoppingTimeRule& gamma, const IncrementWindow& w,
                           std::size_t horizon) {
  return tie_guard([&] {
    auto x = w.core(horizon);
    const RangeSet range = stopping_iterates(gamma, x, horizon);
    const auto& pts = range.points();

    for (std::size_t idx = 0; idx < pts.size(); ++idx) {
      const std::size_t k = pts[idx];
      auto sub = stopping_iterates(gamma, x.subspan(k), horizon - k).points();
      for (auto& p : sub) p += k;
      std::vector<std::size_t> tail(pts.begin() + static_cast<std::ptrdiff_t>(idx), pts.end());
      if (sub != tail) {
        auto v = witness(check_names::regenerative, w);
        v.n = as_i64(horizon);
        v.m = as_i64(k);
        v.detail = "regeneration";
        v.lhs = to_i64(tail);
        v.rhs = to_i64(sub);
        return Verdict::violation(std::move(v));
      }
    }

    std::vector<std::size_t> diagonal;
    for (std::size_t n = 0; n <= horizon; ++n)
      if (bracket_eval(gamma, n, x) == n) diagonal.push_back(n);
    if (diagonal != pts) {
      auto v = witness(check_names::regenerative, w);
      v.n = as_i64(horizon);
      v.detail = "range-is-diagonal";
      v.lhs = to_i64(pts);
      v.rhs = to_i64(diagonal);
      return Verdict::violation(std::move(v));
    }

    const auto first_positive = pts.size() > 1 ? std::optional<std::size_t>(pts[1]) : std::nullopt;
    const auto hit = gamma.first_hit(x);
    if (first_positive != hit) {
      auto v = witness(check_names::regenerative, w);
      v.n = as_i64(horizon);
      v.detail = "first-point-is-gamma";
      v.lhs = or_minus_one(first_positive);
      v.rhs = or_minus_one(hit);
      return Verdict::violation(std::move(v));
    }
    return Verdict::pass();
  });
}

Verdict check_roundtrip_family(const SplittingFamily& tau, const IncrementWindow& w,
                               std::size_t horizon) {
  const Verdict honest = check_honesty(tau, w, horizon);
  if (honest.status == Status::tie_skip) return honest;
  if (honest.status != Status::pass) return Verdict::precondition();
  return tie_guard([&] {
    auto x = w.core(horizon);
    const StoppingTimeRule gamma = diag_inf_rule(tau);
    for (std::size_t n = 0; n <= horizon; ++n) {
      const std::size_t back = bracket_eval(gamma, n, x);
      const std::size_t direct = tau(x.first(n));
      if (back == direct) continue;
      auto v = witness(check_names::roundtrip_family, w);
      v.n = as_i64(horizon);
      v.m = as_i64(n);
      v.lhs = as_i64(back);
      v.rhs = as_i64(direct);
      return Verdict::violation(std::move(v));
    }
    return Verdict::pass();
  });
}

Verdict check_roundtrip_rule(const StoppingTimeRule& gamma, const IncrementWindow& w,
                             std::size_t horizon) {
  return tie_guard([&] {
    auto x = w.core(horizon);
    const auto back = diag_inf(bracket_family(gamma), x);
    const auto direct = gamma.first_hit(x);
    if (back == direct) return Verdict::pass();
    auto v = witness(check_names::roundtrip_rule, w);
    v.n = as_i64(horizon);
    v.lhs = or_minus_one(back);
    v.rhs = or_minus_one(direct);
    return Verdict::violation(std::move(v));
  });
}

Verdict check_recovers_minima(const IncrementWindow& w, std::size_t horizon) {
  return tie_guard([&] {
    auto x = w.core(horizon);
    const ChooserSet chooser = endpoint_chooser({OddMap::identity()}, std::nullopt, TiePolicy::flag);
    const TauTable t = j_table(chooser, x);
    const OddMap id = OddMap::identity();
    for (std::size_t n = 0; n <= horizon; ++n) {
      const std::size_t j = t.at(0, n);
      const std::size_t minimum = argmin_index(x.first(n), id, TiePolicy::flag);
      if (j == minimum) continue;
      auto v = witness(check_names::recovers_minima, w);
      v.n = as_i64(horizon);
      v.m = as_i64(n);
      v.lhs = as_i64(j);
      v.rhs = as_i64(minimum);
      return Verdict::violation(std::move(v));
    }
    return Verdict::pass();
  });
}

Verdict check_chooser_validity(const ChooserSet& chooser, const IncrementWindow& w,
                               std::size_t n) {
  return tie_guard([&] {
    const bool here = chooser(n, w.core(n));
    const bool there = chooser(n, reflected_core(w, n));
    if (here != there) return Verdict::pass();
    auto v = witness(check_names::chooser_validity, w);
    v.n = as_i64(n);
    v.detail = here ? to_string(ChooserValidity::both_hold) : to_string(ChooserValidity::neither_holds);
    v.lhs = here;
    v.rhs = there;
    return Verdict::violation(std::move(v));
  });
}

namespace {

std::size_t need(const std::optional<I64>& v, const char* what) {
  if (!v || *v < 0) throw std::invalid_argument(std::string("witness lacks index ") + what);
  return static_cast<std::size_t>(*v);
}

template <class T>
const T& need(const std::optional<T>& v, const char* what) {
  if (!v) throw std::invalid_argument(std::string("replay needs a ") + what);
  return *v;
}

}  // namespace

Verdict replay_witness(const ViolationWitness& wit, const ReplayContext& ctx) {
  const std::string& c = wit.check_name;
  const IncrementWindow& w = wit.window;
  if (c == check_names::eq_main)
    return check_eq_main(need(ctx.family, "family"), w, need(wit.m, "m"), need(wit.n, "n"));
  if (c == check_names::reflection)
    return check_reflection_identity(need(ctx.family, "family"), w, need(wit.n, "n"));
  if (c == check_names::honesty)
    return check_honesty_at(need(ctx.family, "family"), w, need(wit.m, "m"), need(wit.n, "n"),
                            need(wit.k, "k"), need(wit.l, "l"));
  if (c == check_names::self_duality)
    return check_self_duality(need(ctx.rule, "rule"), w, need(wit.n, "n"));
  if (c == check_names::regenerative)
    return check_regenerative(need(ctx.rule, "rule"), w, need(wit.n, "n"));
  if (c == check_names::roundtrip_family)
    return check_roundtrip_family(need(ctx.family, "family"), w, need(wit.n, "n"));
  if (c == check_names::roundtrip_rule)
    return check_roundtrip_rule(need(ctx.rule, "rule"), w, need(wit.n, "n"));
  if (c == check_names::recovers_minima) return check_recovers_minima(w, need(wit.n, "n"));
  if (c == check_names::chooser_validity)
    return check_chooser_validity(need(ctx.chooser, "chooser"), w, need(wit.n, "n"));
  throw std::invalid_argument("unknown check '" + c + "'");
}

}  // namespace splitlab
