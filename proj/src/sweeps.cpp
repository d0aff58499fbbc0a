#include "splitlab/sweeps.hpp"

#include "splitlab/errors.hpp"

namespace splitlab {

namespace {

using I64 = std::int64_t;

I64 as_i64(std::size_t v) { return static_cast<I64>(v); }

ViolationWitness witness(const char* name, const IncrementWindow& w) {
  ViolationWitness out;
  out.check_name = name;
  out.window = w;
  return out;
}

}  // namespace

CharacterizationVerdicts sweep_characterization(const SplittingFamily& tau,
                                                const IncrementWindow& w, std::size_t horizon) {
  const std::size_t h = horizon;
  auto x = w.core(h);
  std::vector<double> r(h);
  for (std::size_t k = 0; k < h; ++k) r[k] = -x[h - 1 - k];

  std::optional<TauTable> fwd;
  std::optional<TauTable> rev;
  try {
    fwd = tau.table(x);
    rev = tau.table(r);
  } catch (const TieDetected&) {
    return {Verdict::tie(), Verdict::tie(), Verdict::tie()};
  }
  // tau_m on the reflection about m is tau on the last m entries of r.
  auto reflected = [&](std::size_t m) { return rev->at(h - m, h); };

  CharacterizationVerdicts out;

  for (std::size_t m = 0; m <= h && out.eq_main.status == Status::pass; ++m)
    for (std::size_t n = 0; m + n <= h; ++n) {
      const bool lhs = fwd->at(0, m + n) == m;
      const bool rhs = reflected(m) == 0 && fwd->at(m, m + n) == 0;
      if (lhs == rhs) continue;
      auto v = witness(check_names::eq_main, w);
      v.m = as_i64(m);
      v.n = as_i64(n);
      v.lhs = lhs;
      v.rhs = rhs;
      out.eq_main = Verdict::violation(std::move(v));
      break;
    }

  for (std::size_t n = 0; n <= h; ++n) {
    const std::size_t sum = fwd->at(0, n) + reflected(n);
    if (sum == n) continue;
    auto v = witness(check_names::reflection, w);
    v.n = as_i64(n);
    v.lhs = as_i64(sum);
    v.rhs = as_i64(n);
    out.reflection = Verdict::violation(std::move(v));
    break;
  }

  auto idx = [&](std::size_t m, std::size_t n) { return m + fwd->at(m, n); };
  for (std::size_t m = 0; m <= h && out.honesty.status == Status::pass; ++m)
    for (std::size_t n = m; n <= h && out.honesty.status == Status::pass; ++n) {
      const std::size_t outer = idx(m, n);
      for (std::size_t k = m; k <= outer && out.honesty.status == Status::pass; ++k)
        for (std::size_t l = std::max(k, outer); l <= n; ++l) {
          const std::size_t inner = idx(k, l);
          if (inner == outer) continue;
          auto v = witness(check_names::honesty, w);
          v.m = as_i64(m);
          v.n = as_i64(n);
          v.k = as_i64(k);
          v.l = as_i64(l);
          v.lhs = as_i64(outer);
          v.rhs = as_i64(inner);
          out.honesty = Verdict::violation(std::move(v));
          break;
        }
    }
  return out;
}

namespace {

// First non-pass verdict in iteration order.
template <class Fn>
Verdict first_failure(std::size_t count, Fn&& fn) {
  for (std::size_t i = 0; i < count; ++i) {
    Verdict v = fn(i);
    if (v.status != Status::pass) return v;
  }
  return Verdict::pass();
}

}  // namespace

CharacterizationVerdicts sweep_characterization_reference(const SplittingFamily& tau,
                                                          const IncrementWindow& w,
                                                          std::size_t horizon) {
  CharacterizationVerdicts out;
  out.eq_main = Verdict::pass();
  for (std::size_t m = 0; m <= horizon && out.eq_main.status == Status::pass; ++m)
    out.eq_main = first_failure(horizon - m + 1, [&](std::size_t n) {
      return check_eq_main(tau, w, m, n);
    });
  out.reflection = first_failure(horizon + 1, [&](std::size_t n) {
    return check_reflection_identity(tau, w, n);
  });
  out.honesty = check_honesty(tau, w, horizon);
  return out;
}

SelfDualVerdicts sweep_selfdual(const StoppingTimeRule& gamma, const IncrementWindow& w,
                                std::size_t horizon) {
  SelfDualVerdicts out;
  out.self_duality = first_failure(horizon + 1, [&](std::size_t n) {
    return check_self_duality(gamma, w, n);
  });
  out.regenerative = check_regenerative(gamma, w, horizon);
  out.roundtrip_family = check_roundtrip_family(bracket_family(gamma), w, horizon);
  out.roundtrip_rule = check_roundtrip_rule(gamma, w, horizon);
  return out;
}

}  // namespace splitlab
