#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "splitlab/families.hpp"
#include "splitlab/window.hpp"

namespace splitlab {

// Pathwise checkers for the almost-sure identities. Each is a pure function
// of (family or rule, window, indices): on a tie-free window the identity
// must hold surely, a tie aborts the check with Status::tie_skip.

namespace check_names {
inline constexpr const char* eq_main = "eq-main";
inline constexpr const char* reflection = "reflection-identity";
inline constexpr const char* honesty = "honesty";
inline constexpr const char* self_duality = "self-duality";
inline constexpr const char* regenerative = "regenerative";
inline constexpr const char* roundtrip_family = "roundtrip-family";
inline constexpr const char* roundtrip_rule = "roundtrip-rule";
inline constexpr const char* recovers_minima = "recovers-minima";
inline constexpr const char* chooser_validity = "chooser-validity";
}  // namespace check_names

enum class Status { pass, fail, tie_skip, precondition };

const char* to_string(Status s);

using WitnessValue = std::variant<bool, std::int64_t, std::vector<std::int64_t>>;

/// Everything needed to replay a failed check bit-exactly. Index meaning per
/// check: eq-main (m, n); reflection-identity, self-duality,
/// chooser-validity (n); honesty (m, n) outer and (k, l) inner interval;
/// regenerative, roundtrips, recovers-minima: n is the horizon and m the
/// offending point when there is one.
struct ViolationWitness {
  std::string check_name;
  IncrementWindow window;
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> l;
  std::string detail;
  WitnessValue lhs;
  WitnessValue rhs;

  bool operator==(const ViolationWitness&) const = default;
};

struct Verdict {
  Status status = Status::pass;
  std::optional<ViolationWitness> witness;

  static Verdict pass() { return {}; }
  static Verdict tie() { return {Status::tie_skip, std::nullopt}; }
  static Verdict precondition() { return {Status::precondition, std::nullopt}; }
  static Verdict violation(ViolationWitness w) { return {Status::fail, std::move(w)}; }

  bool operator==(const Verdict&) const = default;
};

/// {tau_{m+n} = m} against {tau_m = 0 on the reflection about m} and
/// {tau_n = 0 on the shift by m}.
Verdict check_eq_main(const SplittingFamily& tau, const IncrementWindow& w, std::size_t m,
                      std::size_t n);

/// tau_n + tau_n(reflection about n) = n.
Verdict check_reflection_identity(const SplittingFamily& tau, const IncrementWindow& w,
                                  std::size_t n);

/// tau_{m,n} = tau_{k,l} whenever tau_{m,n} lies in [k, l], over all
/// 0 <= m <= k <= l <= n <= horizon.
Verdict check_honesty(const SplittingFamily& tau, const IncrementWindow& w, std::size_t horizon);

/// The single nested pair (m, n) ⊇ (k, l) of the honesty check.
Verdict check_honesty_at(const SplittingFamily& tau, const IncrementWindow& w, std::size_t m,
                         std::size_t n, std::size_t k, std::size_t l);

/// n is an iterate of gamma iff gamma has not fired by n on the reflection
/// about n.
Verdict check_self_duality(const StoppingTimeRule& gamma, const IncrementWindow& w,
                           std::size_t n);

/// Regeneration of the iterate range at each of its points, the range as the
/// diagonal of the bracket family, and gamma as its first positive point.
Verdict check_regenerative(const StoppingTimeRule& gamma, const IncrementWindow& w,
                           std::size_t horizon);

/// bracket(diag(tau)) = tau on prefixes up to horizon. A dishonest family on
/// this path yields Status::precondition.
Verdict check_roundtrip_family(const SplittingFamily& tau, const IncrementWindow& w,
                               std::size_t horizon);

/// diag(bracket(gamma)) = gamma on the first horizon increments.
Verdict check_roundtrip_rule(const StoppingTimeRule& gamma, const IncrementWindow& w,
                             std::size_t horizon);

/// The chooser recursion with the identity endpoint chooser agrees with the
/// argmin on every prefix up to horizon.
Verdict check_recovers_minima(const IncrementWindow& w, std::size_t horizon);

/// Exactly one of A_n(w), A_n(reflection about n) holds.
Verdict check_chooser_validity(const ChooserSet& chooser, const IncrementWindow& w,
                               std::size_t n);

/// Objects a witness may refer to when replayed.
struct ReplayContext {
  std::optional<SplittingFamily> family;
  std::optional<StoppingTimeRule> rule;
  std::optional<ChooserSet> chooser;
};

/// Re-runs the check named by the witness on its stored window and indices.
/// Throws std::invalid_argument if the check is unknown or the context lacks
/// the object it needs.
Verdict replay_witness(const ViolationWitness& witness, const ReplayContext& ctx);

}  // namespace splitlab
