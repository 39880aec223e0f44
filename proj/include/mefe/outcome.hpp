#ifndef MEFE_OUTCOME_HPP
#define MEFE_OUTCOME_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "mefe/instance.hpp"
#include "mefe/rational.hpp"

namespace mefe {

enum class Verdict { Yes, No, NotApplicable };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::NotApplicable: return "not_applicable";
  }
  return "unknown";
}

struct SolverOutcome {
  Verdict verdict = Verdict::NotApplicable;
  std::optional<Matching> matching;  // set iff verdict == Yes
  std::string reason;                // why the solver declined, or a note on No
  std::string solver;
  /// Threshold the returned matching is certified against when it differs
  /// from the instance's k (relaxed approximation target, k* for binary utilities).
  std::optional<Rational> certified_k;

  static SolverOutcome yes(Matching mu, std::string solver = {}) {
    SolverOutcome o;
    o.verdict = Verdict::Yes;
    o.matching = std::move(mu);
    o.solver = std::move(solver);
    return o;
  }
  static SolverOutcome no(std::string solver = {}, std::string reason = {}) {
    SolverOutcome o;
    o.verdict = Verdict::No;
    o.solver = std::move(solver);
    o.reason = std::move(reason);
    return o;
  }
  static SolverOutcome not_applicable(std::string solver, std::string reason) {
    SolverOutcome o;
    o.verdict = Verdict::NotApplicable;
    o.solver = std::move(solver);
    o.reason = std::move(reason);
    return o;
  }

  [[nodiscard]] bool is_yes() const { return verdict == Verdict::Yes; }
  [[nodiscard]] bool is_no() const { return verdict == Verdict::No; }
  [[nodiscard]] bool applicable() const { return verdict != Verdict::NotApplicable; }
};

/// Knobs shared by the exhaustive and enumeration-based solvers.
struct SolveOptions {
  /// Maximum number of leaves / candidates an enumeration may visit.
  std::uint64_t budget = 100'000'000;
  /// Worker threads for parallelizable solvers; results never depend on it.
  int jobs = 1;
};

}  // namespace mefe

#endif  // MEFE_OUTCOME_HPP
