#ifndef MEFE_DISPATCH_HPP
#define MEFE_DISPATCH_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mefe/error.hpp"
#include "mefe/existence.hpp"
#include "mefe/instance.hpp"
#include "mefe/oracle.hpp"
#include "mefe/outcome.hpp"
#include "mefe/paramsolvers.hpp"
#include "mefe/polycases.hpp"
#include "mefe/rational.hpp"

namespace mefe {

inline const std::vector<std::string_view>& strategy_names() {
  static const std::vector<std::string_view> names{"auto",      "brute",  "degcap", "single",       "tadeg1",  "cap1",
                                                   "twoval",    "constenum", "fptn", "approx", "exist-binval", "exist-hr"};
  return names;
}

inline bool is_strategy(std::string_view name) {
  for (auto s : strategy_names()) {
    if (s == name) return true;
  }
  return false;
}

/// Order in which auto mode tries solvers.
inline const std::vector<std::string_view>& auto_order() {
  static const std::vector<std::string_view> order{"tadeg1", "single", "degcap", "cap1", "twoval", "constenum", "fptn", "brute"};
  return order;
}

/// Runs one named solver. "approx" requires epsilon.
inline SolverOutcome run_strategy(const Instance& inst, std::string_view name, const SolveOptions& opts = {},
                                  const std::optional<Rational>& epsilon = std::nullopt) {
  if (name == "brute") return solve_bruteforce(inst, opts);
  if (name == "degcap") return solve_degcap_le1(inst);
  if (name == "single") return solve_single_course(inst);
  if (name == "tadeg1") return solve_ta_degree1(inst);
  if (name == "cap1") return solve_capacity1(inst, opts);
  if (name == "twoval") return solve_two_valuation(inst, opts);
  if (name == "constenum") return solve_constant_enum(inst, opts);
  if (name == "fptn") return solve_fpt_n(inst, opts);
  if (name == "approx") {
    if (!epsilon) throw Error(ErrorKind::PreconditionViolated, "approx needs an epsilon");
    return solve_approx(inst, *epsilon, opts);
  }
  if (name == "exist-binval") return solve_existence_binval(inst);
  if (name == "exist-hr") return solve_existence_hr(inst);
  throw Error(ErrorKind::Parse, "unknown strategy '" + std::string(name) + "'");
}

/// Auto mode returns the first applicable solver's outcome; a named strategy
/// runs that solver alone.
inline SolverOutcome dispatch(const Instance& inst, std::string_view strategy = "auto", const SolveOptions& opts = {},
                              const std::optional<Rational>& epsilon = std::nullopt) {
  if (strategy != "auto") return run_strategy(inst, strategy, opts, epsilon);
  for (auto name : auto_order()) {
    SolverOutcome o = run_strategy(inst, name, opts);
    if (o.applicable()) return o;
  }
  return SolverOutcome::not_applicable("auto", "no solver applies");
}

}  // namespace mefe

#endif  // MEFE_DISPATCH_HPP
