#ifndef MEFE_VERIFY_HPP
#define MEFE_VERIFY_HPP

#include <string>
#include <utility>
#include <vector>

#include "mefe/error.hpp"
#include "mefe/instance.hpp"
#include "mefe/rational.hpp"

namespace mefe {

struct Violation {
  enum class Kind { CapacityMismatch, ZeroValuedAssignment, UnsatisfiedCourse, Envy };
  Kind kind;
  int course = -1;
  int ta = -1;
  int other_ta = -1;  // the envied TA for Kind::Envy
};

inline std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::CapacityMismatch: return "capacity_mismatch";
    case Violation::Kind::ZeroValuedAssignment: return "zero_valued_assignment";
    case Violation::Kind::UnsatisfiedCourse: return "unsatisfied_course";
    case Violation::Kind::Envy: return "envy";
  }
  return "unknown";
}

struct VerificationReport {
  bool feasible = false;
  /// Sum of assigned valuations over capacity, per course (also reported for
  /// courses whose roster size is wrong).
  std::vector<Rational> avg_utils;
  std::vector<std::pair<int, int>> envy_pairs;
  bool is_mefe = false;
  std::vector<Violation> violations;
};

/// Throws InvalidMatching unless the matching covers every TA of the instance
/// and only names existing courses.
inline void check_well_formed(const Instance& inst, const Matching& mu) {
  if (mu.num_tas() != inst.num_tas()) {
    throw Error(ErrorKind::InvalidMatching, "matching size does not match the number of TAs");
  }
  for (int t = 0; t < mu.num_tas(); ++t) {
    const int x = mu.course_of(t);
    if (x != kUnassigned && (x < 0 || x >= inst.num_courses())) {
      throw Error(ErrorKind::InvalidMatching, "TA '" + inst.ta_id(t) + "' assigned to an unknown course");
    }
  }
}

inline Value own_utility(const Instance& inst, const Matching& mu, int t) {
  return mu.assigned(t) ? inst.utility(t, mu.course_of(t)) : 0;
}

/// True iff t merit-envies the assigned TA s.
inline bool envies(const Instance& inst, const Matching& mu, int t, int s) {
  if (t == s || !mu.assigned(s)) return false;
  const int x = mu.course_of(s);
  return inst.grade(t, x) >= inst.grade(s, x) && inst.utility(t, x) > own_utility(inst, mu, t);
}

inline Rational avg_util(const Instance& inst, const Matching& mu, int x) {
  check_well_formed(inst, mu);
  int count = 0;
  Value sum = 0;
  for (int t = 0; t < mu.num_tas(); ++t) {
    if (mu.course_of(t) == x) {
      ++count;
      sum += inst.value(x, t);
    }
  }
  if (count != inst.capacity(x)) {
    throw Error(ErrorKind::CapacityMismatch, "course '" + inst.course_id(x) + "' holds " +
                                                 std::to_string(count) + " TAs, capacity " +
                                                 std::to_string(inst.capacity(x)));
  }
  return Rational(sum, inst.capacity(x));
}

inline std::vector<std::pair<int, int>> envy_pairs(const Instance& inst, const Matching& mu) {
  check_well_formed(inst, mu);
  std::vector<std::pair<int, int>> out;
  for (int t = 0; t < inst.num_tas(); ++t) {
    for (int s = 0; s < inst.num_tas(); ++s) {
      if (envies(inst, mu, t, s)) out.emplace_back(t, s);
    }
  }
  return out;
}

inline VerificationReport verify(const Instance& inst, const Matching& mu) {
  check_well_formed(inst, mu);
  VerificationReport report;
  const int n = inst.num_courses();
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  std::vector<Value> sum(static_cast<std::size_t>(n), 0);
  report.feasible = true;
  for (int t = 0; t < inst.num_tas(); ++t) {
    const int x = mu.course_of(t);
    if (x == kUnassigned) continue;
    ++count[x];
    sum[x] += inst.value(x, t);
    if (inst.value(x, t) == 0) {
      report.feasible = false;
      report.violations.push_back({Violation::Kind::ZeroValuedAssignment, x, t});
    }
  }
  bool satisfied = true;
  for (int x = 0; x < n; ++x) {
    report.avg_utils.emplace_back(sum[x], inst.capacity(x));
    if (count[x] != inst.capacity(x)) {
      report.feasible = false;
      report.violations.push_back({Violation::Kind::CapacityMismatch, x});
    }
    if (report.avg_utils.back() < inst.k()) {
      satisfied = false;
      report.violations.push_back({Violation::Kind::UnsatisfiedCourse, x});
    }
  }
  report.envy_pairs = envy_pairs(inst, mu);
  for (const auto& [t, s] : report.envy_pairs) {
    report.violations.push_back({Violation::Kind::Envy, mu.course_of(s), t, s});
  }
  report.is_mefe = report.feasible && satisfied && report.envy_pairs.empty();
  return report;
}

/// Feasible and envy-free, with every course's average at least `threshold`.
/// Stops at the first failure; used on hot paths.
inline bool is_mefe_at(const Instance& inst, const Matching& mu, const Rational& threshold) {
  if (mu.num_tas() != inst.num_tas()) return false;
  const int n = inst.num_courses();
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  std::vector<Value> sum(static_cast<std::size_t>(n), 0);
  for (int t = 0; t < inst.num_tas(); ++t) {
    const int x = mu.course_of(t);
    if (x == kUnassigned) continue;
    if (x < 0 || x >= n || inst.value(x, t) == 0) return false;
    ++count[x];
    sum[x] += inst.value(x, t);
  }
  for (int x = 0; x < n; ++x) {
    if (count[x] != inst.capacity(x)) return false;
    if (Rational(sum[x], inst.capacity(x)) < threshold) return false;
  }
  for (int t = 0; t < inst.num_tas(); ++t) {
    for (int s = 0; s < inst.num_tas(); ++s) {
      if (envies(inst, mu, t, s)) return false;
    }
  }
  return true;
}

inline bool is_mefe(const Instance& inst, const Matching& mu) { return is_mefe_at(inst, mu, inst.k()); }

inline bool is_feasible(const Instance& inst, const Matching& mu) {
  return verify(inst, mu).feasible;
}

/// No TA strictly prefers a course whose roster holds someone it strictly out-grades.
inline bool is_weakly_stable(const Instance& inst, const Matching& mu) {
  const auto report = verify(inst, mu);
  if (!report.feasible) throw Error(ErrorKind::InfeasibleMatching, "weak stability needs a feasible matching");
  for (int t = 0; t < inst.num_tas(); ++t) {
    const Value own = own_utility(inst, mu, t);
    for (int x = 0; x < inst.num_courses(); ++x) {
      if (inst.utility(t, x) <= own) continue;
      for (int s = 0; s < inst.num_tas(); ++s) {
        if (mu.course_of(s) == x && inst.grade(t, x) > inst.grade(s, x)) return false;
      }
    }
  }
  return true;
}

}  // namespace mefe

#endif  // MEFE_VERIFY_HPP
