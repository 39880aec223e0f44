#ifndef MEFE_EXISTENCE_HPP
#define MEFE_EXISTENCE_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mefe/engines/deferred_acceptance.hpp"
#include "mefe/engines/max_matching.hpp"
#include "mefe/error.hpp"
#include "mefe/instance.hpp"
#include "mefe/outcome.hpp"
#include "mefe/polycases.hpp"
#include "mefe/rational.hpp"
#include "mefe/verify.hpp"

namespace mefe {

/// Per-course ranking of all TAs by grade, highest first (rank 1), ties by
/// TA identifier. threshold[x] is the grade at rank c = total capacity.
struct RankProfile {
  std::vector<std::vector<int>> rank;  // rank[x][t], 1-based
  int seats = 0;
  std::vector<Rational> threshold;
  Rational k_star;
};

inline RankProfile rank_profile(const Instance& inst) {
  RankProfile rp;
  rp.seats = inst.total_capacity();
  const int m = inst.num_tas();
  for (int x = 0; x < inst.num_courses(); ++x) {
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) order[t] = t;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (inst.grade(a, x) != inst.grade(b, x)) return inst.grade(a, x) > inst.grade(b, x);
      return inst.ta_id(a) < inst.ta_id(b);
    });
    std::vector<int> rank(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) rank[order[i]] = i + 1;
    rp.rank.push_back(std::move(rank));
    rp.threshold.push_back(rp.seats >= 1 && rp.seats <= m ? inst.grade(order[rp.seats - 1], x) : Rational(0));
  }
  if (!rp.threshold.empty()) rp.k_star = *std::min_element(rp.threshold.begin(), rp.threshold.end());
  return rp;
}

struct BinaryUtilityReport {
  bool common_utility = false;   // every positive utility equals one value a
  bool value_is_grade = false;   // v_x(t) = g_t(x) everywhere
  bool hall = false;             // the course-copy graph saturates every seat
  bool distinct_grades = false;  // per course, among TAs valuing it
  Value a = 0;
  RankProfile ranks;

  [[nodiscard]] bool ok() const { return common_utility && value_is_grade && hall && distinct_grades; }
};

/// One vertex per seat, adjacent to the TAs that value the course.
inline std::vector<std::vector<int>> course_copy_graph(const Instance& inst, std::vector<int>* seat_course = nullptr) {
  std::vector<std::vector<int>> adj;
  for (int x = 0; x < inst.num_courses(); ++x) {
    std::vector<int> nbrs;
    for (int t = 0; t < inst.num_tas(); ++t) {
      if (inst.acceptable(x, t)) nbrs.push_back(t);
    }
    for (int j = 0; j < inst.capacity(x); ++j) {
      adj.push_back(nbrs);
      if (seat_course != nullptr) seat_course->push_back(x);
    }
  }
  return adj;
}

inline BinaryUtilityReport check_binary_utility_preconditions(const Instance& inst) {
  BinaryUtilityReport r;
  std::set<Value> utils;
  r.value_is_grade = true;
  for (int t = 0; t < inst.num_tas(); ++t) {
    for (int x = 0; x < inst.num_courses(); ++x) {
      if (inst.utility(t, x) > 0) utils.insert(inst.utility(t, x));
      if (Rational(inst.value(x, t)) != inst.grade(t, x)) r.value_is_grade = false;
    }
  }
  r.common_utility = utils.size() <= 1;
  r.a = utils.empty() ? 0 : *utils.begin();
  r.hall = max_bipartite_matching(course_copy_graph(inst), inst.num_tas()).saturates_left();
  r.distinct_grades = profile(inst).all_grades_distinct();
  r.ranks = rank_profile(inst);
  return r;
}

/// sigma[x] counts TAs outside x's roster whose grade in x beats the lowest
/// grade inside it; psi is their sum.
struct Potential {
  std::vector<int> sigma;
  int psi = 0;
};

inline Potential potential(const Instance& inst, const Matching& mu) {
  if (!verify(inst, mu).feasible) throw Error(ErrorKind::InfeasibleMatching, "potential needs a feasible matching");
  Potential p;
  for (int x = 0; x < inst.num_courses(); ++x) {
    std::optional<Rational> lowest;
    for (int t = 0; t < inst.num_tas(); ++t) {
      if (mu.course_of(t) == x && (!lowest || inst.grade(t, x) < *lowest)) lowest = inst.grade(t, x);
    }
    int count = 0;
    for (int t = 0; t < inst.num_tas(); ++t) {
      if (mu.course_of(t) != x && lowest && inst.grade(t, x) > *lowest) ++count;
    }
    p.sigma.push_back(count);
    p.psi += count;
  }
  return p;
}

struct ExchangeTrace {
  Matching matching;
  std::vector<int> psi;  // potential before the first and after every swap
};

/// Swaps an out-graded unmatched TA into a course, evicting its lowest-graded
/// TA, until no unmatched TA beats anyone in a course it values. The pair is
/// the least (unmatched TA, matched TA) by index.
inline ExchangeTrace exchange_matching_traced(const Instance& inst, const Matching& feasible) {
  const auto pre = check_binary_utility_preconditions(inst);
  if (!pre.common_utility || !pre.value_is_grade || !pre.distinct_grades) {
    throw Error(ErrorKind::PreconditionViolated, "exchange matching needs binary utilities, v = g and distinct grades");
  }
  if (!verify(inst, feasible).feasible) {
    throw Error(ErrorKind::PreconditionViolated, "exchange matching needs a feasible starting matching");
  }
  ExchangeTrace trace{feasible, {potential(inst, feasible).psi}};
  Matching& mu = trace.matching;
  const int m = inst.num_tas();
  while (true) {
    int envier = -1;
    int envied = -1;
    for (int i = 0; i < m && envier < 0; ++i) {
      if (mu.assigned(i)) continue;
      for (int j = 0; j < m; ++j) {
        if (!mu.assigned(j)) continue;
        const int x = mu.course_of(j);
        if (inst.grade(i, x) > inst.grade(j, x) && inst.utility(i, x) == pre.a && pre.a > 0) {
          envier = i;
          envied = j;
          break;
        }
      }
    }
    if (envier < 0) break;
    const int x = mu.course_of(envied);
    int lowest = envied;
    for (int t = 0; t < m; ++t) {
      if (mu.course_of(t) == x && inst.grade(t, x) < inst.grade(lowest, x)) lowest = t;
    }
    mu.unassign(lowest);
    mu.assign(envier, x);
    trace.psi.push_back(potential(inst, mu).psi);
  }
  return trace;
}

inline Matching exchange_matching(const Instance& inst, const Matching& feasible) {
  return exchange_matching_traced(inst, feasible).matching;
}

/// Fills every seat through the course-copy graph. Needs Hall's condition.
inline Matching seat_filling_matching(const Instance& inst) {
  std::vector<int> seat_course;
  const auto adj = course_copy_graph(inst, &seat_course);
  const auto mm = max_bipartite_matching(adj, inst.num_tas());
  if (!mm.saturates_left()) throw Error(ErrorKind::PreconditionViolated, "Hall's condition fails");
  Matching mu(inst.num_tas());
  for (std::size_t s = 0; s < seat_course.size(); ++s) mu.assign(mm.left_match[s], seat_course[s]);
  return mu;
}

/// Binary utilities with v = g: a MEFE matching exists at k = k*.
inline SolverOutcome solve_existence_binval(const Instance& inst) {
  const auto pre = check_binary_utility_preconditions(inst);
  if (!pre.common_utility) return SolverOutcome::not_applicable("exist-binval", "positive utilities differ");
  if (!pre.value_is_grade) return SolverOutcome::not_applicable("exist-binval", "valuations differ from grades");
  if (!pre.hall) return SolverOutcome::not_applicable("exist-binval", "Hall's condition fails");
  if (!pre.distinct_grades) return SolverOutcome::not_applicable("exist-binval", "tied grades within a course");
  if (inst.k() > pre.ranks.k_star) {
    return SolverOutcome::not_applicable("exist-binval", "k exceeds the certified threshold " + pre.ranks.k_star.pretty());
  }
  SolverOutcome o = detail::checked_yes(inst, exchange_matching(inst, seat_filling_matching(inst)), "exist-binval");
  o.certified_k = pre.ranks.k_star;
  return o;
}

/// Every pair positive, strict utilities and grades, k <= 1: residents
/// proposing deferred acceptance yields a MEFE matching.
inline SolverOutcome solve_existence_hr(const Instance& inst) {
  const int n = inst.num_courses();
  const int m = inst.num_tas();
  for (int x = 0; x < n; ++x) {
    for (int t = 0; t < m; ++t) {
      if (!inst.acceptable(x, t)) return SolverOutcome::not_applicable("exist-hr", "some pair is valued zero");
    }
  }
  const CaseProfile p = profile(inst);
  if (!p.all_utilities_distinct()) return SolverOutcome::not_applicable("exist-hr", "tied utilities for a TA");
  if (!p.all_grades_distinct()) return SolverOutcome::not_applicable("exist-hr", "tied grades within a course");
  if (inst.k() > Rational(1)) return SolverOutcome::not_applicable("exist-hr", "k exceeds 1");
  PreferenceSystem ps;
  ps.left_prefs.resize(static_cast<std::size_t>(m));
  for (int t = 0; t < m; ++t) {
    auto& list = ps.left_prefs[t];
    for (int x = 0; x < n; ++x) list.push_back(x);
    std::sort(list.begin(), list.end(), [&](int a, int b) { return inst.utility(t, a) > inst.utility(t, b); });
  }
  for (int x = 0; x < n; ++x) {
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) order[t] = t;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return inst.grade(a, x) > inst.grade(b, x); });
    std::vector<std::vector<int>> list;
    for (int t : order) list.push_back({t});
    ps.right_prefs.push_back(std::move(list));
    ps.right_capacity.push_back(inst.capacity(x));
  }
  const EngineMatching em = deferred_acceptance(ps);
  return detail::checked_yes(inst, Matching(em.partner), "exist-hr");
}

}  // namespace mefe

#endif  // MEFE_EXISTENCE_HPP
