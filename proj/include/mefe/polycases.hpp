#ifndef MEFE_POLYCASES_HPP
#define MEFE_POLYCASES_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mefe/engines/strongly_stable.hpp"
#include "mefe/graph.hpp"
#include "mefe/instance.hpp"
#include "mefe/outcome.hpp"
#include "mefe/rational.hpp"
#include "mefe/seat_market.hpp"
#include "mefe/verify.hpp"

namespace mefe {

/// Structural measurements the special-case solvers test against.
struct CaseProfile {
  int n = 0;
  int m = 0;
  int max_capacity = 0;
  std::vector<int> degree;
  std::vector<int> slack;                 // degree - capacity
  int max_ta_degree = 0;
  std::vector<int> distinct_values;       // number of distinct positive valuations per course
  std::vector<bool> grades_distinct;      // among TAs a course values positively
  std::vector<bool> utilities_distinct;   // over a TA's positively valued courses
  bool all_capacity_one = true;

  [[nodiscard]] bool all_grades_distinct() const {
    return std::all_of(grades_distinct.begin(), grades_distinct.end(), [](bool b) { return b; });
  }
  [[nodiscard]] bool all_utilities_distinct() const {
    return std::all_of(utilities_distinct.begin(), utilities_distinct.end(), [](bool b) { return b; });
  }
};

inline CaseProfile profile(const Instance& inst) {
  CaseProfile p;
  p.n = inst.num_courses();
  p.m = inst.num_tas();
  p.max_capacity = inst.max_capacity();
  for (int x = 0; x < p.n; ++x) {
    std::set<Value> values;
    std::set<Rational> grades;
    int degree = 0;
    bool distinct = true;
    for (int t = 0; t < p.m; ++t) {
      if (!inst.acceptable(x, t)) continue;
      ++degree;
      values.insert(inst.value(x, t));
      distinct = grades.insert(inst.grade(t, x)).second && distinct;
    }
    p.degree.push_back(degree);
    p.slack.push_back(degree - inst.capacity(x));
    p.distinct_values.push_back(static_cast<int>(values.size()));
    p.grades_distinct.push_back(distinct);
    p.all_capacity_one = p.all_capacity_one && inst.capacity(x) == 1;
  }
  for (int t = 0; t < p.m; ++t) {
    std::set<Value> utils;
    int degree = 0;
    bool distinct = true;
    for (int x = 0; x < p.n; ++x) {
      if (!inst.acceptable(x, t)) continue;
      ++degree;
      distinct = utils.insert(inst.utility(t, x)).second && distinct;
    }
    p.max_ta_degree = std::max(p.max_ta_degree, degree);
    p.utilities_distinct.push_back(distinct);
  }
  return p;
}

namespace detail {

// Copies a solved sub-instance assignment back into global indices.
inline void lift(const Matching& local, const std::vector<int>& courses, const std::vector<int>& tas,
                 Matching& global) {
  for (int j = 0; j < static_cast<int>(tas.size()); ++j) {
    if (local.assigned(j)) global.assign(tas[j], courses[local.course_of(j)]);
  }
}

inline SolverOutcome checked_yes(const Instance& inst, Matching mu, const char* solver) {
  if (!is_mefe(inst, mu)) {
    throw std::logic_error(std::string(solver) + " produced a matching that fails verification");
  }
  return SolverOutcome::yes(std::move(mu), solver);
}

}  // namespace detail

/// Propagates a partial matching: while some unfilled course touches a TA that
/// is already placed, that course takes all of its remaining neighbors.
/// `placed_tas` may contain TAs deliberately left unassigned.
inline Matching extended_matching(const BipartiteGraph& g, Matching partial, std::vector<bool> placed_tas,
                                  std::vector<bool> filled_courses) {
  while (true) {
    int next = -1;
    for (int x = 0; x < g.num_courses() && next < 0; ++x) {
      if (filled_courses[x]) continue;
      for (int t : g.tas_of(x)) {
        if (placed_tas[t]) {
          next = x;
          break;
        }
      }
    }
    if (next < 0) return partial;
    for (int t : g.tas_of(next)) {
      if (placed_tas[t]) continue;
      partial.assign(t, next);
      placed_tas[t] = true;
    }
    filled_courses[next] = true;
  }
}

namespace detail {

// One connected component of a degree-minus-capacity-at-most-one instance,
// given in local indices. Returns the verified component matching, if any.
inline std::optional<Matching> solve_degcap_component(const Instance& inst) {
  const BipartiteGraph g(inst);
  const int n = inst.num_courses();
  const int m = inst.num_tas();
  if (n == 0) return Matching(m);
  auto attempt = [&](const Matching& seed, const std::vector<bool>& placed,
                     const std::vector<bool>& filled) -> std::optional<Matching> {
    Matching mu = extended_matching(g, seed, placed, filled);
    if (is_mefe(inst, mu)) return mu;
    return std::nullopt;
  };

  // Case 1: courses whose whole neighborhood is forced.
  Matching seed(m);
  std::vector<bool> placed(static_cast<std::size_t>(m), false);
  std::vector<bool> filled(static_cast<std::size_t>(n), false);
  bool forced = false;
  for (int x = 0; x < n; ++x) {
    if (g.course_degree(x) != inst.capacity(x)) continue;
    forced = true;
    filled[x] = true;
    for (int t : g.tas_of(x)) {
      if (placed[t]) return std::nullopt;  // two forced courses share a TA
      placed[t] = true;
      seed.assign(t, x);
    }
  }
  if (forced) return attempt(seed, placed, filled);

  const int vertices = n + m;
  const int edges = g.num_edges();
  if (edges == vertices - 1) {
    // Case 2.1: a tree; exactly one TA stays unassigned.
    for (int t = 0; t < m; ++t) {
      std::vector<bool> marker(static_cast<std::size_t>(m), false);
      marker[t] = true;
      if (auto mu = attempt(Matching(m), marker, std::vector<bool>(static_cast<std::size_t>(n), false))) return mu;
    }
    return std::nullopt;
  }
  if (edges > vertices) return std::nullopt;  // Case 2.3: two or more cycles

  // Case 2.2: exactly one cycle. Strip leaves to expose it.
  std::vector<int> deg(static_cast<std::size_t>(vertices));
  for (int x = 0; x < n; ++x) deg[x] = g.course_degree(x);
  for (int t = 0; t < m; ++t) deg[n + t] = g.ta_degree(t);
  std::vector<bool> removed(static_cast<std::size_t>(vertices), false);
  std::vector<int> stack;
  for (int v = 0; v < vertices; ++v) {
    if (deg[v] <= 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (removed[v]) continue;
    removed[v] = true;
    const auto& nbrs = v < n ? g.tas_of(v) : g.courses_of(v - n);
    for (int w : nbrs) {
      const int id = v < n ? n + w : w;
      if (!removed[id] && --deg[id] <= 1) stack.push_back(id);
    }
  }
  int x1 = -1;
  for (int x = 0; x < n && x1 < 0; ++x) {
    if (!removed[x]) x1 = x;
  }
  if (x1 < 0) return std::nullopt;
  std::vector<int> ends;
  for (int t : g.tas_of(x1)) {
    if (!removed[n + t]) ends.push_back(t);
  }
  for (int skip : ends) {
    Matching seed_mu(m);
    std::vector<bool> seed_placed(static_cast<std::size_t>(m), false);
    std::vector<bool> seed_filled(static_cast<std::size_t>(n), false);
    seed_filled[x1] = true;
    for (int t : g.tas_of(x1)) {
      if (t == skip) continue;
      seed_mu.assign(t, x1);
      seed_placed[t] = true;
    }
    if (auto mu = attempt(seed_mu, seed_placed, seed_filled)) return mu;
  }
  return std::nullopt;
}

}  // namespace detail

/// Exact solver when every course has at most one more neighbor than seats.
inline SolverOutcome solve_degcap_le1(const Instance& inst) {
  const CaseProfile p = profile(inst);
  for (int x = 0; x < p.n; ++x) {
    if (p.slack[x] != 0 && p.slack[x] != 1) {
      return SolverOutcome::not_applicable("degcap", "course '" + inst.course_id(x) +
                                                          "' has degree minus capacity outside {0, 1}");
    }
  }
  const BipartiteGraph g(inst);
  Matching mu(inst.num_tas());
  for (const auto& comp : g.components()) {
    if (comp.courses.empty()) continue;
    const Instance local = sub_instance(inst, comp.courses, comp.tas);
    const auto part = detail::solve_degcap_component(local);
    if (!part) return SolverOutcome::no("degcap");
    detail::lift(*part, comp.courses, comp.tas, mu);
  }
  return detail::checked_yes(inst, std::move(mu), "degcap");
}

/// One course: the only candidate takes the top-graded TAs.
inline SolverOutcome solve_single_course(const Instance& inst) {
  if (inst.num_courses() != 1) return SolverOutcome::not_applicable("single", "needs exactly one course");
  std::vector<int> tas;
  for (int t = 0; t < inst.num_tas(); ++t) {
    if (inst.acceptable(0, t)) tas.push_back(t);
  }
  std::sort(tas.begin(), tas.end(), [&](int a, int b) {
    if (inst.grade(a, 0) != inst.grade(b, 0)) return inst.grade(a, 0) > inst.grade(b, 0);
    return inst.ta_id(a) < inst.ta_id(b);
  });
  if (static_cast<int>(tas.size()) < inst.capacity(0)) return SolverOutcome::no("single", "too few TAs value the course");
  Matching mu(inst.num_tas());
  for (int i = 0; i < inst.capacity(0); ++i) mu.assign(tas[i], 0);
  if (!is_mefe(inst, mu)) return SolverOutcome::no("single");
  return SolverOutcome::yes(std::move(mu), "single");
}

/// Every TA values at most one course: courses are independent.
inline SolverOutcome solve_ta_degree1(const Instance& inst) {
  const BipartiteGraph g(inst);
  for (int t = 0; t < inst.num_tas(); ++t) {
    if (g.ta_degree(t) > 1) {
      return SolverOutcome::not_applicable("tadeg1", "TA '" + inst.ta_id(t) + "' values several courses");
    }
  }
  Matching mu(inst.num_tas());
  for (int x = 0; x < inst.num_courses(); ++x) {
    const std::vector<int> courses{x};
    const Instance local = sub_instance(inst, courses, g.tas_of(x));
    const auto part = solve_single_course(local);
    if (!part.is_yes()) return SolverOutcome::no("tadeg1", "course '" + inst.course_id(x) + "' has no fair roster");
    detail::lift(*part.matching, courses, g.tas_of(x), mu);
  }
  return detail::checked_yes(inst, std::move(mu), "tadeg1");
}

struct ConstantEnumLimits {
  int max_courses = 4;
  int max_capacity = 4;
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (r > UINT64_MAX / num) return UINT64_MAX;
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

class RosterEnumerator {
public:
  RosterEnumerator(const Instance& inst, std::uint64_t budget) : inst_(inst), budget_(budget), mu_(inst.num_tas()) {}

  std::optional<Matching> run() {
    fill(0, 0, 0);
    return found_;
  }

private:
  // Chooses the roster of course x one TA at a time, in increasing TA index.
  bool fill(int x, int start, int taken) {
    if (x == inst_.num_courses()) {
      if (++visited_ > budget_) {
        throw Error(ErrorKind::ResourceBound, "roster enumeration exceeded " + std::to_string(budget_) + " candidates");
      }
      if (!is_mefe(inst_, mu_)) return true;
      found_ = mu_;
      return false;
    }
    if (taken == inst_.capacity(x)) return fill(x + 1, 0, 0);
    for (int t = start; t < inst_.num_tas(); ++t) {
      if (mu_.assigned(t) || !inst_.acceptable(x, t)) continue;
      mu_.assign(t, x);
      const bool go_on = fill(x, t + 1, taken + 1);
      mu_.unassign(t);
      if (!go_on) return false;
    }
    return true;
  }

  const Instance& inst_;
  std::uint64_t budget_;
  Matching mu_;
  std::uint64_t visited_ = 0;
  std::optional<Matching> found_;
};

}  // namespace detail

/// Upper bound on the rosters solve_constant_enum inspects.
inline std::uint64_t constant_enum_candidates(const Instance& inst) {
  std::uint64_t count = 1;
  int left = inst.num_tas();
  for (int x = 0; x < inst.num_courses(); ++x) {
    count = detail::saturating_mul(count, detail::binomial(left, inst.capacity(x)));
    left -= inst.capacity(x);
  }
  return count;
}

/// Few courses with small capacities: try every roster choice.
inline SolverOutcome solve_constant_enum(const Instance& inst, const SolveOptions& opts = {},
                                         const ConstantEnumLimits& limits = {}) {
  if (inst.num_courses() > limits.max_courses) {
    return SolverOutcome::not_applicable("constenum", "more than " + std::to_string(limits.max_courses) + " courses");
  }
  if (inst.max_capacity() > limits.max_capacity) {
    return SolverOutcome::not_applicable("constenum",
                                         "a capacity exceeds " + std::to_string(limits.max_capacity));
  }
  if (constant_enum_candidates(inst) > opts.budget) {
    return SolverOutcome::not_applicable("constenum", "roster count exceeds the budget");
  }
  if (auto mu = detail::RosterEnumerator(inst, opts.budget).run()) return SolverOutcome::yes(*mu, "constenum");
  return SolverOutcome::no("constenum");
}

/// Market used by solve_capacity1: TAs propose along strict utility lists,
/// courses rank by grade with ties; a pair weighs 1 iff its valuation meets k.
inline PreferenceSystem capacity1_market(const Instance& inst) {
  PreferenceSystem ps;
  const int n = inst.num_courses();
  const int m = inst.num_tas();
  ps.left_prefs.resize(static_cast<std::size_t>(m));
  ps.weights.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int t = 0; t < m; ++t) {
    for (int x = 0; x < n; ++x) {
      if (!inst.acceptable(x, t)) continue;
      ps.left_prefs[t].push_back(x);
      ps.weights[t][x] = Rational(inst.value(x, t)) >= inst.k() ? 1 : 0;
    }
    std::stable_sort(ps.left_prefs[t].begin(), ps.left_prefs[t].end(),
                     [&](int a, int b) { return inst.utility(t, a) > inst.utility(t, b); });
  }
  for (int x = 0; x < n; ++x) {
    std::vector<int> tas;
    for (int t = 0; t < m; ++t) {
      if (inst.acceptable(x, t)) tas.push_back(t);
    }
    std::stable_sort(tas.begin(), tas.end(), [&](int a, int b) { return inst.grade(a, x) > inst.grade(b, x); });
    std::vector<std::vector<int>> list;
    for (std::size_t i = 0; i < tas.size(); ++i) {
      if (i > 0 && inst.grade(tas[i], x) == inst.grade(tas[i - 1], x)) {
        list.back().push_back(tas[i]);
      } else {
        list.push_back({tas[i]});
      }
    }
    ps.right_prefs.push_back(std::move(list));
    ps.right_capacity.push_back(1);
  }
  return ps;
}

/// Unit capacities and strict TA utilities: a strongly stable matching of
/// full weight is exactly a MEFE matching.
inline SolverOutcome solve_capacity1(const Instance& inst, const SolveOptions& opts = {}) {
  const CaseProfile p = profile(inst);
  if (!p.all_capacity_one) return SolverOutcome::not_applicable("cap1", "a capacity exceeds one");
  if (!p.all_utilities_distinct()) {
    return SolverOutcome::not_applicable("cap1", "some TA values two courses equally");
  }
  const auto best = strongly_stable_max_weight(capacity1_market(inst), opts.budget);
  if (!best) return SolverOutcome::no("cap1", "no strongly stable matching");
  if (best->weight < inst.num_courses()) return SolverOutcome::no("cap1", "no strongly stable matching of full weight");
  return detail::checked_yes(inst, Matching(best->matching.partner), "cap1");
}

/// Smallest number a of high-valued seats (value q, the rest value q') with
/// a*q + (c-a)*q' >= k*c, as (a, c-a); nullopt when no split of c seats works.
inline std::optional<std::pair<int, int>> two_valuation_quota(const Rational& q, const Rational& q_low, int c,
                                                              const Rational& k) {
  if (q < k) return std::nullopt;
  if (q == q_low) return std::pair{c, 0};
  const Rational need = Rational(c) * (k - q_low) / (q - q_low);
  const std::int64_t a = std::max<std::int64_t>(0, need.ceil());
  if (a > c) return std::nullopt;
  return std::pair{static_cast<int>(a), c - static_cast<int>(a)};
}

/// At most two positive valuations per course, distinct grades per course and
/// distinct utilities per TA.
inline SolverOutcome solve_two_valuation(const Instance& inst, const SolveOptions& opts = {}) {
  const CaseProfile p = profile(inst);
  for (int x = 0; x < p.n; ++x) {
    if (p.distinct_values[x] > 2) {
      return SolverOutcome::not_applicable("twoval", "course '" + inst.course_id(x) + "' has three or more valuations");
    }
  }
  if (!p.all_grades_distinct()) return SolverOutcome::not_applicable("twoval", "tied grades within a course");
  if (!p.all_utilities_distinct()) return SolverOutcome::not_applicable("twoval", "tied utilities for a TA");
  std::vector<SeatGroup> groups;
  for (int x = 0; x < p.n; ++x) {
    Value q = 0;
    Value q_low = 0;
    for (int t = 0; t < p.m; ++t) {
      if (!inst.acceptable(x, t)) continue;
      const Value v = inst.value(x, t);
      q = std::max(q, v);
      q_low = q_low == 0 ? v : std::min(q_low, v);
    }
    if (q == 0) return SolverOutcome::no("twoval", "course '" + inst.course_id(x) + "' has no positive valuation");
    const auto quota = two_valuation_quota(q, q_low, inst.capacity(x), inst.k());
    if (!quota) return SolverOutcome::no("twoval", "course '" + inst.course_id(x) + "' cannot reach k");
    const auto [high, low] = *quota;
    if (high > 0) {
      SeatGroup g{x, high, std::vector<bool>(static_cast<std::size_t>(p.m), false)};
      for (int t = 0; t < p.m; ++t) g.accepts[t] = inst.value(x, t) == q;
      groups.push_back(std::move(g));
    }
    if (low > 0) groups.push_back({x, low, std::vector<bool>(static_cast<std::size_t>(p.m), true)});
  }
  if (auto mu = solve_seat_market(inst, groups, inst.k(), opts.budget)) {
    return detail::checked_yes(inst, std::move(*mu), "twoval");
  }
  return SolverOutcome::no("twoval");
}

}  // namespace mefe

#endif  // MEFE_POLYCASES_HPP
