#ifndef MEFE_PARAMSOLVERS_HPP
#define MEFE_PARAMSOLVERS_HPP

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mefe/instance.hpp"
#include "mefe/outcome.hpp"
#include "mefe/parallel.hpp"
#include "mefe/polycases.hpp"
#include "mefe/rational.hpp"
#include "mefe/seat_market.hpp"
#include "mefe/verify.hpp"

namespace mefe {

/// The TAs a course values positively, split into classes. Exact classes are
/// distinct valuations in decreasing order; approximate classes are buckets.
struct CourseClasses {
  std::vector<std::vector<int>> members;  // TA indices per class
  std::vector<Value> top;                 // largest valuation in each class
};

/// Valuation classes of course x, highest value first.
inline CourseClasses valuation_classes(const Instance& inst, int x) {
  std::map<Value, std::vector<int>, std::greater<>> by_value;
  for (int t = 0; t < inst.num_tas(); ++t) {
    if (inst.acceptable(x, t)) by_value[inst.value(x, t)].push_back(t);
  }
  CourseClasses out;
  for (auto& [v, tas] : by_value) {
    out.top.push_back(v);
    out.members.push_back(std::move(tas));
  }
  return out;
}

/// Per-class seat counts for one course: they sum to the capacity, never exceed
/// the class size, and the class maxima reach `threshold` on average.
/// Lexicographic order over class index.
inline std::vector<std::vector<int>> seat_vectors(const CourseClasses& classes, int capacity,
                                                  const Rational& threshold) {
  std::vector<std::vector<int>> out;
  const int r = static_cast<int>(classes.members.size());
  std::vector<int> a(static_cast<std::size_t>(r), 0);
  const Rational need = threshold * Rational(capacity);
  auto rec = [&](auto&& self, int j, int left, Rational mass) -> void {
    if (j == r) {
      if (left == 0 && mass >= need) out.push_back(a);
      return;
    }
    const int most = std::min(left, static_cast<int>(classes.members[j].size()));
    for (int v = 0; v <= most; ++v) {
      a[j] = v;
      self(self, j + 1, left - v, mass + Rational(classes.top[j]) * Rational(v));
    }
    a[j] = 0;
  };
  rec(rec, 0, capacity, Rational(0));
  return out;
}

namespace detail {

inline std::uint64_t pow_saturating(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

inline std::vector<SeatGroup> groups_for(const Instance& inst, const std::vector<CourseClasses>& classes,
                                         const std::vector<const std::vector<int>*>& choice) {
  std::vector<SeatGroup> groups;
  for (int x = 0; x < inst.num_courses(); ++x) {
    const auto& a = *choice[x];
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] == 0) continue;
      SeatGroup g{x, a[j], std::vector<bool>(static_cast<std::size_t>(inst.num_tas()), false)};
      for (int t : classes[x].members[j]) g.accepts[t] = true;
      groups.push_back(std::move(g));
    }
  }
  return groups;
}

// Tries every combination of per-course seat vectors, in lexicographic order
// over (course, class). The least successful combination wins for any jobs.
inline std::optional<Matching> search_seat_vectors(const Instance& inst, const std::vector<CourseClasses>& classes,
                                                   const std::vector<std::vector<std::vector<int>>>& vectors,
                                                   const Rational& threshold, const SolveOptions& opts) {
  const int n = inst.num_courses();
  std::uint64_t total = 1;
  for (const auto& v : vectors) total = saturating_mul(total, v.size());
  if (total == 0) return std::nullopt;
  if (total > static_cast<std::uint64_t>(INT_MAX)) {
    throw Error(ErrorKind::ResourceBound, "too many seat-vector combinations");
  }
  const int count = static_cast<int>(total);
  std::atomic<int> best{INT_MAX};
  std::vector<std::optional<Matching>> found(static_cast<std::size_t>(count));
  constexpr int kChunk = 64;
  const int chunks = (count + kChunk - 1) / kChunk;
  parallel_for(chunks, opts.jobs, [&](int chunk) {
    for (int idx = chunk * kChunk; idx < std::min(count, (chunk + 1) * kChunk); ++idx) {
      if (idx > best.load()) return;
      std::vector<const std::vector<int>*> choice(static_cast<std::size_t>(n));
      int rest = idx;
      for (int x = n - 1; x >= 0; --x) {
        const int size = static_cast<int>(vectors[x].size());
        choice[x] = &vectors[x][rest % size];
        rest /= size;
      }
      auto mu = solve_seat_market(inst, groups_for(inst, classes, choice), threshold, opts.budget);
      if (!mu) continue;
      found[idx] = std::move(mu);
      int current = best.load();
      while (idx < current && !best.compare_exchange_weak(current, idx)) {
      }
      return;
    }
  });
  if (best.load() == INT_MAX) return std::nullopt;
  return found[best.load()];
}

}  // namespace detail

/// Exact solver in time exponential only in the valuation classes per course.
inline SolverOutcome solve_fpt_n(const Instance& inst, const SolveOptions& opts = {}) {
  const CaseProfile p = profile(inst);
  if (!p.all_grades_distinct()) return SolverOutcome::not_applicable("fptn", "tied grades within a course");
  if (!p.all_utilities_distinct()) return SolverOutcome::not_applicable("fptn", "tied utilities for a TA");
  std::uint64_t space = 1;
  for (int x = 0; x < p.n; ++x) {
    space = detail::saturating_mul(
        space, detail::pow_saturating(static_cast<std::uint64_t>(inst.capacity(x)) + 1, p.distinct_values[x]));
  }
  if (space > opts.budget) return SolverOutcome::not_applicable("fptn", "seat-vector space exceeds the budget");
  std::vector<CourseClasses> classes;
  std::vector<std::vector<std::vector<int>>> vectors;
  for (int x = 0; x < p.n; ++x) {
    classes.push_back(valuation_classes(inst, x));
    vectors.push_back(seat_vectors(classes.back(), inst.capacity(x), inst.k()));
    if (vectors.back().empty()) return SolverOutcome::no("fptn", "course '" + inst.course_id(x) + "' cannot reach k");
  }
  if (auto mu = detail::search_seat_vectors(inst, classes, vectors, inst.k(), opts)) {
    return detail::checked_yes(inst, std::move(*mu), "fptn");
  }
  return SolverOutcome::no("fptn");
}

/// Buckets [rho^(j-1), rho^j) with rho = 1/(1-eps), compared exactly.
class GeometricBuckets {
public:
  explicit GeometricBuckets(const Rational& epsilon) : num_((1 - epsilon).den()), den_((1 - epsilon).num()) {}

  /// 1-based bucket holding a positive integer value.
  [[nodiscard]] int index(Value v) const {
    using boost::multiprecision::cpp_int;
    int j = 1;
    cpp_int power_num = num_;
    cpp_int power_den = den_;
    // v < rho^j  <=>  v * den^j < num^j
    while (cpp_int(v) * power_den >= power_num) {
      power_num *= num_;
      power_den *= den_;
      ++j;
    }
    return j;
  }

  /// Smallest B with rho^B > vmax: the bucket count covering 1..vmax.
  [[nodiscard]] int count(Value vmax) const { return index(vmax); }

private:
  std::int64_t num_;
  std::int64_t den_;
};

/// Buckets of course x in increasing value order; bucket j-1 holds index j.
inline CourseClasses bucket_classes(const Instance& inst, int x, const GeometricBuckets& buckets) {
  Value vmax = 0;
  for (int t = 0; t < inst.num_tas(); ++t) vmax = std::max(vmax, inst.value(x, t));
  CourseClasses out;
  if (vmax == 0) return out;
  const int b = buckets.count(vmax);
  out.members.resize(static_cast<std::size_t>(b));
  out.top.assign(static_cast<std::size_t>(b), 0);
  for (int t = 0; t < inst.num_tas(); ++t) {
    if (!inst.acceptable(x, t)) continue;
    const int j = buckets.index(inst.value(x, t)) - 1;
    out.members[j].push_back(t);
    out.top[j] = std::max(out.top[j], inst.value(x, t));
  }
  return out;
}

/// Returns a feasible, exactly envy-free matching with every course average at
/// least (1-eps)k whenever a MEFE matching at k exists.
inline SolverOutcome solve_approx(const Instance& inst, const Rational& epsilon, const SolveOptions& opts = {}) {
  if (epsilon <= Rational(0) || epsilon >= Rational(1)) {
    return SolverOutcome::not_applicable("approx", "epsilon must lie strictly between 0 and 1");
  }
  const CaseProfile p = profile(inst);
  if (!p.all_grades_distinct()) return SolverOutcome::not_applicable("approx", "tied grades within a course");
  if (!p.all_utilities_distinct()) return SolverOutcome::not_applicable("approx", "tied utilities for a TA");
  const Rational relaxed = (Rational(1) - epsilon) * inst.k();
  const GeometricBuckets buckets(epsilon);
  std::vector<CourseClasses> classes;
  std::vector<std::vector<std::vector<int>>> vectors;
  std::uint64_t space = 1;
  for (int x = 0; x < p.n; ++x) {
    classes.push_back(bucket_classes(inst, x, buckets));
    vectors.push_back(seat_vectors(classes.back(), inst.capacity(x), relaxed));
    space = detail::saturating_mul(space, vectors.back().size());
    if (vectors.back().empty()) {
      SolverOutcome o = SolverOutcome::no("approx", "course '" + inst.course_id(x) + "' cannot reach (1-eps)k");
      o.certified_k = relaxed;
      return o;
    }
  }
  if (space > opts.budget) return SolverOutcome::not_applicable("approx", "bucket-vector space exceeds the budget");
  auto mu = detail::search_seat_vectors(inst, classes, vectors, relaxed, opts);
  SolverOutcome o = mu ? SolverOutcome::yes(std::move(*mu), "approx") : SolverOutcome::no("approx");
  o.certified_k = relaxed;
  o.reason = std::to_string(space) + " bucket-vector guesses";
  return o;
}

}  // namespace mefe

#endif  // MEFE_PARAMSOLVERS_HPP
