#ifndef MEFE_ORACLE_HPP
#define MEFE_ORACLE_HPP

#include <atomic>
#include <climits>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mefe/error.hpp"
#include "mefe/instance.hpp"
#include "mefe/outcome.hpp"
#include "mefe/parallel.hpp"
#include "mefe/verify.hpp"

namespace mefe {

namespace detail {

// Depth-first walk over assignments, TA by TA, courses in index order and
// Unassigned last. Only full-capacity assignments reach a leaf.
class AssignmentWalker {
public:
  // Return false from the visitor to stop the walk.
  using Visitor = std::function<bool(const Matching&)>;

  AssignmentWalker(const Instance& inst, std::uint64_t budget, const std::atomic<bool>* cancel = nullptr)
      : inst_(inst),
        budget_(budget),
        cancel_(cancel),
        mu_(inst.num_tas()),
        load_(static_cast<std::size_t>(inst.num_courses()), 0) {
    for (int x = 0; x < inst.num_courses(); ++x) open_seats_ += inst.capacity(x);
  }

  /// Fixes the first TA's choice (a course index or kUnassigned) before walking.
  bool walk(const Visitor& visit, std::optional<int> first_choice = std::nullopt) {
    if (!first_choice) return descend(0, visit);
    if (inst_.num_tas() == 0) return descend(0, visit);
    if (!try_place(0, *first_choice)) return true;
    const bool go_on = descend(1, visit);
    undo(0, *first_choice);
    return go_on;
  }

  [[nodiscard]] std::uint64_t leaves() const { return leaves_; }
  [[nodiscard]] bool exceeded() const { return exceeded_; }

private:
  bool try_place(int t, int x) {
    if (x == kUnassigned) {
      if (open_seats_ > inst_.num_tas() - t - 1) return false;
      return true;
    }
    if (load_[x] >= inst_.capacity(x) || inst_.value(x, t) == 0) return false;
    ++load_[x];
    --open_seats_;
    mu_.assign(t, x);
    return true;
  }

  void undo(int t, int x) {
    if (x == kUnassigned) return;
    --load_[x];
    ++open_seats_;
    mu_.unassign(t);
  }

  bool descend(int t, const Visitor& visit) {
    if (cancel_ != nullptr && cancel_->load(std::memory_order_relaxed)) return false;
    if (open_seats_ > inst_.num_tas() - t) return true;
    if (t == inst_.num_tas()) {
      if (++leaves_ > budget_) {
        exceeded_ = true;
        return false;
      }
      return visit(mu_);
    }
    for (int x = 0; x < inst_.num_courses(); ++x) {
      if (!try_place(t, x)) continue;
      const bool go_on = descend(t + 1, visit);
      undo(t, x);
      if (!go_on) return false;
    }
    if (try_place(t, kUnassigned)) return descend(t + 1, visit);
    return true;
  }

  const Instance& inst_;
  std::uint64_t budget_;
  const std::atomic<bool>* cancel_;
  Matching mu_;
  std::vector<int> load_;
  int open_seats_ = 0;
  std::uint64_t leaves_ = 0;
  bool exceeded_ = false;
};

struct BranchResult {
  std::vector<Matching> found;
  std::uint64_t leaves = 0;  // leaves visited up to and including the first hit, or in total
  bool exceeded = false;
  bool cancelled = false;
};

inline std::vector<std::optional<int>> first_choices(const Instance& inst) {
  if (inst.num_tas() == 0) return {std::nullopt};
  std::vector<std::optional<int>> out;
  for (int x = 0; x < inst.num_courses(); ++x) out.emplace_back(x);
  out.emplace_back(kUnassigned);
  return out;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

[[noreturn]] inline void throw_budget(std::uint64_t budget) {
  throw Error(ErrorKind::ResourceBound, "exhaustive search exceeded " + std::to_string(budget) + " leaf visits");
}

}  // namespace detail

/// Exhaustive exact solver. Returns the lexicographically least MEFE matching.
/// Throws ResourceBound when more than opts.budget leaves would be visited
/// before the answer is known.
inline SolverOutcome solve_bruteforce(const Instance& inst, const SolveOptions& opts = {}) {
  const auto choices = detail::first_choices(inst);
  const int count = static_cast<int>(choices.size());
  std::vector<detail::BranchResult> results(static_cast<std::size_t>(count));
  std::atomic<int> best_hit{INT_MAX};
  std::vector<std::atomic<bool>> cancel(static_cast<std::size_t>(count));
  parallel_for(count, opts.jobs, [&](int i) {
    if (best_hit.load() < i) {
      results[i].cancelled = true;
      return;
    }
    detail::AssignmentWalker walker(inst, opts.budget, &cancel[i]);
    auto& r = results[i];
    walker.walk(
        [&](const Matching& mu) {
          if (!is_mefe(inst, mu)) return true;
          r.found.push_back(mu);
          return false;
        },
        choices[i]);
    r.leaves = walker.leaves();
    r.exceeded = walker.exceeded();
    r.cancelled = cancel[i].load();
    if (!r.found.empty()) {
      int current = best_hit.load();
      while (i < current && !best_hit.compare_exchange_weak(current, i)) {
      }
      for (int j = i + 1; j < count; ++j) cancel[j].store(true);
    }
  });
  // Replays the sequential budget accounting so the verdict does not depend on jobs.
  std::uint64_t spent = 0;
  for (int i = 0; i < count; ++i) {
    const auto& r = results[i];
    spent = detail::saturating_add(spent, r.leaves);
    if (r.exceeded || spent > opts.budget) detail::throw_budget(opts.budget);
    if (!r.found.empty()) return SolverOutcome::yes(r.found.front(), "brute");
  }
  return SolverOutcome::no("brute");
}

/// Every MEFE matching, in lexicographic assignment order.
inline std::vector<Matching> enumerate_all_mefe(const Instance& inst, const SolveOptions& opts = {}) {
  const auto choices = detail::first_choices(inst);
  const int count = static_cast<int>(choices.size());
  std::vector<detail::BranchResult> results(static_cast<std::size_t>(count));
  parallel_for(count, opts.jobs, [&](int i) {
    detail::AssignmentWalker walker(inst, opts.budget);
    auto& r = results[i];
    walker.walk(
        [&](const Matching& mu) {
          if (is_mefe(inst, mu)) r.found.push_back(mu);
          return true;
        },
        choices[i]);
    r.leaves = walker.leaves();
    r.exceeded = walker.exceeded();
  });
  std::uint64_t spent = 0;
  std::vector<Matching> all;
  for (auto& r : results) {
    spent = detail::saturating_add(spent, r.leaves);
    if (r.exceeded || spent > opts.budget) detail::throw_budget(opts.budget);
    for (auto& mu : r.found) all.push_back(std::move(mu));
  }
  return all;
}

/// Number of leaves the exhaustive walk visits on this instance (no budget).
inline std::uint64_t count_leaves(const Instance& inst) {
  detail::AssignmentWalker walker(inst, UINT64_MAX);
  walker.walk([](const Matching&) { return true; });
  return walker.leaves();
}

}  // namespace mefe

#endif  // MEFE_ORACLE_HPP
