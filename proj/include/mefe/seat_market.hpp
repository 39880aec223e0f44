#ifndef MEFE_SEAT_MARKET_HPP
#define MEFE_SEAT_MARKET_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "mefe/engines/preference_system.hpp"
#include "mefe/engines/stable_enum.hpp"
#include "mefe/instance.hpp"
#include "mefe/rational.hpp"
#include "mefe/verify.hpp"

namespace mefe {

/// A block of seats in one course, open only to the TAs flagged in `accepts`.
struct SeatGroup {
  int course = 0;
  int capacity = 0;
  std::vector<bool> accepts;
};

/// Market with TAs proposing to seat groups. A TA ranks courses by utility and,
/// within a course, groups in the order given; groups rank TAs by grade.
/// Grades within a group and a TA's utilities must be distinct.
inline PreferenceSystem seat_market(const Instance& inst, const std::vector<SeatGroup>& groups) {
  PreferenceSystem ps;
  const int m = inst.num_tas();
  ps.left_prefs.resize(static_cast<std::size_t>(m));
  for (const auto& g : groups) {
    ps.right_capacity.push_back(g.capacity);
    std::vector<int> members;
    for (int t = 0; t < m; ++t) {
      if (g.accepts[t] && inst.acceptable(g.course, t)) members.push_back(t);
    }
    std::stable_sort(members.begin(), members.end(),
                     [&](int a, int b) { return inst.grade(a, g.course) > inst.grade(b, g.course); });
    std::vector<std::vector<int>> list;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i > 0 && inst.grade(members[i], g.course) == inst.grade(members[i - 1], g.course)) {
        list.back().push_back(members[i]);
      } else {
        list.push_back({members[i]});
      }
    }
    ps.right_prefs.push_back(std::move(list));
  }
  for (int t = 0; t < m; ++t) {
    std::vector<int> order(groups.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return inst.utility(t, groups[a].course) > inst.utility(t, groups[b].course);
    });
    for (int gi : order) {
      if (groups[gi].accepts[t] && inst.acceptable(groups[gi].course, t)) ps.left_prefs[t].push_back(gi);
    }
  }
  return ps;
}

/// First stable, seat-filling assignment of the market (left-optimal first)
/// that verifies as feasible, envy-free and meeting `threshold` everywhere.
/// The market is stable for every such matching when seats follow its classes,
/// so scanning all stable matchings is complete.
inline std::optional<Matching> solve_seat_market(const Instance& inst, const std::vector<SeatGroup>& groups,
                                                 const Rational& threshold,
                                                 std::uint64_t stable_budget = 1'000'000) {
  const PreferenceSystem ps = seat_market(inst, groups);
  std::optional<Matching> found;
  enumerate_stable_matchings(
      ps,
      [&](const EngineMatching& em) {
        Matching mu(inst.num_tas());
        for (int t = 0; t < inst.num_tas(); ++t) {
          if (em.partner[t] != kUnmatched) mu.assign(t, groups[em.partner[t]].course);
        }
        if (!is_mefe_at(inst, mu, threshold)) return true;
        found = std::move(mu);
        return false;
      },
      {.budget = stable_budget, .require_full_right = true});
  return found;
}

}  // namespace mefe

#endif  // MEFE_SEAT_MARKET_HPP
