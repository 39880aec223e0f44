#ifndef MEFE_ENGINES_DEFERRED_ACCEPTANCE_HPP
#define MEFE_ENGINES_DEFERRED_ACCEPTANCE_HPP

#include <deque>
#include <vector>

#include "mefe/engines/preference_system.hpp"
#include "mefe/error.hpp"

namespace mefe {

namespace detail {

// Left-proposing deferred acceptance where left agent l proposes along
// lists[l] (a sublist of its preference list). Right lists must be strict.
inline EngineMatching propose_along(const PreferenceSystem& ps, const RankTables& ranks,
                                    const std::vector<std::vector<int>>& lists) {
  const int num_left = ps.num_left();
  EngineMatching m{std::vector<int>(static_cast<std::size_t>(num_left), kUnmatched)};
  std::vector<std::vector<int>> held(static_cast<std::size_t>(ps.num_right()));
  std::vector<std::size_t> next(static_cast<std::size_t>(num_left), 0);
  std::deque<int> free;
  for (int l = 0; l < num_left; ++l) free.push_back(l);
  while (!free.empty()) {
    const int l = free.front();
    free.pop_front();
    if (next[l] >= lists[l].size()) continue;
    const int r = lists[l][next[l]++];
    auto& roster = held[r];
    if (static_cast<int>(roster.size()) < ps.right_capacity[r]) {
      roster.push_back(l);
      m.partner[l] = r;
      continue;
    }
    auto worst = roster.begin();
    for (auto it = roster.begin(); it != roster.end(); ++it) {
      if (ranks.right_rank[r][*it] > ranks.right_rank[r][*worst]) worst = it;
    }
    if (ranks.right_rank[r][l] < ranks.right_rank[r][*worst]) {
      const int dropped = *worst;
      *worst = l;
      m.partner[l] = r;
      m.partner[dropped] = kUnmatched;
      free.push_back(dropped);
    } else {
      free.push_back(l);
    }
  }
  return m;
}

}  // namespace detail

/// Left-optimal stable matching. Throws TiesPresent if a right list has ties.
inline EngineMatching deferred_acceptance(const PreferenceSystem& ps) {
  if (ps.right_has_ties()) throw Error(ErrorKind::TiesPresent, "deferred acceptance needs strict lists");
  const RankTables ranks = validate(ps);
  return detail::propose_along(ps, ranks, ps.left_prefs);
}

}  // namespace mefe

#endif  // MEFE_ENGINES_DEFERRED_ACCEPTANCE_HPP
