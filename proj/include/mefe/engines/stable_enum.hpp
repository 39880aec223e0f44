#ifndef MEFE_ENGINES_STABLE_ENUM_HPP
#define MEFE_ENGINES_STABLE_ENUM_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mefe/engines/deferred_acceptance.hpp"
#include "mefe/engines/preference_system.hpp"
#include "mefe/error.hpp"

namespace mefe {

struct StableEnumOptions {
  /// Maximum number of deferred-acceptance runs before ResourceBound.
  std::uint64_t budget = 1'000'000;
  /// Only report matchings that fill every right seat. Lets whole subtrees be
  /// skipped, since all stable matchings of a market fill the same seats.
  bool require_full_right = false;
};

namespace detail {

class StableEnumerator {
public:
  using Visitor = std::function<bool(const EngineMatching&)>;

  StableEnumerator(const PreferenceSystem& ps, const StableEnumOptions& opts, const Visitor& visit)
      : ps_(ps), ranks_(validate(ps)), opts_(opts), visit_(visit) {}

  void run() { explore(ps_.left_prefs); }

private:
  bool full(const EngineMatching& m) const {
    std::vector<int> load(static_cast<std::size_t>(ps_.num_right()), 0);
    for (int p : m.partner) {
      if (p != kUnmatched) ++load[p];
    }
    for (int r = 0; r < ps_.num_right(); ++r) {
      if (load[r] != ps_.right_capacity[r]) return false;
    }
    return true;
  }

  // Every matching stable for the full market whose pairs lie in `lists` is
  // stable for `lists` too. Stable matchings of `lists` other than the
  // left-optimal one are split by the first left agent whose partner differs.
  bool explore(const std::vector<std::vector<int>>& lists) {
    if (++runs_ > opts_.budget) {
      throw Error(ErrorKind::ResourceBound,
                  "stable matching enumeration exceeded " + std::to_string(opts_.budget) + " runs");
    }
    const EngineMatching top = propose_along(ps_, ranks_, lists);
    if (opts_.require_full_right && !full(top)) return true;
    if (is_stable(ps_, ranks_, top) && !visit_(top)) return false;
    for (int i = 0; i < ps_.num_left(); ++i) {
      const int p = top.partner[i];
      if (p == kUnmatched) continue;
      std::vector<std::vector<int>> sub = lists;
      for (int j = 0; j < i; ++j) {
        sub[j].clear();
        if (top.partner[j] != kUnmatched) sub[j].push_back(top.partner[j]);
      }
      auto& tail = sub[i];
      std::size_t pos = 0;
      while (tail[pos] != p) ++pos;
      tail.erase(tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
      if (!explore(sub)) return false;
    }
    return true;
  }

  const PreferenceSystem& ps_;
  RankTables ranks_;
  StableEnumOptions opts_;
  const Visitor& visit_;
  std::uint64_t runs_ = 0;
};

}  // namespace detail

/// Visits every stable matching of a strict market exactly once, the
/// left-optimal one first. The visitor returns false to stop early.
inline void enumerate_stable_matchings(const PreferenceSystem& ps,
                                       const std::function<bool(const EngineMatching&)>& visit,
                                       const StableEnumOptions& opts = {}) {
  if (ps.right_has_ties()) throw Error(ErrorKind::TiesPresent, "stable enumeration needs strict lists");
  detail::StableEnumerator(ps, opts, visit).run();
}

}  // namespace mefe

#endif  // MEFE_ENGINES_STABLE_ENUM_HPP
