#ifndef MEFE_ENGINES_STRONGLY_STABLE_HPP
#define MEFE_ENGINES_STRONGLY_STABLE_HPP

#include <algorithm>
#include <climits>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "mefe/engines/preference_system.hpp"
#include "mefe/error.hpp"

namespace mefe {

struct WeightedMatching {
  EngineMatching matching;
  int weight = 0;
};

/// True iff no acceptable unmatched pair (l, r) has l strictly preferring r
/// (or being unmatched) while r is unmatched or weakly prefers l to its partner.
/// Right capacities are taken to be one.
inline bool is_strongly_stable(const PreferenceSystem& ps, const RankTables& ranks, const EngineMatching& m) {
  std::vector<int> right_partner(static_cast<std::size_t>(ps.num_right()), kUnmatched);
  for (int l = 0; l < ps.num_left(); ++l) {
    if (m.partner[l] != kUnmatched) right_partner[m.partner[l]] = l;
  }
  for (int l = 0; l < ps.num_left(); ++l) {
    const int own = m.partner[l];
    const int own_rank = own == kUnmatched ? INT_MAX : ranks.left_rank[l][own];
    for (int r : ps.left_prefs[l]) {
      if (ranks.left_rank[l][r] >= own_rank) break;
      const int held = right_partner[r];
      if (held == kUnmatched || ranks.right_rank[r][l] <= ranks.right_rank[r][held]) return false;
    }
  }
  return true;
}

namespace detail {

// Proposal phase for strict proposers and tied receivers. A proposal removes
// every pair strictly worse for the receiver; a receiver holding two or more
// proposals drops its whole held tie group and everything after it. The
// surviving pairs contain every strongly stable matching.
class StrongProposals {
public:
  StrongProposals(const PreferenceSystem& ps, const RankTables& ranks)
      : ps_(ps),
        ranks_(ranks),
        alive_(static_cast<std::size_t>(ps.num_left()), std::vector<bool>(static_cast<std::size_t>(ps.num_right()), false)),
        engaged_to_(static_cast<std::size_t>(ps.num_left()), kUnmatched),
        engaged_(static_cast<std::size_t>(ps.num_right())) {
    for (int l = 0; l < ps.num_left(); ++l) {
      for (int r : ps.left_prefs[l]) alive_[l][r] = true;
    }
  }

  void run() {
    while (true) {
      propose_all();
      bool dropped = false;
      for (int r = 0; r < ps_.num_right(); ++r) {
        if (engaged_[r].size() < 2) continue;
        dropped = true;
        const int group = ranks_.right_rank[r][engaged_[r].front()];
        for (int g = group; g < static_cast<int>(ps_.right_prefs[r].size()); ++g) {
          for (int l : ps_.right_prefs[r][g]) remove(l, r);
        }
      }
      if (!dropped) break;
    }
  }

  [[nodiscard]] bool alive(int l, int r) const { return alive_[l][r]; }

  [[nodiscard]] EngineMatching engagements() const { return EngineMatching{engaged_to_}; }

private:
  void remove(int l, int r) {
    if (!alive_[l][r]) return;
    alive_[l][r] = false;
    if (engaged_to_[l] == r) {
      engaged_to_[l] = kUnmatched;
      std::erase(engaged_[r], l);
    }
  }

  void propose_all() {
    std::deque<int> queue;
    for (int l = 0; l < ps_.num_left(); ++l) {
      if (engaged_to_[l] == kUnmatched) queue.push_back(l);
    }
    while (!queue.empty()) {
      const int l = queue.front();
      queue.pop_front();
      if (engaged_to_[l] != kUnmatched) continue;
      int head = kUnmatched;
      for (int r : ps_.left_prefs[l]) {
        if (alive_[l][r]) {
          head = r;
          break;
        }
      }
      if (head == kUnmatched) continue;
      engaged_to_[l] = head;
      engaged_[head].push_back(l);
      const int rank = ranks_.right_rank[head][l];
      for (int g = rank + 1; g < static_cast<int>(ps_.right_prefs[head].size()); ++g) {
        for (int other : ps_.right_prefs[head][g]) {
          const bool was_engaged = engaged_to_[other] == head;
          remove(other, head);
          if (was_engaged) queue.push_back(other);
        }
      }
    }
  }

  const PreferenceSystem& ps_;
  const RankTables& ranks_;
  std::vector<std::vector<bool>> alive_;
  std::vector<int> engaged_to_;
  std::vector<std::vector<int>> engaged_;
};

// Exhaustive search over the surviving pairs, right agent by right agent.
class StrongSearch {
public:
  StrongSearch(const PreferenceSystem& ps, const RankTables& ranks, const StrongProposals& reduced,
               const std::optional<EngineMatching>& pattern, std::uint64_t budget)
      : ps_(ps),
        ranks_(ranks),
        pattern_(pattern),
        budget_(budget),
        left_partner_(static_cast<std::size_t>(ps.num_left()), kUnmatched),
        right_partner_(static_cast<std::size_t>(ps.num_right()), kUnmatched),
        candidates_(static_cast<std::size_t>(ps.num_right())) {
    for (int r = 0; r < ps.num_right(); ++r) {
      for (const auto& group : ps.right_prefs[r]) {
        for (int l : group) {
          if (reduced.alive(l, r)) candidates_[r].push_back(l);
        }
      }
    }
    if (pattern_) {
      std::vector<bool> right_used(static_cast<std::size_t>(ps.num_right()), false);
      for (int p : pattern_->partner) {
        if (p != kUnmatched) right_used[p] = true;
      }
      must_match_right_ = right_used;
      cap_ = pattern_->size();
    } else {
      cap_ = std::min(ps.num_left(), ps.num_right());
    }
  }

  std::optional<WeightedMatching> run() {
    descend(0, 0);
    return best_;
  }

private:
  // A pair blocks once both agents have their final partner.
  bool blocks(int l, int r) const {
    if (!ranks_.acceptable(l, r)) return false;
    const int own = left_partner_[l];
    if (own == r) return false;
    if (own != kUnmatched && ranks_.left_rank[l][own] < ranks_.left_rank[l][r]) return false;
    const int held = right_partner_[r];
    return held == kUnmatched || ranks_.right_rank[r][l] <= ranks_.right_rank[r][held];
  }

  // Checks pairs whose agents are now both final after right r chose l.
  bool consistent(int r, int l) const {
    if (l != kUnmatched) {
      for (int prev = 0; prev <= r; ++prev) {
        if (prev != r && blocks(l, prev)) return false;
      }
    }
    for (int prev = 0; prev < r; ++prev) {
      const int other = right_partner_[prev];
      if (other != kUnmatched && blocks(other, r)) return false;
    }
    return true;
  }

  void descend(int r, int weight) {
    if (best_ && (best_->weight == cap_ || weight + (ps_.num_right() - r) <= best_->weight)) return;
    if (r == ps_.num_right()) {
      if (++leaves_ > budget_) {
        throw Error(ErrorKind::ResourceBound,
                    "strongly stable search exceeded " + std::to_string(budget_) + " leaves");
      }
      EngineMatching m{left_partner_};
      if (pattern_) {
        for (int l = 0; l < ps_.num_left(); ++l) {
          if ((m.partner[l] == kUnmatched) != (pattern_->partner[l] == kUnmatched)) return;
        }
      }
      if (!is_strongly_stable(ps_, ranks_, m)) return;
      best_ = WeightedMatching{m, weight};
      return;
    }
    const bool must_match = pattern_ && must_match_right_[r];
    const bool may_match = !pattern_ || must_match;
    for (int l : candidates_[r]) {
      if (!may_match) break;
      if (left_partner_[l] != kUnmatched) continue;
      if (pattern_ && pattern_->partner[l] == kUnmatched) continue;
      left_partner_[l] = r;
      right_partner_[r] = l;
      if (consistent(r, l)) descend(r + 1, weight + ps_.weight(l, r));
      left_partner_[l] = kUnmatched;
      right_partner_[r] = kUnmatched;
      if (best_ && best_->weight == cap_) return;
    }
    if (!must_match && consistent(r, kUnmatched)) descend(r + 1, weight);
  }

  const PreferenceSystem& ps_;
  const RankTables& ranks_;
  const std::optional<EngineMatching>& pattern_;
  std::uint64_t budget_;
  std::vector<int> left_partner_;
  std::vector<int> right_partner_;
  std::vector<std::vector<int>> candidates_;
  std::vector<bool> must_match_right_;
  std::optional<WeightedMatching> best_;
  int cap_ = 0;
  std::uint64_t leaves_ = 0;
};

}  // namespace detail

/// Maximum-weight strongly stable matching for unit capacities, strict left
/// lists and tied right lists, or nullopt when no strongly stable matching
/// exists. The proposal phase settles most inputs; the rest fall back to an
/// exhaustive search over the pairs it leaves, bounded by `budget` leaves.
inline std::optional<WeightedMatching> strongly_stable_max_weight(const PreferenceSystem& ps,
                                                                   std::uint64_t budget = 10'000'000) {
  const RankTables ranks = validate(ps);
  for (int c : ps.right_capacity) {
    if (c != 1) throw Error(ErrorKind::PreconditionViolated, "strongly stable engine needs unit capacities");
  }
  if (!ps.weights.empty()) {
    if (static_cast<int>(ps.weights.size()) != ps.num_left()) {
      throw Error(ErrorKind::PreconditionViolated, "weights must be a left x right table");
    }
    for (const auto& row : ps.weights) {
      if (static_cast<int>(row.size()) != ps.num_right()) {
        throw Error(ErrorKind::PreconditionViolated, "weights must be a left x right table");
      }
      for (int w : row) {
        if (w != 0 && w != 1) throw Error(ErrorKind::PreconditionViolated, "weights must be 0 or 1");
      }
    }
  }
  detail::StrongProposals proposals(ps, ranks);
  proposals.run();
  const EngineMatching first = proposals.engagements();
  std::optional<EngineMatching> pattern;
  if (is_strongly_stable(ps, ranks, first)) {
    int weight = 0;
    for (int l = 0; l < ps.num_left(); ++l) {
      if (first.partner[l] != kUnmatched) weight += ps.weight(l, first.partner[l]);
    }
    // Strongly stable matchings all match the same agents, so this is optimal.
    if (weight == first.size()) return WeightedMatching{first, weight};
    pattern = first;
  }
  return detail::StrongSearch(ps, ranks, proposals, pattern, budget).run();
}

}  // namespace mefe

#endif  // MEFE_ENGINES_STRONGLY_STABLE_HPP
