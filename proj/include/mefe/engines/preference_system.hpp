#ifndef MEFE_ENGINES_PREFERENCE_SYSTEM_HPP
#define MEFE_ENGINES_PREFERENCE_SYSTEM_HPP

#include <climits>
#include <string>
#include <vector>

#include "mefe/error.hpp"

namespace mefe {

inline constexpr int kUnmatched = -1;

/// Two-sided market. Left agents have unit demand and strict lists; right
/// agents have capacities and lists made of tie groups (best group first).
struct PreferenceSystem {
  std::vector<std::vector<int>> left_prefs;
  std::vector<std::vector<std::vector<int>>> right_prefs;
  std::vector<int> right_capacity;
  /// Optional left x right 0/1 weights; empty means unweighted.
  std::vector<std::vector<int>> weights;

  [[nodiscard]] int num_left() const { return static_cast<int>(left_prefs.size()); }
  [[nodiscard]] int num_right() const { return static_cast<int>(right_prefs.size()); }

  [[nodiscard]] bool right_has_ties() const {
    for (const auto& list : right_prefs) {
      for (const auto& group : list) {
        if (group.size() > 1) return true;
      }
    }
    return false;
  }

  [[nodiscard]] int weight(int l, int r) const { return weights.empty() ? 1 : weights[l][r]; }
};

/// Rank lookups for a PreferenceSystem; -1 marks an unacceptable pair.
/// Right ranks are tie-group indices, so equal rank means indifference.
struct RankTables {
  std::vector<std::vector<int>> left_rank;
  std::vector<std::vector<int>> right_rank;

  explicit RankTables(const PreferenceSystem& ps)
      : left_rank(static_cast<std::size_t>(ps.num_left()), std::vector<int>(static_cast<std::size_t>(ps.num_right()), -1)),
        right_rank(static_cast<std::size_t>(ps.num_right()), std::vector<int>(static_cast<std::size_t>(ps.num_left()), -1)) {
    for (int l = 0; l < ps.num_left(); ++l) {
      for (int i = 0; i < static_cast<int>(ps.left_prefs[l].size()); ++i) {
        const int r = ps.left_prefs[l][i];
        if (r < 0 || r >= ps.num_right() || left_rank[l][r] != -1) {
          throw Error(ErrorKind::PreconditionViolated, "left list " + std::to_string(l) + " is malformed");
        }
        left_rank[l][r] = i;
      }
    }
    for (int r = 0; r < ps.num_right(); ++r) {
      for (int g = 0; g < static_cast<int>(ps.right_prefs[r].size()); ++g) {
        for (int l : ps.right_prefs[r][g]) {
          if (l < 0 || l >= ps.num_left() || right_rank[r][l] != -1) {
            throw Error(ErrorKind::PreconditionViolated, "right list " + std::to_string(r) + " is malformed");
          }
          right_rank[r][l] = g;
        }
      }
    }
  }

  [[nodiscard]] bool acceptable(int l, int r) const { return left_rank[l][r] >= 0; }
};

/// Throws PreconditionViolated on malformed lists, asymmetric acceptability
/// or non-positive capacities.
inline RankTables validate(const PreferenceSystem& ps) {
  if (static_cast<int>(ps.right_capacity.size()) != ps.num_right()) {
    throw Error(ErrorKind::PreconditionViolated, "one capacity per right agent is required");
  }
  for (int c : ps.right_capacity) {
    if (c < 1) throw Error(ErrorKind::PreconditionViolated, "right capacities must be positive");
  }
  RankTables ranks(ps);
  for (int l = 0; l < ps.num_left(); ++l) {
    for (int r = 0; r < ps.num_right(); ++r) {
      if ((ranks.left_rank[l][r] >= 0) != (ranks.right_rank[r][l] >= 0)) {
        throw Error(ErrorKind::PreconditionViolated, "acceptability must be mutual");
      }
    }
  }
  return ranks;
}

/// Left agent -> right agent or kUnmatched.
struct EngineMatching {
  std::vector<int> partner;

  [[nodiscard]] std::vector<std::vector<int>> rosters(int num_right) const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(num_right));
    for (int l = 0; l < static_cast<int>(partner.size()); ++l) {
      if (partner[l] != kUnmatched) out[partner[l]].push_back(l);
    }
    return out;
  }

  [[nodiscard]] int size() const {
    int count = 0;
    for (int p : partner) count += p != kUnmatched ? 1 : 0;
    return count;
  }

  friend bool operator==(const EngineMatching&, const EngineMatching&) = default;
};

/// Classic (weak) stability: no acceptable pair where the left agent strictly
/// prefers the right one, which has a free seat or strictly prefers the left
/// agent to someone it holds.
inline bool is_stable(const PreferenceSystem& ps, const RankTables& ranks, const EngineMatching& m) {
  const auto rosters = m.rosters(ps.num_right());
  for (int l = 0; l < ps.num_left(); ++l) {
    const int own = m.partner[l];
    const int own_rank = own == kUnmatched ? INT_MAX : ranks.left_rank[l][own];
    for (int r : ps.left_prefs[l]) {
      if (ranks.left_rank[l][r] >= own_rank) break;
      if (static_cast<int>(rosters[r].size()) < ps.right_capacity[r]) return false;
      for (int held : rosters[r]) {
        if (ranks.right_rank[r][l] < ranks.right_rank[r][held]) return false;
      }
    }
  }
  return true;
}

}  // namespace mefe

#endif  // MEFE_ENGINES_PREFERENCE_SYSTEM_HPP
