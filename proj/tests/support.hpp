#ifndef MEFE_TESTS_SUPPORT_HPP
#define MEFE_TESTS_SUPPORT_HPP

// Fixtures and small exhaustive checkers shared by unit and acceptance tests.
// The checkers here deliberately avoid the library's solvers.

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mefe/mefe.hpp"

namespace mefe::testing {

// Three courses and three TAs, capacities 1, grades equal to course valuations.
inline Instance fig1(const Rational& k = Rational(7)) {
  const Value v[3][3] = {{9, 8, 7}, {8, 7, 9}, {7, 7, 7}};  // course x over t1..t3
  const Value u[3][3] = {{9, 8, 8}, {8, 8, 8}, {8, 8, 8}};  // TA t over c1..c3
  InstanceBuilder b;
  for (int x = 0; x < 3; ++x) b.add_course("c" + std::to_string(x + 1), 1);
  for (int t = 0; t < 3; ++t) b.add_ta("t" + std::to_string(t + 1));
  for (int x = 0; x < 3; ++x) {
    for (int t = 0; t < 3; ++t) b.set_pair(x, t, v[x][t], u[t][x], Rational(v[x][t]));
  }
  b.set_k(k);
  return b.build();
}

inline Matching by_ids(const Instance& inst, const std::map<std::string, std::string>& assignment) {
  Matching mu(inst.num_tas());
  for (const auto& [ta, course] : assignment) mu.assign(*inst.find_ta(ta), *inst.find_course(course));
  return mu;
}

// The envious matching for this fixture: t2-c1, t1-c2, t3-c3.
inline Matching fig1_displayed(const Instance& inst) {
  return by_ids(inst, {{"t1", "c2"}, {"t2", "c1"}, {"t3", "c3"}});
}

// One course of capacity 1 and two TAs with the same grade.
inline Instance equal_grades() {
  InstanceBuilder b;
  b.add_course("x", 1);
  b.add_ta("t");
  b.add_ta("t'");
  b.set_pair(0, 0, 2, 1, 1);
  b.set_pair(0, 1, 1, 1, 1);
  b.set_k(1);
  return b.build();
}

inline RandomSpec spec(std::uint64_t seed, int n, int m, int cap_max, int val_max, Structure s = Structure::None,
                       TiePolicy ties = TiePolicy::Allow) {
  RandomSpec r;
  r.seed = seed;
  r.n = n;
  r.m = m;
  r.cap_max = cap_max;
  r.val_max = val_max;
  r.structure = s;
  r.ties = ties;
  return r;
}

// Every assignment TA -> course or unassigned, no pruning at all.
inline void for_each_assignment(const Instance& inst, const std::function<void(const Matching&)>& fn) {
  const int n = inst.num_courses();
  const int m = inst.num_tas();
  std::vector<int> digit(static_cast<std::size_t>(m), 0);
  while (true) {
    Matching mu(m);
    for (int t = 0; t < m; ++t) {
      if (digit[t] < n) mu.assign(t, digit[t]);
    }
    fn(mu);
    int i = m - 1;
    while (i >= 0 && digit[i] == n) digit[i--] = 0;
    if (i < 0) return;
    ++digit[i];
  }
}

// ---- partition

inline bool partition_exists(const std::vector<Value>& s) {
  const int m = static_cast<int>(s.size());
  const Value total = std::accumulate(s.begin(), s.end(), Value{0});
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (std::popcount(mask) * 2 != m) continue;
    Value sum = 0;
    for (int i = 0; i < m; ++i) {
      if (mask & (1u << i)) sum += s[i];
    }
    if (2 * sum == total) return true;
  }
  return false;
}

// ---- SMTI

// Complete (everyone matched) weakly stable matching by brute force. A pair
// blocks when both sides strictly prefer each other to their partners.
inline bool smti_complete_weakly_stable_exists(const SmtiInput& in) {
  const int n = static_cast<int>(in.men.size());
  if (static_cast<int>(in.women.size()) != n) return false;
  auto rank_of = [](const std::vector<std::vector<int>>& list, int who) {
    for (std::size_t g = 0; g < list.size(); ++g) {
      if (std::find(list[g].begin(), list[g].end(), who) != list[g].end()) return static_cast<int>(g);
    }
    return -1;
  };
  std::vector<int> wife(static_cast<std::size_t>(n));
  std::iota(wife.begin(), wife.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = rank_of(in.men[i], wife[i]) >= 0;
    if (!ok) continue;
    std::vector<int> husband(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) husband[wife[i]] = i;
    for (int i = 0; i < n && ok; ++i) {
      for (int w = 0; w < n && ok; ++w) {
        const int rm = rank_of(in.men[i], w);
        const int rw = rank_of(in.women[w], i);
        if (rm < 0 || rw < 0) continue;
        if (rm < rank_of(in.men[i], wife[i]) && rw < rank_of(in.women[w], husband[w])) ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(wife.begin(), wife.end()));
  return false;
}

// Random (3,3)-SMTI: each agent lists at most three others, men strictly,
// women with random ties.
inline SmtiInput random_smti(Rng& rng, int n) {
  std::vector<std::vector<bool>> edge(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  std::vector<int> deg_m(static_cast<std::size_t>(n), 0);
  std::vector<int> deg_w(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) pairs.emplace_back(i, j);
  }
  rng.shuffle(pairs);
  for (const auto& [i, j] : pairs) {
    if (deg_m[i] < 3 && deg_w[j] < 3 && rng.chance(60)) {
      edge[i][j] = true;
      ++deg_m[i];
      ++deg_w[j];
    }
  }
  SmtiInput in;
  in.men.resize(static_cast<std::size_t>(n));
  in.women.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<int> list;
    for (int j = 0; j < n; ++j) {
      if (edge[i][j]) list.push_back(j);
    }
    rng.shuffle(list);
    for (int j : list) in.men[i].push_back({j});
  }
  for (int j = 0; j < n; ++j) {
    std::vector<int> list;
    for (int i = 0; i < n; ++i) {
      if (edge[i][j]) list.push_back(i);
    }
    rng.shuffle(list);
    for (int i : list) {
      if (!in.women[j].empty() && rng.chance(40)) {
        in.women[j].back().push_back(i);
      } else {
        in.women[j].push_back({i});
      }
    }
  }
  return in;
}

// ---- 3DM

inline bool perfect_3dm_exists(const ThreeDmInput& in) {
  const int n = in.n;
  const int e = static_cast<int>(in.triples.size());
  std::vector<bool> used_p(static_cast<std::size_t>(n)), used_q(static_cast<std::size_t>(n)), used_r(static_cast<std::size_t>(n));
  std::function<bool(int, int)> rec = [&](int i, int chosen) {
    if (chosen == n) return true;
    if (i == e) return false;
    const auto& [p, q, r] = in.triples[i];
    if (!used_p[p] && !used_q[q] && !used_r[r]) {
      used_p[p] = used_q[q] = used_r[r] = true;
      const bool ok = rec(i + 1, chosen + 1);
      used_p[p] = used_q[q] = used_r[r] = false;
      if (ok) return true;
    }
    return rec(i + 1, chosen);
  };
  return rec(0, 0);
}

// Every triple set over [n]^3 where no element occurs more than three times,
// visited one subset at a time (n <= 2).
inline void for_each_3dm(int n, const std::function<void(const ThreeDmInput&)>& fn) {
  std::vector<std::array<int, 3>> all;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      for (int r = 0; r < n; ++r) all.push_back({p, q, r});
    }
  }
  const int e = static_cast<int>(all.size());
  for (unsigned mask = 0; mask < (1u << e); ++mask) {
    ThreeDmInput in{n, {}};
    std::vector<int> cp(static_cast<std::size_t>(n)), cq(static_cast<std::size_t>(n)), cr(static_cast<std::size_t>(n));
    bool ok = true;
    for (int i = 0; i < e && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      in.triples.push_back(all[i]);
      ok = ++cp[all[i][0]] <= 3 && ++cq[all[i][1]] <= 3 && ++cr[all[i][2]] <= 3;
    }
    if (ok) fn(in);
  }
}

inline ThreeDmInput random_3dm(Rng& rng, int n, int max_triples) {
  ThreeDmInput in{n, {}};
  std::vector<int> cp(static_cast<std::size_t>(n)), cq(static_cast<std::size_t>(n)), cr(static_cast<std::size_t>(n));
  const auto want = rng.uniform(1, max_triples);
  for (int tries = 0; tries < 50 && static_cast<int>(in.triples.size()) < want; ++tries) {
    const int p = static_cast<int>(rng.uniform(0, n - 1));
    const int q = static_cast<int>(rng.uniform(0, n - 1));
    const int r = static_cast<int>(rng.uniform(0, n - 1));
    if (cp[p] == 3 || cq[q] == 3 || cr[r] == 3) continue;
    const std::array<int, 3> t{p, q, r};
    if (std::find(in.triples.begin(), in.triples.end(), t) != in.triples.end()) continue;
    ++cp[p];
    ++cq[q];
    ++cr[r];
    in.triples.push_back(t);
  }
  return in;
}

// ---- engines

// Hall's condition by explicit subset enumeration over courses.
inline bool hall_by_subsets(const Instance& inst) {
  const int n = inst.num_courses();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int seats = 0;
    std::vector<bool> nb(static_cast<std::size_t>(inst.num_tas()), false);
    for (int x = 0; x < n; ++x) {
      if (!(mask & (1u << x))) continue;
      seats += inst.capacity(x);
      for (int t = 0; t < inst.num_tas(); ++t) {
        if (inst.acceptable(x, t)) nb[t] = true;
      }
    }
    if (std::count(nb.begin(), nb.end(), true) < seats) return false;
  }
  return true;
}

// All one-to-one matchings of a capacity-1 system, as partner vectors.
inline void for_each_unit_matching(const PreferenceSystem& ps, const std::function<void(const EngineMatching&)>& fn) {
  const int L = ps.num_left();
  EngineMatching m;
  m.partner.assign(static_cast<std::size_t>(L), kUnmatched);
  std::vector<bool> taken(static_cast<std::size_t>(ps.num_right()), false);
  std::function<void(int)> rec = [&](int l) {
    if (l == L) {
      fn(m);
      return;
    }
    m.partner[l] = kUnmatched;
    rec(l + 1);
    for (int r : ps.left_prefs[l]) {
      if (taken[r]) continue;
      taken[r] = true;
      m.partner[l] = r;
      rec(l + 1);
      m.partner[l] = kUnmatched;
      taken[r] = false;
    }
  };
  rec(0);
}

}  // namespace mefe::testing

#endif  // MEFE_TESTS_SUPPORT_HPP
