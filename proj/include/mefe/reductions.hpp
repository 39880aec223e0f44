#ifndef MEFE_REDUCTIONS_HPP
#define MEFE_REDUCTIONS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mefe/error.hpp"
#include "mefe/existence.hpp"
#include "mefe/instance.hpp"
#include "mefe/polycases.hpp"
#include "mefe/rational.hpp"
#include "mefe/verify.hpp"

namespace mefe {

// ---------------------------------------------------------------- partition

/// Two identical courses with m/2 seats each. Averages divide by m/2, so
/// k = total/m asks each side to collect half the total.
inline Instance from_partition(const std::vector<Value>& s) {
  if (s.size() % 2 != 0) throw Error(ErrorKind::OddCardinality, "partition input needs an even number of items");
  for (Value v : s) {
    if (v < 1) throw Error(ErrorKind::PreconditionViolated, "partition items must be positive");
  }
  InstanceBuilder b;
  const int half = static_cast<int>(s.size() / 2);
  const Value total = std::accumulate(s.begin(), s.end(), Value{0});
  if (half == 0) return b.set_k(0).build();
  b.add_course("x1", half);
  b.add_course("x2", half);
  for (std::size_t j = 0; j < s.size(); ++j) {
    const int t = b.add_ta("s" + std::to_string(j + 1));
    b.set_pair(0, t, s[j], 1, 1);
    b.set_pair(1, t, s[j], 1, 1);
  }
  b.set_k(Rational(total, 2 * half));
  return b.build();
}

/// Items assigned to the first and to the second course.
inline std::pair<std::vector<Value>, std::vector<Value>> map_back_partition(const Instance& inst, const Matching& mu) {
  const auto c1 = inst.find_course("x1");
  const auto c2 = inst.find_course("x2");
  if (inst.num_courses() != 2 || !c1 || !c2 || inst.capacity(*c1) != inst.capacity(*c2) ||
      inst.num_tas() != 2 * inst.capacity(*c1)) {
    throw Error(ErrorKind::NotAGeneratedInstance, "not a partition instance");
  }
  for (int t = 0; t < inst.num_tas(); ++t) {
    if (inst.value(*c1, t) != inst.value(*c2, t) || inst.value(*c1, t) < 1) {
      throw Error(ErrorKind::NotAGeneratedInstance, "courses of a partition instance value TAs identically");
    }
  }
  if (!is_mefe(inst, mu)) throw Error(ErrorKind::PreconditionViolated, "map back needs a MEFE matching");
  std::pair<std::vector<Value>, std::vector<Value>> out;
  for (int t = 0; t < inst.num_tas(); ++t) {
    (mu.course_of(t) == *c1 ? out.first : out.second).push_back(inst.value(*c1, t));
  }
  return out;
}

// ---------------------------------------------------------------- SMTI

/// Men and women indexed from 0. Lists are tie groups, best first; men's
/// groups must be singletons.
struct SmtiInput {
  std::vector<std::vector<std::vector<int>>> men;
  std::vector<std::vector<std::vector<int>>> women;
};

/// Courses are men and TAs women, with valuations, utilities and grades
/// 4 minus the list position (ties share a position) and k = 1. With
/// `binary_valuations`, courses value listed women 1 instead.
inline Instance from_smti33(const SmtiInput& in, bool binary_valuations = false) {
  const int n_men = static_cast<int>(in.men.size());
  const int n_women = static_cast<int>(in.women.size());
  std::vector<std::vector<int>> man_rank(static_cast<std::size_t>(n_men), std::vector<int>(static_cast<std::size_t>(n_women), 0));
  std::vector<std::vector<int>> woman_rank(static_cast<std::size_t>(n_women), std::vector<int>(static_cast<std::size_t>(n_men), 0));
  auto load = [](const auto& lists, auto& ranks, int other, bool strict, const char* side) {
    for (std::size_t a = 0; a < lists.size(); ++a) {
      int length = 0;
      for (std::size_t g = 0; g < lists[a].size(); ++g) {
        if (strict && lists[a][g].size() > 1) throw Error(ErrorKind::TiesOnMenSide, "men's lists must be strict");
        for (int b : lists[a][g]) {
          if (b < 0 || b >= other || ranks[a][b] != 0) {
            throw Error(ErrorKind::PreconditionViolated, std::string(side) + " list " + std::to_string(a) + " is malformed");
          }
          ranks[a][b] = static_cast<int>(g) + 1;
          ++length;
        }
      }
      if (length > 3) throw Error(ErrorKind::ListTooLong, std::string(side) + " list longer than three");
    }
  };
  load(in.men, man_rank, n_women, true, "men's");
  load(in.women, woman_rank, n_men, false, "women's");
  InstanceBuilder b;
  for (int i = 0; i < n_men; ++i) b.add_course("m" + std::to_string(i + 1), 1);
  for (int j = 0; j < n_women; ++j) b.add_ta("w" + std::to_string(j + 1));
  for (int i = 0; i < n_men; ++i) {
    for (int j = 0; j < n_women; ++j) {
      if ((man_rank[i][j] == 0) != (woman_rank[j][i] == 0)) {
        throw Error(ErrorKind::PreconditionViolated, "acceptability must be mutual");
      }
      if (man_rank[i][j] == 0) continue;
      const Value from_man = 4 - man_rank[i][j];
      b.set_pair(i, j, binary_valuations ? 1 : from_man, 4 - woman_rank[j][i], Rational(from_man));
    }
  }
  b.set_k(1);
  return b.build({.allow_undersupplied = true});
}

// ---------------------------------------------------------------- 3DM

/// Triples (p, q, r) over P = Q = R = {0..n-1}.
struct ThreeDmInput {
  int n = 0;
  std::vector<std::array<int, 3>> triples;
};

/// Three capacity-2 copies of every r; the j-th triple containing r makes its
/// p and q worth 2 to copy j. Dummies worth 3 and 1 fill the other copies.
inline Instance from_3dpm(const ThreeDmInput& in) {
  const int n = in.n;
  std::vector<int> uses_p(static_cast<std::size_t>(n), 0);
  std::vector<int> uses_q(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<std::pair<int, int>>> of_r(static_cast<std::size_t>(n));
  for (const auto& [p, q, r] : in.triples) {
    if (p < 0 || p >= n || q < 0 || q >= n || r < 0 || r >= n) {
      throw Error(ErrorKind::PreconditionViolated, "triple element out of range");
    }
    if (++uses_p[p] > 3 || ++uses_q[q] > 3) throw Error(ErrorKind::DegreeTooHigh, "element in more than three triples");
    of_r[r].emplace_back(p, q);
    if (of_r[r].size() > 3) throw Error(ErrorKind::DegreeTooHigh, "element in more than three triples");
  }
  InstanceBuilder b;
  for (int r = 0; r < n; ++r) {
    for (int j = 1; j <= 3; ++j) b.add_course("r" + std::to_string(r + 1) + "#" + std::to_string(j), 2);
  }
  for (int p = 0; p < n; ++p) b.add_ta("p" + std::to_string(p + 1));
  for (int q = 0; q < n; ++q) b.add_ta("q" + std::to_string(q + 1));
  const std::vector<std::pair<std::string, Value>> dummies{{"d1", 3}, {"d2", 3}, {"d'1", 1}, {"d'2", 1}};
  for (int r = 0; r < n; ++r) {
    for (const auto& [name, value] : dummies) {
      const int t = b.add_ta("r" + std::to_string(r + 1) + "." + name);
      for (int j = 0; j < 3; ++j) b.set_pair(3 * r + j, t, value, 1, 2);
    }
    for (std::size_t j = 0; j < of_r[r].size(); ++j) {
      const auto [p, q] = of_r[r][j];
      const int course = 3 * r + static_cast<int>(j);
      b.set_pair(course, p, 2, 1, 1);
      b.set_pair(course, n + q, 2, 1, 1);
    }
  }
  b.set_k(2);
  return b.build();
}

// ---------------------------------------------------------------- random

/// 64-bit Mersenne Twister with a platform-independent bounded draw.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return lo + static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return lo + static_cast<std::int64_t>(draw % span);
  }

  bool chance(int percent) { return uniform(0, 99) < percent; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
    }
  }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

enum class Structure { None, DegCap1, Cap1, TwoVal, BinVal, AllPos, TaDeg1 };

inline Structure parse_structure(std::string_view name) {
  if (name == "none") return Structure::None;
  if (name == "degcap1") return Structure::DegCap1;
  if (name == "cap1") return Structure::Cap1;
  if (name == "twoval") return Structure::TwoVal;
  if (name == "binval") return Structure::BinVal;
  if (name == "allpos") return Structure::AllPos;
  if (name == "tadeg1") return Structure::TaDeg1;
  throw Error(ErrorKind::Parse, "unknown structure '" + std::string(name) + "'");
}

inline std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::None: return "none";
    case Structure::DegCap1: return "degcap1";
    case Structure::Cap1: return "cap1";
    case Structure::TwoVal: return "twoval";
    case Structure::BinVal: return "binval";
    case Structure::AllPos: return "allpos";
    case Structure::TaDeg1: return "tadeg1";
  }
  return "none";
}

enum class TiePolicy { Allow, Distinct };

struct RandomSpec {
  std::uint64_t seed = 1;
  int n = 2;
  int m = 4;
  int cap_max = 2;
  int val_max = 4;
  TiePolicy ties = TiePolicy::Allow;
  Structure structure = Structure::None;
  /// Percent chance that a pair is positive where the profile leaves it free.
  int density = 70;
};

namespace detail {

// Distinct values from [1, hi] when possible.
inline std::vector<Value> distinct_draw(Rng& rng, int count, int hi) {
  if (count > hi) throw Error(ErrorKind::UnsatisfiableProfile, "too few values for distinct draws");
  std::vector<Value> pool(static_cast<std::size_t>(hi));
  std::iota(pool.begin(), pool.end(), Value{1});
  rng.shuffle(pool);
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

inline Rational draw_k(Rng& rng, int val_max) { return Rational(rng.uniform(0, 2 * val_max), 2); }

inline std::vector<int> draw_capacities(Rng& rng, const RandomSpec& spec, int cap_max) {
  std::vector<int> caps(static_cast<std::size_t>(spec.n));
  int total = 0;
  for (int x = 0; x < spec.n; ++x) {
    caps[x] = static_cast<int>(rng.uniform(1, cap_max));
    total += caps[x];
  }
  for (int x = spec.n - 1; total > spec.m && x >= 0; --x) {
    while (caps[x] > 1 && total > spec.m) {
      --caps[x];
      --total;
    }
  }
  if (total > spec.m) throw Error(ErrorKind::UnsatisfiableProfile, "more courses than TAs");
  return caps;
}

// Fills utilities (per TA) and grades (per course) for the positive pairs in
// `edge`, honoring the tie policy.
inline void draw_preferences(Rng& rng, const RandomSpec& spec, const std::vector<std::vector<bool>>& edge,
                             InstanceBuilder& b, const std::vector<std::vector<Value>>& values,
                             bool distinct_utils, bool distinct_grades) {
  const int n = spec.n;
  const int m = spec.m;
  std::vector<std::vector<Value>> util(static_cast<std::size_t>(m), std::vector<Value>(static_cast<std::size_t>(n), 0));
  for (int t = 0; t < m; ++t) {
    int deg = 0;
    for (int x = 0; x < n; ++x) deg += edge[x][t] ? 1 : 0;
    const auto pool = distinct_utils ? distinct_draw(rng, deg, std::max(spec.val_max, deg)) : std::vector<Value>{};
    int used = 0;
    for (int x = 0; x < n; ++x) {
      if (!edge[x][t]) continue;
      util[t][x] = distinct_utils ? pool[used++] : rng.uniform(1, spec.val_max);
    }
  }
  for (int x = 0; x < n; ++x) {
    int deg = 0;
    for (int t = 0; t < m; ++t) deg += edge[x][t] ? 1 : 0;
    const int span = std::max(2 * spec.val_max, deg);
    const auto pool = distinct_grades ? distinct_draw(rng, deg, span) : std::vector<Value>{};
    int used = 0;
    for (int t = 0; t < m; ++t) {
      if (!edge[x][t]) continue;
      const Rational g = distinct_grades ? Rational(pool[used++], 2) : Rational(rng.uniform(0, 2 * spec.val_max), 2);
      b.set_pair(x, t, values[x][t], util[t][x], g);
    }
  }
}

}  // namespace detail

/// Deterministic pseudo-random instance honoring the requested profile.
inline Instance random_instance(const RandomSpec& spec) {
  if (spec.n < 0 || spec.m < 0 || spec.cap_max < 1 || spec.val_max < 1) {
    throw Error(ErrorKind::UnsatisfiableProfile, "sizes must be positive");
  }
  Rng rng(spec.seed);
  const int n = spec.n;
  const int m = spec.m;
  const bool distinct = spec.ties == TiePolicy::Distinct;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    InstanceBuilder b;
    const int cap_max = spec.structure == Structure::Cap1 ? 1 : spec.cap_max;
    const auto caps = detail::draw_capacities(rng, spec, cap_max);
    for (int x = 0; x < n; ++x) b.add_course("c" + std::to_string(x + 1), caps[x]);
    for (int t = 0; t < m; ++t) b.add_ta("t" + std::to_string(t + 1));
    std::vector<std::vector<bool>> edge(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(m), false));
    std::vector<std::vector<Value>> values(static_cast<std::size_t>(n), std::vector<Value>(static_cast<std::size_t>(m), 0));

    switch (spec.structure) {
      case Structure::DegCap1: {
        for (int x = 0; x < n; ++x) {
          const int degree = std::min(m, caps[x] + static_cast<int>(rng.uniform(0, 1)));
          std::vector<int> tas(static_cast<std::size_t>(m));
          std::iota(tas.begin(), tas.end(), 0);
          rng.shuffle(tas);
          for (int i = 0; i < degree; ++i) edge[x][tas[i]] = true;
        }
        break;
      }
      case Structure::AllPos: {
        for (auto& row : edge) row.assign(row.size(), true);
        break;
      }
      case Structure::TaDeg1: {
        // every TA values at most one course
        for (int t = 0; t < m; ++t) {
          const auto x = rng.uniform(-1, n - 1);
          if (x >= 0) edge[x][t] = true;
        }
        break;
      }
      default: {
        for (int x = 0; x < n; ++x) {
          for (int t = 0; t < m; ++t) edge[x][t] = rng.chance(spec.density);
        }
      }
    }

    if (spec.structure == Structure::BinVal) {
      const Value a = rng.uniform(1, spec.val_max);
      for (int x = 0; x < n; ++x) {
        int deg = 0;
        for (int t = 0; t < m; ++t) deg += edge[x][t] ? 1 : 0;
        const auto grades = detail::distinct_draw(rng, deg, std::max(2 * spec.val_max, deg));
        int used = 0;
        for (int t = 0; t < m; ++t) {
          if (edge[x][t]) b.set_pair(x, t, grades[used], a, Rational(grades[used]));
          if (edge[x][t]) ++used;
        }
      }
      b.set_k(0);
      Instance inst = b.build({.allow_undersupplied = true});
      const auto report = check_binary_utility_preconditions(inst);
      if (!report.ok() || inst.undersupplied()) continue;
      return inst.with_threshold(report.ranks.k_star);
    }

    for (int x = 0; x < n; ++x) {
      Value high = rng.uniform(1, spec.val_max);
      Value low = rng.uniform(1, spec.val_max);
      if (low > high) std::swap(low, high);
      for (int t = 0; t < m; ++t) {
        if (!edge[x][t]) continue;
        values[x][t] = spec.structure == Structure::TwoVal ? (rng.chance(50) ? high : low) : rng.uniform(1, spec.val_max);
      }
    }
    const bool distinct_utils = distinct || spec.structure == Structure::Cap1 || spec.structure == Structure::TwoVal ||
                                spec.structure == Structure::AllPos;
    const bool distinct_grades = distinct || spec.structure == Structure::TwoVal || spec.structure == Structure::AllPos;
    detail::draw_preferences(rng, spec, edge, b, values, distinct_utils, distinct_grades);
    b.set_k(spec.structure == Structure::AllPos ? Rational(1) : detail::draw_k(rng, spec.val_max));
    return b.build();
  }
  throw Error(ErrorKind::UnsatisfiableProfile, "no instance with the requested profile after 1000 attempts");
}

}  // namespace mefe

#endif  // MEFE_REDUCTIONS_HPP
