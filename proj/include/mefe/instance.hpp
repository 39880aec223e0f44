#ifndef MEFE_INSTANCE_HPP
#define MEFE_INSTANCE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mefe/error.hpp"
#include "mefe/rational.hpp"

namespace mefe {

using Value = std::int64_t;

/// Courses are indexed 0..n-1 and TAs 0..m-1 in declaration order. All
/// algorithms work on indices; identifiers only matter for I/O.
class Instance {
public:
  struct Options {
    /// Admit instances with fewer TAs than total capacity (negative fixtures).
    bool allow_undersupplied = false;
  };

  Instance() = default;

  [[nodiscard]] int num_courses() const { return static_cast<int>(course_ids_.size()); }
  [[nodiscard]] int num_tas() const { return static_cast<int>(ta_ids_.size()); }

  [[nodiscard]] const std::string& course_id(int x) const { return course_ids_.at(x); }
  [[nodiscard]] const std::string& ta_id(int t) const { return ta_ids_.at(t); }
  [[nodiscard]] const std::vector<std::string>& course_ids() const { return course_ids_; }
  [[nodiscard]] const std::vector<std::string>& ta_ids() const { return ta_ids_; }

  [[nodiscard]] std::optional<int> find_course(const std::string& id) const {
    if (auto it = course_index_.find(id); it != course_index_.end()) return it->second;
    return std::nullopt;
  }
  [[nodiscard]] std::optional<int> find_ta(const std::string& id) const {
    if (auto it = ta_index_.find(id); it != ta_index_.end()) return it->second;
    return std::nullopt;
  }

  [[nodiscard]] int capacity(int x) const { return capacities_[x]; }
  [[nodiscard]] int total_capacity() const {
    int total = 0;
    for (int c : capacities_) total += c;
    return total;
  }
  [[nodiscard]] int max_capacity() const {
    int best = 0;
    for (int c : capacities_) best = std::max(best, c);
    return best;
  }

  /// v_x(t): the course's valuation of the TA.
  [[nodiscard]] Value value(int x, int t) const { return values_[index(x, t)]; }
  /// u_t(x): the TA's utility for the course.
  [[nodiscard]] Value utility(int t, int x) const { return utilities_[index(x, t)]; }
  /// g_t(x): the TA's grade in the course.
  [[nodiscard]] const Rational& grade(int t, int x) const { return grades_[index(x, t)]; }

  /// True iff the pair is an edge of the instance graph.
  [[nodiscard]] bool acceptable(int x, int t) const { return utilities_[index(x, t)] > 0; }

  [[nodiscard]] const Rational& k() const { return k_; }

  [[nodiscard]] Instance with_threshold(const Rational& k) const {
    if (k < Rational(0)) throw Error(ErrorKind::InvalidInstance, "threshold k must be nonnegative");
    Instance copy = *this;
    copy.k_ = k;
    return copy;
  }

  [[nodiscard]] bool undersupplied() const { return num_tas() < total_capacity(); }

private:
  friend class InstanceBuilder;

  [[nodiscard]] std::size_t index(int x, int t) const {
    return static_cast<std::size_t>(x) * ta_ids_.size() + static_cast<std::size_t>(t);
  }

  std::vector<std::string> course_ids_;
  std::vector<std::string> ta_ids_;
  std::unordered_map<std::string, int> course_index_;
  std::unordered_map<std::string, int> ta_index_;
  std::vector<int> capacities_;
  std::vector<Value> values_;
  std::vector<Value> utilities_;
  std::vector<Rational> grades_;
  Rational k_;
};

/// Mutable staging area for an Instance; build() validates every invariant.
class InstanceBuilder {
public:
  int add_course(std::string id, int capacity) {
    course_ids_.push_back(std::move(id));
    capacities_.push_back(capacity);
    return static_cast<int>(course_ids_.size()) - 1;
  }

  int add_ta(std::string id) {
    ta_ids_.push_back(std::move(id));
    return static_cast<int>(ta_ids_.size()) - 1;
  }

  InstanceBuilder& set_k(Rational k) {
    k_ = k;
    return *this;
  }

  InstanceBuilder& set_value(int x, int t, Value v) {
    entry(x, t).value = v;
    return *this;
  }
  InstanceBuilder& set_utility(int t, int x, Value u) {
    entry(x, t).utility = u;
    return *this;
  }
  InstanceBuilder& set_grade(int t, int x, Rational g) {
    entry(x, t).grade = g;
    return *this;
  }

  /// Sets value, utility and grade of one pair at once.
  InstanceBuilder& set_pair(int x, int t, Value v, Value u, Rational g) {
    auto& e = entry(x, t);
    e.value = v;
    e.utility = u;
    e.grade = g;
    return *this;
  }

  [[nodiscard]] int num_courses() const { return static_cast<int>(course_ids_.size()); }
  [[nodiscard]] int num_tas() const { return static_cast<int>(ta_ids_.size()); }

  [[nodiscard]] Instance build(Instance::Options options = {}) const {
    const int n = num_courses();
    const int m = num_tas();
    Instance inst;
    inst.course_ids_ = course_ids_;
    inst.ta_ids_ = ta_ids_;
    inst.capacities_ = capacities_;
    inst.k_ = k_;
    if (k_ < Rational(0)) throw Error(ErrorKind::InvalidInstance, "threshold k must be nonnegative");
    for (int x = 0; x < n; ++x) {
      if (!inst.course_index_.emplace(course_ids_[x], x).second) {
        throw Error(ErrorKind::InvalidInstance, "duplicate course id '" + course_ids_[x] + "'");
      }
      if (capacities_[x] < 1) {
        throw Error(ErrorKind::InvalidInstance, "course '" + course_ids_[x] + "' needs a positive capacity");
      }
    }
    for (int t = 0; t < m; ++t) {
      if (!inst.ta_index_.emplace(ta_ids_[t], t).second) {
        throw Error(ErrorKind::InvalidInstance, "duplicate TA id '" + ta_ids_[t] + "'");
      }
    }
    const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
    inst.values_.assign(cells, 0);
    inst.utilities_.assign(cells, 0);
    inst.grades_.assign(cells, Rational(0));
    for (const auto& [key, e] : entries_) {
      const auto [x, t] = key;
      if (x < 0 || x >= n || t < 0 || t >= m) {
        throw Error(ErrorKind::InvalidInstance, "pair refers to an unknown course or TA");
      }
      const std::size_t i = inst.index(x, t);
      inst.values_[i] = e.value;
      inst.utilities_[i] = e.utility;
      inst.grades_[i] = e.grade;
    }
    for (int x = 0; x < n; ++x) {
      for (int t = 0; t < m; ++t) {
        const std::size_t i = inst.index(x, t);
        if (inst.values_[i] < 0 || inst.utilities_[i] < 0 || inst.grades_[i] < Rational(0)) {
          throw Error(ErrorKind::InvalidInstance, "negative entry for (" + course_ids_[x] + ", " +
                                                      ta_ids_[t] + ")");
        }
        if ((inst.values_[i] == 0) != (inst.utilities_[i] == 0)) {
          throw Error(ErrorKind::InvalidInstance,
                      "valuation and utility must be zero together for (" + course_ids_[x] + ", " +
                          ta_ids_[t] + ")");
        }
      }
    }
    if (!options.allow_undersupplied && inst.undersupplied()) {
      throw Error(ErrorKind::InvalidInstance, "fewer TAs than total course capacity");
    }
    return inst;
  }

private:
  struct Entry {
    Value value = 0;
    Value utility = 0;
    Rational grade;
  };

  struct PairHash {
    std::size_t operator()(const std::pair<int, int>& p) const noexcept {
      return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^ static_cast<unsigned>(p.second));
    }
  };

  Entry& entry(int x, int t) { return entries_[{x, t}]; }

  std::vector<std::string> course_ids_;
  std::vector<std::string> ta_ids_;
  std::vector<int> capacities_;
  std::unordered_map<std::pair<int, int>, Entry, PairHash> entries_;
  Rational k_;
};

inline constexpr int kUnassigned = -1;

/// Assignment of each TA to a course index or kUnassigned.
class Matching {
public:
  Matching() = default;
  explicit Matching(int num_tas) : course_of_(static_cast<std::size_t>(num_tas), kUnassigned) {}
  explicit Matching(std::vector<int> course_of) : course_of_(std::move(course_of)) {}

  [[nodiscard]] int num_tas() const { return static_cast<int>(course_of_.size()); }
  [[nodiscard]] int course_of(int t) const { return course_of_[t]; }
  [[nodiscard]] bool assigned(int t) const { return course_of_[t] != kUnassigned; }
  void assign(int t, int x) { course_of_[t] = x; }
  void unassign(int t) { course_of_[t] = kUnassigned; }

  [[nodiscard]] const std::vector<int>& assignment() const { return course_of_; }

  /// TAs assigned to course x, in index order.
  [[nodiscard]] std::vector<int> roster(int x) const {
    std::vector<int> out;
    for (int t = 0; t < num_tas(); ++t) {
      if (course_of_[t] == x) out.push_back(t);
    }
    return out;
  }

  friend bool operator==(const Matching&, const Matching&) = default;

private:
  std::vector<int> course_of_;
};

/// Instance induced on the given courses and TAs (indices into inst), in the
/// order given. Supply constraints are not enforced on the result.
inline Instance sub_instance(const Instance& inst, const std::vector<int>& courses,
                             const std::vector<int>& tas) {
  InstanceBuilder b;
  for (int x : courses) b.add_course(inst.course_id(x), inst.capacity(x));
  for (int t : tas) b.add_ta(inst.ta_id(t));
  b.set_k(inst.k());
  for (int i = 0; i < static_cast<int>(courses.size()); ++i) {
    for (int j = 0; j < static_cast<int>(tas.size()); ++j) {
      const int x = courses[i];
      const int t = tas[j];
      if (inst.value(x, t) != 0 || inst.grade(t, x) != Rational(0)) {
        b.set_pair(i, j, inst.value(x, t), inst.utility(t, x), inst.grade(t, x));
      }
    }
  }
  return b.build({.allow_undersupplied = true});
}

}  // namespace mefe

#endif  // MEFE_INSTANCE_HPP
