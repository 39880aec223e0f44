#ifndef MEFE_GRAPH_HPP
#define MEFE_GRAPH_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include "mefe/instance.hpp"

namespace mefe {

/// Course/TA bipartite graph with an edge wherever the TA's utility is positive.
class BipartiteGraph {
public:
  struct Component {
    std::vector<int> courses;
    std::vector<int> tas;
    int num_edges = 0;
  };

  explicit BipartiteGraph(const Instance& inst)
      : course_adj_(static_cast<std::size_t>(inst.num_courses())),
        ta_adj_(static_cast<std::size_t>(inst.num_tas())) {
    for (int x = 0; x < inst.num_courses(); ++x) {
      for (int t = 0; t < inst.num_tas(); ++t) {
        if (inst.acceptable(x, t)) {
          course_adj_[x].push_back(t);
          ta_adj_[t].push_back(x);
          ++num_edges_;
        }
      }
    }
    compute_components();
  }

  [[nodiscard]] int num_courses() const { return static_cast<int>(course_adj_.size()); }
  [[nodiscard]] int num_tas() const { return static_cast<int>(ta_adj_.size()); }
  [[nodiscard]] int num_edges() const { return num_edges_; }

  /// N(x), ascending by TA index.
  [[nodiscard]] const std::vector<int>& tas_of(int x) const { return course_adj_[x]; }
  /// Courses the TA values positively, ascending.
  [[nodiscard]] const std::vector<int>& courses_of(int t) const { return ta_adj_[t]; }

  [[nodiscard]] int course_degree(int x) const { return static_cast<int>(course_adj_[x].size()); }
  [[nodiscard]] int ta_degree(int t) const { return static_cast<int>(ta_adj_[t].size()); }

  [[nodiscard]] const std::vector<Component>& components() const { return components_; }
  [[nodiscard]] int course_component(int x) const { return course_comp_[x]; }
  [[nodiscard]] int ta_component(int t) const { return ta_comp_[t]; }

private:
  // Union-find over courses 0..n-1 followed by TAs n..n+m-1.
  void compute_components() {
    const int n = num_courses();
    const int m = num_tas();
    std::vector<int> parent(static_cast<std::size_t>(n + m));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (int x = 0; x < n; ++x) {
      for (int t : course_adj_[x]) {
        const int a = find(x);
        const int b = find(n + t);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    std::vector<int> comp_of_root(static_cast<std::size_t>(n + m), -1);
    course_comp_.assign(static_cast<std::size_t>(n), -1);
    ta_comp_.assign(static_cast<std::size_t>(m), -1);
    for (int v = 0; v < n + m; ++v) {
      const int r = find(v);
      if (comp_of_root[r] < 0) {
        comp_of_root[r] = static_cast<int>(components_.size());
        components_.emplace_back();
      }
      const int c = comp_of_root[r];
      if (v < n) {
        components_[c].courses.push_back(v);
        course_comp_[v] = c;
      } else {
        components_[c].tas.push_back(v - n);
        ta_comp_[v - n] = c;
      }
    }
    for (int x = 0; x < n; ++x) components_[course_comp_[x]].num_edges += course_degree(x);
  }

  std::vector<std::vector<int>> course_adj_;
  std::vector<std::vector<int>> ta_adj_;
  int num_edges_ = 0;
  std::vector<Component> components_;
  std::vector<int> course_comp_;
  std::vector<int> ta_comp_;
};

inline BipartiteGraph build_graph(const Instance& inst) { return BipartiteGraph(inst); }

}  // namespace mefe

#endif  // MEFE_GRAPH_HPP
