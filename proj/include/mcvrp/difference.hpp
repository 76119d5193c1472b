#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "instance.hpp"

namespace mcvrp {

/// A system of difference constraints x[a] - x[b] <= w plus box bounds
/// lo[i] <= x[i] <= hi[i], solved by shortest paths from a virtual origin.
/// The constraint graph carries one edge b -> a of weight w per difference
/// and origin/bound edges for the boxes; a negative cycle is exactly an
/// unsatisfiable subset of constraints.
class DifferenceSystem {
public:
  explicit DifferenceSystem(size_t n) : n_(n), lower_(n, 0), upper_(n, 0) {}

  void set_bounds(size_t i, Int lo, Int hi) {
    lower_[i] = lo;
    upper_[i] = hi;
  }

  /// Add x[a] - x[b] <= w.
  void add(size_t a, size_t b, Int w, std::string label = {}) {
    edges_.push_back({b, a, w, std::move(label)});
  }

  struct Result {
    bool feasible = false;
    std::vector<Int> min_values;  // componentwise least solution
    std::vector<Int> max_values;  // componentwise greatest solution
    std::vector<std::string> cycle;  // labels of one unsatisfiable constraint subset
  };

  Result solve() const {
    Result r;
    std::vector<std::string> cycle;
    std::vector<Int> maxv, minv;
    if (!run(false, maxv, cycle)) {
      r.feasible = false;
      r.cycle = std::move(cycle);
      return r;
    }
    // Least solution: negate the variables, which swaps bounds and reverses
    // every difference edge, then negate the result back.
    if (!run(true, minv, cycle)) {
      r.feasible = false;
      r.cycle = std::move(cycle);
      return r;
    }
    for (Int& v : minv) v = -v;
    r.feasible = true;
    r.max_values = std::move(maxv);
    r.min_values = std::move(minv);
    return r;
  }

private:
  struct Edge {
    size_t from, to;
    Int w;
    std::string label;
  };

  // Bellman-Ford over n_+1 nodes (node n_ is the origin, pinned to 0).
  // Returns false and fills `cycle` when a negative cycle exists.
  bool run(bool negated, std::vector<Int>& out, std::vector<std::string>& cycle) const {
    const size_t origin = n_;
    const size_t nodes = n_ + 1;
    struct E {
      size_t from, to;
      Int w;
      const std::string* label;
    };
    std::vector<E> es;
    es.reserve(edges_.size() + 2 * n_);
    static const std::string kUpper = "upper bound";
    static const std::string kLower = "lower bound";
    for (size_t i = 0; i < n_; ++i) {
      const Int lo = negated ? -upper_[i] : lower_[i];
      const Int hi = negated ? -lower_[i] : upper_[i];
      es.push_back({origin, i, hi, &kUpper});   // x[i] <= hi
      es.push_back({i, origin, -lo, &kLower});  // x[i] >= lo
    }
    for (const auto& e : edges_) {
      if (!negated) {
        es.push_back({e.from, e.to, e.w, &e.label});
      } else {
        es.push_back({e.to, e.from, e.w, &e.label});
      }
    }

    const Int inf = std::numeric_limits<Int>::max() / 4;
    std::vector<Int> dist(nodes, inf);
    std::vector<size_t> pred(nodes, nodes);
    std::vector<const std::string*> pred_label(nodes, nullptr);
    dist[origin] = 0;

    size_t last_relaxed = nodes;
    for (size_t round = 0; round < nodes; ++round) {
      last_relaxed = nodes;
      for (const auto& e : es) {
        if (dist[e.from] == inf) continue;
        if (dist[e.from] + e.w < dist[e.to]) {
          dist[e.to] = dist[e.from] + e.w;
          pred[e.to] = e.from;
          pred_label[e.to] = e.label;
          last_relaxed = e.to;
        }
      }
      if (last_relaxed == nodes) break;
    }
    if (last_relaxed != nodes) {
      // Walk predecessors until a node repeats; that loop is the cycle.
      size_t cur = last_relaxed;
      for (size_t step = 0; step < nodes; ++step) cur = pred[cur];
      cycle.clear();
      size_t walker = cur;
      do {
        if (pred_label[walker] && !pred_label[walker]->empty()) cycle.push_back(*pred_label[walker]);
        walker = pred[walker];
      } while (walker != cur);
      std::reverse(cycle.begin(), cycle.end());
      return false;
    }
    out.assign(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(n_));
    return true;
  }

  size_t n_;
  std::vector<Int> lower_, upper_;
  std::vector<Edge> edges_;
};

}  // namespace mcvrp
