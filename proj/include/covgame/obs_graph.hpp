#ifndef COVGAME_OBS_GRAPH_HPP
#define COVGAME_OBS_GRAPH_HPP

// Strategic observation graph: SBS i sees the previous-stage power of each
// neighbour. Small undirected simple graph over players 0..n-1.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "covgame/errors.hpp"

namespace covgame {

class ObservationGraph {
 public:
  static constexpr int kUnreachable = std::numeric_limits<int>::max();

  explicit ObservationGraph(std::size_t n = 0) : adj_(n, std::vector<bool>(n, false)) {}

  ObservationGraph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
      : ObservationGraph(n) {
    for (const auto& [a, b] : edges) add_edge(a, b);
  }

  static ObservationGraph complete(std::size_t n) {
    ObservationGraph g(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
  }

  static ObservationGraph cycle(std::size_t n) {
    ObservationGraph g(n);
    for (std::size_t a = 0; a < n; ++a) g.add_edge(a, (a + 1) % n);
    return g;
  }

  static ObservationGraph path(std::size_t n) {
    ObservationGraph g(n);
    for (std::size_t a = 0; a + 1 < n; ++a) g.add_edge(a, a + 1);
    return g;
  }

  std::size_t size() const noexcept { return adj_.size(); }

  void add_edge(std::size_t a, std::size_t b) {
    check(a);
    check(b);
    if (a == b) throw InvalidArgument("observation graph: self-loop on vertex " + std::to_string(a + 1));
    adj_[a][b] = adj_[b][a] = true;
  }

  void remove_edge(std::size_t a, std::size_t b) {
    check(a);
    check(b);
    adj_[a][b] = adj_[b][a] = false;
  }

  bool adjacent(std::size_t a, std::size_t b) const { return adj_[a][b]; }

  /// Sorted neighbour list G(i); never contains i.
  std::vector<std::size_t> neighbors(std::size_t i) const {
    check(i);
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j)
      if (adj_[i][j]) out.push_back(j);
    return out;
  }

  std::size_t degree(std::size_t i) const { return neighbors(i).size(); }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = a + 1; b < size(); ++b)
        if (adj_[a][b]) out.emplace_back(a, b);
    return out;
  }

  bool is_complete() const {
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = a + 1; b < size(); ++b)
        if (!adj_[a][b]) return false;
    return true;
  }

  /// Connectivity of the graph with `removed` deleted (pass size() to keep all).
  bool connected_without(std::size_t removed) const {
    const std::size_t n = size();
    std::size_t start = n;
    for (std::size_t v = 0; v < n; ++v)
      if (v != removed) {
        start = v;
        break;
      }
    if (start == n) return true;  // empty graph
    std::vector<bool> seen(n, false);
    seen[start] = true;
    std::deque<std::size_t> queue{start};
    std::size_t reached = 1;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w = 0; w < n; ++w) {
        if (w == removed || seen[w] || !adj_[v][w]) continue;
        seen[w] = true;
        ++reached;
        queue.push_back(w);
      }
    }
    return reached == n - (removed < n ? 1 : 0);
  }

  bool is_connected() const { return connected_without(size()); }

  /// Literal definition: connected, and connected after deleting any single
  /// vertex. A lone vertex counts as 2-connected; an edge on two vertices does not.
  bool is_two_connected() const {
    const std::size_t n = size();
    if (n == 0) return false;
    if (n == 1) return true;
    if (n == 2) return false;
    if (!is_connected()) return false;
    for (std::size_t v = 0; v < n; ++v)
      if (!connected_without(v)) return false;
    return true;
  }

  /// All-pairs hop distances by breadth-first search; kUnreachable if none.
  std::vector<std::vector<int>> shortest_path_lengths() const {
    const std::size_t n = size();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, kUnreachable));
    for (std::size_t s = 0; s < n; ++s) {
      dist[s][s] = 0;
      std::deque<std::size_t> queue{s};
      while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t w = 0; w < n; ++w) {
          if (!adj_[v][w] || dist[s][w] != kUnreachable) continue;
          dist[s][w] = dist[s][v] + 1;
          queue.push_back(w);
        }
      }
    }
    return dist;
  }

  friend bool operator==(const ObservationGraph&, const ObservationGraph&) = default;

 private:
  void check(std::size_t i) const {
    if (i >= size()) throw InvalidArgument("observation graph: invalid vertex " + std::to_string(i + 1));
  }

  std::vector<std::vector<bool>> adj_;
};

}  // namespace covgame

#endif  // COVGAME_OBS_GRAPH_HPP
