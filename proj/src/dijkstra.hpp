#pragma once
// Single-source Dijkstra over an implicit graph with dense node ids.
//
// Ties between equal-cost predecessors go to the smaller node id, so the
// resulting tree does not depend on visitation order.

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

namespace trigrid::detail {

struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<int> pred;

  std::vector<int> path_to(int target) const {
    std::vector<int> out;
    for (int v = target; v >= 0; v = pred[v]) out.push_back(v);
    return {out.rbegin(), out.rend()};
  }
};

// `expand(u, relax, settled)` must call relax(v, edge_cost) for each neighbour
// v of u; it may skip v with settled[v] set. Infinite edge costs are ignored. Stops once `target` is settled.
template <class Expand>
ShortestPathTree dijkstra(int node_count, int source, int target, Expand&& expand) {
  ShortestPathTree tree;
  tree.dist.assign(node_count, std::numeric_limits<double>::infinity());
  tree.pred.assign(node_count, -1);
  std::vector<char> settled(node_count, 0);

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  tree.dist[source] = 0.0;
  heap.emplace(0.0, source);

  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u] || d > tree.dist[u]) continue;
    settled[u] = 1;
    if (u == target) break;
    expand(u, [&](int v, double cost) {
      if (std::isinf(cost) || settled[v]) return;
      const double nd = d + cost;
      double& dv = tree.dist[v];
      if (nd < dv) {
        dv = nd;
        tree.pred[v] = u;
        heap.emplace(nd, v);
      } else if (nd == dv && u < tree.pred[v]) {
        tree.pred[v] = u;
      }
    }, settled);
  }
  return tree;
}

}  // namespace trigrid::detail
