#include "qpt/oracle.hpp"

#include <deque>
#include <string>
#include <unordered_map>

namespace qpt::graph {

std::optional<Vertex> OracleView::out_neighbor(Vertex v, std::size_t slot) {
  require(v < n(), "vertex " + std::to_string(v) + " out of range");
  require(slot >= 1 && slot <= d_out(),
          "slot " + std::to_string(slot) + " outside [1, d_out]");
  ++ledger_.classical_queries;
  return source_->neighbor(v, slot - 1);
}

std::optional<Vertex> out_neighbor_query(OracleView& view, Vertex v,
                                         std::size_t slot) {
  return view.out_neighbor(v, slot);
}

ExploredBall bfs_limited(OracleView& view, Vertex start, std::size_t depth) {
  require(start < view.n(), "BFS start out of range");
  ExploredBall ball;
  ball.start = start;
  ball.depth = depth;
  std::unordered_map<Vertex, std::size_t> dist{{start, 0}};
  std::deque<Vertex> queue{start};
  ball.vertices.push_back(start);
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    const std::size_t du = dist[u];
    if (du >= depth) continue;
    // Adjacency lists are prefixes of the slot range, so the first bottom
    // ends the scan of u.
    for (std::size_t slot = 1; slot <= view.d_out(); ++slot) {
      auto w = view.out_neighbor(u, slot);
      if (!w) break;
      ball.edges.emplace_back(u, *w);
      if (dist.emplace(*w, du + 1).second) {
        ball.vertices.push_back(*w);
        queue.push_back(*w);
      }
    }
  }
  return ball;
}

Digraph materialize(const NeighborSource& source) {
  Digraph g(source.n(), source.d_out(), true);
  for (Vertex v = 0; v < source.n(); ++v) {
    for (std::size_t slot = 0; slot < source.d_out(); ++slot) {
      auto w = source.neighbor(v, slot);
      if (!w) break;
      g.add_edge(v, *w);
    }
  }
  return g;
}

}  // namespace qpt::graph
