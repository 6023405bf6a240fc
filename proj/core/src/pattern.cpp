#include "qpt/pattern.hpp"

#include <numeric>

namespace qpt::graph {

PatternGraph::PatternGraph(std::size_t h, std::vector<Edge> edges)
    : edges_(std::move(edges)), matrix_(h * h, false) {
  require(h >= 1, "pattern needs at least one vertex");
  graph_ = Digraph::from_edges(h, h, edges_);
  for (auto [p, q] : edges_) matrix_[p * h + q] = true;
  sources_ = graph::source_components(graph_);
  component_of_.assign(h, -1);
  for (std::size_t c = 0; c < sources_.size(); ++c) {
    for (Vertex p : sources_[c]) component_of_[p] = static_cast<int>(c);
  }

  std::vector<std::size_t> parent(h);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t groups = h;
  for (auto [p, q] : edges_) {
    auto a = find(p), b = find(q);
    if (a != b) {
      parent[a] = b;
      --groups;
    }
  }
  weakly_connected_ = groups == 1;
}

PatternGraph PatternGraph::star(std::size_t k) {
  require(k >= 1, "star needs k >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) {
    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(k));
  }
  return PatternGraph(k + 1, std::move(edges));
}

}  // namespace qpt::graph
