#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qpt/digraph.hpp"

namespace qpt::graph {

/// Constant-size pattern H together with its source components.
class PatternGraph {
 public:
  PatternGraph(std::size_t h, std::vector<Edge> edges);

  /// k leaves 0..k-1 each pointing at center k.
  static PatternGraph star(std::size_t k);

  std::size_t h() const noexcept { return graph_.n(); }
  std::size_t k() const noexcept { return sources_.size(); }
  const Digraph& graph() const noexcept { return graph_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const std::vector<std::vector<Vertex>>& source_components() const noexcept {
    return sources_;
  }
  /// Index of the source component containing p, or -1.
  int component_of(Vertex p) const { return component_of_.at(p); }
  bool has_edge(Vertex p, Vertex q) const { return matrix_[p * h() + q]; }
  /// True when the underlying undirected graph is connected.
  bool weakly_connected() const noexcept { return weakly_connected_; }
  std::size_t max_out_degree() const noexcept { return graph_.max_out_degree(); }

 private:
  Digraph graph_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> sources_;
  std::vector<int> component_of_;
  std::vector<bool> matrix_;
  bool weakly_connected_ = false;
};

}  // namespace qpt::graph
