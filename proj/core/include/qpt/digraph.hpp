#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qpt/common.hpp"

namespace qpt::graph {

using Edge = std::pair<Vertex, Vertex>;

/// Directed graph whose out-degrees are capped at `d_out`. Only out-degrees
/// are bounded; in-degrees are arbitrary. Adjacency order is significant: the
/// i-th stored neighbor is what the oracle returns for slot i.
class Digraph {
 public:
  Digraph() = default;
  Digraph(std::size_t n, std::size_t d_out, bool allow_self_loops = false);

  static Digraph from_adjacency(std::vector<std::vector<Vertex>> adjacency,
                                std::size_t d_out,
                                bool allow_self_loops = false);
  static Digraph from_edges(std::size_t n, std::size_t d_out,
                            std::span<const Edge> edges,
                            bool allow_self_loops = false);

  /// Appends v to the adjacency list of u. Throws InputError when the edge is
  /// out of range, a forbidden self-loop, a duplicate, or would exceed d_out.
  void add_edge(Vertex u, Vertex v);
  /// Like add_edge but returns false instead of throwing when the edge cannot
  /// be added.
  bool try_add_edge(Vertex u, Vertex v) noexcept;
  void remove_edge(Vertex u, Vertex v);

  std::size_t n() const noexcept { return adjacency_.size(); }
  std::size_t d_out() const noexcept { return d_out_; }
  bool allows_self_loops() const noexcept { return allow_self_loops_; }
  std::span<const Vertex> out(Vertex v) const { return adjacency_.at(v); }
  std::size_t out_degree(Vertex v) const { return adjacency_.at(v).size(); }
  bool has_edge(Vertex u, Vertex v) const;
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t max_out_degree() const noexcept;

  std::vector<Edge> edges() const;
  std::vector<std::vector<Vertex>> reverse_adjacency() const;

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t d_out_ = 0;
  std::size_t edge_count_ = 0;
  bool allow_self_loops_ = false;
};

/// Maximal strongly connected components that receive no edge from outside
/// themselves. Each component is sorted; components are ordered by their
/// minimum vertex.
std::vector<std::vector<Vertex>> source_components(const Digraph& g);

/// All strongly connected components, same ordering convention.
std::vector<std::vector<Vertex>> strongly_connected_components(const Digraph& g);

}  // namespace qpt::graph
