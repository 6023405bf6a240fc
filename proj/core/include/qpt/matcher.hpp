#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "qpt/oracle.hpp"
#include "qpt/pattern.hpp"

namespace qpt::graph {

/// Adjacency index (forward and reverse) over a vertex subset of some graph.
/// Vertices keep their global ids at the interface; storage is compact.
class SearchGraph {
 public:
  static SearchGraph from_digraph(const Digraph& g);
  static SearchGraph from_source(const NeighborSource& source);
  /// Graph whose vertices are the edge endpoints plus `extra_vertices`.
  static SearchGraph from_edges(std::span<const Edge> edges,
                                std::span<const Vertex> extra_vertices = {});
  static SearchGraph from_balls(std::span<const ExploredBall> balls);

  std::size_t size() const noexcept { return global_.size(); }
  Vertex global(std::uint32_t local) const { return global_[local]; }
  std::optional<std::uint32_t> local(Vertex global) const;
  std::span<const std::uint32_t> out(std::uint32_t local) const {
    return out_[local];
  }
  std::span<const std::uint32_t> in(std::uint32_t local) const {
    return in_[local];
  }
  bool has_edge(std::uint32_t u, std::uint32_t v) const;

 private:
  std::vector<Vertex> global_;
  bool identity_ = false;
  std::unordered_map<Vertex, std::uint32_t> local_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::vector<std::uint32_t>> in_;
};

/// Vertex `vertex` must lie in the image of source component `component`.
struct ComponentAnchor {
  Vertex vertex = 0;
  std::size_t component = 0;
};

/// Pattern vertex `pattern` must map exactly to `vertex`.
struct Pin {
  Vertex pattern = 0;
  Vertex vertex = 0;
};

struct MatchConstraints {
  std::vector<Pin> pins;
  std::vector<ComponentAnchor> anchors;
  /// Vertices that may not appear in the image of any source component.
  std::function<bool(Vertex)> source_forbidden;
  /// When set, the image of every source component must contain at least
  /// one vertex satisfying this predicate.
  std::function<bool(Vertex)> component_hit;
};

/// image[p] = graph vertex assigned to pattern vertex p.
using Embedding = std::vector<Vertex>;

/// Enumerates injective, edge-preserving maps of the pattern into `g`
/// (subgraph semantics; extra graph edges allowed). `visit` returns false to
/// stop. The same copy may be reported once per automorphism.
void for_each_embedding(const SearchGraph& g, const PatternGraph& h,
                        const MatchConstraints& constraints,
                        const std::function<bool(const Embedding&)>& visit);

std::optional<Embedding> find_embedding(const SearchGraph& g,
                                        const PatternGraph& h,
                                        const MatchConstraints& constraints = {});

/// Checks injectivity and edge preservation directly against the raw graph.
bool verify_embedding(const NeighborSource& g, const PatternGraph& h,
                      const Embedding& image);
bool verify_embedding(const Digraph& g, const PatternGraph& h,
                      const Embedding& image);

/// Depth-h BFS from every anchor, then an embedding of H in the explored
/// union that places each anchor inside its assigned source component.
std::optional<Embedding> find_h_copy_through(
    OracleView& view, const PatternGraph& h,
    std::span<const ComponentAnchor> anchors);

/// Same search over balls that were already explored.
std::optional<Embedding> find_h_copy_in_balls(
    std::span<const ExploredBall> balls, const PatternGraph& h,
    std::span<const ComponentAnchor> anchors);

/// Greedy count of copies whose source-component images are pairwise
/// disjoint. A lower bound on the maximum such family.
std::size_t count_source_disjoint_copies(const Digraph& g,
                                         const PatternGraph& h);

/// True when g contains no copy of h.
bool is_h_free(const Digraph& g, const PatternGraph& h);

/// True when some copy of h in g uses the edge (u, v).
bool has_copy_using_edge(const SearchGraph& g, const PatternGraph& h, Vertex u,
                         Vertex v);

}  // namespace qpt::graph
