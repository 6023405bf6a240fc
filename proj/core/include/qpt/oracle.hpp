#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qpt/digraph.hpp"

namespace qpt::graph {

/// Read-only out-neighbor access to some digraph, materialized or implicit.
/// Implementations answer without accounting; charging happens in OracleView.
class NeighborSource {
 public:
  virtual ~NeighborSource() = default;
  virtual std::size_t n() const = 0;
  virtual std::size_t d_out() const = 0;
  /// 0-based slot. Returns nullopt when the vertex has fewer out-neighbors.
  virtual std::optional<Vertex> neighbor(Vertex v, std::size_t slot) const = 0;
};

class DigraphSource final : public NeighborSource {
 public:
  explicit DigraphSource(const Digraph& g) : g_(&g) {}
  std::size_t n() const override { return g_->n(); }
  std::size_t d_out() const override { return g_->d_out(); }
  std::optional<Vertex> neighbor(Vertex v, std::size_t slot) const override {
    auto out = g_->out(v);
    if (slot < out.size()) return out[slot];
    return std::nullopt;
  }
  const Digraph& graph() const noexcept { return *g_; }

 private:
  const Digraph* g_;
};

struct QueryLedger {
  std::uint64_t classical_queries = 0;
  std::uint64_t grover_charged_queries = 0;

  std::uint64_t total() const noexcept {
    return classical_queries + grover_charged_queries;
  }
  friend bool operator==(const QueryLedger&, const QueryLedger&) = default;
};

/// Charged access to a NeighborSource. Every out-neighbor query increments
/// the ledger by exactly one. A view is not thread-safe.
class OracleView {
 public:
  explicit OracleView(const NeighborSource& source) : source_(&source) {}

  std::size_t n() const { return source_->n(); }
  std::size_t d_out() const { return source_->d_out(); }

  /// `slot` is 1-based, in [1, d_out].
  std::optional<Vertex> out_neighbor(Vertex v, std::size_t slot);

  void charge_grover(std::uint64_t amount) {
    ledger_.grover_charged_queries += amount;
  }
  const QueryLedger& ledger() const noexcept { return ledger_; }
  /// Uncharged access for simulation-side bookkeeping (predicate evaluation
  /// in the idealized search model). Never used by algorithm logic that is
  /// supposed to pay for what it reads.
  const NeighborSource& source() const noexcept { return *source_; }

 private:
  const NeighborSource* source_;
  QueryLedger ledger_;
};

/// Free-function spelling of OracleView::out_neighbor.
std::optional<Vertex> out_neighbor_query(OracleView& view, Vertex v,
                                         std::size_t slot);

/// Result of a depth-limited BFS: every vertex within `depth` hops and the
/// out-edges of every vertex that was expanded (distance < depth).
struct ExploredBall {
  Vertex start = 0;
  std::size_t depth = 0;
  std::vector<Vertex> vertices;  // discovery order, start first
  std::vector<Edge> edges;       // in query order
};

ExploredBall bfs_limited(OracleView& view, Vertex start, std::size_t depth);

/// Materializes the whole source (uncharged). Used for full-knowledge
/// simulation and tests.
Digraph materialize(const NeighborSource& source);

}  // namespace qpt::graph
