#include "qpt/digraph.hpp"

#include <algorithm>
#include <string>

namespace qpt::graph {

Digraph::Digraph(std::size_t n, std::size_t d_out, bool allow_self_loops)
    : adjacency_(n), d_out_(d_out), allow_self_loops_(allow_self_loops) {}

Digraph Digraph::from_adjacency(std::vector<std::vector<Vertex>> adjacency,
                                std::size_t d_out, bool allow_self_loops) {
  Digraph g(adjacency.size(), d_out, allow_self_loops);
  for (std::size_t u = 0; u < adjacency.size(); ++u) {
    for (Vertex v : adjacency[u]) g.add_edge(static_cast<Vertex>(u), v);
  }
  return g;
}

Digraph Digraph::from_edges(std::size_t n, std::size_t d_out,
                            std::span<const Edge> edges,
                            bool allow_self_loops) {
  Digraph g(n, d_out, allow_self_loops);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

void Digraph::add_edge(Vertex u, Vertex v) {
  require(u < n() && v < n(), "edge (" + std::to_string(u) + "," +
                                  std::to_string(v) + ") out of range");
  require(allow_self_loops_ || u != v,
          "self-loop at vertex " + std::to_string(u));
  require(!has_edge(u, v), "duplicate edge (" + std::to_string(u) + "," +
                               std::to_string(v) + ")");
  require(adjacency_[u].size() < d_out_,
          "out-degree bound " + std::to_string(d_out_) +
              " exceeded at vertex " + std::to_string(u));
  adjacency_[u].push_back(v);
  ++edge_count_;
}

bool Digraph::try_add_edge(Vertex u, Vertex v) noexcept {
  if (u >= n() || v >= n()) return false;
  if (!allow_self_loops_ && u == v) return false;
  if (adjacency_[u].size() >= d_out_ || has_edge(u, v)) return false;
  adjacency_[u].push_back(v);
  ++edge_count_;
  return true;
}

void Digraph::remove_edge(Vertex u, Vertex v) {
  require(u < n(), "vertex out of range");
  auto& list = adjacency_[u];
  auto it = std::find(list.begin(), list.end(), v);
  require(it != list.end(), "edge not present");
  list.erase(it);
  --edge_count_;
}

bool Digraph::has_edge(Vertex u, Vertex v) const {
  const auto& list = adjacency_.at(u);
  return std::find(list.begin(), list.end(), v) != list.end();
}

std::size_t Digraph::max_out_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return best;
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (Vertex v : adjacency_[u]) out.emplace_back(static_cast<Vertex>(u), v);
  }
  return out;
}

std::vector<std::vector<Vertex>> Digraph::reverse_adjacency() const {
  std::vector<std::vector<Vertex>> rev(n());
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (Vertex v : adjacency_[u]) rev[v].push_back(static_cast<Vertex>(u));
  }
  return rev;
}

namespace {

// Iterative Tarjan; returns component id per vertex.
std::vector<std::size_t> tarjan(const Digraph& g, std::size_t& count) {
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  const std::size_t n = g.n();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::vector<std::pair<Vertex, std::size_t>> call;  // (vertex, next slot)
  std::size_t next_index = 0;
  count = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, slot] = call.back();
      if (slot == 0 && index[v] == kUnvisited) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      auto out = g.out(v);
      if (slot < out.size()) {
        Vertex w = out[slot++];
        if (index[w] == kUnvisited) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      Vertex finished = v;
      call.pop_back();
      if (!call.empty()) {
        Vertex parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

std::vector<std::vector<Vertex>> group_sorted(
    const std::vector<std::size_t>& comp, std::size_t count,
    const std::vector<bool>& keep) {
  std::vector<std::vector<Vertex>> groups(count);
  for (Vertex v = 0; v < comp.size(); ++v) groups[comp[v]].push_back(v);
  std::vector<std::vector<Vertex>> out;
  for (std::size_t c = 0; c < count; ++c) {
    if (keep[c]) out.push_back(std::move(groups[c]));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace

std::vector<std::vector<Vertex>> strongly_connected_components(const Digraph& g) {
  std::size_t count = 0;
  auto comp = tarjan(g, count);
  return group_sorted(comp, count, std::vector<bool>(count, true));
}

std::vector<std::vector<Vertex>> source_components(const Digraph& g) {
  std::size_t count = 0;
  auto comp = tarjan(g, count);
  std::vector<bool> has_incoming(count, false);
  for (Vertex u = 0; u < g.n(); ++u) {
    for (Vertex v : g.out(u)) {
      if (comp[u] != comp[v]) has_incoming[comp[v]] = true;
    }
  }
  std::vector<bool> keep(count);
  for (std::size_t c = 0; c < count; ++c) keep[c] = !has_incoming[c];
  return group_sorted(comp, count, keep);
}

}  // namespace qpt::graph
