#include "qpt/matcher.hpp"

#include <algorithm>
#include <set>

namespace qpt::graph {

// ---------------------------------------------------------------- SearchGraph

SearchGraph SearchGraph::from_digraph(const Digraph& g) {
  SearchGraph s;
  s.identity_ = true;
  s.global_.resize(g.n());
  s.out_.resize(g.n());
  s.in_.resize(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    s.global_[v] = v;
    for (Vertex w : g.out(v)) {
      s.out_[v].push_back(w);
      s.in_[w].push_back(v);
    }
  }
  return s;
}

SearchGraph SearchGraph::from_source(const NeighborSource& source) {
  return from_digraph(materialize(source));
}

SearchGraph SearchGraph::from_edges(std::span<const Edge> edges,
                                    std::span<const Vertex> extra_vertices) {
  SearchGraph s;
  auto intern = [&s](Vertex v) {
    auto [it, inserted] =
        s.local_.emplace(v, static_cast<std::uint32_t>(s.global_.size()));
    if (inserted) {
      s.global_.push_back(v);
      s.out_.emplace_back();
      s.in_.emplace_back();
    }
    return it->second;
  };
  for (Vertex v : extra_vertices) intern(v);
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (auto [u, v] : edges) {
    auto a = intern(u);
    auto b = intern(v);
    if (!seen.emplace(a, b).second) continue;
    s.out_[a].push_back(b);
    s.in_[b].push_back(a);
  }
  return s;
}

SearchGraph SearchGraph::from_balls(std::span<const ExploredBall> balls) {
  std::vector<Edge> edges;
  std::vector<Vertex> vertices;
  for (const auto& ball : balls) {
    edges.insert(edges.end(), ball.edges.begin(), ball.edges.end());
    vertices.insert(vertices.end(), ball.vertices.begin(), ball.vertices.end());
  }
  return from_edges(edges, vertices);
}

std::optional<std::uint32_t> SearchGraph::local(Vertex global) const {
  if (identity_) {
    if (global < global_.size()) return global;
    return std::nullopt;
  }
  auto it = local_.find(global);
  if (it == local_.end()) return std::nullopt;
  return it->second;
}

bool SearchGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
  const auto& list = out_[u];
  return std::find(list.begin(), list.end(), v) != list.end();
}

// ------------------------------------------------------------------- matching

namespace {

constexpr std::uint32_t kUnmapped = static_cast<std::uint32_t>(-1);

class Matcher {
 public:
  Matcher(const SearchGraph& g, const PatternGraph& h,
          const MatchConstraints& c,
          const std::function<bool(const Embedding&)>& visit)
      : g_(g), h_(h), c_(c), visit_(visit), map_(h.h(), kUnmapped) {}

  // Returns false when the visitor asked to stop.
  bool run() {
    // Expand component anchors into every admissible pin choice.
    std::vector<Pin> pins = c_.pins;
    return expand_anchors(0, pins);
  }

 private:
  bool expand_anchors(std::size_t idx, std::vector<Pin>& pins) {
    if (idx == c_.anchors.size()) return search_with_pins(pins);
    const auto& anchor = c_.anchors[idx];
    require(anchor.component < h_.k(), "anchor component out of range");
    for (Vertex p : h_.source_components()[anchor.component]) {
      pins.push_back({p, anchor.vertex});
      bool keep_going = expand_anchors(idx + 1, pins);
      pins.pop_back();
      if (!keep_going) return false;
    }
    return true;
  }

  bool search_with_pins(const std::vector<Pin>& pins) {
    std::fill(map_.begin(), map_.end(), kUnmapped);
    used_.clear();
    for (const auto& pin : pins) {
      auto local = g_.local(pin.vertex);
      if (!local) return true;  // pinned vertex not in the graph: no match
      if (map_[pin.pattern] != kUnmapped) {
        if (map_[pin.pattern] != *local) return true;
        continue;
      }
      if (used_.count(*local)) return true;
      if (!admissible(pin.pattern, *local)) return true;
      map_[pin.pattern] = *local;
      used_.insert(*local);
    }
    // Consistency among pinned vertices.
    for (auto [p, q] : h_.edges()) {
      if (map_[p] != kUnmapped && map_[q] != kUnmapped &&
          !g_.has_edge(map_[p], map_[q])) {
        return true;
      }
    }
    build_order();
    return extend(0);
  }

  bool admissible(Vertex p, std::uint32_t v) const {
    if (c_.source_forbidden && h_.component_of(p) >= 0 &&
        c_.source_forbidden(g_.global(v))) {
      return false;
    }
    return true;
  }

  void build_order() {
    order_.clear();
    std::vector<bool> placed(h_.h(), false);
    for (Vertex p = 0; p < h_.h(); ++p) placed[p] = map_[p] != kUnmapped;
    std::size_t remaining =
        static_cast<std::size_t>(std::count(placed.begin(), placed.end(), false));
    while (remaining > 0) {
      int best = -1;
      int best_links = -1;
      for (Vertex p = 0; p < h_.h(); ++p) {
        if (placed[p]) continue;
        int links = 0;
        for (Vertex q = 0; q < h_.h(); ++q) {
          if (placed[q] && (h_.has_edge(p, q) || h_.has_edge(q, p))) ++links;
        }
        if (links > best_links) {
          best_links = links;
          best = static_cast<int>(p);
        }
      }
      placed[best] = true;
      order_.push_back(static_cast<Vertex>(best));
      --remaining;
    }
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return emit();
    const Vertex p = order_[depth];
    // Pick an already-mapped neighbor to generate candidates from.
    int anchor_q = -1;
    bool forward = false;  // true: q -> p, candidates = out(map[q])
    for (Vertex q = 0; q < h_.h() && anchor_q < 0; ++q) {
      if (map_[q] == kUnmapped) continue;
      if (h_.has_edge(q, p)) {
        anchor_q = static_cast<int>(q);
        forward = true;
      } else if (h_.has_edge(p, q)) {
        anchor_q = static_cast<int>(q);
        forward = false;
      }
    }
    auto try_candidate = [&](std::uint32_t v) {
      if (used_.count(v) || !admissible(p, v)) return true;
      for (Vertex q = 0; q < h_.h(); ++q) {
        if (map_[q] == kUnmapped) continue;
        if (h_.has_edge(p, q) && !g_.has_edge(v, map_[q])) return true;
        if (h_.has_edge(q, p) && !g_.has_edge(map_[q], v)) return true;
      }
      map_[p] = v;
      used_.insert(v);
      bool keep_going = extend(depth + 1);
      used_.erase(v);
      map_[p] = kUnmapped;
      return keep_going;
    };
    if (anchor_q >= 0) {
      auto candidates = forward ? g_.out(map_[anchor_q]) : g_.in(map_[anchor_q]);
      for (std::uint32_t v : candidates) {
        if (!try_candidate(v)) return false;
      }
    } else {
      for (std::uint32_t v = 0; v < g_.size(); ++v) {
        if (!try_candidate(v)) return false;
      }
    }
    return true;
  }

  bool emit() {
    if (c_.component_hit) {
      for (const auto& comp : h_.source_components()) {
        bool hit = false;
        for (Vertex p : comp) hit = hit || c_.component_hit(g_.global(map_[p]));
        if (!hit) return true;
      }
    }
    Embedding image(h_.h());
    for (Vertex p = 0; p < h_.h(); ++p) image[p] = g_.global(map_[p]);
    return visit_(image);
  }

  const SearchGraph& g_;
  const PatternGraph& h_;
  const MatchConstraints& c_;
  const std::function<bool(const Embedding&)>& visit_;
  std::vector<std::uint32_t> map_;
  std::set<std::uint32_t> used_;
  std::vector<Vertex> order_;
};

}  // namespace

void for_each_embedding(const SearchGraph& g, const PatternGraph& h,
                        const MatchConstraints& constraints,
                        const std::function<bool(const Embedding&)>& visit) {
  std::set<Vertex> anchor_vertices;
  for (const auto& a : constraints.anchors) {
    require(anchor_vertices.insert(a.vertex).second,
            "anchors must use distinct graph vertices");
  }
  std::set<std::size_t> anchor_components;
  for (const auto& a : constraints.anchors) {
    require(anchor_components.insert(a.component).second,
            "anchors must use distinct source components");
  }
  Matcher(g, h, constraints, visit).run();
}

std::optional<Embedding> find_embedding(const SearchGraph& g,
                                        const PatternGraph& h,
                                        const MatchConstraints& constraints) {
  std::optional<Embedding> found;
  for_each_embedding(g, h, constraints, [&](const Embedding& e) {
    found = e;
    return false;
  });
  return found;
}

bool verify_embedding(const NeighborSource& g, const PatternGraph& h,
                      const Embedding& image) {
  if (image.size() != h.h()) return false;
  std::set<Vertex> distinct(image.begin(), image.end());
  if (distinct.size() != image.size()) return false;
  for (Vertex v : image) {
    if (v >= g.n()) return false;
  }
  for (auto [p, q] : h.edges()) {
    bool present = false;
    for (std::size_t slot = 0; slot < g.d_out() && !present; ++slot) {
      auto w = g.neighbor(image[p], slot);
      if (!w) break;
      present = *w == image[q];
    }
    if (!present) return false;
  }
  return true;
}

bool verify_embedding(const Digraph& g, const PatternGraph& h,
                      const Embedding& image) {
  return verify_embedding(DigraphSource(g), h, image);
}

std::optional<Embedding> find_h_copy_in_balls(
    std::span<const ExploredBall> balls, const PatternGraph& h,
    std::span<const ComponentAnchor> anchors) {
  auto g = SearchGraph::from_balls(balls);
  MatchConstraints c;
  c.anchors.assign(anchors.begin(), anchors.end());
  return find_embedding(g, h, c);
}

std::optional<Embedding> find_h_copy_through(
    OracleView& view, const PatternGraph& h,
    std::span<const ComponentAnchor> anchors) {
  std::vector<ExploredBall> balls;
  balls.reserve(anchors.size());
  for (const auto& a : anchors) balls.push_back(bfs_limited(view, a.vertex, h.h()));
  return find_h_copy_in_balls(balls, h, anchors);
}

std::size_t count_source_disjoint_copies(const Digraph& g,
                                         const PatternGraph& h) {
  auto index = SearchGraph::from_digraph(g);
  std::vector<bool> used(g.n(), false);
  std::size_t count = 0;
  MatchConstraints c;
  c.source_forbidden = [&used](Vertex v) { return used[v]; };
  for (Vertex v = 0; v < g.n(); ++v) {
    if (used[v]) continue;
    for (std::size_t comp = 0; comp < h.k(); ++comp) {
      c.anchors = {{v, comp}};
      auto e = find_embedding(index, h, c);
      if (!e) continue;
      for (const auto& component : h.source_components()) {
        for (Vertex p : component) used[(*e)[p]] = true;
      }
      ++count;
      break;
    }
  }
  return count;
}

bool is_h_free(const Digraph& g, const PatternGraph& h) {
  auto index = SearchGraph::from_digraph(g);
  return !find_embedding(index, h).has_value();
}

bool has_copy_using_edge(const SearchGraph& g, const PatternGraph& h, Vertex u,
                         Vertex v) {
  for (auto [p, q] : h.edges()) {
    MatchConstraints c;
    c.pins = {{p, u}, {q, v}};
    if (find_embedding(g, h, c)) return true;
  }
  return false;
}

}  // namespace qpt::graph
