#include "qpt/instances.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace qpt::instances {

namespace {

std::size_t ceil_to_size(const Rational& q) {
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  require(c >= 0 && c.fits_ulong_p(), "value out of range");
  return c.get_ui();
}

// Random out-edges among `pool`, each kept only if it completes no copy of h.
class FillerBuilder {
 public:
  FillerBuilder(graph::Digraph& g, const graph::PatternGraph& h)
      : g_(g), h_(h), in_(g.n()) {
    for (auto [u, v] : g.edges()) in_[v].push_back(u);
  }

  void run(const std::vector<Vertex>& pool, std::size_t attempts, Rng& rng) {
    if (pool.size() < 2) return;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t a = 0; a < attempts; ++a) {
      Vertex u = pool[pick(rng)];
      Vertex v = pool[pick(rng)];
      if (!g_.try_add_edge(u, v)) continue;
      in_[v].push_back(u);
      if (creates_copy(u, v)) {
        g_.remove_edge(u, v);
        in_[v].pop_back();
      }
    }
  }

 private:
  bool creates_copy(Vertex u, Vertex v) {
    if (!h_.weakly_connected()) {
      return graph::has_copy_using_edge(graph::SearchGraph::from_digraph(g_), h_,
                                        u, v);
    }
    // A copy through (u, v) stays within undirected distance h-1 of u.
    std::vector<Vertex> ball{u};
    std::vector<std::size_t> dist{0};
    std::unordered_map<Vertex, std::size_t> seen{{u, 0}};
    for (std::size_t i = 0; i < ball.size(); ++i) {
      if (dist[i] + 1 >= h_.h()) continue;
      auto visit = [&](Vertex w) {
        if (seen.emplace(w, dist[i] + 1).second) {
          ball.push_back(w);
          dist.push_back(dist[i] + 1);
        }
      };
      for (Vertex w : g_.out(ball[i])) visit(w);
      for (Vertex w : in_[ball[i]]) visit(w);
    }
    std::vector<graph::Edge> edges;
    for (Vertex x : ball) {
      for (Vertex y : g_.out(x)) {
        if (seen.count(y)) edges.emplace_back(x, y);
      }
    }
    auto local = graph::SearchGraph::from_edges(edges, ball);
    return graph::has_copy_using_edge(local, h_, u, v);
  }

  graph::Digraph& g_;
  const graph::PatternGraph& h_;
  std::vector<std::vector<Vertex>> in_;
};

void check_pattern_fits(std::size_t d_out, const graph::PatternGraph& h) {
  require(h.max_out_degree() <= d_out,
          "pattern out-degree exceeds d_out");
}

}  // namespace

std::size_t planted_copy_count(std::size_t n, std::size_t d_out,
                               const Rational& eps) {
  require(eps > 0 && eps < 1, "eps must lie in (0, 1)");
  return ceil_to_size(Rational(2) * eps * Rational(static_cast<unsigned long>(n)) *
                      Rational(static_cast<unsigned long>(d_out)));
}

PlantedInstance gen_far_h_instance(std::size_t n, std::size_t d_out,
                                   const graph::PatternGraph& h,
                                   const Rational& eps, std::uint64_t seed,
                                   std::size_t filler_attempts) {
  check_pattern_fits(d_out, h);
  const std::size_t m = planted_copy_count(n, d_out, eps);
  require(m * h.h() <= n, "infeasible: " + std::to_string(m) + " copies of a " +
                              std::to_string(h.h()) + "-vertex pattern need " +
                              std::to_string(m * h.h()) + " > n = " +
                              std::to_string(n) + " vertices");
  Rng rng(derive_seed(seed, 0x706c616e74ULL));
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::shuffle(perm.begin(), perm.end(), rng);

  PlantedInstance out;
  out.graph = graph::Digraph(n, d_out);
  out.copies.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    graph::Embedding image(h.h());
    for (Vertex p = 0; p < h.h(); ++p) image[p] = perm[c * h.h() + p];
    for (auto [p, q] : h.edges()) out.graph.add_edge(image[p], image[q]);
    out.copies.push_back(std::move(image));
  }
  std::vector<Vertex> pool(perm.begin() + static_cast<std::ptrdiff_t>(m * h.h()),
                           perm.end());
  std::sort(pool.begin(), pool.end());
  FillerBuilder(out.graph, h)
      .run(pool, filler_attempts == kDefaultFiller ? pool.size() : filler_attempts,
           rng);

  out.certificate.epsilon = eps;
  out.certificate.witness_kind = WitnessKind::PlantedCopies;
  out.certificate.planted_copies = m;
  out.certificate.required_modifications =
      eps * Rational(static_cast<unsigned long>(n)) *
      Rational(static_cast<unsigned long>(d_out));
  return out;
}

graph::Digraph gen_h_free_instance(std::size_t n, std::size_t d_out,
                                   const graph::PatternGraph& h,
                                   std::uint64_t seed,
                                   std::size_t filler_attempts) {
  check_pattern_fits(d_out, h);
  Rng rng(derive_seed(seed, 0x66726565ULL));
  graph::Digraph g(n, d_out);
  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  FillerBuilder(g, h).run(pool, filler_attempts == kDefaultFiller ? n : filler_attempts,
                          rng);
  return g;
}

std::size_t collision_group_count(std::size_t n, const Rational& eps) {
  require(eps > 0 && eps < 1, "eps must lie in (0, 1)");
  return ceil_to_size(Rational(2) * eps * Rational(static_cast<unsigned long>(n)));
}

IntegerSequence gen_collision_sequence(std::size_t n, std::uint64_t r,
                                       std::size_t k, CollisionMode mode,
                                       const Rational& eps, std::uint64_t seed) {
  require(k >= 2, "k must be at least 2");
  require(r >= 1, "r must be at least 1");
  Rng rng(derive_seed(seed, 0x636f6c6cULL));
  std::vector<std::uint64_t> labels(r);
  std::iota(labels.begin(), labels.end(), std::uint64_t{1});
  std::shuffle(labels.begin(), labels.end(), rng);

  std::size_t groups = 0;
  if (mode == CollisionMode::Far) {
    groups = collision_group_count(n, eps);
    require(groups * k <= n, "infeasible: " + std::to_string(groups) +
                                 " groups of size " + std::to_string(k) +
                                 " exceed n");
    require(groups <= r, "infeasible: more groups than values");
  }
  const std::size_t rest = n - groups * k;
  require((r - groups) * (k - 1) >= rest,
          "infeasible: r*(k-1) too small for a collision-free remainder");

  IntegerSequence s;
  s.r = r;
  s.values.reserve(n);
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t j = 0; j < k; ++j) s.values.push_back(labels[g]);
  }
  std::vector<std::uint64_t> pool;
  pool.reserve((r - groups) * (k - 1));
  for (std::size_t v = groups; v < r; ++v) {
    for (std::size_t j = 0; j + 1 < k; ++j) pool.push_back(labels[v]);
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  s.values.insert(s.values.end(), pool.begin(),
                  pool.begin() + static_cast<std::ptrdiff_t>(rest));
  std::shuffle(s.values.begin(), s.values.end(), rng);
  return s;
}

graph::Digraph reduce_collision_to_star(const IntegerSequence& s,
                                        std::size_t d) {
  require(d >= 1, "d must be at least 1");
  require(s.min_value >= 1, "reduction needs values in [1, r]");
  s.validate();
  graph::Digraph g(s.n() + s.r, d);
  for (std::size_t i = 0; i < s.n(); ++i) {
    g.add_edge(static_cast<Vertex>(i),
               static_cast<Vertex>(s.n() + s.values[i] - 1));
  }
  return g;
}

Rational reduced_epsilon(const Rational& eps, std::size_t n, std::uint64_t r,
                         std::size_t d) {
  return eps * Rational(static_cast<unsigned long>(n)) /
         Rational(static_cast<unsigned long>(d * (n + r)));
}

CollisionStarSource::CollisionStarSource(const IntegerSequence& s, std::size_t d)
    : s_(&s), n_(s.n()), r_(s.r), d_(d) {
  require(d >= 1, "d must be at least 1");
  require(s.min_value >= 1, "reduction needs values in [1, r]");
  s.validate();
}

std::optional<Vertex> CollisionStarSource::neighbor(Vertex v,
                                                    std::size_t slot) const {
  if (v < n_ && slot == 0) {
    return static_cast<Vertex>(n_ + s_->values[v] - 1);
  }
  return std::nullopt;
}

DummyReduction reduce_dummy_collision(const IntegerSequence& s) {
  require(s.min_value == 0, "dummy reduction expects values in [0, r]");
  s.validate();
  DummyReduction out;
  out.sequence.r = s.r + (s.n() + 1) / 2;
  out.sequence.min_value = 1;
  out.sequence.values.reserve(s.n());
  for (std::size_t idx = 0; idx < s.n(); ++idx) {
    const std::uint64_t i = idx + 1;
    const std::uint64_t v = s.values[idx];
    out.sequence.values.push_back(v > 0 ? v : s.r + (i + 1) / 2);
  }
  return out;
}

}  // namespace qpt::instances
