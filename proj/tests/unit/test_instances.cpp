#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "oracles.hpp"
#include "qpt/instances.hpp"

using namespace qpt;
using namespace qpt::instances;
using graph::PatternGraph;

TEST(FarInstance, SingleCopyWhenMIsOne) {
  const auto h = PatternGraph::star(2);
  auto inst = gen_far_h_instance(3, 1, h, Rational(1, 10), 1);
  EXPECT_EQ(inst.certificate.planted_copies, 1u);
  EXPECT_EQ(inst.graph.edge_count(), 2u);
  EXPECT_TRUE(graph::verify_embedding(inst.graph, h, inst.copies[0]));
}

TEST(FarInstance, InfeasibleParametersThrow) {
  const auto h = PatternGraph::star(3);
  EXPECT_THROW(gen_far_h_instance(16, 1, h, Rational(1, 2), 1), InputError);
  EXPECT_THROW(gen_far_h_instance(16, 1, PatternGraph(3, {{0, 1}, {0, 2}}), Rational(1, 20), 1),
               InputError);
}

TEST(FarInstance, CopiesDisjointAndCountLowerBound) {
  for (std::size_t k : {2, 3}) {
    const auto h = PatternGraph::star(k);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Rational eps(1, 20);
      auto inst = gen_far_h_instance(1024, 1, h, eps, seed);
      std::set<Vertex> seen;
      for (const auto& c : inst.copies) {
        EXPECT_TRUE(graph::verify_embedding(inst.graph, h, c));
        for (auto v : c) EXPECT_TRUE(seen.insert(v).second);
      }
      const std::size_t lower = static_cast<std::size_t>(
          std::ceil(eps.get_d() * 1024.0 / static_cast<double>(h.h())));
      EXPECT_GE(graph::count_source_disjoint_copies(inst.graph, h), lower);
    }
  }
}

TEST(FarInstance, ExhaustiveDeletionDistanceAtTinyN) {
  const auto h = PatternGraph::star(2);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 9 + seed % 6;  // 9..14
    const Rational eps(1, n);
    auto inst = gen_far_h_instance(n, 1, h, eps, seed);
    const double required = Rational(eps * Rational(static_cast<unsigned long>(n))).get_d();
    const auto dist = oracle::min_deletions_to_free(inst.graph, h, 8);
    EXPECT_GE(static_cast<double>(dist), required) << "seed " << seed;
  }
}

TEST(FreeInstance, FillerNeverCreatesCopies) {
  for (std::size_t k : {2, 3}) {
    const auto h = PatternGraph::star(k);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto g = gen_h_free_instance(12 + seed, 1 + seed % 2, h, seed);
      EXPECT_FALSE(oracle::contains_copy(g, h)) << "seed " << seed;
      EXPECT_GT(g.edge_count(), 0u);
    }
    // filler on the pool of a far instance, n <= 30
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto inst = gen_far_h_instance(30, 1, h, Rational(1, 30), seed);
      std::set<Vertex> planted;
      for (const auto& c : inst.copies) planted.insert(c.begin(), c.end());
      graph::Digraph filler(30, 1);
      for (auto [u, v] : inst.graph.edges())
        if (!planted.count(u)) filler.add_edge(u, v);
      EXPECT_TRUE(graph::is_h_free(filler, h));
    }
  }
}

TEST(Generators, DeterministicGivenSeed) {
  const auto h = PatternGraph::star(3);
  EXPECT_EQ(gen_far_h_instance(500, 2, h, Rational(1, 20), 7).graph,
            gen_far_h_instance(500, 2, h, Rational(1, 20), 7).graph);
  EXPECT_EQ(gen_h_free_instance(500, 2, h, 7), gen_h_free_instance(500, 2, h, 7));
  EXPECT_EQ(gen_collision_sequence(100, 100, 3, CollisionMode::Far, Rational(1, 20), 3),
            gen_collision_sequence(100, 100, 3, CollisionMode::Far, Rational(1, 20), 3));
}

TEST(CollisionSequence, FreeMode) {
  auto s = gen_collision_sequence(4, 4, 2, CollisionMode::Free, Rational(1, 2), 1);
  EXPECT_EQ(max_occurrence(s), 1u);
  EXPECT_THROW(gen_collision_sequence(10, 4, 2, CollisionMode::Free, Rational(1, 2), 1),
               InputError);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto t = gen_collision_sequence(50, 20, 4, CollisionMode::Free, Rational(1, 2), seed);
    EXPECT_LT(max_occurrence(t), 4u);
  }
}

namespace {

// Fewest positions to overwrite so no value reaches k occurrences, by
// exhaustive search over the set of overwritten positions.
std::size_t brute_collision_distance(const IntegerSequence& s, std::size_t k) {
  const std::size_t n = s.n();
  std::size_t best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto changed = static_cast<std::size_t>(std::popcount(mask));
    if (changed >= best) continue;
    std::map<std::uint64_t, std::size_t> count;
    for (std::size_t i = 0; i < n; ++i)
      if (!((mask >> i) & 1U)) ++count[s.values[i]];
    bool ok = true;
    std::size_t room = 0;
    for (std::uint64_t v = 1; v <= s.r; ++v) {
      const std::size_t c = count.count(v) ? count[v] : 0;
      if (c >= k) ok = false;
      else room += k - 1 - c;
    }
    if (ok && room >= changed) best = changed;
  }
  return best;
}

}  // namespace

TEST(CollisionSequence, FarModeGroupsAndExhaustiveDistance) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t k = 2 + seed % 2;
    const std::size_t n = 10 + seed % 7;  // <= 16
    const Rational eps(1, 8);
    auto s = gen_collision_sequence(n, n, k, CollisionMode::Far, eps, seed);
    std::map<std::uint64_t, std::size_t> count;
    for (auto v : s.values) ++count[v];
    std::size_t groups = 0;
    for (auto [v, c] : count) groups += c / k;
    EXPECT_GE(groups, collision_group_count(n, eps));
    const auto dist = brute_collision_distance(s, k);
    EXPECT_EQ(dist, collision_distance(s, k));
    EXPECT_GE(static_cast<double>(dist), Rational(eps * Rational(static_cast<unsigned long>(n))).get_d());
  }
}

TEST(CollisionSequence, TextAndJsonRoundTrip) {
  auto s = gen_collision_sequence(40, 30, 3, CollisionMode::Far, Rational(1, 10), 5);
  std::stringstream text;
  write_text(text, s);
  EXPECT_EQ(read_text(text), s);
  EXPECT_EQ(sequence_from_json(to_json(s)), s);
}

TEST(StarReduction, DirectConstruction) {
  IntegerSequence s{2, 1, {1, 1, 2}};
  auto g = reduce_collision_to_star(s);
  EXPECT_EQ(g.n(), 5u);
  EXPECT_TRUE(g.has_edge(0, 3));
  EXPECT_TRUE(g.has_edge(1, 3));
  EXPECT_TRUE(g.has_edge(2, 4));
  EXPECT_TRUE(oracle::contains_copy(g, PatternGraph::star(2)));
  IntegerSequence distinct{5, 1, {3, 1, 5, 2}};
  auto g2 = reduce_collision_to_star(distinct);
  EXPECT_FALSE(oracle::contains_copy(g2, PatternGraph::star(2)));
  EXPECT_LE(g2.max_out_degree(), 1u);
}

TEST(StarReduction, CollisionIffStarOnRandomSequences) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng() % 11;
    const std::uint64_t r = 1 + rng() % 6;
    IntegerSequence s{r, 1, {}};
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(1 + rng() % r);
    auto g = reduce_collision_to_star(s);
    EXPECT_LE(g.max_out_degree(), 1u);
    for (std::size_t k : {2, 3}) {
      std::map<std::uint64_t, std::size_t> occ;
      for (auto v : s.values) ++occ[v];
      bool collision = false;
      for (auto [v, c] : occ) collision = collision || c >= k;
      bool star = false;
      for (Vertex v = 0; v < g.n(); ++v) {
        std::size_t indeg = 0;
        for (Vertex u = 0; u < g.n(); ++u) indeg += g.has_edge(u, v);
        star = star || indeg >= k;
      }
      EXPECT_EQ(collision, star);
      EXPECT_EQ(has_k_collision(s, k), !graph::is_h_free(g, PatternGraph::star(k)));
    }
  }
}

TEST(StarReduction, LazySourceMatchesMaterialized) {
  auto s = gen_collision_sequence(30, 40, 2, CollisionMode::Far, Rational(1, 10), 2);
  CollisionStarSource src(s);
  EXPECT_EQ(graph::materialize(src).edges(), reduce_collision_to_star(s).edges());
  EXPECT_EQ(reduced_epsilon(Rational(1, 10), 30, 40, 1), Rational(3, 70));
}

TEST(DummyReduction, FormulaAndNoZeros) {
  IntegerSequence zeros{3, 0, {0, 0, 0, 0}};
  auto out = reduce_dummy_collision(zeros);
  EXPECT_EQ(out.sequence.values, (std::vector<std::uint64_t>{4, 4, 5, 5}));
  EXPECT_EQ(out.sequence.r, 5u);
  IntegerSequence plain{4, 0, {1, 2, 4, 4}};
  EXPECT_EQ(reduce_dummy_collision(plain).sequence.values, plain.values);
}

TEST(DummyReduction, PreservesThreeCollisionsAndPairsOnly) {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 12;
    const std::uint64_t r = 1 + rng() % 5;
    IntegerSequence s{r, 0, {}};
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(rng() % (r + 1));
    auto out = reduce_dummy_collision(s).sequence;
    EXPECT_EQ(k_collision_values(s, 3, true), k_collision_values(out, 3));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (s.values[i] == 0 && s.values[j] == 0 && i / 2 != j / 2)
          EXPECT_NE(out.values[i], out.values[j]);
  }
}
