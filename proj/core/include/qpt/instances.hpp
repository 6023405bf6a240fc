#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "qpt/digraph.hpp"
#include "qpt/matcher.hpp"
#include "qpt/oracle.hpp"
#include "qpt/pattern.hpp"
#include "qpt/rational.hpp"
#include "qpt/sequence.hpp"

namespace qpt::instances {

enum class WitnessKind { PlantedCopies, BruteForceDistance };

struct FarnessCertificate {
  Rational epsilon;
  WitnessKind witness_kind = WitnessKind::PlantedCopies;
  /// Number of vertex-disjoint planted copies. Each needs at least one edge
  /// deletion, so this is also a lower bound on the distance to H-freeness.
  std::size_t planted_copies = 0;
  /// eps * n * d_out, the number of modifications "eps-far" asks for.
  Rational required_modifications;
};

struct PlantedInstance {
  graph::Digraph graph;
  FarnessCertificate certificate;
  std::vector<graph::Embedding> copies;
};

inline constexpr std::size_t kDefaultFiller = std::numeric_limits<std::size_t>::max();

/// ceil(2 * eps * n * d_out): twice the number of disjoint copies needed so
/// that eps*n*d_out deletions cannot remove all of them.
std::size_t planted_copy_count(std::size_t n, std::size_t d_out,
                               const Rational& eps);

/// Plants planted_copy_count(n, d_out, eps) vertex-disjoint copies of h on
/// random vertices and adds random filler edges among the other vertices
/// that never complete a copy of h. `filler_attempts` defaults to the number
/// of filler vertices.
PlantedInstance gen_far_h_instance(std::size_t n, std::size_t d_out,
                                   const graph::PatternGraph& h,
                                   const Rational& eps, std::uint64_t seed,
                                   std::size_t filler_attempts = kDefaultFiller);

/// Random H-free graph built by the same filtered filler process.
graph::Digraph gen_h_free_instance(std::size_t n, std::size_t d_out,
                                   const graph::PatternGraph& h,
                                   std::uint64_t seed,
                                   std::size_t filler_attempts = kDefaultFiller);

enum class CollisionMode { Free, Far };

/// Free: no value occurs k times (requires r*(k-1) >= n).
/// Far: g = ceil(eps*n) disjoint k-groups on g distinct values, everything
/// else k-collision-free on the remaining values. Changing fewer than g
/// entries leaves some group intact, so the output is eps-far.
IntegerSequence gen_collision_sequence(std::size_t n, std::uint64_t r,
                                       std::size_t k, CollisionMode mode,
                                       const Rational& eps, std::uint64_t seed);

/// Number of k-groups the far mode plants: ceil(2 eps n), twice the count
/// that eps-farness needs.
std::size_t collision_group_count(std::size_t n, const Rational& eps);

/// Outer vertex i (0-based, i < n) points to inner vertex n + s_i - 1.
graph::Digraph reduce_collision_to_star(const IntegerSequence& s,
                                        std::size_t d = 1);

/// Distance parameter of the reduced instance: eps*n / (d*(n+r)).
Rational reduced_epsilon(const Rational& eps, std::size_t n, std::uint64_t r,
                         std::size_t d);

/// Lazy form of reduce_collision_to_star: each graph query reads one entry of
/// the sequence. Inner vertices have no out-edges.
class CollisionStarSource final : public graph::NeighborSource {
 public:
  explicit CollisionStarSource(const IntegerSequence& s, std::size_t d = 1);
  std::size_t n() const override { return n_ + r_; }
  std::size_t d_out() const override { return d_; }
  std::optional<Vertex> neighbor(Vertex v, std::size_t slot) const override;
  const IntegerSequence& sequence() const noexcept { return *s_; }

 private:
  const IntegerSequence* s_;
  std::size_t n_;
  std::size_t r_;
  std::size_t d_;
};

struct DummyReduction {
  IntegerSequence sequence;
  /// The transformation only preserves k-collision-freeness for k >= 3.
  std::size_t valid_for_k_at_least = 3;
};

/// T_i(0) = r + ceil(i/2) for 1-based i, positive values unchanged.
DummyReduction reduce_dummy_collision(const IntegerSequence& s);

}  // namespace qpt::instances
