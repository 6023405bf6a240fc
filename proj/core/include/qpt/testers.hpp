#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpt/grover.hpp"
#include "qpt/matcher.hpp"
#include "qpt/oracle.hpp"
#include "qpt/pattern.hpp"
#include "qpt/rational.hpp"
#include "qpt/sequence.hpp"

namespace qpt::testers {

enum class Verdict { Accept, Reject };

struct TesterVerdict {
  Verdict verdict = Verdict::Accept;
  /// Present iff verdict == Reject. image[p] for every pattern vertex p.
  std::optional<graph::Embedding> witness;
  /// Collision tester only: the k indices that share a value.
  std::optional<std::vector<std::uint64_t>> collision_indices;
  graph::QueryLedger ledger;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const TesterVerdict& v);
const char* to_string(Verdict v);

struct QuantumTesterConfig {
  GroverModel model;
  /// Grover calls per stage are capped at repetitions * t_i (final stage:
  /// repetitions).
  std::size_t repetitions = 4;
  /// t0 for the first Grover stage is promise_fraction * t_1: only a fraction
  /// of the uniformly sampled vertices sit in a source component of a copy.
  /// Later stages use t0 = t_{i-1}, since every stored partial solution is
  /// known to extend.
  double promise_fraction = 0.25;
  /// Charge the largest BFS actually observed instead of d_out^h per
  /// predicate evaluation.
  bool charge_actual_bfs = false;
  /// Below this eps, the stage-1 sample, the first t0 and the final-stage
  /// call count grow by ceil(reference_eps / eps). The schedule constants
  /// were calibrated at this eps.
  double reference_eps = 0.05;
  std::uint64_t seed = 0;
};

struct ClassicalTesterConfig {
  /// Sample size is ceil(sample_constant * n^(1 - 1/k)).
  double sample_constant = 5.0;
  std::uint64_t seed = 0;
};

/// Staged search for k source components of one copy of h. Rejects only on
/// a witness that was re-verified against the raw graph.
TesterVerdict test_h_freeness_quantum(graph::OracleView& view,
                                      const graph::PatternGraph& h,
                                      const Rational& eps,
                                      const QuantumTesterConfig& config);

/// Uniform sample, depth-h BFS from every sampled vertex, reject iff the
/// explored union holds a copy whose every source component contains a
/// sampled vertex.
TesterVerdict test_h_freeness_classical(graph::OracleView& view,
                                        const graph::PatternGraph& h,
                                        const Rational& eps,
                                        const ClassicalTesterConfig& config);

std::uint64_t classical_sample_size(std::uint64_t n, std::size_t k,
                                    double sample_constant);

/// Runs the quantum tester with H = k-star on the lazy star reduction of s.
/// Every graph query reads at most one sequence entry, so the ledger bounds
/// the sequence queries.
TesterVerdict test_collision_freeness(const instances::IntegerSequence& s,
                                      std::size_t k, const Rational& eps,
                                      const QuantumTesterConfig& config);

}  // namespace qpt::testers
