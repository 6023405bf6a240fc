#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qpt/common.hpp"
#include "qpt/oracle.hpp"

namespace qpt::testers {

/// Idealized amplitude-amplification search. Nothing quantum is simulated:
/// the model returns a uniform marked element with a fixed success
/// probability and charges a deterministic query count.
struct GroverModel {
  double c_g = 3.0;
  double p_succ = 0.9;

  void validate() const;
};

struct GroverOutcome {
  std::optional<std::uint64_t> element;
  std::uint64_t charged = 0;
};

/// ceil(c_g * cost * sqrt(domain / t0)).
std::uint64_t grover_charge(const GroverModel& model, std::uint64_t domain,
                            double t0, std::uint64_t cost);

/// Success probability p_succ * min(1, |marked| / t0); on success the result
/// is uniform over `marked`. `marked` must hold distinct domain elements.
GroverOutcome grover_sample_marked(const GroverModel& model, Rng& rng,
                                   std::uint64_t domain, double t0,
                                   std::uint64_t cost,
                                   std::span<const std::uint64_t> marked);

/// Evaluates `predicate` on every element of [0, domain) outside the ledger
/// and delegates to grover_sample_marked.
GroverOutcome grover_sample(const GroverModel& model, Rng& rng,
                            std::uint64_t domain, double t0, std::uint64_t cost,
                            const std::function<bool(std::uint64_t)>& predicate);

/// Same, charging the outcome to `view`'s ledger.
GroverOutcome grover_sample(const GroverModel& model, Rng& rng,
                            graph::OracleView& view, std::uint64_t domain,
                            double t0, std::uint64_t cost,
                            const std::function<bool(std::uint64_t)>& predicate);

/// t_i = ceil(n^((2^(k-i) - 1) / (2^k - 1))) for i = 1..k; t_k = 1.
struct QuerySchedule {
  std::size_t k = 0;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> t;  // t[0] = t_1, ..., t[k-1] = t_k

  std::uint64_t at(std::size_t i) const { return t.at(i - 1); }
};

QuerySchedule make_schedule(std::size_t k, std::uint64_t n);

}  // namespace qpt::testers
