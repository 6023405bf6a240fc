#include "qpt/grover.hpp"

#include <cmath>
#include <random>

#include "qpt/rational.hpp"

namespace qpt::testers {

void GroverModel::validate() const {
  require(p_succ > 0.0 && p_succ <= 1.0, "p_succ must lie in (0, 1]");
  require(c_g >= 1.0, "c_g must be at least 1");
}

std::uint64_t grover_charge(const GroverModel& model, std::uint64_t domain,
                            double t0, std::uint64_t cost) {
  require(t0 >= 1.0 && t0 <= static_cast<double>(domain),
          "t0 must lie in [1, N]");
  const double raw = model.c_g * static_cast<double>(cost) *
                     std::sqrt(static_cast<double>(domain) / t0);
  return static_cast<std::uint64_t>(std::ceil(raw));
}

GroverOutcome grover_sample_marked(const GroverModel& model, Rng& rng,
                                   std::uint64_t domain, double t0,
                                   std::uint64_t cost,
                                   std::span<const std::uint64_t> marked) {
  model.validate();
  GroverOutcome out;
  out.charged = grover_charge(model, domain, t0, cost);
  if (marked.empty()) return out;
  const double fraction =
      std::min(1.0, static_cast<double>(marked.size()) / t0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < model.p_succ * fraction) {
    std::uniform_int_distribution<std::size_t> pick(0, marked.size() - 1);
    out.element = marked[pick(rng)];
  }
  return out;
}

GroverOutcome grover_sample(const GroverModel& model, Rng& rng,
                            std::uint64_t domain, double t0, std::uint64_t cost,
                            const std::function<bool(std::uint64_t)>& predicate) {
  std::vector<std::uint64_t> marked;
  for (std::uint64_t x = 0; x < domain; ++x) {
    if (predicate(x)) marked.push_back(x);
  }
  return grover_sample_marked(model, rng, domain, t0, cost, marked);
}

GroverOutcome grover_sample(const GroverModel& model, Rng& rng,
                            graph::OracleView& view, std::uint64_t domain,
                            double t0, std::uint64_t cost,
                            const std::function<bool(std::uint64_t)>& predicate) {
  auto out = grover_sample(model, rng, domain, t0, cost, predicate);
  view.charge_grover(out.charged);
  return out;
}

QuerySchedule make_schedule(std::size_t k, std::uint64_t n) {
  require(k >= 2 && k <= 16, "schedule needs 2 <= k <= 16");
  require(n >= 2, "schedule needs n >= 2");
  QuerySchedule s;
  s.k = k;
  s.n = n;
  const unsigned long denom = (1UL << k) - 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const unsigned long numer = (1UL << (k - i)) - 1;
    BigInt power;
    mpz_pow_ui(power.get_mpz_t(), BigInt(static_cast<unsigned long>(n)).get_mpz_t(),
               numer);
    s.t.push_back(ceil_root(power, denom).get_ui());
  }
  return s;
}

}  // namespace qpt::testers
