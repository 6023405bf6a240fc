#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "qpt/lin2.hpp"

namespace qpt::lin2 {

namespace {

std::uint64_t subsets_up_to(std::size_t m, std::size_t k, std::uint64_t cap) {
  std::uint64_t total = 0;
  std::uint64_t choose = 1;
  for (std::size_t j = 1; j <= k && j <= m; ++j) {
    choose = choose * (m - j + 1) / j;
    total += choose;
    if (total > cap) return cap + 1;
  }
  return total;
}

// All subsets of size 1..k in lexicographic order when that fits the budget,
// otherwise `budget` random k-subsets (uniformity there implies it for every
// smaller subset they contain).
std::vector<std::vector<std::size_t>> choose_subsets(std::size_t m, std::size_t k,
                                                     std::size_t budget, std::uint64_t seed) {
  k = std::min(k, m);
  std::vector<std::vector<std::size_t>> out;
  if (subsets_up_to(m, k, budget) <= budget) {
    for (std::size_t size = 1; size <= k; ++size) {
      std::vector<std::size_t> cur(size);
      std::iota(cur.begin(), cur.end(), std::size_t{0});
      while (true) {
        out.push_back(cur);
        std::size_t i = size;
        while (i > 0 && cur[i - 1] == m - size + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < size; ++j) cur[j] = cur[j - 1] + 1;
      }
    }
    return out;
  }
  Rng rng(seed);
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t t = 0; t < budget; ++t) {
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, m - 1);
      std::swap(idx[i], idx[pick(rng)]);
    }
    std::vector<std::size_t> s(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
  }
  return out;
}

std::size_t pattern_of(const std::vector<std::uint8_t>& y, const std::vector<std::size_t>& subset) {
  std::size_t p = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) p |= static_cast<std::size_t>(y[subset[i]] & 1U) << i;
  return p;
}

}  // namespace

KWiseReport kwise_check_exact(std::span<const std::vector<std::uint8_t>> outcomes,
                              std::size_t m, std::size_t k, std::size_t subset_budget,
                              std::uint64_t seed) {
  require(!outcomes.empty(), "kwise_check_exact: empty outcome space");
  require(k >= 1 && k <= 20, "kwise_check_exact: k must lie in [1, 20]");
  for (const auto& y : outcomes) require(y.size() == m, "kwise_check_exact: outcome length mismatch");
  KWiseReport report;
  report.exact = true;
  for (const auto& subset : choose_subsets(m, k, subset_budget, seed)) {
    ++report.subsets_checked;
    const std::size_t cells = std::size_t{1} << subset.size();
    if (outcomes.size() % cells != 0) {
      report.uniform = false;
    } else {
      std::vector<std::size_t> counts(cells, 0);
      for (const auto& y : outcomes) ++counts[pattern_of(y, subset)];
      const std::size_t want = outcomes.size() / cells;
      report.uniform = std::all_of(counts.begin(), counts.end(),
                                   [&](std::size_t c) { return c == want; });
    }
    if (!report.uniform) {
      report.first_failure = subset;
      report.smallest_p_value = 0.0;
      break;
    }
  }
  return report;
}

KWiseReport kwise_check_sampled(
    const std::function<std::vector<std::uint8_t>(Rng&)>& sampler, std::size_t m,
    std::size_t k, std::size_t subset_budget, std::size_t samples, std::uint64_t seed,
    double alpha) {
  require(k >= 1 && k <= 16, "kwise_check_sampled: k must lie in [1, 16]");
  require(alpha > 0 && alpha < 1, "kwise_check_sampled: alpha must lie in (0, 1)");
  Rng rng(seed);
  std::vector<std::vector<std::uint8_t>> draws;
  draws.reserve(samples);
  for (std::size_t t = 0; t < samples; ++t) {
    draws.push_back(sampler(rng));
    require(draws.back().size() == m, "kwise_check_sampled: sample length mismatch");
  }
  const auto subsets = choose_subsets(m, k, subset_budget, derive_seed(seed, 1));
  const double level = alpha / static_cast<double>(std::max<std::size_t>(1, subsets.size()));

  KWiseReport report;
  report.exact = false;
  for (const auto& subset : subsets) {
    ++report.subsets_checked;
    const std::size_t cells = std::size_t{1} << subset.size();
    require(static_cast<double>(samples) >= 5.0 * static_cast<double>(cells),
            "kwise_check_sampled: need at least 5 expected samples per cell");
    std::vector<double> counts(cells, 0.0);
    for (const auto& y : draws) counts[pattern_of(y, subset)] += 1.0;
    const double expect = static_cast<double>(samples) / static_cast<double>(cells);
    double stat = 0.0;
    for (double c : counts) stat += (c - expect) * (c - expect) / expect;
    boost::math::chi_squared dist(static_cast<double>(cells - 1));
    const double p = boost::math::cdf(boost::math::complement(dist, stat));
    report.smallest_p_value = std::min(report.smallest_p_value, p);
    if (p < level && report.uniform) {
      report.uniform = false;
      report.first_failure = subset;
    }
  }
  return report;
}

std::vector<std::vector<std::uint8_t>> yes_outcomes(const Lin2System& a) {
  a.validate();
  require(a.n <= 20, "yes_outcomes: n must be at most 20");
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(std::size_t{1} << a.n);
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << a.n); ++z) {
    std::vector<std::uint8_t> y(a.rows.size());
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
      const auto& [i, j, l] = a.rows[r];
      y[r] = static_cast<std::uint8_t>(((z >> i) ^ (z >> j) ^ (z >> l)) & 1U);
    }
    out.push_back(std::move(y));
  }
  return out;
}

}  // namespace qpt::lin2
