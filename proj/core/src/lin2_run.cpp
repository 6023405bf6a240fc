#include "qpt/harness.hpp"
#include "qpt/lin2.hpp"

namespace qpt::harness {

using nlohmann::json;

bool Lin2GameReport::all_passed() const {
  for (const auto& c : checks)
    if (c.asserted && !c.passed) return false;
  return true;
}

json Lin2GameReport::to_json() const {
  json arr = json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"asserted", c.asserted},
                   {"detail", c.detail}});
  return {{"all_passed", all_passed()}, {"checks", arr}};
}

Lin2GameReport run_lin2_game(const ExperimentConfig& config) {
  config.validate();
  const auto& lc = config.lin2;
  require(lc.n >= 3 && lc.n <= 16, "lin2 game: n must lie in [3, 16]");
  require(lc.no_n >= 3 && lc.no_n <= 24, "lin2 game: no-instance n must lie in [3, 24]");
  require(lc.seeds >= 1, "lin2 game: need at least one seed");
  require(lc.alpha >= 0 && lc.alpha < Rational(1, 2), "lin2 game: alpha must lie in [0, 1/2)");
  Lin2GameReport report;

  auto hard = lin2::search_hard_matrix(lc.n, lc.c, lc.delta, derive_seed(config.seed, 0x11),
                                       lc.max_attempts);
  const std::size_t s = hard.subset_size;
  report.checks.push_back({"hard matrix found", hard.found, true,
                           {{"n", lc.n}, {"c", lc.c}, {"delta", rational_to_json(lc.delta)},
                            {"subset_size", s}, {"attempts", hard.attempts},
                            {"exhaustive", hard.exhaustive}}});
  if (!hard.found) return report;
  const auto& a = hard.system;

  {
    CertCheck c{"every yes-instance satisfied by its witness", true, true, {}};
    std::size_t checked = 0;
    for (std::size_t i = 0; i < lc.seeds; ++i) {
      const auto yes = lin2::sample_yes(a, derive_seed(config.seed, 0x22, i));
      const bool ok = yes.system.unsatisfied(yes.z) == 0 && lin2::min_unsat_fraction(yes.system) == 0;
      c.passed = c.passed && ok;
      ++checked;
    }
    c.detail = {{"instances", checked}};
    report.checks.push_back(std::move(c));
  }

  {
    const Rational threshold = Rational(1, 2) - lc.alpha;
    CertCheck c{"no-instances far from satisfiable in >= 2/3 of seeds", false, true, {}};
    std::size_t far = 0, built = 0;
    json fractions = json::array();
    for (std::size_t i = 0; i < lc.seeds; ++i) {
      Rng rng(derive_seed(config.seed, 0x33, i));
      auto base = lin2::random_3sparse_system(lc.no_n, lc.no_c, rng);
      if (!base) continue;
      ++built;
      const auto no = lin2::sample_no(*base, derive_seed(config.seed, 0x44, i));
      const auto frac = lin2::min_unsat_fraction(no);
      far += frac >= threshold;
      fractions.push_back(frac.get_d());
    }
    c.passed = built == lc.seeds && 3 * far >= 2 * lc.seeds;
    c.detail = {{"n", lc.no_n}, {"c", lc.no_c}, {"threshold", rational_to_json(threshold)},
                {"far", far}, {"seeds", lc.seeds}, {"min_unsat_fractions", fractions}};
    report.checks.push_back(std::move(c));
  }

  {
    const auto outcomes = lin2::yes_outcomes(a);
    const auto kw = lin2::kwise_check_exact(outcomes, a.rows.size(), s, 1u << 20);
    report.checks.push_back({"y = Az exactly uniform on every subset of size <= floor(delta n)",
                             kw.uniform, true,
                             {{"subset_size", s}, {"subsets", kw.subsets_checked},
                              {"outcomes", outcomes.size()}}});
  }

  {
    CertCheck c{"adaptive distinguishing advantage <= 1/10 for q <= floor(delta n)/3", true, true,
                {}};
    json rows = json::array();
    for (std::size_t q = 1; q <= s / 3; ++q) {
      const auto g = lin2::distinguishing_advantage(a, q);
      c.passed = c.passed && g.advantage <= Rational(1, 10);
      rows.push_back({{"q", q}, {"advantage", rational_to_json(g.advantage)}, {"states", g.states}});
    }
    if (rows.empty()) c.passed = false;
    c.detail = rows;
    report.checks.push_back(std::move(c));
  }

  {
    // Reading every entry separates the distributions by 1 - 2^(rank - rows).
    const std::size_t m = a.rows.size();
    const auto g = lin2::distinguishing_advantage(a, m);
    const auto rank = lin2::gf2_rank(a.matrix());
    Rational expected(1);
    Rational gap(1);
    mpq_div_2exp(gap.get_mpq_t(), gap.get_mpq_t(), static_cast<mp_bitcnt_t>(m - rank));
    expected -= gap;
    report.checks.push_back({"full-read advantage equals total variation 1 - 2^(rank - rows)",
                             g.advantage == expected, true,
                             {{"rows", m}, {"rank", rank},
                              {"advantage", rational_to_json(g.advantage)},
                              {"expected", rational_to_json(expected)}}});
  }
  return report;
}

}  // namespace qpt::harness
