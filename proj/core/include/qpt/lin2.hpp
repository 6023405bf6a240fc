#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "qpt/common.hpp"
#include "qpt/rational.hpp"

namespace qpt::lin2 {

/// Dense GF(2) matrix, rows packed into 64-bit words.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols);
  static GF2Matrix from_supports(std::size_t cols,
                                 const std::vector<std::vector<std::size_t>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return words_; }
  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value);
  std::span<const std::uint64_t> row(std::size_t r) const;
  std::size_t row_weight(std::size_t r) const;
  /// row[dst] ^= row[src]
  void add_row(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);
  GF2Matrix select_rows(std::span<const std::size_t> rows) const;
  /// A x over GF(2); x has cols() entries in {0, 1}.
  std::vector<std::uint8_t> multiply(std::span<const std::uint8_t> x) const;

  friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Row rank by Gaussian elimination on a copy.
std::size_t gf2_rank(const GF2Matrix& m);

struct SubsetIndependence {
  bool all_independent = false;
  std::size_t subset_size = 0;
  /// Subsets (exhaustive mode: partial sums) examined.
  std::uint64_t checked = 0;
  bool exhaustive = false;
};

/// Whether every set of `s` rows is linearly independent, i.e. no nonempty
/// set of at most s rows sums to zero. Exhaustive for s <= 14; otherwise
/// `samples` random s-subsets are rank-checked.
SubsetIndependence check_subset_independence(const GF2Matrix& m, std::size_t s,
                                             std::uint64_t seed = 0,
                                             std::size_t samples = 2000);

using Row = std::array<std::uint32_t, 3>;

/// Sparse GF(2) system: each row names 3 distinct variables; rhs[i] is the
/// right-hand side of row i.
struct Lin2System {
  std::size_t n = 0;
  std::size_t c = 0;
  std::vector<Row> rows;
  std::vector<std::uint8_t> rhs;

  void validate() const;
  GF2Matrix matrix() const;
  /// Rows whose equation x_i + x_j + x_l = rhs fails under x.
  std::size_t unsatisfied(std::span<const std::uint8_t> x) const;

  friend bool operator==(const Lin2System&, const Lin2System&) = default;
};

// Text format: header "n c", then one "i j l rhs" line per row.
void write_text(std::ostream& out, const Lin2System& s);
Lin2System read_text(std::istream& in);

/// Configuration-model sample: c*n rows, every column used exactly 3c times
/// (strict) or at most 3c times (relaxed). nullopt when repair of repeated
/// indices inside a row fails.
std::optional<Lin2System> random_3sparse_system(std::size_t n, std::size_t c,
                                                Rng& rng, bool strict = true);

struct HardMatrixResult {
  bool found = false;
  Lin2System system;  // rhs all zero
  std::size_t subset_size = 0;  // floor(delta n)
  std::size_t attempts = 0;
  bool exhaustive = false;
};

/// Rejection sampling for a matrix whose every floor(delta n)-row subset is
/// independent. `found` is false when max_attempts is exhausted.
HardMatrixResult search_hard_matrix(std::size_t n, std::size_t c,
                                    const Rational& delta, std::uint64_t seed,
                                    std::size_t max_attempts = 1000,
                                    bool strict = true);

struct YesInstance {
  Lin2System system;
  std::vector<std::uint8_t> z;  // satisfying assignment
};

/// y = A z for uniform z.
YesInstance sample_yes(const Lin2System& a, std::uint64_t seed);
/// y uniform over {0,1}^(rows).
Lin2System sample_no(const Lin2System& a, std::uint64_t seed);

/// min over x in {0,1}^n of unsatisfied rows / rows. Requires n <= 24.
Rational min_unsat_fraction(const Lin2System& s);
/// Best fraction over `samples` random assignments: an upper bound on the
/// minimum, for n beyond exhaustive reach.
Rational sampled_unsat_upper_bound(const Lin2System& s, std::size_t samples,
                                   std::uint64_t seed);

struct KWiseReport {
  bool uniform = true;
  std::size_t subsets_checked = 0;
  bool exact = true;
  std::vector<std::size_t> first_failure;
  double smallest_p_value = 1.0;
};

/// Outcomes are equally likely (an enumerated seed space). Checks exact
/// uniformity of every restriction to a subset of size <= k; beyond
/// subset_budget subsets, random k-subsets are drawn.
KWiseReport kwise_check_exact(std::span<const std::vector<std::uint8_t>> outcomes,
                              std::size_t m, std::size_t k,
                              std::size_t subset_budget, std::uint64_t seed = 0);

/// Sampling version: chi-squared test per subset at level alpha, Bonferroni
/// corrected over the subsets checked.
KWiseReport kwise_check_sampled(
    const std::function<std::vector<std::uint8_t>(Rng&)>& sampler, std::size_t m,
    std::size_t k, std::size_t subset_budget, std::size_t samples,
    std::uint64_t seed, double alpha = 0.01);

/// All 2^n equally likely right-hand sides A z. Requires n <= 20.
std::vector<std::vector<std::uint8_t>> yes_outcomes(const Lin2System& a);

struct GameResult {
  /// Best adaptive q-query advantage |Pr_yes[accept] - Pr_no[accept]|.
  Rational advantage;
  std::size_t queries = 0;
  std::size_t states = 0;
};

/// Exact optimum over all deterministic adaptive decision trees of depth q
/// that read entries of y, by recursion over transcripts.
GameResult distinguishing_advantage(const Lin2System& a, std::size_t q);

/// Interface for the 3-colorability reduction. Always throws NotImplemented.
[[noreturn]] void reduce_to_3coloring(const Lin2System& s);

}  // namespace qpt::lin2
