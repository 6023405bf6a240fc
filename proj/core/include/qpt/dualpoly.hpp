#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qpt/rational.hpp"

namespace qpt::dualpoly {

/// Symmetric real function on {-1,1}^n stored by Hamming weight, where the
/// weight of x is the number of -1 entries. level_mass(t) is the total over
/// the level (omega(t)); point_value(t) = omega(t) / C(n, t).
class SymmetricWeightFunction {
 public:
  SymmetricWeightFunction() = default;
  SymmetricWeightFunction(std::size_t n, std::vector<Rational> level_mass);

  std::size_t n() const noexcept { return n_; }
  const Rational& level_mass(std::size_t t) const { return mass_.at(t); }
  const std::vector<Rational>& levels() const noexcept { return mass_; }
  Rational point_value(std::size_t t) const;
  /// x has entries in {-1, +1}.
  Rational value(std::span<const int> x) const;
  std::vector<std::size_t> support() const;

  Rational l1() const;
  Rational sum() const;
  Rational positive_mass() const;
  Rational negative_mass() const;

  SymmetricWeightFunction scaled(const Rational& factor) const;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> mass_;
};

struct OmegaConstruction {
  SymmetricWeightFunction omega;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t T = 0;
  std::size_t c = 0;  // 2k * ceil(n^(1/k))
  std::size_t m = 0;  // floor(sqrt(T / c))
  std::vector<std::size_t> S;  // {1..k} union {c i^2 : 0 <= i <= m}, sorted
  Rational raw_l1;  // l1 of the closed form before normalization
};

/// omega(t) = ((-1)^(t+T-m+1) / T!) * C(T, t) * prod_{r in [T]_0 \ S} (t - r)
/// for t <= T, zero above T, divided by its own l1 norm. T = 0 means T = n.
OmegaConstruction build_omega(std::size_t n, std::size_t k, std::size_t T = 0);

/// Checks l1 = 1 and returns the function for use as psi.
SymmetricWeightFunction build_psi(const SymmetricWeightFunction& omega);

/// K_s(w; n) = sum_j (-1)^j C(w, j) C(n - w, s - j).
BigInt krawtchouk(std::size_t s, std::size_t w, std::size_t n);

/// sum_x psi(x) chi_A(x) for |A| = s equals this residual / C(n, s).
Rational orthogonality_residual(const SymmetricWeightFunction& psi,
                                std::size_t s);
bool phd_check(const SymmetricWeightFunction& psi, std::size_t delta);
/// Largest delta with phd_check true (n + 1 for the zero function).
std::size_t phd_measure(const SymmetricWeightFunction& psi);

struct DecayReport {
  bool sum_zero = false;
  bool l1_one = false;
  bool bound_holds = false;
  /// False only if 200-bit directed rounding could not separate the sides.
  bool certified = true;
  /// Level with the largest |omega(t)| * t^2 * e^(beta t) / alpha.
  std::size_t tightest_level = 0;
  double tightest_ratio = 0.0;
};

/// (alpha, beta)-decay: sum omega = 0, sum |omega| = 1 and
/// |omega(t)| <= alpha e^(-beta t) / t^2 for all t >= 1.
DecayReport decay_report(const SymmetricWeightFunction& omega, double alpha,
                         double beta);
bool decay_check(const SymmetricWeightFunction& omega, double alpha, double beta);
/// Largest beta (rounded down) for which the pointwise bound holds.
double max_decay_beta(const SymmetricWeightFunction& omega, double alpha);

struct FalseMass {
  Rational mass_plus;   // omega(t) > 0 at t >= k
  Rational mass_minus;  // |omega(t)| for omega(t) < 0 at t < k
};
FalseMass false_mass(const SymmetricWeightFunction& psi, std::size_t k);

/// Dual witness supported on the two constant points of {-1,1}^r.
struct PointMassDual {
  std::size_t r = 0;
  Rational at_plus{1, 2};    // value at 1^r
  Rational at_minus{-1, 2};  // value at (-1)^r

  static PointMassDual standard(std::size_t r);
  Rational value(std::span<const int> z) const;
  Rational l1() const;
  Rational sum() const;
  SymmetricWeightFunction as_symmetric() const;
};

/// 2^R phi(sgn psi(x_1), ..., sgn psi(x_R)) prod |psi(x_i)|, x of length N*R.
Rational block_compose_eval(const PointMassDual& phi,
                            const SymmetricWeightFunction& psi,
                            std::span<const int> x);

/// Masses of psi split by its sign and by THR^k.
struct BlockClassTable {
  /// mass[s][t]: s = 0 for psi > 0, 1 for psi < 0; t = 0 for THR = +1
  /// (weight < k), 1 for THR = -1.
  std::array<std::array<Rational, 2>, 2> mass;
  std::size_t k = 0;

  static BlockClassTable build(const SymmetricWeightFunction& psi, std::size_t k);
  Rational total() const;
  Rational sign_total(int sign) const;
  /// Pr_lambda[THR disagrees with sgn psi | sgn psi = sign].
  Rational flip_probability(int sign) const;
};

/// l1 of phi * psi from the class table:
/// 2^R sum_z |phi(z)| prod_i P(sgn = z_i). Requires l1(phi) = l1(psi) = 1 and
/// zero sums.
Rational block_l1(const PointMassDual& phi, const SymmetricWeightFunction& psi);

using PointPredicate = std::function<bool(std::span<const int>)>;
using BooleanFunction = std::function<int(std::span<const int>)>;

struct IdentitySides {
  Rational lhs;
  Rational rhs;
  bool holds() const { return lhs == rhs; }
};
struct BlockIdentityResult {
  IdentitySides item1;
  IdentitySides item2;
};

/// Both sides of the two block-composition identities, by enumeration of
/// {-1,1}^(N R). Requires N * R <= 20.
BlockIdentityResult block_identity_check(const PointMassDual& phi,
                                         const SymmetricWeightFunction& psi,
                                         const PointPredicate& S,
                                         const BooleanFunction& g,
                                         const BooleanFunction& h);

struct CorrelationResult {
  Rational exact;
  Rational p_plus;   // Pr[THR = -1 | psi > 0]
  Rational p_minus;  // Pr[THR = +1 | psi < 0]
  std::size_t gap_threshold = 0;  // ceil(gamma R)
  double bound16 = 0.0;
  double bound48 = 0.0;
};

/// sum_{x in D} (phi * psi)(x) f(x) - sum_{x not in D} |(phi * psi)(x)| for
/// f = GapOR_R^gamma o THR_N^k, computed exactly from the class table.
CorrelationResult correlation(const PointMassDual& phi,
                              const SymmetricWeightFunction& psi, std::size_t k,
                              const Rational& gamma);

/// 1 - R/(denominator N) - e^(-R/4^(k-1)) - e^(-2R (1/4^(k-1) - gamma)^2).
double bound_formula(std::size_t N, std::size_t R, std::size_t k, double gamma,
                     double denominator = 16.0);

/// Correlation left after moving to a function within l1 distance `budget`.
Rational closeness_floor(const Rational& correlation, const Rational& budget);

enum class DomainClass { InD, OutD, OverCap };
const char* to_string(DomainClass c);

/// Classification from per-block Hamming weights. Over-cap when the total
/// weight exceeds `cap`; otherwise in D iff the number of blocks with
/// weight >= k is 0 or at least gamma R.
DomainClass domain_membership(std::span<const std::size_t> block_weights,
                              std::size_t k, const Rational& gamma,
                              std::size_t cap);
DomainClass domain_membership(std::span<const int> x, std::size_t N,
                              std::size_t R, std::size_t k,
                              const Rational& gamma, std::size_t cap);

// Exhaustive helpers. Points of {-1,1}^M are encoded as bit masks, bit i set
// iff x_i = -1.

/// Full table of phi * psi over {-1,1}^(N R). Requires N * R <= 22.
std::vector<Rational> compose_table(const PointMassDual& phi,
                                    const SymmetricWeightFunction& psi);
/// Full table of a symmetric function on {-1,1}^n. Requires n <= 22.
std::vector<Rational> symmetric_table(const SymmetricWeightFunction& f);
/// Smallest |A| with sum_x F(x) chi_A(x) != 0 (dims + 1 if F = 0), via a fast
/// Walsh-Hadamard transform over the rationals.
std::size_t phd_exhaustive(std::span<const Rational> table, std::size_t dims);
/// Correlation by enumeration over {-1,1}^(N R).
Rational exhaustive_correlation(const PointMassDual& phi,
                                const SymmetricWeightFunction& psi,
                                std::size_t k, const Rational& gamma);

}  // namespace qpt::dualpoly
