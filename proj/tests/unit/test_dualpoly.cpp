#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <optional>
#include <set>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qpt/common.hpp"
#include "qpt/dualpoly.hpp"

using namespace qpt;
using namespace qpt::dualpoly;

namespace {

// --- independent reference computations -----------------------------------

BigInt factorial(unsigned long n) {
  BigInt f = 1;
  for (unsigned long i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt choose(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// omega by the literal closed form with factorials, normalized by its l1.
std::vector<Rational> omega_direct(std::size_t n, std::size_t k, std::size_t T) {
  std::size_t root = 1;
  while (std::pow(static_cast<double>(root), static_cast<double>(k)) < static_cast<double>(n)) ++root;
  const std::size_t c = 2 * k * root;
  std::size_t m = 0;
  while (c * (m + 1) * (m + 1) <= T) ++m;
  std::vector<bool> in_s(T + 1, false);
  for (std::size_t i = 1; i <= k; ++i) in_s[i] = true;
  for (std::size_t i = 0; i <= m; ++i) in_s[c * i * i] = true;
  std::vector<Rational> w(n + 1, Rational(0));
  Rational l1 = 0;
  for (std::size_t t = 0; t <= T; ++t) {
    BigInt prod = 1;
    for (std::size_t r = 0; r <= T; ++r)
      if (!in_s[r]) prod *= BigInt(static_cast<long>(t) - static_cast<long>(r));
    const long sign_exp = static_cast<long>(t + T) - static_cast<long>(m) + 1;
    Rational v(prod * choose(T, t), factorial(T));
    v.canonicalize();
    if (((sign_exp % 2) + 2) % 2 == 1) v = -v;
    w[t] = v;
    l1 += abs(v);
  }
  for (auto& v : w) v /= l1;
  return w;
}

// sum_x F(x) chi_A(x) over {-1,1}^dims with A = first |A| coordinates, for a
// table indexed by bit masks (bit set = -1). Smallest nonzero degree, by
// brute force over every subset A.
std::size_t phd_brute(const std::vector<Rational>& table, std::size_t dims) {
  for (std::size_t s = 0; s <= dims; ++s) {
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << dims); ++a) {
      if (static_cast<std::size_t>(std::popcount(a)) != s) continue;
      Rational total = 0;
      for (std::uint64_t x = 0; x < table.size(); ++x)
        total += (std::popcount(a & x) % 2 ? -table[x] : table[x]);
      if (total != 0) return s;
    }
  }
  return dims + 1;
}

std::vector<int> point(std::uint64_t mask, std::size_t dims) {
  std::vector<int> x(dims);
  for (std::size_t i = 0; i < dims; ++i) x[i] = (mask >> i) & 1 ? -1 : 1;
  return x;
}

int sgn(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// (phi * psi)(x) straight from the definition, with psi per-point values.
Rational compose_direct(const PointMassDual& phi, const SymmetricWeightFunction& psi,
                        std::uint64_t mask) {
  const std::size_t N = psi.n(), R = phi.r;
  std::vector<int> z(R);
  Rational prod = 1;
  for (std::size_t i = 0; i < R; ++i) {
    const auto w = static_cast<std::size_t>(std::popcount((mask >> (i * N)) & ((1ULL << N) - 1)));
    const Rational v = psi.level_mass(w) / Rational(choose(N, w));
    z[i] = sgn(v);
    if (z[i] == 0) return 0;
    prod *= abs(v);
  }
  return Rational(BigInt(1) << static_cast<mp_bitcnt_t>(R)) * phi.value(z) * prod;
}

SymmetricWeightFunction psi_of(std::size_t n, std::size_t k) {
  return build_psi(build_omega(n, k).omega);
}

}  // namespace

TEST(Omega, VanishesOffSupportAndSumsToZero) {
  for (std::size_t k : {2, 3})
    for (std::size_t n : {8, 16, 40, 100}) {
      auto o = build_omega(n, k);
      std::set<std::size_t> S(o.S.begin(), o.S.end());
      for (std::size_t t = 0; t <= n; ++t)
        if (!S.count(t)) EXPECT_EQ(o.omega.level_mass(t), 0);
      EXPECT_EQ(o.omega.sum(), 0);
      EXPECT_EQ(o.omega.l1(), 1);
    }
}

TEST(Omega, MatchesFactorialEvaluator) {
  for (auto [n, k, T] : std::vector<std::array<std::size_t, 3>>{
           {8, 2, 8}, {16, 2, 16}, {30, 3, 30}, {50, 2, 40}, {64, 3, 64}, {12, 4, 12}}) {
    auto o = build_omega(n, k, T);
    EXPECT_EQ(o.omega.levels(), omega_direct(n, k, T)) << n << " " << k << " " << T;
  }
  EXPECT_THROW(build_omega(8, 9), InputError);
  EXPECT_THROW(build_omega(8, 2, 9), InputError);
}

TEST(Psi, PointValuesUnderEnumeration) {
  auto psi = psi_of(8, 2);
  auto table = symmetric_table(psi);
  Rational l1 = 0, pos = 0, neg = 0;
  for (std::uint64_t x = 0; x < 256; ++x) {
    const auto w = static_cast<std::size_t>(std::popcount(x));
    EXPECT_EQ(table[x], psi.level_mass(w) / Rational(choose(8, w)));
    EXPECT_EQ(psi.value(point(x, 8)), table[x]);
    l1 += abs(table[x]);
    (table[x] > 0 ? pos : neg) += abs(table[x]);
  }
  EXPECT_EQ(l1, 1);
  EXPECT_EQ(pos, Rational(1, 2));
  EXPECT_EQ(neg, Rational(1, 2));
}

TEST(Psi, SignMassesHalfAcrossGrid) {
  for (std::size_t k : {2, 3})
    for (std::size_t n = 8; n <= 64; n += 7) {
      auto psi = psi_of(n, k);
      EXPECT_EQ(psi.positive_mass(), Rational(1, 2));
      EXPECT_EQ(psi.negative_mass(), Rational(1, 2));
    }
}

TEST(Krawtchouk, Examples) {
  for (std::size_t n : {1, 5, 9})
    for (std::size_t w = 0; w <= n; ++w) {
      EXPECT_EQ(krawtchouk(0, w, n), 1);
      EXPECT_EQ(krawtchouk(1, w, n), static_cast<long>(n) - 2 * static_cast<long>(w));
    }
  EXPECT_EQ(krawtchouk(2, 3, 4), 0);
}

TEST(Krawtchouk, EqualsParitySumOverLevel) {
  const std::size_t n = 7;
  for (std::size_t w = 0; w <= n; ++w) {
    const std::uint64_t a = (1ULL << w) - 1;
    for (std::size_t s = 0; s <= n; ++s) {
      long total = 0;
      for (std::uint64_t x = 0; x < (1ULL << n); ++x)
        if (static_cast<std::size_t>(std::popcount(x)) == s) total += std::popcount(a & x) % 2 ? -1 : 1;
      EXPECT_EQ(krawtchouk(s, w, n), total);
    }
  }
}

TEST(Phd, PointMassDualHasPhdOne) {
  auto phi = PointMassDual::standard(3).as_symmetric();
  EXPECT_EQ(phd_measure(phi), 1u);
  EXPECT_TRUE(phd_check(phi, 1));
  EXPECT_FALSE(phd_check(phi, 2));
}

TEST(Phd, MeasuredEqualsBruteForceParities) {
  for (std::size_t k : {2, 3})
    for (std::size_t n = 3; n <= 12; ++n) {
      auto psi = psi_of(n, k);
      const auto measured = phd_measure(psi);
      EXPECT_GE(measured, 1u);
      EXPECT_EQ(measured, phd_brute(symmetric_table(psi), n)) << "n=" << n << " k=" << k;
      EXPECT_EQ(measured, phd_exhaustive(symmetric_table(psi), n));
    }
}

TEST(Phd, OrthogonalityResidualVanishesBelowPhd) {
  auto psi = psi_of(20, 2);
  const auto d = phd_measure(psi);
  for (std::size_t s = 0; s < d; ++s) EXPECT_EQ(orthogonality_residual(psi, s), 0);
  EXPECT_NE(orthogonality_residual(psi, d), 0);
}

TEST(Phd, CompositionAtLeastProduct) {
  for (std::size_t N : {2, 3, 4})
    for (std::size_t R : {1, 2, 3}) {
      auto psi = psi_of(N, 2);
      auto phi = PointMassDual::standard(R);
      auto table = compose_table(phi, psi);
      const auto composed = phd_brute(table, N * R);
      EXPECT_GE(composed, phd_measure(phi.as_symmetric()) * phd_measure(psi));
    }
}

namespace {

// e^(-beta t) at 200 bits; decay holds iff |omega(t)| t^2 <= alpha e^(-beta t).
bool decay_reference(const SymmetricWeightFunction& omega, double alpha, double beta) {
  using Big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;
  if (omega.sum() != 0 || omega.l1() != 1) return false;
  for (std::size_t t = 1; t <= omega.n(); ++t) {
    const Rational q = abs(omega.level_mass(t));
    Big lhs = Big(q.get_num().get_str()) / Big(q.get_den().get_str());
    lhs *= Big(t) * Big(t);
    const Big rhs = Big(alpha) * boost::multiprecision::exp(-Big(beta) * Big(t));
    if (lhs > rhs) return false;
  }
  return true;
}

}  // namespace

TEST(Decay, AgreesWith200BitReference) {
  auto omega = build_omega(16, 2).omega;
  const double alpha = 16.0;
  const double best = max_decay_beta(omega, alpha);
  EXPECT_GT(best, 0.0);
  for (double beta : {0.0, 0.01, best * 0.5, best, best * 1.001, best * 1.5, 1.0, 3.0})
    EXPECT_EQ(decay_check(omega, alpha, beta), decay_reference(omega, alpha, beta)) << beta;
}

TEST(Decay, ReportedBetaPerGrid) {
  for (std::size_t k : {2, 3})
    for (std::size_t n : {16, 64}) {
      auto omega = build_omega(n, k).omega;
      const double alpha = std::pow(2.0 * k, static_cast<double>(k));
      const double beta = max_decay_beta(omega, alpha);
      EXPECT_GT(beta, 0.0);
      EXPECT_TRUE(decay_check(omega, alpha, beta));
      auto report = decay_report(omega, alpha, beta);
      EXPECT_TRUE(report.certified);
    }
}

TEST(Decay, RejectsWrongNorm) {
  auto omega = build_omega(16, 2).omega.scaled(Rational(1, 2));
  EXPECT_FALSE(decay_check(omega, 1e9, 0.0));
}

TEST(FalseMass, SignBalanceAndEnumeration) {
  auto psi = psi_of(8, 2);
  auto fm = false_mass(psi, 2);
  Rational true_pos = 0;
  for (std::size_t t = 0; t < 2; ++t)
    if (psi.level_mass(t) > 0) true_pos += psi.level_mass(t);
  EXPECT_EQ(fm.mass_plus + true_pos, Rational(1, 2));
  // enumeration over the 2^8 points
  Rational plus = 0, minus = 0;
  auto table = symmetric_table(psi);
  for (std::uint64_t x = 0; x < 256; ++x) {
    const auto w = std::popcount(x);
    if (w >= 2 && table[x] > 0) plus += table[x];
    if (w < 2 && table[x] < 0) minus -= table[x];
  }
  EXPECT_EQ(fm.mass_plus, plus);
  EXPECT_EQ(fm.mass_minus, minus);
}

TEST(Compose, MixedSignsVanishAndPositiveBlocks) {
  const std::size_t N = 3, R = 2;
  auto psi = psi_of(N, 2);
  auto phi = PointMassDual::standard(R);
  std::optional<std::uint64_t> pos_level, neg_level;
  for (std::size_t w = 0; w <= N; ++w) {
    if (psi.level_mass(w) > 0 && !pos_level) pos_level = w;
    if (psi.level_mass(w) < 0 && !neg_level) neg_level = w;
  }
  ASSERT_TRUE(pos_level && neg_level);
  const std::uint64_t pos_block = (1ULL << *pos_level) - 1, neg_block = (1ULL << *neg_level) - 1;
  EXPECT_EQ(block_compose_eval(phi, psi, point(pos_block | (neg_block << N), N * R)), 0);
  const Rational v = psi.point_value(*pos_level);
  EXPECT_EQ(block_compose_eval(phi, psi, point(pos_block | (pos_block << N), N * R)),
            Rational(4) * Rational(1, 2) * v * v);
}

TEST(Compose, FullTableMatchesDefinition) {
  auto psi = psi_of(3, 2);
  auto phi = PointMassDual::standard(2);
  auto table = compose_table(phi, psi);
  ASSERT_EQ(table.size(), 64u);
  Rational l1 = 0;
  for (std::uint64_t x = 0; x < 64; ++x) {
    EXPECT_EQ(table[x], compose_direct(phi, psi, x));
    EXPECT_EQ(block_compose_eval(phi, psi, point(x, 6)), table[x]);
    l1 += abs(table[x]);
  }
  EXPECT_EQ(l1, 1);
  EXPECT_EQ(block_l1(phi, psi), 1);
}

TEST(Compose, BlockL1OneAndPreconditions) {
  for (std::size_t R : {1, 4, 9})
    EXPECT_EQ(block_l1(PointMassDual::standard(R), psi_of(20, 2)), 1);
  EXPECT_THROW(block_l1(PointMassDual::standard(2), psi_of(20, 2).scaled(Rational(1, 2))),
               InputError);
  auto phi = PointMassDual::standard(5);
  EXPECT_EQ(phi.l1(), 1);
  EXPECT_EQ(phi.sum(), 0);
}

TEST(BlockIdentity, EmptyFullAndRandomSets) {
  auto psi = psi_of(3, 2);
  auto phi = PointMassDual::standard(2);
  const BooleanFunction g_or = [](std::span<const int> z) {
    for (int v : z)
      if (v < 0) return -1;
    return 1;
  };
  const BooleanFunction thr = [](std::span<const int> x) {
    int w = 0;
    for (int v : x) w += v < 0;
    return w >= 2 ? -1 : 1;
  };
  auto none = block_identity_check(phi, psi, [](std::span<const int>) { return false; }, g_or, thr);
  EXPECT_EQ(none.item1.lhs, 0);
  EXPECT_EQ(none.item1.rhs, 0);
  auto all = block_identity_check(phi, psi, [](std::span<const int>) { return true; }, g_or, thr);
  EXPECT_EQ(all.item1.lhs, 1);
  EXPECT_TRUE(all.item1.holds());
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const std::uint64_t bits = rng();
    auto r = block_identity_check(
        phi, psi,
        [bits](std::span<const int> x) {
          std::uint64_t m = 0;
          for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] < 0) m |= 1ULL << i;
          return ((bits >> m) & 1U) != 0;
        },
        g_or, thr);
    EXPECT_TRUE(r.item1.holds());
    EXPECT_TRUE(r.item2.holds());
  }
}

namespace {

Rational correlation_reference(const PointMassDual& phi, const SymmetricWeightFunction& psi,
                               std::size_t k, const Rational& gamma) {
  const std::size_t N = psi.n(), R = phi.r;
  Rational total = 0;
  for (std::uint64_t x = 0; x < (1ULL << (N * R)); ++x) {
    const Rational v = compose_direct(phi, psi, x);
    std::size_t J = 0;
    for (std::size_t i = 0; i < R; ++i)
      J += static_cast<std::size_t>(std::popcount((x >> (i * N)) & ((1ULL << N) - 1))) >= k;
    const bool in_d = J == 0 || Rational(static_cast<unsigned long>(J)) >= gamma * Rational(static_cast<unsigned long>(R));
    if (in_d) total += J == 0 ? v : Rational(-v);
    else total -= abs(v);
  }
  return total;
}

}  // namespace

TEST(Correlation, MatchesEnumeration) {
  for (auto [N, R, k] : std::vector<std::array<std::size_t, 3>>{{3, 2, 2}, {4, 3, 2}, {4, 4, 3}, {3, 5, 2}}) {
    const Rational gamma(1, 2 * (1u << (2 * (k - 1))));
    auto psi = psi_of(N, k);
    auto phi = PointMassDual::standard(R);
    const auto r = correlation(phi, psi, k, gamma);
    EXPECT_EQ(r.exact, correlation_reference(phi, psi, k, gamma));
    EXPECT_EQ(r.exact, exhaustive_correlation(phi, psi, k, gamma));
  }
}

TEST(Correlation, GammaRange) {
  auto psi = psi_of(8, 2);
  EXPECT_THROW(correlation(PointMassDual::standard(2), psi, 2, Rational(0)), InputError);
  EXPECT_THROW(correlation(PointMassDual::standard(2), psi, 2, Rational(1, 4)), InputError);
}

TEST(Correlation, PerfectPredictorGivesOne) {
  // psi > 0 only below k and < 0 only at or above k: no false mass
  SymmetricWeightFunction psi(4, {Rational(1, 2), 0, 0, 0, Rational(-1, 2)});
  auto r = correlation(PointMassDual::standard(2), psi, 2, Rational(1, 8));
  EXPECT_EQ(r.exact, 1);
}

TEST(Correlation, DominatesClosedFormBoundWhenCoupled) {
  // N = ceil(20 (2k)^(k/2)) R: 80 R for k = 2, 294 R for k = 3
  for (auto [k, R] : std::vector<std::array<std::size_t, 2>>{{2, 8}, {2, 12}, {3, 40}}) {
    const std::size_t N = (k == 2 ? 80 : 294) * R;
    const Rational gamma(1, 2 * (1u << (2 * (k - 1))) * (k == 2 ? 80 : 294));
    auto r = correlation(PointMassDual::standard(R), psi_of(N, k), k, gamma);
    ASSERT_GT(r.bound16, 0.0);
    EXPECT_GE(r.exact.get_d(), r.bound16) << N << " " << R << " " << k;
    EXPECT_GE(r.exact, Rational(9, 10));
    EXPECT_LE(r.exact, 1);
  }
}

TEST(Correlation, BoundFailsOffCouplingAtLargeR) {
  // N = 4R: false positive mass per block is about 3.3e-4, above 1/(16N),
  // so R blocks lose more than R/(16N).
  auto r = correlation(PointMassDual::standard(64), psi_of(256, 2), 2, Rational(1, 32));
  EXPECT_NEAR(r.exact.get_d(), 0.97881, 1e-5);
  EXPECT_LT(r.exact.get_d(), r.bound16);
  EXPECT_NEAR(r.p_plus.get_d(), 3.346e-4, 1e-7);
}

TEST(DomainMembership, Examples) {
  const Rational gamma(1, 2);
  std::vector<int> ones(12, 1);
  EXPECT_EQ(domain_membership(ones, 3, 4, 2, gamma, 12), DomainClass::InD);
  std::vector<std::size_t> one_block{2, 0, 0, 0};
  EXPECT_EQ(domain_membership(one_block, 2, gamma, 12), DomainClass::OutD);
  std::vector<std::size_t> promise{2, 2, 0, 0};  // ceil(gamma R) = 2 blocks
  EXPECT_EQ(domain_membership(promise, 2, gamma, 12), DomainClass::InD);
  std::vector<std::size_t> heavy{3, 3, 3, 3};
  EXPECT_EQ(domain_membership(heavy, 2, gamma, 10), DomainClass::OverCap);
  EXPECT_STREQ(to_string(DomainClass::OutD), "out-D");
}
