#include "qpt/dualpoly.hpp"

#include <bit>
#include <cmath>

#include "qpt/common.hpp"

namespace qpt::dualpoly {

namespace {

int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

Rational pow_q(const Rational& base, std::size_t e) {
  Rational r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

Rational two_pow(std::size_t e) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, e);
  return Rational(p);
}

std::size_t block_weight(std::uint64_t mask, std::size_t block, std::size_t N) {
  const std::uint64_t bits = (mask >> (block * N)) & ((std::uint64_t{1} << N) - 1);
  return static_cast<std::size_t>(std::popcount(bits));
}

std::vector<int> to_point(std::uint64_t mask, std::size_t dims) {
  std::vector<int> x(dims);
  for (std::size_t i = 0; i < dims; ++i) x[i] = (mask >> i) & 1 ? -1 : 1;
  return x;
}

void check_gamma(const Rational& gamma, std::size_t k) {
  Rational limit(1, 1);
  for (std::size_t i = 1; i < k; ++i) limit /= 4;
  require(gamma > 0 && gamma < limit, "gamma must lie in (0, 1/4^(k-1))");
}

std::size_t ceil_times(const Rational& gamma, std::size_t R) {
  Rational prod = gamma * Rational(static_cast<unsigned long>(R));
  BigInt c;
  mpz_cdiv_q(c.get_mpz_t(), prod.get_num_mpz_t(), prod.get_den_mpz_t());
  return c.get_ui();
}

// Value of phi * psi at a mask; weights of each block come from the mask.
Rational compose_at(const PointMassDual& phi, const SymmetricWeightFunction& psi,
                    std::uint64_t mask) {
  const std::size_t N = psi.n();
  Rational product = two_pow(phi.r);
  int common = 0;
  for (std::size_t i = 0; i < phi.r; ++i) {
    Rational v = psi.point_value(block_weight(mask, i, N));
    int s = sign_of(v);
    if (s == 0) return 0;
    if (i == 0) {
      common = s;
    } else if (s != common) {
      return 0;
    }
    product *= abs(v);
  }
  return product * (common > 0 ? phi.at_plus : phi.at_minus);
}

}  // namespace

Rational block_compose_eval(const PointMassDual& phi,
                            const SymmetricWeightFunction& psi,
                            std::span<const int> x) {
  const std::size_t N = psi.n();
  require(x.size() == N * phi.r, "point must have N * R coordinates");
  Rational product = two_pow(phi.r);
  std::vector<int> signs(phi.r);
  for (std::size_t i = 0; i < phi.r; ++i) {
    Rational v = psi.value(x.subspan(i * N, N));
    if (v == 0) return 0;
    signs[i] = sign_of(v);
    product *= abs(v);
  }
  return product * phi.value(signs);
}

BlockClassTable BlockClassTable::build(const SymmetricWeightFunction& psi,
                                       std::size_t k) {
  BlockClassTable table;
  table.k = k;
  for (std::size_t t = 0; t <= psi.n(); ++t) {
    const auto& w = psi.level_mass(t);
    if (w == 0) continue;
    const int s = w > 0 ? 0 : 1;
    const int thr = t >= k ? 1 : 0;
    table.mass[s][thr] += abs(w);
  }
  return table;
}

Rational BlockClassTable::total() const {
  return mass[0][0] + mass[0][1] + mass[1][0] + mass[1][1];
}

Rational BlockClassTable::sign_total(int sign) const {
  const int s = sign > 0 ? 0 : 1;
  return mass[s][0] + mass[s][1];
}

Rational BlockClassTable::flip_probability(int sign) const {
  const Rational denom = sign_total(sign);
  require(denom != 0, "no mass with this sign");
  // psi > 0 predicts THR = +1, so a flip is THR = -1, and conversely.
  return sign > 0 ? mass[0][1] / denom : mass[1][0] / denom;
}

Rational block_l1(const PointMassDual& phi, const SymmetricWeightFunction& psi) {
  require(phi.l1() == 1 && phi.sum() == 0, "phi needs l1 = 1 and zero sum");
  require(psi.l1() == 1 && psi.sum() == 0, "psi needs l1 = 1 and zero sum");
  // Only z = 1^R and z = (-1)^R carry phi mass, and the blocks are
  // independent under lambda, so
  //   l1 = 2^R (|phi(1^R)| P+^R + |phi(-1^R)| P-^R)
  // with P+ / P- the positive / negative masses of psi (each 1/2 here).
  const Rational scale = two_pow(phi.r);
  return scale * (abs(phi.at_plus) * pow_q(psi.positive_mass(), phi.r) +
                  abs(phi.at_minus) * pow_q(psi.negative_mass(), phi.r));
}

BlockIdentityResult block_identity_check(const PointMassDual& phi,
                                         const SymmetricWeightFunction& psi,
                                         const PointPredicate& S,
                                         const BooleanFunction& g,
                                         const BooleanFunction& h) {
  const std::size_t N = psi.n();
  const std::size_t R = phi.r;
  const std::size_t dims = N * R;
  require(dims <= 20, "enumeration limited to N * R <= 20");
  require(psi.l1() == 1 && psi.sum() == 0, "psi needs l1 = 1 and zero sum");

  BlockIdentityResult out;
  // Per-block data on {-1,1}^N: psi value, sign, h value.
  const std::size_t block_points = std::size_t{1} << N;
  std::vector<Rational> psi_at(block_points);
  std::vector<int> h_at(block_points);
  for (std::uint64_t b = 0; b < block_points; ++b) {
    psi_at[b] = psi.point_value(static_cast<std::size_t>(std::popcount(b)));
    h_at[b] = h(to_point(b, N));
  }

  // mu^{b}(-1) = 2 sum_{x in D_b} |psi(x)|, D_b = {sgn psi = b, h != b}.
  Rational flip_plus = 0;
  Rational flip_minus = 0;
  for (std::uint64_t b = 0; b < block_points; ++b) {
    const int s = sign_of(psi_at[b]);
    if (s != 0 && h_at[b] != s) (s > 0 ? flip_plus : flip_minus) += 2 * abs(psi_at[b]);
  }

  // Conditional probabilities for item 1 need Pr[x in S, signs = z] and
  // Pr[signs = z] under lambda^R.
  const std::size_t sign_patterns = std::size_t{1} << R;
  std::vector<Rational> joint(sign_patterns);
  std::vector<Rational> marginal(sign_patterns);
  const std::uint64_t block_mask = (std::uint64_t{1} << N) - 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dims); ++mask) {
    const auto x = to_point(mask, dims);
    Rational weight = 1;
    std::uint64_t zmask = 0;
    std::vector<int> hv(R);
    bool zero = false;
    for (std::size_t i = 0; i < R; ++i) {
      const std::uint64_t b = (mask >> (i * N)) & block_mask;
      const int s = sign_of(psi_at[b]);
      if (s == 0) {
        zero = true;
        break;
      }
      weight *= abs(psi_at[b]);
      if (s < 0) zmask |= std::uint64_t{1} << i;
      hv[i] = h_at[b];
    }
    const Rational value = zero ? Rational(0) : compose_at(phi, psi, mask);
    const bool in_S = S(x);
    if (in_S) out.item1.lhs += abs(value);
    if (value != 0) out.item2.lhs += value * g(hv);
    if (zero) continue;
    marginal[zmask] += weight;
    if (in_S) joint[zmask] += weight;
  }

  for (std::uint64_t zmask = 0; zmask < sign_patterns; ++zmask) {
    const auto z = to_point(zmask, R);
    const Rational phi_z = phi.value(z);
    if (phi_z == 0) continue;
    if (marginal[zmask] != 0) out.item1.rhs += abs(phi_z) * joint[zmask] / marginal[zmask];
    // E_{y ~ mu^z} g(..., y_i z_i, ...)
    Rational expectation = 0;
    for (std::uint64_t ymask = 0; ymask < sign_patterns; ++ymask) {
      Rational p = 1;
      std::vector<int> arg(R);
      for (std::size_t i = 0; i < R; ++i) {
        const bool flip = (ymask >> i) & 1;
        const Rational& f = z[i] > 0 ? flip_plus : flip_minus;
        p *= flip ? f : Rational(1 - f);
        arg[i] = flip ? -z[i] : z[i];
      }
      if (p != 0) expectation += p * g(arg);
    }
    out.item2.rhs += phi_z * expectation;
  }
  return out;
}

CorrelationResult correlation(const PointMassDual& phi,
                              const SymmetricWeightFunction& psi, std::size_t k,
                              const Rational& gamma) {
  check_gamma(gamma, k);
  const std::size_t R = phi.r;
  const auto table = BlockClassTable::build(psi, k);
  CorrelationResult out;
  out.p_plus = table.flip_probability(+1);
  out.p_minus = table.flip_probability(-1);
  out.gap_threshold = std::max<std::size_t>(1, ceil_times(gamma, R));
  const std::size_t g = out.gap_threshold;

  // Let J be the number of blocks with THR = -1. Under z = 1^R,
  // J ~ Bin(R, p_plus); under z = (-1)^R, R - J ~ Bin(R, p_minus).
  // f = +1 at J = 0, -1 at J >= g, and the point is outside D for 0 < J < g.
  // Contribution of z: phi(z) E[f 1_D | z] - |phi(z)| Pr[not D | z].
  auto contribution = [&](const Rational& phi_z, const Rational& p,
                          bool flipped) -> Rational {
    Rational e_f = 0;
    Rational out_d = 0;
    for (std::size_t j = 0; j <= R; ++j) {
      const Rational pr = Rational(binomial(R, j)) * pow_q(p, j) *
                          pow_q(Rational(1 - p), R - j);
      const std::size_t J = flipped ? R - j : j;
      if (J == 0) {
        e_f += pr;
      } else if (J >= g) {
        e_f -= pr;
      } else {
        out_d += pr;
      }
    }
    return phi_z * e_f - abs(phi_z) * out_d;
  };
  out.exact = contribution(phi.at_plus, out.p_plus, false) +
              contribution(phi.at_minus, out.p_minus, true);

  const std::size_t N = psi.n();
  out.bound16 = bound_formula(N, R, k, gamma.get_d(), 16.0);
  out.bound48 = bound_formula(N, R, k, gamma.get_d(), 48.0);
  return out;
}

double bound_formula(std::size_t N, std::size_t R, std::size_t k, double gamma,
                     double denominator) {
  const double q = std::pow(4.0, -static_cast<double>(k - 1));
  const double r = static_cast<double>(R);
  return 1.0 - r / (denominator * static_cast<double>(N)) - std::exp(-r * q) -
         std::exp(-2.0 * r * (q - gamma) * (q - gamma));
}

Rational closeness_floor(const Rational& correlation, const Rational& budget) {
  return correlation - budget;
}

const char* to_string(DomainClass c) {
  switch (c) {
    case DomainClass::InD:
      return "in-D";
    case DomainClass::OutD:
      return "out-D";
    case DomainClass::OverCap:
      return "over-cap";
  }
  return "?";
}

DomainClass domain_membership(std::span<const std::size_t> block_weights,
                              std::size_t k, const Rational& gamma,
                              std::size_t cap) {
  std::size_t total = 0;
  std::size_t negative_blocks = 0;
  for (auto w : block_weights) {
    total += w;
    negative_blocks += w >= k;
  }
  if (total > cap) return DomainClass::OverCap;
  if (negative_blocks == 0) return DomainClass::InD;
  const Rational count(static_cast<unsigned long>(negative_blocks));
  if (count >= gamma * Rational(static_cast<unsigned long>(block_weights.size()))) {
    return DomainClass::InD;
  }
  return DomainClass::OutD;
}

DomainClass domain_membership(std::span<const int> x, std::size_t N,
                              std::size_t R, std::size_t k,
                              const Rational& gamma, std::size_t cap) {
  require(x.size() == N * R, "point must have N * R coordinates");
  std::vector<std::size_t> weights(R, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] == 1 || x[i] == -1, "points must have entries in {-1, 1}");
    weights[i / N] += x[i] == -1;
  }
  return domain_membership(weights, k, gamma, cap);
}

std::vector<Rational> compose_table(const PointMassDual& phi,
                                    const SymmetricWeightFunction& psi) {
  const std::size_t dims = psi.n() * phi.r;
  require(dims <= 22, "table limited to N * R <= 22");
  std::vector<Rational> table(std::size_t{1} << dims);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = compose_at(phi, psi, mask);
  }
  return table;
}

std::vector<Rational> symmetric_table(const SymmetricWeightFunction& f) {
  require(f.n() <= 22, "table limited to n <= 22");
  std::vector<Rational> point(f.n() + 1);
  for (std::size_t t = 0; t <= f.n(); ++t) point[t] = f.point_value(t);
  std::vector<Rational> table(std::size_t{1} << f.n());
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = point[static_cast<std::size_t>(std::popcount(mask))];
  }
  return table;
}

std::size_t phd_exhaustive(std::span<const Rational> table, std::size_t dims) {
  require(table.size() == (std::size_t{1} << dims), "table size must be 2^dims");
  // Unnormalized Walsh-Hadamard transform: coef[A] = sum_x F(x) chi_A(x),
  // chi_A(x) = (-1)^{|A & mask(x)|}.
  std::vector<Rational> coef(table.begin(), table.end());
  for (std::size_t len = 1; len < coef.size(); len <<= 1) {
    for (std::size_t i = 0; i < coef.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        Rational a = coef[j];
        Rational b = coef[j + len];
        coef[j] = a + b;
        coef[j + len] = a - b;
      }
    }
  }
  std::size_t best = dims + 1;
  for (std::uint64_t A = 0; A < coef.size(); ++A) {
    if (coef[A] != 0) best = std::min<std::size_t>(best, std::popcount(A));
  }
  return best;
}

Rational exhaustive_correlation(const PointMassDual& phi,
                                const SymmetricWeightFunction& psi,
                                std::size_t k, const Rational& gamma) {
  check_gamma(gamma, k);
  const std::size_t N = psi.n();
  const std::size_t R = phi.r;
  const std::size_t dims = N * R;
  require(dims <= 22, "enumeration limited to N * R <= 22");
  Rational total = 0;
  std::vector<std::size_t> weights(R);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dims); ++mask) {
    const Rational value = compose_at(phi, psi, mask);
    if (value == 0) continue;
    std::size_t negative_blocks = 0;
    for (std::size_t i = 0; i < R; ++i) {
      weights[i] = block_weight(mask, i, N);
      negative_blocks += weights[i] >= k;
    }
    // No Hamming cap: the correlation is taken over all of {-1,1}^(N R).
    const auto cls = domain_membership(weights, k, gamma, dims);
    if (cls == DomainClass::InD) {
      total += value * (negative_blocks == 0 ? 1 : -1);
    } else {
      total -= abs(value);
    }
  }
  return total;
}

}  // namespace qpt::dualpoly
