#include "qpt/dualpoly.hpp"

#include <algorithm>
#include <set>

#include "qpt/common.hpp"

namespace qpt::dualpoly {

OmegaConstruction build_omega(std::size_t n, std::size_t k, std::size_t T) {
  if (T == 0) T = n;
  require(k >= 1, "k must be at least 1");
  require(k <= T && T <= n, "need k <= T <= n");

  OmegaConstruction out;
  out.n = n;
  out.k = k;
  out.T = T;
  out.c = 2 * k * ceil_root(BigInt(static_cast<unsigned long>(n)), k).get_ui();
  out.m = 0;
  while ((out.m + 1) * (out.m + 1) * out.c <= T) ++out.m;

  std::set<std::size_t> S;
  for (std::size_t i = 1; i <= k; ++i) S.insert(i);
  for (std::size_t i = 0; i <= out.m; ++i) S.insert(out.c * i * i);
  out.S.assign(S.begin(), S.end());

  // For t in S, prod_{r in [T]_0 \ S} (t - r) equals
  //   t! (-1)^(T-t) (T-t)! / prod_{r in S, r != t} (t - r),
  // and C(T, t) t! (T-t)! = T!, so the closed form collapses to
  //   omega(t) = (-1)^(t+T-m+1) (-1)^(T-t) / prod_{r in S, r != t} (t - r).
  // Every t outside S hits the factor (t - t) and vanishes.
  std::vector<Rational> levels(n + 1);
  for (std::size_t t : out.S) {
    BigInt denom = 1;
    for (std::size_t r : out.S) {
      if (r != t) denom *= BigInt(static_cast<long>(t) - static_cast<long>(r));
    }
    const bool negative = ((t + T - out.m + 1) + (T - t)) % 2 == 1;
    Rational value(negative ? BigInt(-1) : BigInt(1), denom);
    value.canonicalize();
    levels[t] = value;
  }

  SymmetricWeightFunction raw(n, std::move(levels));
  out.raw_l1 = raw.l1();
  require(out.raw_l1 != 0, "degenerate omega");
  out.omega = raw.scaled(1 / out.raw_l1);
  return out;
}

SymmetricWeightFunction build_psi(const SymmetricWeightFunction& omega) {
  require(omega.l1() == 1, "psi needs an omega with unit l1 norm");
  return omega;
}

BigInt krawtchouk(std::size_t s, std::size_t w, std::size_t n) {
  require(s <= n && w <= n, "krawtchouk needs s, w <= n");
  BigInt total = 0;
  for (std::size_t j = 0; j <= std::min(s, w); ++j) {
    BigInt term = binomial(w, j) * binomial(n - w, s - j);
    if (j % 2 == 1) {
      total -= term;
    } else {
      total += term;
    }
  }
  return total;
}

Rational orthogonality_residual(const SymmetricWeightFunction& psi,
                                std::size_t s) {
  Rational total = 0;
  for (std::size_t t = 0; t <= psi.n(); ++t) {
    const auto& w = psi.level_mass(t);
    if (w != 0) total += w * Rational(krawtchouk(s, t, psi.n()));
  }
  return total;
}

bool phd_check(const SymmetricWeightFunction& psi, std::size_t delta) {
  for (std::size_t s = 0; s < delta && s <= psi.n(); ++s) {
    if (orthogonality_residual(psi, s) != 0) return false;
  }
  return true;
}

std::size_t phd_measure(const SymmetricWeightFunction& psi) {
  for (std::size_t s = 0; s <= psi.n(); ++s) {
    if (orthogonality_residual(psi, s) != 0) return s;
  }
  return psi.n() + 1;
}

}  // namespace qpt::dualpoly
