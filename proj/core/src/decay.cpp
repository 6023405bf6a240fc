#include "qpt/dualpoly.hpp"

#include <cmath>
#include <limits>

#include <mpfr.h>

#include "qpt/common.hpp"

namespace qpt::dualpoly {

namespace {

constexpr mpfr_prec_t kPrecision = 200;

// RAII wrapper; MPFR has no C++ binding in the base install.
struct Real {
  mpfr_t v;
  Real() { mpfr_init2(v, kPrecision); }
  ~Real() { mpfr_clear(v); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
};

// alpha * e^(-beta t) / t^2 rounded in direction `rnd` (RNDD or RNDU).
void decay_rhs(Real& out, double alpha, double beta, std::size_t t,
               mpfr_rnd_t rnd) {
  const mpfr_rnd_t away = rnd == MPFR_RNDD ? MPFR_RNDU : MPFR_RNDD;
  Real exponent;
  mpfr_set_d(exponent.v, beta, MPFR_RNDN);  // exact: double fits in 200 bits
  // Lower bound of e^(-x) needs an upper bound of x, and vice versa.
  mpfr_mul_ui(exponent.v, exponent.v, static_cast<unsigned long>(t), away);
  mpfr_neg(exponent.v, exponent.v, MPFR_RNDN);
  mpfr_exp(out.v, exponent.v, rnd);
  mpfr_mul_d(out.v, out.v, alpha, rnd);
  Real t2;
  mpfr_set_ui(t2.v, static_cast<unsigned long>(t), MPFR_RNDN);
  mpfr_mul_ui(t2.v, t2.v, static_cast<unsigned long>(t), MPFR_RNDN);  // exact
  mpfr_div(out.v, out.v, t2.v, rnd);
}

}  // namespace

DecayReport decay_report(const SymmetricWeightFunction& omega, double alpha,
                         double beta) {
  require(alpha > 0.0, "alpha must be positive");
  require(std::isfinite(beta), "beta must be finite");
  DecayReport r;
  r.sum_zero = omega.sum() == 0;
  r.l1_one = omega.l1() == 1;
  r.bound_holds = true;
  r.certified = true;
  double worst = -1.0;
  for (std::size_t t = 1; t <= omega.n(); ++t) {
    const Rational w = abs(omega.level_mass(t));
    if (w == 0) continue;
    Real w_up;
    Real w_down;
    Real rhs_down;
    Real rhs_up;
    mpfr_set_q(w_up.v, w.get_mpq_t(), MPFR_RNDU);
    mpfr_set_q(w_down.v, w.get_mpq_t(), MPFR_RNDD);
    decay_rhs(rhs_down, alpha, beta, t, MPFR_RNDD);
    decay_rhs(rhs_up, alpha, beta, t, MPFR_RNDU);
    if (mpfr_cmp(w_up.v, rhs_down.v) <= 0) {
      // certified holds at this level
    } else if (mpfr_cmp(w_down.v, rhs_up.v) > 0) {
      r.bound_holds = false;
    } else {
      r.certified = false;
    }
    Real ratio;
    mpfr_div(ratio.v, w_up.v, rhs_down.v, MPFR_RNDU);
    const double ratio_d = mpfr_get_d(ratio.v, MPFR_RNDU);
    if (ratio_d > worst) {
      worst = ratio_d;
      r.tightest_level = t;
      r.tightest_ratio = ratio_d;
    }
  }
  return r;
}

bool decay_check(const SymmetricWeightFunction& omega, double alpha,
                 double beta) {
  auto r = decay_report(omega, alpha, beta);
  return r.sum_zero && r.l1_one && r.bound_holds && r.certified;
}

double max_decay_beta(const SymmetricWeightFunction& omega, double alpha) {
  require(alpha > 0.0, "alpha must be positive");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t <= omega.n(); ++t) {
    const Rational w = abs(omega.level_mass(t));
    if (w == 0) continue;
    // beta_t = ln(alpha / (t^2 |omega(t)|)) / t, rounded down throughout.
    Real denom;
    mpfr_set_q(denom.v, w.get_mpq_t(), MPFR_RNDU);
    mpfr_mul_ui(denom.v, denom.v, static_cast<unsigned long>(t * t), MPFR_RNDU);
    Real q;
    mpfr_set_d(q.v, alpha, MPFR_RNDN);
    mpfr_div(q.v, q.v, denom.v, MPFR_RNDD);
    mpfr_log(q.v, q.v, MPFR_RNDD);
    mpfr_div_ui(q.v, q.v, static_cast<unsigned long>(t), MPFR_RNDD);
    best = std::min(best, mpfr_get_d(q.v, MPFR_RNDD));
  }
  return best;
}

}  // namespace qpt::dualpoly
