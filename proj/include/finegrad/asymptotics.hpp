#pragma once

#include <cstdint>
#include <stdexcept>

#include "finegrad/common.hpp"

namespace finegrad {

/// (x+y) ln(x+y) - x ln x - y ln y. Throws std::domain_error unless x, y > 0.
double u(double x, double y);
/// u(x, x^-2).
double v(double x);
/// z^-1 ln(1+z) + ln(1 + 1/z); v(x) = x w(x^3).
double w(double z);
/// dv/dx, closed form.
double v_prime(double x);

/// zeta(s) - 1 for s >= 2 by Euler-Maclaurin summation with `terms` explicit
/// terms; kept separate from zeta() so tiny values keep full relative accuracy.
double zeta_minus_one(double s, unsigned terms = 16);
double zeta(double s);

/// prod_{m>=2} zeta(m), stopping once zeta(m) - 1 < threshold and adding a
/// bound for the omitted tail.
double zeta_product(double threshold = 1e-16);
/// prod_{m>=2} (1 - c^-m), truncated the same way.
double pochhammer_factor(std::uint32_t c, double threshold = 1e-16);

/// Root of f in (lo, hi): coarse scan for a sign change, bisection to
/// `bisect_tol`, then Newton with derivative df to `newton_tol`.
/// Throws std::runtime_error("bracket not found") if the scan finds nothing.
template <class F, class DF>
double find_root(F f, DF df, double lo, double hi, double step = 0.01,
                 double bisect_tol = 1e-8, double newton_tol = 1e-13);

struct AsymptoticConstants
{
  double z0 = 0, x0 = 0, y0 = 0, b0 = 0;
  double x1 = 0, b1 = 0;
  double a0 = 0;
  /// z0 ln(1 + 1/z0) - 2 ln(1 + z0).
  double z0_residual = 0;

  /// a0 * pochhammer_factor(c).
  double a_c(std::uint32_t c) const;
  /// Coefficient of ln n in the average matrix count: a0 for c = 0, and
  /// a_c(c) * (1 - 1/c) otherwise. Excluding lengths divisible by c removes the
  /// whole c-Euler factor prod_{m>=1} (1 - c^-m) of the abelian-group series,
  /// whose m = 1 term a_c alone omits.
  double matrix_slope(std::uint32_t c) const;
};

/// Solved once, then cached.
const AsymptoticConstants& constants();
AsymptoticConstants solve_constants();

/// t / 2^floor(log2 t) for t >= 1; in [1, 2).
double phi(double t);
/// phi(t^(1/3) / x0), for t >= x0^3.
double lambda_t(double t);
/// max(v(x), v(x/2)).
double v_tilde(double x);
/// v_tilde(x0 * lambda_t(t)); satisfies b(8t) = b(t), b1 <= b(t) <= b0.
double b_of_t(double t);

/// u(x, x^-2 +- tau x^-1). The minus variant requires x^-2 - tau/x > 0.
double v_tau(double x, double tau, Sign sign);
/// d/dx v_tau, closed form.
double v_tau_prime(double x, double tau, Sign sign);
/// Critical point of v_tau near x0 by Newton from x0 (at most 20 steps,
/// |v_tau'| <= 1e-10 on exit). Throws std::domain_error naming tau when Newton
/// fails or leaves the domain.
double x0_tau(double tau, Sign sign);

/// Smallest t (to 1e-6 relative) at which both envelope variants are defined:
/// x0_tau converges for tau = (2t)^(-1/3) and the minus form stays positive on
/// [x0_tau / 2, 2 x0_tau].
double envelope_min_t();

/// With tau = (2t)^(-1/3) and X = x0_tau * phi(t^(1/3) / x0_tau):
/// max(v_tau(X), v_tau(X/2)). Throws std::domain_error below envelope_min_t().
double b_pm(double t, Sign sign);
/// Same with the lattice point chosen from (2t)^(1/3) instead of t^(1/3);
/// this is the envelope that ln B*(t) actually follows for the Sp actions.
double b_pm_lattice(double t, Sign sign);

/// ln(1 + x^3) / x with x = x0 lambda_t(t) on branch k = 1 (x0 lambda_t(t) < x1)
/// and x = x0 lambda_t(t) / 2 on branch k = 2.
double b1_correction(double t);
/// 1 or 2, as above.
int correction_branch(double t);
/// |phi(t^(1/3) / x0) - x1/x0| <= c * t^(-1/3).
bool near_switch(double t, double c);

struct EnvelopeSample
{
  double t = 0;
  double b_val = 0;
  double b_plus = 0;
  double b_minus = 0;
  double b1_corr = 0;
  int branch = 1;
  bool near_switch = false;
};

EnvelopeSample envelope_sample(double t, double switch_c = 4.0);

enum class BinomialVariant { A, plus, minus };

struct BinomialMax
{
  double value = 0;
  unsigned m_star = 0;
  std::uint64_t q_star = 0;
};

/// ln of C(q + M - 1, q) for real-valued M >= 1, q >= 0, accurate when one
/// argument dwarfs the other.
double ln_multiset_count(double points, std::uint64_t q);

/// max ln C(q + M_m - 1, q) over m >= 0, q >= 0 with 2^m q <= t, where
/// M_m = 4^m (variant A) or 2^(m-1)(2^m +- 1). For each m the largest q wins,
/// since the binomial increases in q.
BinomialMax ln_bstar(double t, BinomialVariant variant);

} // namespace finegrad

#include "finegrad/detail/find_root.hpp"
