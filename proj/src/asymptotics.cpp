#include "finegrad/asymptotics.hpp"

#include <cmath>
#include <string>

namespace finegrad {

namespace {

void require_positive(double x, const char* what)
{
  if (!(x > 0) || !std::isfinite(x))
    throw std::domain_error(std::string(what) + " requires a positive finite argument");
}

// Bernoulli numbers B_2, B_4, ..., B_12.
constexpr double kBernoulli[] = {1.0 / 6,   -1.0 / 30,   1.0 / 42,         -1.0 / 30,
                                 5.0 / 66, -691.0 / 2730};

double sign_value(Sign sign)
{
  return sign == Sign::plus ? 1.0 : -1.0;
}

double tau_of(double t)
{
  return 1 / std::cbrt(2 * t);
}

} // namespace

double u(double x, double y)
{
  require_positive(x, "u");
  require_positive(y, "u");
  return (x + y) * std::log(x + y) - x * std::log(x) - y * std::log(y);
}

double v(double x)
{
  require_positive(x, "v");
  return u(x, 1 / (x * x));
}

double w(double z)
{
  require_positive(z, "w");
  return std::log1p(z) / z + std::log1p(1 / z);
}

double v_prime(double x)
{
  require_positive(x, "v'");
  const double x3 = x * x * x;
  return std::log1p(1 / x3) - 2 / x3 * std::log1p(x3);
}

double zeta_minus_one(double s, unsigned terms)
{
  if (!(s >= 2))
    throw std::domain_error("zeta is only evaluated for s >= 2");
  const double n = terms;
  double sum = 0;
  for (unsigned k = terms - 1; k >= 2; --k)
    sum += std::pow(static_cast<double>(k), -s);
  // Euler-Maclaurin remainder for sum_{k >= n} k^-s.
  sum += std::pow(n, 1 - s) / (s - 1) + 0.5 * std::pow(n, -s);
  double rising = s; // s (s+1) ... (s+2j-2)
  double factorial = 2;
  for (unsigned j = 1; j <= 6; ++j) {
    sum += kBernoulli[j - 1] / factorial * rising * std::pow(n, -s - 2 * j + 1);
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    factorial *= (2 * j + 1) * (2 * j + 2);
  }
  return sum;
}

double zeta(double s)
{
  return 1 + zeta_minus_one(s);
}

double zeta_product(double threshold)
{
  double log_product = 0;
  unsigned m = 2;
  for (;; ++m) {
    const double excess = zeta_minus_one(m);
    if (excess < threshold)
      break;
    log_product += std::log1p(excess);
  }
  // Omitted tail: sum_{k>=m} (zeta(k) - 1) <= 2^(1-m) + 3 * 3^-m.
  const double tail = std::ldexp(1.0, 1 - static_cast<int>(m)) + 3 * std::pow(3.0, -double(m));
  return std::exp(log_product + tail);
}

double pochhammer_factor(std::uint32_t c, double threshold)
{
  if (c < 2)
    throw std::domain_error("pochhammer factor needs c >= 2");
  double log_product = 0;
  unsigned m = 2;
  for (;; ++m) {
    const double term = std::pow(static_cast<double>(c), -double(m));
    if (term < threshold)
      break;
    log_product += std::log1p(-term);
  }
  // Omitted factors multiply to 1 - O(c^-m).
  const double tail = -std::pow(static_cast<double>(c), -double(m)) * c / (c - 1.0);
  return std::exp(log_product + tail);
}

double AsymptoticConstants::a_c(std::uint32_t c) const
{
  return a0 * pochhammer_factor(c);
}

double AsymptoticConstants::matrix_slope(std::uint32_t c) const
{
  if (c == 0)
    return a0;
  return a_c(c) * (1 - 1.0 / c);
}

AsymptoticConstants solve_constants()
{
  AsymptoticConstants k;
  auto g = [](double z) { return z * std::log1p(1 / z) - 2 * std::log1p(z); };
  auto dg = [](double z) { return std::log1p(1 / z) - 3 / (1 + z); };
  k.z0 = find_root(g, dg, 0.01, 2.0);
  k.z0_residual = g(k.z0);
  k.x0 = std::cbrt(k.z0);
  k.y0 = 1 / (k.x0 * k.x0);
  k.b0 = v(k.x0);

  auto h = [](double x) { return v(x / 2) - v(x); };
  auto dh = [](double x) { return 0.5 * v_prime(x / 2) - v_prime(x); };
  k.x1 = find_root(h, dh, 0.01, 2.0);
  k.b1 = v(k.x1);

  k.a0 = zeta_product();
  return k;
}

const AsymptoticConstants& constants()
{
  static const AsymptoticConstants solved = solve_constants();
  return solved;
}

double phi(double t)
{
  if (!(t >= 1) || !std::isfinite(t))
    throw std::domain_error("phi requires t >= 1");
  int exponent = 0;
  const double mantissa = std::frexp(t, &exponent);
  return 2 * mantissa;
}

double lambda_t(double t)
{
  const auto& k = constants();
  if (!(t >= k.z0))
    throw std::domain_error("lambda(t) requires t >= x0^3");
  return phi(std::fmax(1.0, std::cbrt(t) / k.x0));
}

double v_tilde(double x)
{
  return std::fmax(v(x), v(x / 2));
}

double b_of_t(double t)
{
  return v_tilde(constants().x0 * lambda_t(t));
}

double v_tau(double x, double tau, Sign sign)
{
  require_positive(x, "v_tau");
  const double y = 1 / (x * x) + sign_value(sign) * tau / x;
  if (!(y > 0))
    throw std::domain_error("v_tau: x^-2 - tau/x must be positive");
  return u(x, y);
}

double v_tau_prime(double x, double tau, Sign sign)
{
  require_positive(x, "v_tau'");
  const double s = sign_value(sign);
  const double y = 1 / (x * x) + s * tau / x;
  if (!(y > 0))
    throw std::domain_error("v_tau': x^-2 - tau/x must be positive");
  const double dy = -2 / (x * x * x) - s * tau / (x * x);
  return std::log1p(y / x) + std::log1p(x / y) * dy;
}

namespace {

double v_tau_second(double x, double tau, double s)
{
  const double y = 1 / (x * x) + s * tau / x;
  const double dy = -2 / (x * x * x) - s * tau / (x * x);
  const double ddy = 6 / (x * x * x * x) + 2 * s * tau / (x * x * x);
  const double uxx = 1 / (x + y) - 1 / x;
  const double uxy = 1 / (x + y);
  const double uyy = 1 / (x + y) - 1 / y;
  return uxx + 2 * uxy * dy + uyy * dy * dy + std::log1p(x / y) * ddy;
}

} // namespace

double x0_tau(double tau, Sign sign)
{
  if (!(tau >= 0))
    throw std::domain_error("x0_tau requires tau >= 0");
  const double s = sign_value(sign);
  double x = constants().x0;
  if (tau == 0)
    return x;
  for (int step = 0; step < 20; ++step) {
    if (!(x > 0) || !(1 / (x * x) + s * tau / x > 0))
      break;
    const double d = v_tau_prime(x, tau, sign);
    const double dd = v_tau_second(x, tau, s);
    const double next = x - d / dd;
    if (std::fabs(next - x) <= 1e-13 * x) {
      x = next;
      if (x > 0 && 1 / (x * x) + s * tau / x > 0 && std::fabs(v_tau_prime(x, tau, sign)) <= 1e-10)
        return x;
      break;
    }
    x = next;
  }
  throw std::domain_error("x0_tau: Newton did not converge for tau=" + std::to_string(tau));
}

namespace {

bool envelope_defined(double t)
{
  const double tau = tau_of(t);
  try {
    x0_tau(tau, Sign::plus);
    const double xm = x0_tau(tau, Sign::minus);
    // v_tau^- is evaluated on [x0_tau / 2, 2 x0_tau].
    const double top = 2 * xm;
    return 1 / (top * top) - tau / top > 0;
  } catch (const std::domain_error&) {
    return false;
  }
}

} // namespace

double envelope_min_t()
{
  static const double threshold = [] {
    double lo = 1, hi = 1e6;
    if (!envelope_defined(hi))
      throw std::logic_error("envelope undefined at t=1e6");
    if (envelope_defined(lo))
      return lo;
    while (hi / lo > 1 + 1e-6) {
      const double mid = std::sqrt(lo * hi);
      (envelope_defined(mid) ? hi : lo) = mid;
    }
    return hi;
  }();
  return threshold;
}

namespace {

double b_pm_scaled(double t, Sign sign, double lattice)
{
  if (!(t >= envelope_min_t()))
    throw std::domain_error("b_pm requires t >= " + std::to_string(envelope_min_t()) +
                            ", got " + std::to_string(t));
  const double tau = tau_of(t);
  const double x = x0_tau(tau, sign);
  const double point = x * phi(std::fmax(1.0, lattice / x));
  return std::fmax(v_tau(point, tau, sign), v_tau(point / 2, tau, sign));
}

} // namespace

double b_pm(double t, Sign sign)
{
  return b_pm_scaled(t, sign, std::cbrt(t));
}

double b_pm_lattice(double t, Sign sign)
{
  return b_pm_scaled(t, sign, std::cbrt(2 * t));
}

int correction_branch(double t)
{
  const auto& k = constants();
  return k.x0 * lambda_t(t) < k.x1 ? 1 : 2;
}

double b1_correction(double t)
{
  const auto& k = constants();
  double x = k.x0 * lambda_t(t);
  if (x >= k.x1)
    x /= 2;
  return std::log1p(x * x * x) / x;
}

bool near_switch(double t, double c)
{
  const auto& k = constants();
  return std::fabs(lambda_t(t) - k.x1 / k.x0) <= c / std::cbrt(t);
}

EnvelopeSample envelope_sample(double t, double switch_c)
{
  EnvelopeSample sample;
  sample.t = t;
  sample.b_val = b_of_t(t);
  sample.b_plus = b_pm(t, Sign::plus);
  sample.b_minus = b_pm(t, Sign::minus);
  sample.b1_corr = b1_correction(t);
  sample.branch = correction_branch(t);
  sample.near_switch = near_switch(t, switch_c);
  return sample;
}

double ln_multiset_count(double points, std::uint64_t q)
{
  if (!(points >= 1))
    throw std::domain_error("ln_multiset_count requires at least one point");
  if (q == 0)
    return 0;
  constexpr double kDirectLimit = 1e6;
  const double rest = points - 1;
  double sum = 0;
  if (static_cast<double>(q) <= kDirectLimit) {
    for (std::uint64_t i = 1; i <= q; ++i)
      sum += std::log1p(rest / static_cast<double>(i));
    return sum;
  }
  if (rest <= kDirectLimit) {
    const auto count = static_cast<std::uint64_t>(rest);
    const double qd = static_cast<double>(q);
    for (std::uint64_t i = 1; i <= count; ++i)
      sum += std::log1p(qd / static_cast<double>(i));
    return sum;
  }
  const double qd = static_cast<double>(q);
  return std::lgamma(qd + points) - std::lgamma(qd + 1) - std::lgamma(points);
}

BinomialMax ln_bstar(double t, BinomialVariant variant)
{
  if (!(t > 1) || !std::isfinite(t))
    throw std::domain_error("ln_bstar requires t > 1");
  BinomialMax best;
  bool have = false;
  for (unsigned m = 0; std::ldexp(1.0, static_cast<int>(m)) <= t; ++m) {
    const double two_m = std::ldexp(1.0, static_cast<int>(m));
    const auto q = static_cast<std::uint64_t>(std::floor(t / two_m));
    double points = 0;
    switch (variant) {
    case BinomialVariant::A:
      points = two_m * two_m;
      break;
    case BinomialVariant::plus:
      points = 0.5 * two_m * (two_m + 1);
      break;
    case BinomialVariant::minus:
      points = 0.5 * two_m * (two_m - 1);
      break;
    }
    if (points < 1)
      continue;
    const double value = ln_multiset_count(points, q);
    if (!have || value > best.value) {
      best = {value, m, q};
      have = true;
    }
  }
  return best;
}

} // namespace finegrad
