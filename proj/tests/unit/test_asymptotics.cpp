#include <doctest.h>

#include <cmath>
#include <random>

#include "finegrad/asymptotics.hpp"
#include "finegrad/census.hpp"
#include "finegrad/partitions.hpp"
#include "reference.hpp"

using namespace finegrad;
using finegrad::testing::constant_reference;

namespace {

// Log-uniform grid with `count` points in [lo, hi].
std::vector<double> log_grid(double lo, double hi, int count)
{
  std::vector<double> grid;
  for (int i = 0; i < count; ++i)
    grid.push_back(lo * std::pow(hi / lo, i / double(count - 1)));
  return grid;
}

} // namespace

TEST_CASE("u, v, w")
{
  CHECK(u(1, 1) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-15));
  CHECK(u(2, 2) == doctest::Approx(2 * u(1, 1)).epsilon(1e-15));
  CHECK_THROWS_AS(u(0, 1), std::domain_error);
  CHECK_THROWS_AS(v(-1), std::domain_error);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(0.01, 50);
  for (int i = 0; i < 1000; ++i) {
    const double x = pos(rng), y = pos(rng), s = pos(rng);
    CHECK(std::fabs(u(s * x, s * y) - s * u(x, y)) <= 1e-10 * std::fabs(s * u(x, y)));
    CHECK(u(x * 1.01, y) > u(x, y));
    CHECK(u(x, y * 1.01) > u(x, y));
  }

  for (double x : {0.3, 1.0, 3.0})
    CHECK(std::fabs(v(x) - x * w(x * x * x)) <= 1e-12);

  const auto& k = constants();
  CHECK(std::fabs(v(k.x1) - v(k.x1 / 2)) <= 1e-10);
  CHECK(std::fabs(u(k.x0, k.y0) - 1.581080) <= 1e-6);

  // Unimodal with its maximum at x0.
  for (double x = 0.1; x < 5; x += 0.01) {
    const double slope = (v(x + 1e-7) - v(x - 1e-7)) / 2e-7;
    if (x < k.x0 * 0.999)
      CHECK(slope > 0);
    if (x > k.x0 * 1.001)
      CHECK(slope < 0);
  }
  for (double x : {0.2, 0.5, 0.9, 2.0})
    CHECK(v_prime(x) == doctest::Approx((v(x + 1e-6) - v(x - 1e-6)) / 2e-6).epsilon(1e-6));
}

TEST_CASE("constants")
{
  const auto& k = constants();
  CHECK(std::fabs(k.x0 - constant_reference("x0")) <= 1e-6);
  CHECK(std::fabs(k.y0 - constant_reference("y0")) <= 1e-6);
  CHECK(std::fabs(k.b0 - constant_reference("b0")) <= 1e-6);
  CHECK(std::fabs(k.x1 - constant_reference("x1")) <= 1e-6);
  CHECK(std::fabs(k.b1 - constant_reference("b1")) <= 1e-6);
  CHECK(std::fabs(k.a0 - constant_reference("a0")) <= 1e-6);
  CHECK(std::fabs(k.z0_residual) <= 1e-12);
  CHECK(k.x0 == doctest::Approx(std::cbrt(k.z0)).epsilon(1e-14));
  CHECK(k.y0 == doctest::Approx(std::pow(k.z0, -2.0 / 3)).epsilon(1e-14));
  CHECK(k.b0 == doctest::Approx(v(k.x0)).epsilon(1e-14));
  CHECK(k.b1 == doctest::Approx(v(k.x1)).epsilon(1e-12));
  for (std::uint32_t c : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const auto tag = std::to_string(c);
    CHECK(std::fabs(pochhammer_factor(c) - constant_reference("pochhammer_" + tag)) <= 1e-5);
    CHECK(std::fabs(k.a_c(c) - constant_reference("a_" + tag)) <= 1e-5);
  }

  const auto again = solve_constants();
  CHECK(again.x0 == k.x0);
  CHECK(again.a0 == k.a0);
}

TEST_CASE("average matrix count slope")
{
  const auto& k = constants();
  CHECK(k.matrix_slope(0) == k.a0);
  CHECK(k.matrix_slope(2) == doctest::Approx(k.a_c(2) / 2).epsilon(1e-15));
  // The measured slope between 10^4 and 10^5 tracks matrix_slope, not a_c.
  for (std::uint32_t c : {0u, 2u, 3u}) {
    const FieldSpec field(c);
    const double slope = (avg_matrix(100000, field) - avg_matrix(10000, field)) / std::log(10.0);
    CHECK_MESSAGE(std::fabs(slope / k.matrix_slope(c) - 1) < 0.05, "c=", c, " slope=", slope);
  }
}

TEST_CASE("zeta values")
{
  for (double s : {2.0, 2.5, 3.0, 4.0, 7.0, 12.0, 30.0})
    CHECK(zeta(s) == doctest::Approx(std::riemann_zeta(s)).epsilon(1e-14));
  CHECK(zeta_minus_one(2) == doctest::Approx(M_PI * M_PI / 6 - 1).epsilon(1e-14));
  CHECK(zeta_minus_one(60) == doctest::Approx(std::pow(2.0, -60) + std::pow(3.0, -60)).epsilon(1e-10));
  CHECK(std::fabs(zeta_product(1e-16) - zeta_product(1e-14)) < 1e-13);
  CHECK(std::fabs(pochhammer_factor(2, 1e-16) - pochhammer_factor(2, 1e-14)) < 1e-13);
}

TEST_CASE("root finder")
{
  const double r = find_root([](double x) { return x * x - 2; }, [](double x) { return 2 * x; },
                             0.01, 2);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_WITH_AS(find_root([](double x) { return x * x + 1; },
                                 [](double x) { return 2 * x; }, 0.01, 2),
                       "bracket not found", std::runtime_error);
}

TEST_CASE("log-periodic envelope b(t)")
{
  CHECK(phi(1) == 1);
  CHECK(phi(3) == 1.5);
  CHECK(phi(48) == 1.5);
  CHECK_THROWS_AS(phi(0.5), std::domain_error);

  const auto& k = constants();
  for (int m = 1; m <= 5; ++m) {
    const double scale = std::ldexp(1.0, m);
    CHECK(std::fabs(b_of_t(std::pow(scale * k.x0, 3)) - k.b0) <= 1e-9);
    CHECK(std::fabs(b_of_t(std::pow(scale * k.x1, 3)) - k.b1) <= 1e-9);
  }

  int checked = 0;
  for (double t : log_grid(1, 1e12, 10000)) {
    CHECK(phi(t) >= 1);
    CHECK(phi(t) < 2);
    CHECK(phi(2 * t) == phi(t));
    const double b = b_of_t(t);
    CHECK(b >= k.b1 - 1e-9);
    CHECK(b <= k.b0 + 1e-9);
    CHECK(std::fabs(b_of_t(8 * t) - b) <= 1e-9);
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("perturbed optimization v_tau")
{
  const auto& k = constants();
  for (Sign s : {Sign::plus, Sign::minus}) {
    CHECK(x0_tau(0, s) == k.x0);
    for (double x : {0.3, 0.6, 1.2})
      CHECK(v_tau(x, 0, s) == doctest::Approx(v(x)).epsilon(1e-15));
  }
  // Derivative in tau at tau = 0 is +- ln(1 + x^3) / x.
  for (double x : {0.5, 0.8}) {
    const double h = 1e-6;
    const double expected = std::log1p(x * x * x) / x;
    CHECK(std::fabs((v_tau(x, h, Sign::plus) - v(x)) / h - expected) <= 1e-4);
    CHECK(std::fabs((v_tau(x, h, Sign::plus) - v_tau(x, h, Sign::minus)) / (2 * h) - expected) <=
          1e-4);
  }
  for (double x : {0.4, 0.7, 1.1})
    for (Sign s : {Sign::plus, Sign::minus})
      CHECK(v_tau_prime(x, 0.05, s) ==
            doctest::Approx((v_tau(x + 1e-6, 0.05, s) - v_tau(x - 1e-6, 0.05, s)) / 2e-6)
                .epsilon(1e-6));

  // x0_tau = x0 + O(tau) with a stable slope.
  for (Sign s : {Sign::plus, Sign::minus}) {
    const double slope_small = (x0_tau(1e-4, s) - k.x0) / 1e-4;
    const double slope_tiny = (x0_tau(1e-5, s) - k.x0) / 1e-5;
    CHECK(std::fabs(slope_small - slope_tiny) <= 1e-2 * std::fabs(slope_tiny) + 1e-6);
    for (double tau : {1e-3, 1e-2, 0.1}) {
      const double x = x0_tau(tau, s);
      CHECK(std::fabs(v_tau_prime(x, tau, s)) <= 1e-10);
    }
  }
  CHECK_THROWS_WITH_AS(x0_tau(5, Sign::minus), doctest::Contains("tau="), std::domain_error);
}

TEST_CASE("operational threshold for b+-")
{
  // Newton converges and the minus form stays positive already at t = 1, the
  // lower end of the search range.
  const double t_min = envelope_min_t();
  CHECK(t_min == 1);
  CHECK_NOTHROW(b_pm(t_min, Sign::minus));
  CHECK_NOTHROW(b_pm(t_min, Sign::plus));
  CHECK_THROWS_AS(b_pm(0.5, Sign::minus), std::domain_error);
  for (double t : log_grid(1, 1e3, 200)) {
    CHECK_NOTHROW(x0_tau(std::cbrt(1 / (2 * t)), Sign::minus));
    CHECK_NOTHROW(x0_tau(std::cbrt(1 / (2 * t)), Sign::plus));
  }
}

TEST_CASE("b+- envelopes")
{
  // Continuity across one log-period, sampled densely.
  for (Sign s : {Sign::plus, Sign::minus}) {
    double previous = b_pm(1e6, s);
    double worst = 0;
    for (double t : log_grid(1e6, 8e6, 20001)) {
      const double value = b_pm(t, s);
      worst = std::fmax(worst, std::fabs(value - previous));
      previous = value;
    }
    CHECK(worst < 1e-3);
  }

  // (b+- - b)(2t)^(1/3) approaches +-b1_correction away from switch points.
  int compared = 0;
  for (double t : log_grid(1e3, 1e12, 2000)) {
    const auto e = envelope_sample(t);
    CHECK(std::fabs(e.b_plus - e.b_val) * std::cbrt(t) < 5);
    CHECK(std::fabs(e.b_minus - e.b_val) * std::cbrt(t) < 5);
    if (e.near_switch)
      continue;
    const double scale = std::cbrt(2 * t);
    CHECK_MESSAGE(std::fabs((e.b_plus - e.b_val) * scale - e.b1_corr) <= 5 / std::cbrt(t),
                  "t=", t);
    CHECK_MESSAGE(std::fabs((e.b_minus - e.b_val) * scale + e.b1_corr) <= 5 / std::cbrt(t),
                  "t=", t);
    ++compared;
  }
  CHECK(compared > 1000);

  for (double t : log_grid(10, 1e9, 1000)) {
    CHECK(std::fabs(b1_correction(8 * t) - b1_correction(t)) <= 1e-9);
    CHECK(correction_branch(8 * t) == correction_branch(t));
  }
}

TEST_CASE("ln multiset counts")
{
  for (unsigned points : {1u, 4u, 10u, 36u})
    for (std::uint64_t q : {0u, 1u, 7u, 30u}) {
      const double exact = std::log(binomial(points + q - 1, q).convert_to<double>());
      CHECK(ln_multiset_count(points, q) == doctest::Approx(exact).epsilon(1e-12));
    }
  // Large q: compare the log1p sum with lgamma.
  const double big = ln_multiset_count(4096, 2000000);
  const double via_gamma = std::lgamma(2000000.0 + 4096) - std::lgamma(2000001.0) - std::lgamma(4096.0);
  CHECK(big == doctest::Approx(via_gamma).epsilon(1e-9));
  CHECK_THROWS_AS(ln_multiset_count(0.5, 3), std::domain_error);
}

TEST_CASE("binomial maximization")
{
  const auto& k = constants();
  int agreements = 0, compared = 0;
  for (double t : log_grid(1e3, 1e12, 60)) {
    const auto best = ln_bstar(t, BinomialVariant::A);
    CHECK(std::ldexp(1.0, best.m_star) * best.q_star <= t);
    CHECK(std::ldexp(1.0, best.m_star) <= 4 * std::cbrt(t));
    const double band = std::fabs(best.value - b_of_t(t) * std::pow(t, 2.0 / 3)) / std::log(t);
    CHECK(band < 2);
    for (BinomialVariant var : {BinomialVariant::plus, BinomialVariant::minus}) {
      const auto pm = ln_bstar(t, var);
      CHECK(std::ldexp(1.0, pm.m_star) <= 4 * std::cbrt(t));
    }

    // Branch rule: the maximizing lattice point t^(1/3) / 2^m* is x0 lambda_t
    // on branch 1 and x0 lambda_t / 2 on branch 2.
    if (near_switch(t, 4.0))
      continue;
    const double point = k.x0 * lambda_t(t);
    const double chosen = correction_branch(t) == 1 ? point : point / 2;
    ++compared;
    agreements += std::fabs(std::cbrt(t) / std::ldexp(1.0, best.m_star) / chosen - 1) < 1e-6;
  }
  CHECK(compared > 40);
  CHECK(agreements == compared);
}
