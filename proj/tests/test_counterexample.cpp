#include <doctest.h>

#include <cmath>
#include <random>

#include "llebif/counterexample.hpp"

using namespace llebif;
namespace cex = llebif::counterexample;

namespace {
// brute-force series evaluation over a wide index range
template <typename Chi>
double brute_series(double x, double lambda, double a,
                    const cex::CexParams<double>& c, Chi&& chi) {
  if (lambda == 0.0) return 0.0;
  double sum = 0.0;
  for (int k = -60; k <= 60; ++k) {
    const double pk = std::ldexp(1.0, -k);
    sum += chi(a / pk * (lambda - pk)) * cex::base(x, lambda - pk, c);
    sum += chi(a / pk * (lambda + pk)) * cex::base(x, lambda + pk, c);
  }
  return lambda * sum;
}

// alternative mollifier with the same support properties
double second_bump(double z) {
  auto g = [](double s) { return s > 0 ? std::exp(-1.0 / (s * s)) : 0.0; };
  z = std::abs(z);
  const double up = g(2 - 2 * z), down = g(2 * z - 1);
  if (up + down == 0) return 0.0;
  return up / (up + down);
}
}  // namespace

TEST_CASE("maximizer of sin^2(z)/z") {
  const auto c = cex::maximize_sin2_over_z<double>();
  CHECK(std::abs(c.z_star - 1.165561) < 1e-5);
  CHECK(c.M == doctest::Approx(std::pow(std::sin(c.z_star), 2) / c.z_star)
                   .epsilon(1e-14));
  // stationarity of the analytic derivative
  const double deriv =
      (c.z_star * std::sin(2 * c.z_star) - std::pow(std::sin(c.z_star), 2)) /
      (c.z_star * c.z_star);
  CHECK(std::abs(deriv) < 1e-12);
  // maximality against nearby values
  auto h = [](double z) { return std::pow(std::sin(z), 2) / z; };
  CHECK(h(c.z_star) > h(c.z_star + 1e-4));
  CHECK(h(c.z_star) > h(c.z_star - 1e-4));
}

TEST_CASE("rate validation") {
  CHECK_THROWS_AS(cex::make_params(2.0), ConfigError);
  CHECK_THROWS_AS(cex::make_params(3.0), ConfigError);
  CHECK_THROWS_AS(cex::make_params(3.5), ConfigError);
  CHECK_NOTHROW(cex::make_params(2.5));
}

TEST_CASE("building block vanishes along the distinguished parabola") {
  const auto c = cex::make_params(2.5);
  for (double lam : {0.1, 0.03, 1e-3}) {
    const double x = c.z_star * lam * lam * lam;
    CHECK(std::abs(cex::base(x, lam, c)) < 1e-14);
  }
  CHECK(cex::base(0.37, 0.0, c) == 0.37);       // the lambda = 0 slice
  for (double lam : {-1.0, 0.2, 5.0}) CHECK(cex::base(0.0, lam, c) == 0.0);
}

TEST_CASE("normalized remainder is identically one") {
  const auto c = cex::make_params(2.5);
  for (double lam : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5})
    CHECK(std::abs(cex::diff_quotient(lam, c) - 1.0) < 1e-10);
  CHECK(cex::diff_quotient(1.0, c) == doctest::Approx(1.0).epsilon(1e-12));
  // scale-free: the same value at wildly different lambda
  CHECK(std::abs(cex::diff_quotient(1e-5, c) - cex::diff_quotient(0.5, c)) <
        1e-10);
  CHECK_THROWS_AS(cex::diff_quotient(0.0, c), ConfigError);
}

TEST_CASE("bump properties on a fine grid") {
  // within ~0.015 of the inner edge the transition weight underflows and
  // the quotient rounds to exactly 1, so strictness is checked outside
  // that saturation layer
  for (int i = 0; i <= 3000; ++i) {
    const double z = -1.5 + 3.0 * i / 3000.0;
    const double v = cex::smooth_bump(z);
    CHECK(v == cex::smooth_bump(-z));
    if (std::abs(z) <= 0.5) {
      CHECK(v == 1.0);
    } else if (std::abs(z) >= 1.0) {
      CHECK(v == 0.0);
    } else {
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
      if (std::abs(z) > 0.52) CHECK(v < 1.0);
    }
  }
}

TEST_CASE("assembled function vanishes on the trivial line") {
  const auto c = cex::make_params(2.5);
  for (double lam : {-1.0, -0.1, 0.0, 1e-4, 0.3, 2.0})
    CHECK(cex::eval(0.0, lam, c) == 0.0);
}

TEST_CASE("explicit nontrivial zero beside the fourth dyadic level") {
  const auto c = cex::make_params(2.5);
  const double slack = std::min((c.a_cut - 1) / (2 * c.a_cut),
                                (c.a_cut - 2) / c.a_cut);
  const double lam = 0.5 * slack * std::ldexp(1.0, -4);
  const double x = c.z_star * lam * lam * lam;
  REQUIRE(x != 0.0);
  CHECK(std::abs(cex::eval(x, std::ldexp(1.0, -4) + lam, c)) < 1e-14);
}

TEST_CASE("window shortcut equals brute-force summation") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), ul(-2.0, 2.0);
  const auto c = cex::make_params(2.5);
  auto chi = [](double z) { return cex::smooth_bump(z); };
  for (int i = 0; i < 1000; ++i) {
    const double x = ux(rng);
    double lam = ul(rng);
    if (std::abs(lam) < 1e-9) lam = 1e-9;
    const double fast = cex::eval(x, lam, c);
    const double brute = brute_series(x, lam, c.a_cut, c, chi);
    CHECK(std::abs(fast - brute) <= 1e-15 * (1 + std::abs(brute)));
  }
}

TEST_CASE("a gap in the cutoff windows forces zero output") {
  // windows only leave gaps for rates >= 3; rate 4 puts lambda = 0.7
  // strictly between the k = 0 and k = 1 windows
  const auto c = cex::make_params(2.5);
  auto chi = [](double z) { return cex::smooth_bump(z); };
  for (double x : {-2.0, 0.3, 11.0})
    CHECK(cex::eval_series(x, 0.7, 4.0, c, chi) == 0.0);
  // and the same lambda is covered when the rate is inside (2, 3)
  CHECK(cex::derivative_at_zero(0.7, c) > 0.0);
}

TEST_CASE("verification passes for the sanctioned rates") {
  for (double a : {2.2, 2.5, 2.9}) {
    const auto c = cex::make_params(a);
    const auto rep = cex::verify(10, c);
    CHECK(rep.all_passed);
    CHECK(rep.smallness.passed);
    CHECK(rep.derivative_sign.passed);
    CHECK(rep.zeros.passed);
  }
}

TEST_CASE("verification is robust under a different mollifier") {
  const auto c = cex::make_params(2.5);
  const auto rep = cex::verify(10, c, [](double z) { return second_bump(z); },
                               cex::default_lambda_grid<double>());
  CHECK(rep.all_passed);
}

TEST_CASE("a zero in the lambda grid is skipped exactly") {
  const auto c = cex::make_params(2.5);
  std::vector<double> grid = {0.0, 0.25, -0.25, 1.0, -1.0};
  const auto rep = cex::verify(10, c, [](double z) {
    return cex::smooth_bump(z);
  }, grid);
  CHECK(rep.derivative_sign.passed);
}

TEST_CASE("level-count guard") {
  const auto c = cex::make_params(2.5);
  CHECK_THROWS_AS(cex::run_checks(41, c), ConfigError);
  CHECK_THROWS_AS(cex::run_checks(0, c), ConfigError);
  CHECK_NOTHROW(cex::run_checks(40, c));
}
