#include <doctest.h>

#include <cmath>
#include <random>

#include "llebif/primary_points.hpp"
#include "llebif/trivial_curve.hpp"

using namespace llebif;

namespace {
const Params<double> kP(0.1, 1.6);

// tabulated reference roots for d = 0.1, f = 1.6, two per mode
constexpr double kRefT[7][2] = {
    {0.10528, 0.77130},  {-0.18543, 0.75556}, {-0.52046, 0.72127},
    {-0.72866, 0.66089}, {-0.77281, 0.56321}, {-0.61695, 0.40312},
    {-0.20600, 0.01535}};
}  // namespace

TEST_CASE("residual value by direct substitution at t = 0") {
  // zeta(0) = |a(0)|^2 = f^2 = 2.56
  const double X = 2.56 + 0.1;
  const double expected = X * X - 4 * 2.56 * X + 1 + 3 * 2.56 * 2.56;
  CHECK(bifurcation_residual(0.0, 1, kP) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("residual vanishes at the tabulated k=7 root") {
  CHECK(std::abs(bifurcation_residual(-0.20600, 7, kP)) < 1e-3);
}

TEST_CASE("residual is positive near the domain ends") {
  for (int k = 1; k <= 50; ++k) {
    CHECK(bifurcation_residual(-0.999, k, kP) > 0);
    CHECK(bifurcation_residual(0.999, k, kP) > 0);
  }
}

TEST_CASE("residual derivative matches central differences") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ut(-0.99, 0.99);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const double t = ut(rng);
    const int k = 1 + i % 9;
    const double fd = (bifurcation_residual(t + h, k, kP) -
                       bifurcation_residual(t - h, k, kP)) /
                      (2 * h);
    const double an = bifurcation_residual_dt(t, k, kP);
    CHECK(std::abs(fd - an) <= 1e-5 * (1 + std::abs(an)));
  }
}

TEST_CASE("tabulated roots are recovered per mode") {
  for (int k = 1; k <= 7; ++k) {
    const auto pts = find_primary_points(k, kP);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].slot == 1);
    CHECK(pts[1].slot == 2);
    CHECK(pts[0].t < pts[1].t);
    for (int i = 0; i < 2; ++i) {
      CHECK(std::abs(pts[i].t - kRefT[k - 1][i]) < 2e-5);
      CHECK(std::abs(bifurcation_residual(pts[i].t, k, kP)) < 1e-10);
      CHECK(std::abs(bifurcation_residual_dt(pts[i].t, k, kP)) > 1e-8);
    }
  }
  CHECK(find_primary_points(8, kP).empty());
  CHECK(find_primary_points(9, kP).empty());
}

TEST_CASE("kmax and the total root count") {
  CHECK(compute_kmax(kP) == 7);
  CHECK(all_primary_points(kP).size() == 14);
  CHECK(compute_kmax(Params<double>(0.1, 0.2)) == 0);  // |a|^4 <= f^4 < 1
}

TEST_CASE("kmax for negative dispersion stays finite") {
  const Params<double> p(-0.1, 1.6);
  const int kmax = compute_kmax(p);
  CHECK(kmax >= 0);
  CHECK(find_primary_points(kmax + 1, p).empty());
}

TEST_CASE("roots are mutually separated and avoid the folds") {
  const auto pts = all_primary_points(kP);
  const auto folds = turning_points(kP);
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j)
      CHECK(std::abs(pts[i].t - pts[j].t) > 1e-3);
    for (double tau : folds) CHECK(std::abs(pts[i].t - tau) > 1e-3);
  }
}

TEST_CASE("invalid mode is rejected") {
  CHECK_THROWS_AS(find_primary_points(0, kP), ConfigError);
}
