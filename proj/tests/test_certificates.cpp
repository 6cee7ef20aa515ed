#include <doctest.h>

#include <cmath>

#include "llebif/certificates.hpp"

using namespace llebif;

namespace {
const Params<double> kP(0.1, 1.6);
}

TEST_CASE("pair parameters for q = 6 and q = 4") {
  const auto p6 = primary_pair(6, kP);
  REQUIRE(p6.size() == 2);
  CHECK(std::abs(p6[0].t - (-0.61695)) < 2e-5);
  CHECK(std::abs(p6[1].t - 0.40312) < 2e-5);

  const auto p4 = primary_pair(4, kP);
  REQUIRE(p4.size() == 2);
  CHECK(std::abs(p4[0].t - (-0.72866)) < 2e-5);
  CHECK(std::abs(p4[1].t - 0.66089) < 2e-5);
}

TEST_CASE("window enforcement") {
  // kmax = 7 here, so only 4 <= q <= 7 is admissible
  CHECK_THROWS_AS(primary_pair(3, kP), OutOfWindow);
  CHECK_THROWS_AS(primary_pair(8, kP), OutOfWindow);
  CHECK_NOTHROW(primary_pair(4, kP));
  CHECK_NOTHROW(primary_pair(7, kP));
}

TEST_CASE("certificate totals") {
  struct Case {
    int q, p, total;
  };
  for (const auto& c : {Case{7, 1, -4}, Case{6, 3, -4}, Case{6, 2, 4},
                        Case{4, 2, -4}}) {
    const auto cert = certify(c.q, c.p, kP);
    CHECK(cert.total == c.total);
    CHECK(cert.certified);
    CHECK(cert.points.size() == 2);
    CHECK(cert.jumps.size() == 2);
    int sum = 0;
    for (const auto& j : cert.jumps) sum += j.delta_star;
    CHECK(sum == cert.total);
  }
}

TEST_CASE("individual jumps behind the q = 6, p = 3 certificate") {
  const auto cert = certify(6, 3, kP);
  CHECK(cert.jumps[0].delta_star == -2);
  CHECK(cert.jumps[1].delta_star == -2);
  // the mode-3 pair balances them inside the same ambient space
  for (const auto& bp : find_primary_points(3, kP))
    CHECK(index_jump(bp, 3, kP).delta_star == 2);
}

TEST_CASE("balance over a closed continuum's contacts") {
  auto pts6 = find_primary_points(6, kP);
  auto pts3 = find_primary_points(3, kP);
  std::vector<PrimaryBifPoint<double>> all;
  all.insert(all.end(), pts6.begin(), pts6.end());
  all.insert(all.end(), pts3.begin(), pts3.end());
  CHECK(dancer_balance(all, 3, kP) == 0);
}

TEST_CASE("each pair balances in its own subspace") {
  for (int q = 4; q <= 7; ++q)
    CHECK(dancer_balance(primary_pair(q, kP), q, kP) == 0);
}

TEST_CASE("empty balance is zero") {
  CHECK(dancer_balance(std::vector<PrimaryBifPoint<double>>{}, 2, kP) == 0);
}

TEST_CASE("divisor preconditions of certify") {
  CHECK_THROWS_AS(certify(7, 7, kP), ConfigError);   // p must be < q
  CHECK_THROWS_AS(certify(6, 4, kP), ConfigError);   // p must divide q
  CHECK_THROWS_AS(certify(6, 0, kP), ConfigError);
  CHECK_THROWS_AS(certify(3, 1, kP), OutOfWindow);   // window violation
}
