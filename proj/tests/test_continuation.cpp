#include <doctest.h>

#include <cmath>
#include <complex>

#include "llebif/continuation.hpp"

using namespace llebif;
using Complexd = std::complex<double>;
using VectorXd = galerkin::VectorXs<double>;

namespace {
const Params<double> kP(0.1, 1.6);

FourierState<double> constant_state(double t, int L) {
  const auto pt = eval_trivial(t, kP);
  FourierState<double> st;
  st.zeta = pt.zeta;
  st.coeffs.setZero(L + 1);
  st.coeffs(0) = pt.a;
  return st;
}

PrimaryBifPoint<double> point_of(int k, int slot) {
  for (const auto& bp : find_primary_points(k, kP))
    if (bp.slot == slot) return bp;
  REQUIRE(false);
  return {};
}

double zeta_at_matched_arclength(const Branch<double>& branch, double s) {
  for (size_t i = 0; i + 1 < branch.points.size(); ++i) {
    const double s0 = branch.points[i].s, s1 = branch.points[i + 1].s;
    if (s >= s0 && s <= s1) {
      const double w = (s - s0) / (s1 - s0);
      return (1 - w) * branch.points[i].state.zeta +
             w * branch.points[i + 1].state.zeta;
    }
  }
  return branch.points.back().state.zeta;
}
}  // namespace

TEST_CASE("corrector accepts an exact solution without iterating") {
  const CosineGrid<double> grid(16, 48);
  const auto st = constant_state(0.3, 16);
  int iters = -1;
  const auto out = newton_correct(
      st, Constraint<double>(FixedZeta<double>{st.zeta}), grid, kP, {}, &iters);
  CHECK(iters == 0);
  CHECK((out.coeffs - st.coeffs).norm() == 0.0);
}

TEST_CASE("corrector pulls a perturbed constant back") {
  const CosineGrid<double> grid(16, 48);
  auto st = constant_state(0.3, 16);
  const auto exact = st.coeffs;
  st.coeffs(0) += Complexd(1e-4, -1e-4);
  const auto out = newton_correct(
      st, Constraint<double>(FixedZeta<double>{st.zeta}), grid, kP);
  CHECK((out.coeffs - exact).norm() < 1e-10);
  CHECK(out.zeta == st.zeta);
}

TEST_CASE("switch guess structure at the first mode-6 point") {
  const CosineGrid<double> grid(32, 96);
  const auto bp = point_of(6, 1);
  const auto guess = branch_switch(bp, +1, 1e-2, grid, kP);
  CHECK(guess.zeta == bp.point.zeta);
  CHECK(guess.sym_div == 6);
  CHECK(std::abs(guess.coeffs(6)) == doctest::Approx(1e-2).epsilon(1e-12));
  for (int l = 1; l <= 32; ++l)
    if (l != 6) CHECK(std::abs(guess.coeffs(l)) == 0.0);
}

TEST_CASE("corrected switch stays in the symmetric subspace") {
  const CosineGrid<double> grid(32, 96);
  const auto bp = point_of(6, 1);
  const auto [state, dir] = switch_and_correct(bp, +1, 1e-2, grid, kP);
  CHECK(galerkin::sym_residual(state, 6) < 1e-10);
  CHECK(galerkin::residual(state, grid, kP).norm() < 1e-10);
  CHECK(dir.size() == 2 * 33 + 1);
  double cmax = 0;
  for (int l = 0; l <= 32; ++l) cmax = std::max(cmax, std::abs(state.coeffs(l)));
  for (int l = 0; l <= 32; ++l)
    if (l % 6 != 0) CHECK(std::abs(state.coeffs(l)) < 1e-12 * cmax);
}

TEST_CASE("opposite switch signs land on distinct states") {
  const CosineGrid<double> grid(32, 96);
  const auto bp = point_of(7, 1);
  const auto [plus, d1] = switch_and_correct(bp, +1, 1e-2, grid, kP);
  const auto [minus, d2] = switch_and_correct(bp, -1, 1e-2, grid, kP);
  CHECK((plus.coeffs - minus.coeffs).norm() > 1e-3);
  // the mode-7 components have opposite phase
  CHECK(plus.coeffs(7).real() * minus.coeffs(7).real() <= 0.0);
}

TEST_CASE("switching needs an actual crossing") {
  const CosineGrid<double> grid(16, 48);
  PrimaryBifPoint<double> fake;
  fake.k = 2;
  fake.slot = 1;
  fake.t = 0.3;
  fake.point = eval_trivial(0.3, kP);
  CHECK_THROWS_AS(branch_switch(fake, +1, 1e-2, grid, kP),
                  GenericityViolation);
}

TEST_CASE("a unit budget yields at most two points") {
  const CosineGrid<double> grid(16, 48);
  const auto bp = point_of(6, 1);
  ContinuationConfig<double> cfg;
  cfg.budget = 1;
  const auto [start, dir] = switch_and_correct(bp, +1, 1e-2, grid, kP, cfg);
  VectorXd hint = VectorXd::Zero(2 * 17 + 1);
  hint.head(2 * 17) = dir.head(2 * 17);
  const auto branch =
      trace_branch(start, 6, cfg, grid, kP,
                   std::optional<PrimaryBifPoint<double>>(bp),
                   std::optional<VectorXd>(hint));
  CHECK(branch.points.size() <= 2);
  CHECK(branch.terminus.kind == TerminusKind::StepLimit);
}

TEST_CASE("the mode-6 branch closes onto its partner point") {
  const CosineGrid<double> grid(32, 128);
  const auto bp = point_of(6, 1);
  ContinuationConfig<double> cfg;
  const auto [start, dir] = switch_and_correct(bp, +1, 1e-2, grid, kP, cfg);
  VectorXd hint = VectorXd::Zero(2 * 33 + 1);
  hint.head(2 * 33) = dir.head(2 * 33);
  const auto branch =
      trace_branch(start, 6, cfg, grid, kP,
                   std::optional<PrimaryBifPoint<double>>(bp),
                   std::optional<VectorXd>(hint));

  REQUIRE(branch.terminus.kind == TerminusKind::ReturnedToTrivial);
  CHECK(branch.terminus.k == 6);
  CHECK(branch.terminus.slot == 2);
  const auto partner = point_of(6, 2);
  CHECK(std::abs(branch.points.back().state.zeta - partner.point.zeta) < 5e-2);

  SUBCASE("accepted points satisfy the solver and symmetry invariants") {
    for (const auto& pt : branch.points) {
      CHECK(galerkin::residual(pt.state, grid, kP).norm() < cfg.newton_tol);
      CHECK(pt.sym_residual < 1e-9);
      CHECK(std::abs(pt.tangent.norm() - 1.0) < 1e-12);
    }
    for (size_t i = 0; i + 1 < branch.points.size(); ++i) {
      const double ds = branch.points[i + 1].s - branch.points[i].s;
      CHECK(ds > 0);
      CHECK(ds <= cfg.max_step * (1 + 1e-12));
    }
  }

  SUBCASE("interior index changes in its own subspace are detuning folds") {
    const auto changes = locate_secondary(branch, 6, grid, kP, cfg);
    const double s_end = branch.points.back().s;
    const int n = 2 * 33;
    for (const auto& [lo, hi] : changes) {
      if (lo.s < 0.3 || hi.s > s_end - 0.3) continue;  // endpoint crossings
      // a fold flips the sign of the detuning component of the tangent
      const double tz_lo = lo.tangent(n), tz_hi = hi.tangent(n);
      CHECK(tz_lo * tz_hi <= 1e-4);
    }
  }
}

TEST_CASE("backward tracing retraces the detuning profile") {
  const CosineGrid<double> grid(16, 48);
  const auto bp = point_of(6, 1);
  ContinuationConfig<double> cfg;
  cfg.budget = 40;
  cfg.max_step = 2e-2;
  const auto [start, dir] = switch_and_correct(bp, +1, 1e-2, grid, kP, cfg);
  VectorXd hint = VectorXd::Zero(2 * 17 + 1);
  hint.head(2 * 17) = dir.head(2 * 17);
  const auto fwd = trace_branch(start, 6, cfg, grid, kP,
                                std::optional<PrimaryBifPoint<double>>(bp),
                                std::optional<VectorXd>(hint));
  REQUIRE(fwd.points.size() > 10);

  ContinuationConfig<double> rcfg = cfg;
  rcfg.budget = 60;
  const auto& last = fwd.points.back();
  const auto rev = trace_branch(
      last.state, 6, rcfg, grid, kP,
      std::optional<PrimaryBifPoint<double>>(),
      std::optional<VectorXd>((-last.tangent).eval()));

  const double s_end = last.s;
  for (const auto& pt : rev.points) {
    if (pt.s > s_end - 1e-3) break;
    const double expected = zeta_at_matched_arclength(fwd, s_end - pt.s);
    CHECK(std::abs(pt.state.zeta - expected) < 1e-3);
  }
}

TEST_CASE("ambient mismatch is rejected in the secondary scan") {
  const CosineGrid<double> grid(16, 48);
  Branch<double> branch;
  branch.ambient_div = 6;
  CHECK_THROWS_AS(locate_secondary(branch, 2, grid, kP), ConfigError);
}

TEST_CASE("a single-point branch has no change pairs") {
  const CosineGrid<double> grid(16, 48);
  Branch<double> branch;
  branch.ambient_div = 1;
  BranchPoint<double> only;
  only.state = constant_state(0.3, 16);
  only.tangent = VectorXd::Zero(2 * 17 + 1);
  branch.points.push_back(only);
  CHECK(locate_secondary(branch, 1, grid, kP).empty());
}
