#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "llebif/errors.hpp"
#include "llebif/galerkin.hpp"
#include "llebif/params.hpp"
#include "llebif/primary_points.hpp"
#include "llebif/spectral_index.hpp"
#include "llebif/trivial_curve.hpp"

namespace llebif {

template <typename Scalar = double>
struct ContinuationConfig {
  Scalar newton_tol = Scalar(1e-10);
  int max_iters = 25;
  Scalar min_step = Scalar(1e-5);
  Scalar max_step = Scalar(5e-2);
  Scalar initial_step = Scalar(1e-2);
  int budget = 5000;
  Scalar return_tol = Scalar(1e-2);
  Scalar step_growth = Scalar(1.3);
  int easy_steps = 3;  // consecutive cheap correctors before growing the step
};

/// Corrector constraint: either hold zeta fixed, or close the system with a
/// pseudo-arclength condition tangent . (v - anchor) = h.
template <typename Scalar = double>
struct FixedZeta {
  Scalar zeta;
};

template <typename Scalar = double>
struct ArclengthConstraint {
  galerkin::VectorXs<Scalar> anchor;   // previous accepted [Re c; Im c; zeta]
  galerkin::VectorXs<Scalar> tangent;  // unit tangent at the anchor
  Scalar h;                            // requested arclength step
};

template <typename Scalar = double>
using Constraint = std::variant<FixedZeta<Scalar>, ArclengthConstraint<Scalar>>;

/// One accepted continuation point.
template <typename Scalar = double>
struct BranchPoint {
  FourierState<Scalar> state;
  Scalar s = 0;                          // accumulated arclength
  galerkin::VectorXs<Scalar> tangent;    // unit tangent, length 2(L+1)+1
  int morse_in_ambient = 0;
  Scalar sym_residual = 0;
  Scalar amplitude = 0;
};

enum class TerminusKind { ReturnedToTrivial, StepLimit, Diverged };

template <typename Scalar = double>
struct Terminus {
  TerminusKind kind = TerminusKind::StepLimit;
  int k = 0;     // nearest primary point when returned (0 = none within tol)
  int slot = 0;
  Scalar distance = std::numeric_limits<Scalar>::infinity();
};

template <typename Scalar = double>
struct Branch {
  std::vector<BranchPoint<Scalar>> points;
  std::optional<PrimaryBifPoint<Scalar>> origin;
  Terminus<Scalar> terminus;
  int ambient_div = 1;
};

namespace detail {

template <typename Scalar>
galerkin::VectorXs<Scalar> pack(const FourierState<Scalar>& st) {
  galerkin::VectorXs<Scalar> v(2 * (st.L() + 1) + 1);
  v.head(2 * (st.L() + 1)) = galerkin::to_real<Scalar>(st.coeffs);
  v(v.size() - 1) = st.zeta;
  return v;
}

template <typename Scalar>
FourierState<Scalar> unpack(const galerkin::VectorXs<Scalar>& v, int sym_div) {
  FourierState<Scalar> st;
  st.coeffs = galerkin::to_complex<Scalar>(v.head(v.size() - 1).eval());
  st.zeta = v(v.size() - 1);
  st.sym_div = sym_div;
  return st;
}

template <typename Scalar>
galerkin::MatrixXs<Scalar> bordered_matrix(
    const FourierState<Scalar>& st, const CosineGrid<Scalar>& grid,
    const Params<Scalar>& p, const galerkin::VectorXs<Scalar>& last_row) {
  const int n = 2 * (st.L() + 1);
  galerkin::MatrixXs<Scalar> B(n + 1, n + 1);
  B.topLeftCorner(n, n) = galerkin::jacobian(st, grid, p);
  B.block(0, n, n, 1) = galerkin::dresidual_dzeta(st);
  B.row(n) = last_row.transpose();
  return B;
}

}  // namespace detail

/// Damped Newton on the bordered system (residual rows + constraint row).
///
/// Returns the corrected state once the residual norm and the constraint
/// defect are both below newton_tol.  Throws NoConvergence after max_iters
/// and SingularJacobian when the bordered solve produces garbage.
template <typename Scalar>
FourierState<Scalar> newton_correct(const FourierState<Scalar>& state,
                                    const Constraint<Scalar>& constraint,
                                    const CosineGrid<Scalar>& grid,
                                    const Params<Scalar>& p,
                                    const ContinuationConfig<Scalar>& cfg = {},
                                    int* iterations_out = nullptr) {
  galerkin::check_sizes(state, grid);
  const int n = 2 * (state.L() + 1);
  galerkin::VectorXs<Scalar> v = detail::pack(state);

  galerkin::VectorXs<Scalar> row(n + 1);
  const bool fixed = std::holds_alternative<FixedZeta<Scalar>>(constraint);
  if (fixed) {
    row.setZero();
    row(n) = Scalar(1);
  } else {
    row = std::get<ArclengthConstraint<Scalar>>(constraint).tangent;
  }

  auto defect = [&](const galerkin::VectorXs<Scalar>& w,
                    galerkin::VectorXs<Scalar>& rhs) -> Scalar {
    const auto st = detail::unpack(w, state.sym_div);
    rhs.head(n) = galerkin::residual(st, grid, p);
    if (fixed) {
      rhs(n) = w(n) - std::get<FixedZeta<Scalar>>(constraint).zeta;
    } else {
      const auto& ac = std::get<ArclengthConstraint<Scalar>>(constraint);
      rhs(n) = ac.tangent.dot(w - ac.anchor) - ac.h;
    }
    return rhs.norm();
  };

  galerkin::VectorXs<Scalar> rhs(n + 1), rhs_try(n + 1);
  Scalar norm = defect(v, rhs);
  for (int it = 0; it < cfg.max_iters; ++it) {
    if (norm < cfg.newton_tol) {
      if (iterations_out) *iterations_out = it;
      return detail::unpack(v, state.sym_div);
    }
    const auto B =
        detail::bordered_matrix(detail::unpack(v, state.sym_div), grid, p, row);
    galerkin::VectorXs<Scalar> dv = B.partialPivLu().solve(rhs);
    if (!dv.allFinite() ||
        dv.norm() > Scalar(1e12) * (Scalar(1) + v.norm()))
      throw SingularJacobian("newton_correct: bordered solve failed");

    // damping: halve the step until the defect decreases
    Scalar alpha = Scalar(1);
    bool accepted = false;
    for (int cut = 0; cut < 8; ++cut) {
      const galerkin::VectorXs<Scalar> v_try = v - alpha * dv;
      const Scalar norm_try = defect(v_try, rhs_try);
      if (norm_try < norm) {
        v = v_try;
        rhs = rhs_try;
        norm = norm_try;
        accepted = true;
        break;
      }
      alpha /= Scalar(2);
    }
    if (!accepted)
      throw NoConvergence("newton_correct: damping stalled at defect " +
                          std::to_string(static_cast<double>(norm)));
  }
  if (norm < cfg.newton_tol) {
    if (iterations_out) *iterations_out = cfg.max_iters;
    return detail::unpack(v, state.sym_div);
  }
  throw NoConvergence("newton_correct: no convergence after " +
                      std::to_string(cfg.max_iters) + " iterations");
}

/// Unit tangent of the solution path at a converged state.  The previous
/// tangent closes the bordered system and fixes the orientation.
template <typename Scalar>
galerkin::VectorXs<Scalar> path_tangent(
    const FourierState<Scalar>& state, const CosineGrid<Scalar>& grid,
    const Params<Scalar>& p, const galerkin::VectorXs<Scalar>& previous) {
  const int n = 2 * (state.L() + 1);
  const auto B = detail::bordered_matrix(state, grid, p, previous);
  galerkin::VectorXs<Scalar> rhs = galerkin::VectorXs<Scalar>::Zero(n + 1);
  rhs(n) = Scalar(1);
  galerkin::VectorXs<Scalar> tau = B.partialPivLu().solve(rhs);
  if (!tau.allFinite() || tau.norm() == Scalar(0))
    return previous;  // singular point; keep the incoming direction
  tau.normalize();
  if (tau.dot(previous) < Scalar(0)) tau = -tau;
  return tau;
}

/// Predictor for leaving the trivial curve at a primary bifurcation point:
/// the constant state plus sign * amplitude times the zero-eigenvalue
/// direction of the mode-k block, with zeta held at the curve value.
template <typename Scalar>
FourierState<Scalar> branch_switch(const PrimaryBifPoint<Scalar>& bp, int sign,
                                   Scalar amplitude,
                                   const CosineGrid<Scalar>& grid,
                                   const Params<Scalar>& p) {
  if (bp.k > grid.L())
    throw ConfigError("branch_switch: mode k exceeds truncation L");
  const auto spec = mode_eigenvalues(bp.t, bp.k, p);
  if (spec.complex_pair ||
      std::min(std::abs(spec.roots[0]), std::abs(spec.roots[1])) > Scalar(1e-6))
    throw GenericityViolation(
        "branch_switch: no zero crossing of mode k at this point");

  FourierState<Scalar> st;
  st.zeta = bp.point.zeta;
  st.coeffs.setZero(grid.L() + 1);
  st.coeffs(0) = bp.point.a;
  st.sym_div = bp.k;

  // kernel direction of the mode-k 2x2 Jacobian block
  const auto J = galerkin::jacobian(st, grid, p);
  const int n = grid.L() + 1;
  const Scalar a = J(bp.k, bp.k), b = J(bp.k, n + bp.k);
  const Scalar c = J(n + bp.k, bp.k), d = J(n + bp.k, n + bp.k);
  const Scalar mean = (a + d) / Scalar(2);
  const Scalar disc = (a - d) * (a - d) / Scalar(4) + b * c;
  if (disc < Scalar(0))
    throw GenericityViolation("branch_switch: complex mode block");
  const Scalar sq = std::sqrt(disc);
  const Scalar lam =
      std::abs(mean - sq) < std::abs(mean + sq) ? mean - sq : mean + sq;
  Scalar v0, v1;
  if (std::abs(b) >= std::abs(c)) {
    v0 = b;
    v1 = lam - a;
  } else {
    v0 = lam - d;
    v1 = c;
  }
  const Scalar nv = std::hypot(v0, v1);
  if (nv == Scalar(0))
    throw GenericityViolation("branch_switch: degenerate kernel direction");
  v0 /= nv;
  v1 /= nv;

  st.coeffs(bp.k) = Scalar(sign) * amplitude * std::complex<Scalar>(v0, v1);
  return st;
}

/// Distance of a state to the constant-solution curve measured in
/// (zeta, field mean, amplitude).
template <typename Scalar>
Scalar distance_to_trivial(const FourierState<Scalar>& state,
                           const CosineGrid<Scalar>& grid,
                           const Params<Scalar>& p, int scan = 2000) {
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i <= scan; ++i) {
    const Scalar t = Scalar(-0.9995) + Scalar(1.999) * Scalar(i) / Scalar(scan);
    const auto pt = eval_trivial(t, p);
    const Scalar dz = state.zeta - pt.zeta;
    const Scalar da = std::abs(state.coeffs(0) - pt.a);
    best = std::min(best, dz * dz + da * da);
  }
  const Scalar amp = galerkin::amplitude(state, grid);
  return std::sqrt(best + amp * amp);
}

/// Tangent-predictor / Newton-corrector arclength continuation.
///
/// The step halves when the corrector fails, grows by step_growth after
/// easy_steps cheap correctors and stays inside [min_step, max_step].  Near
/// the trivial curve the step is capped at return_tol/2 so re-entry cannot
/// be skipped over.  Termination: proximity to the trivial curve below
/// return_tol (the nearest primary point within 1e-2 in (zeta, amplitude)
/// is recorded), the step budget, or the coefficient norm exceeding the
/// a priori bound 10 (1 + |f|).
template <typename Scalar>
Branch<Scalar> trace_branch(
    const FourierState<Scalar>& start, int ambient_div,
    const ContinuationConfig<Scalar>& cfg, const CosineGrid<Scalar>& grid,
    const Params<Scalar>& p,
    std::optional<PrimaryBifPoint<Scalar>> origin = std::nullopt,
    std::optional<galerkin::VectorXs<Scalar>> tangent_hint = std::nullopt) {
  galerkin::check_sizes(start, grid);
  const int n = 2 * (start.L() + 1);

  Branch<Scalar> branch;
  branch.origin = origin;
  branch.ambient_div = ambient_div;

  galerkin::VectorXs<Scalar> seed_row;
  if (tangent_hint) {
    seed_row = tangent_hint->normalized();
  } else {
    seed_row = galerkin::VectorXs<Scalar>::Zero(n + 1);
    seed_row(n) = Scalar(1);
  }

  auto make_point = [&](const FourierState<Scalar>& st, Scalar s,
                        const galerkin::VectorXs<Scalar>& tau) {
    BranchPoint<Scalar> bp;
    bp.state = st;
    bp.s = s;
    bp.tangent = tau;
    bp.morse_in_ambient = galerkin::morse_in_ambient(st, grid, p, ambient_div);
    bp.sym_residual = galerkin::sym_residual(st, st.sym_div);
    bp.amplitude = galerkin::amplitude(st, grid);
    return bp;
  };

  galerkin::VectorXs<Scalar> tau = path_tangent(start, grid, p, seed_row);
  branch.points.push_back(make_point(start, Scalar(0), tau));

  const Scalar norm_bound = Scalar(10) * (Scalar(1) + std::abs(p.f));
  galerkin::VectorXs<Scalar> prev = detail::pack(start);
  Scalar s = 0;
  Scalar h = std::clamp(cfg.initial_step, cfg.min_step, cfg.max_step);
  int easy = 0;
  bool armed = distance_to_trivial(start, grid, p) >
               Scalar(3) * cfg.return_tol;

  int accepted = 0;
  while (accepted < cfg.budget) {
    const galerkin::VectorXs<Scalar> guess_v = prev + h * tau;
    FourierState<Scalar> guess = detail::unpack(guess_v, start.sym_div);
    int iters = 0;
    FourierState<Scalar> next;
    try {
      next = newton_correct(
          guess,
          Constraint<Scalar>(ArclengthConstraint<Scalar>{prev, tau, h}), grid,
          p, cfg, &iters);
    } catch (const Error&) {
      if (h <= cfg.min_step * Scalar(1.0001)) {
        branch.terminus.kind = TerminusKind::StepLimit;
        return branch;
      }
      h = std::max(h / Scalar(2), cfg.min_step);
      easy = 0;
      continue;
    }

    s += h;
    ++accepted;
    prev = detail::pack(next);
    tau = path_tangent(next, grid, p, tau);
    branch.points.push_back(make_point(next, s, tau));

    if (prev.head(n).norm() > norm_bound) {
      branch.terminus.kind = TerminusKind::Diverged;
      return branch;
    }

    const Scalar dist = distance_to_trivial(next, grid, p);
    if (!armed && dist > Scalar(3) * cfg.return_tol) armed = true;
    if (armed && dist < Scalar(5) * cfg.return_tol)
      h = std::min(h, std::max(cfg.return_tol / Scalar(2), cfg.min_step));
    if (armed && dist < cfg.return_tol) {
      branch.terminus.kind = TerminusKind::ReturnedToTrivial;
      const Scalar amp = branch.points.back().amplitude;
      Scalar best = std::numeric_limits<Scalar>::infinity();
      for (const auto& pp : all_primary_points(p)) {
        const Scalar dd = std::hypot(next.zeta - pp.point.zeta, amp);
        if (dd < best) {
          best = dd;
          branch.terminus.distance = dd;
          if (dd < Scalar(1e-2)) {
            branch.terminus.k = pp.k;
            branch.terminus.slot = pp.slot;
          }
        }
      }
      return branch;
    }

    if (iters <= 3) {
      if (++easy >= cfg.easy_steps) {
        h = std::min(h * cfg.step_growth, cfg.max_step);
        easy = 0;
      }
    } else {
      easy = 0;
    }
  }
  branch.terminus.kind = TerminusKind::StepLimit;
  return branch;
}

/// Branch-switch followed by the corrector, returning the accepted state
/// and the direction used, ready to seed trace_branch.
template <typename Scalar>
std::pair<FourierState<Scalar>, galerkin::VectorXs<Scalar>> switch_and_correct(
    const PrimaryBifPoint<Scalar>& bp, int sign, Scalar amplitude,
    const CosineGrid<Scalar>& grid, const Params<Scalar>& p,
    const ContinuationConfig<Scalar>& cfg = {}) {
  const auto guess = branch_switch(bp, sign, amplitude, grid, p);
  const int n = 2 * (grid.L() + 1);

  FourierState<Scalar> trivial = guess;
  trivial.coeffs(bp.k) = std::complex<Scalar>(0, 0);
  galerkin::VectorXs<Scalar> anchor = detail::pack(trivial);
  galerkin::VectorXs<Scalar> dir = galerkin::VectorXs<Scalar>::Zero(n + 1);
  dir.head(n) = galerkin::to_real<Scalar>(
      (guess.coeffs - trivial.coeffs).eval());
  dir.normalize();

  const auto corrected = newton_correct(
      guess,
      Constraint<Scalar>(ArclengthConstraint<Scalar>{anchor, dir, amplitude}),
      grid, p, cfg);
  return {corrected, dir};
}

/// Bracket every change of the ambient Morse count along a traced branch.
///
/// Each change is bisected by arclength with fresh corrector solves (at most
/// 20 per change) until the bracket is narrower than 1e-4; corrector
/// failures keep the widest verified bracket instead of erroring out.
template <typename Scalar>
std::vector<std::pair<BranchPoint<Scalar>, BranchPoint<Scalar>>>
locate_secondary(const Branch<Scalar>& branch, int ambient_div,
                 const CosineGrid<Scalar>& grid, const Params<Scalar>& p,
                 const ContinuationConfig<Scalar>& cfg = {}) {
  std::vector<std::pair<BranchPoint<Scalar>, BranchPoint<Scalar>>> out;
  if (branch.ambient_div != ambient_div)
    throw ConfigError(
        "locate_secondary: branch was traced with a different ambient");

  for (size_t i = 0; i + 1 < branch.points.size(); ++i) {
    if (branch.points[i].morse_in_ambient ==
        branch.points[i + 1].morse_in_ambient)
      continue;

    BranchPoint<Scalar> left = branch.points[i];
    BranchPoint<Scalar> right = branch.points[i + 1];
    int solves = 0;
    while (right.s - left.s > Scalar(1e-4) && solves < 20) {
      const Scalar h = (right.s - left.s) / Scalar(2);
      const galerkin::VectorXs<Scalar> anchor = detail::pack(left.state);
      const galerkin::VectorXs<Scalar> guess_v = anchor + h * left.tangent;
      ++solves;
      FourierState<Scalar> mid;
      try {
        mid = newton_correct(
            detail::unpack(guess_v, left.state.sym_div),
            Constraint<Scalar>(
                ArclengthConstraint<Scalar>{anchor, left.tangent, h}),
            grid, p, cfg);
      } catch (const Error&) {
        break;
      }
      BranchPoint<Scalar> bp;
      bp.state = mid;
      bp.s = left.s + h;
      bp.tangent = path_tangent(mid, grid, p, left.tangent);
      bp.morse_in_ambient =
          galerkin::morse_in_ambient(mid, grid, p, ambient_div);
      bp.sym_residual = galerkin::sym_residual(mid, mid.sym_div);
      bp.amplitude = galerkin::amplitude(mid, grid);
      if (bp.morse_in_ambient == left.morse_in_ambient) {
        left = bp;
      } else {
        right = bp;
      }
    }
    out.emplace_back(left, right);
  }
  return out;
}

}  // namespace llebif
