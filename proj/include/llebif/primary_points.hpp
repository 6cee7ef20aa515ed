#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "llebif/errors.hpp"
#include "llebif/params.hpp"
#include "llebif/trivial_curve.hpp"

namespace llebif {

/// A point of the constant-solution curve where the mode-k linearization
/// becomes singular.
template <typename Scalar = double>
struct PrimaryBifPoint {
  int k;                       // mode number
  int slot;                    // 1 or 2, ascending-t order within the mode
  Scalar t;                    // root parameter
  TrivialPoint<Scalar> point;  // curve data at t
};

/// Residual whose zeros in t are the mode-k bifurcation points:
///   (zeta + d k^2)^2 - 4 |a|^2 (zeta + d k^2) + 1 + 3 |a|^4.
template <typename Scalar>
Scalar bifurcation_residual(Scalar t, int k, const Params<Scalar>& p) {
  const auto pt = eval_trivial(t, p);
  const Scalar A = std::norm(pt.a);  // |a|^2 = f^2 (1 - t^2)
  const Scalar X = pt.zeta + p.d * Scalar(k) * Scalar(k);
  return X * X - Scalar(4) * A * X + Scalar(1) + Scalar(3) * A * A;
}

/// t-derivative of bifurcation_residual, in closed form.
template <typename Scalar>
Scalar bifurcation_residual_dt(Scalar t, int k, const Params<Scalar>& p) {
  const auto pt = eval_trivial(t, p);
  const Scalar A = std::norm(pt.a);
  const Scalar dA = Scalar(-2) * p.f * p.f * t;
  const Scalar X = pt.zeta + p.d * Scalar(k) * Scalar(k);
  const Scalar dX = pt.zeta_prime;
  return Scalar(2) * X * dX - Scalar(4) * (dA * X + A * dX) +
         Scalar(6) * A * dA;
}

namespace detail {

// Bisection + Newton polish of a bracketed simple root.
template <typename Scalar, typename F, typename DF>
Scalar polish_root(F g, DF dg, Scalar a, Scalar b, Scalar va) {
  while (b - a > Scalar(1e-13)) {
    const Scalar m = (a + b) / Scalar(2);
    const Scalar vm = g(m);
    if (va * vm <= Scalar(0)) {
      b = m;
    } else {
      a = m;
      va = vm;
    }
  }
  Scalar t = (a + b) / Scalar(2);
  for (int it = 0; it < 4; ++it) {
    const Scalar d = dg(t);
    if (d == Scalar(0)) break;
    const Scalar step = g(t) / d;
    const Scalar tn = t - step;
    if (tn <= a - Scalar(1e-10) || tn >= b + Scalar(1e-10)) break;
    t = tn;
    if (std::abs(step) < Scalar(1e-15)) break;
  }
  return t;
}

}  // namespace detail

/// All simple roots of the mode-k bifurcation residual in (-1, 1),
/// sorted ascending, with slot = 1, 2, ... in that order.
///
/// Throws GenericityViolation when a root is not simple (|g'| <= 1e-8)
/// or when the root count is odd.
template <typename Scalar>
std::vector<PrimaryBifPoint<Scalar>> find_primary_points(
    int k, const Params<Scalar>& p, int grid_size = 10000) {
  if (k < 1) throw ConfigError("find_primary_points: k must be positive");
  auto g = [&](Scalar t) { return bifurcation_residual(t, k, p); };
  auto dg = [&](Scalar t) { return bifurcation_residual_dt(t, k, p); };

  const Scalar lo = Scalar(-1) + Scalar(16) * Scalar(kCurveDomainGuard);
  const Scalar hi = Scalar(1) - Scalar(16) * Scalar(kCurveDomainGuard);

  std::vector<Scalar> roots;
  Scalar prev_t = lo, prev_v = g(lo);
  for (int i = 1; i <= grid_size; ++i) {
    const Scalar t = lo + (hi - lo) * Scalar(i) / Scalar(grid_size);
    const Scalar v = g(t);
    if (prev_v == Scalar(0)) {
      roots.push_back(prev_t);
    } else if (prev_v * v < Scalar(0)) {
      roots.push_back(detail::polish_root<Scalar>(g, dg, prev_t, t, prev_v));
    }
    prev_t = t;
    prev_v = v;
  }

  if (roots.size() % 2 != 0)
    throw GenericityViolation("find_primary_points: odd root count for k=" +
                              std::to_string(k));

  std::vector<PrimaryBifPoint<Scalar>> out;
  out.reserve(roots.size());
  int slot = 1;
  for (Scalar t : roots) {
    if (std::abs(dg(t)) <= Scalar(1e-8))
      throw GenericityViolation(
          "find_primary_points: non-simple root at t=" + std::to_string(t));
    out.push_back({k, slot++, t, eval_trivial(t, p)});
  }
  return out;
}

/// Largest mode k that still has bifurcation points, 0 when none exists.
///
/// Roots of the residual require the quadratic in X = zeta + d k^2 to have
/// real solutions, i.e. |a(t)|^4 >= 1 somewhere, and then
/// X in [2|a|^2 - s, 2|a|^2 + s] with s = sqrt(|a|^4 - 1).  Over the band
/// t^2 <= 1 - 1/f^2 this caps d k^2 (for d > 0) resp. |d| k^2 (for d < 0)
/// by an explicit maximum, so the scan over k is finite.
template <typename Scalar>
int compute_kmax(const Params<Scalar>& p, int grid_size = 10000) {
  const Scalar f2 = p.f * p.f;
  if (f2 * f2 < Scalar(1)) return 0;  // discriminant negative for every t

  const Scalar t_band = std::sqrt(Scalar(1) - Scalar(1) / f2);
  const int n = 4000;
  Scalar bound = Scalar(0);
  for (int i = 0; i <= n; ++i) {
    const Scalar t = -t_band + Scalar(2) * t_band * Scalar(i) / Scalar(n);
    if (std::abs(t) >= Scalar(1) - Scalar(2) * Scalar(kCurveDomainGuard))
      continue;
    const auto pt = eval_trivial(t, p);
    const Scalar A = std::norm(pt.a);
    const Scalar disc = A * A - Scalar(1);
    if (disc < Scalar(0)) continue;
    const Scalar s = std::sqrt(disc);
    const Scalar margin = p.d > Scalar(0)
                              ? (Scalar(2) * A + s) - pt.zeta   // d k^2 <= this
                              : pt.zeta - (Scalar(2) * A - s);  // |d| k^2 <= this
    bound = std::max(bound, margin);
  }
  if (bound <= Scalar(0)) return 0;

  const int k_stop =
      1 + static_cast<int>(
              std::ceil(std::sqrt(bound * Scalar(1.000001) / std::abs(p.d))));
  int kmax = 0;
  for (int k = 1; k <= k_stop; ++k) {
    if (!find_primary_points(k, p, grid_size).empty()) kmax = k;
  }
  return kmax;
}

/// Convenience: every primary point for k = 1..kmax, ascending (k, t).
template <typename Scalar>
std::vector<PrimaryBifPoint<Scalar>> all_primary_points(
    const Params<Scalar>& p, int grid_size = 10000) {
  std::vector<PrimaryBifPoint<Scalar>> out;
  const int kmax = compute_kmax(p, grid_size);
  for (int k = 1; k <= kmax; ++k) {
    auto pts = find_primary_points(k, p, grid_size);
    out.insert(out.end(), pts.begin(), pts.end());
  }
  return out;
}

}  // namespace llebif
