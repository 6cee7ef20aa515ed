#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "llebif/errors.hpp"
#include "llebif/params.hpp"

namespace llebif {

// The curve parameter lives in (-1, 1); the parametrization blows up like
// (1-t^2)^{-1/2} at the ends, so evaluation keeps this margin away from them.
inline constexpr double kCurveDomainGuard = 1e-9;

/// One point of the constant-solution curve, with exact tangent data.
template <typename Scalar = double>
struct TrivialPoint {
  Scalar t;                      // curve parameter in (-1, 1)
  std::complex<Scalar> a;        // constant field value
  Scalar zeta;                   // detuning
  std::complex<Scalar> a_prime;  // da/dt
  Scalar zeta_prime;             // dzeta/dt
};

/// Evaluate the constant-solution curve and its analytic t-derivatives.
///
/// a(t)    = f (1-t^2) - i f t sqrt(1-t^2)
/// zeta(t) = f^2 (1-t^2) + t (1-t^2)^{-1/2}
///
/// Throws DomainError for |t| >= 1 - 1e-9.
template <typename Scalar>
TrivialPoint<Scalar> eval_trivial(Scalar t, const Params<Scalar>& p) {
  if (!(std::abs(t) < Scalar(1) - Scalar(kCurveDomainGuard)))
    throw DomainError("eval_trivial: |t| too close to 1");

  const Scalar f = p.f;
  const Scalar w = Scalar(1) - t * t;
  const Scalar sw = std::sqrt(w);

  TrivialPoint<Scalar> out;
  out.t = t;
  out.a = {f * w, -f * t * sw};
  out.zeta = f * f * w + t / sw;
  out.a_prime = {Scalar(-2) * f * t,
                 -f * (Scalar(1) - Scalar(2) * t * t) / sw};
  out.zeta_prime = Scalar(-2) * f * f * t + Scalar(1) / (w * sw);
  return out;
}

/// d^2 zeta / dt^2, used to classify folds of the curve.
template <typename Scalar>
Scalar trivial_zeta_second(Scalar t, const Params<Scalar>& p) {
  const Scalar w = Scalar(1) - t * t;
  return Scalar(-2) * p.f * p.f + Scalar(3) * t / (w * w * std::sqrt(w));
}

/// Residual of the constant-solution equation (i - zeta) a + |a|^2 a - i f.
/// Vanishes identically on the curve; exposed as a diagnostic.
template <typename Scalar>
Scalar trivial_residual(const TrivialPoint<Scalar>& pt,
                        const Params<Scalar>& p) {
  const std::complex<Scalar> i{Scalar(0), Scalar(1)};
  return std::abs((i - pt.zeta) * pt.a + std::norm(pt.a) * pt.a - i * p.f);
}

/// All folds of the detuning along the curve: roots of zeta'(t) in (-1, 1),
/// located by a sign-change scan refined with bisection to 1e-12.
template <typename Scalar>
std::vector<Scalar> turning_points(const Params<Scalar>& p,
                                   int grid_size = 10000) {
  const Scalar lo = Scalar(-1) + Scalar(16) * Scalar(kCurveDomainGuard);
  const Scalar hi = Scalar(1) - Scalar(16) * Scalar(kCurveDomainGuard);
  auto dz = [&](Scalar t) { return eval_trivial(t, p).zeta_prime; };

  std::vector<Scalar> roots;
  Scalar prev_t = lo;
  Scalar prev_v = dz(lo);
  for (int i = 1; i <= grid_size; ++i) {
    const Scalar t = lo + (hi - lo) * Scalar(i) / Scalar(grid_size);
    const Scalar v = dz(t);
    if (prev_v == Scalar(0)) {
      roots.push_back(prev_t);
    } else if (prev_v * v < Scalar(0)) {
      Scalar a = prev_t, b = t, va = prev_v;
      while (b - a > Scalar(1e-12)) {
        const Scalar m = (a + b) / Scalar(2);
        const Scalar vm = dz(m);
        if (va * vm <= Scalar(0)) {
          b = m;
        } else {
          a = m;
          va = vm;
        }
      }
      roots.push_back((a + b) / Scalar(2));
    }
    prev_t = t;
    prev_v = v;
  }
  return roots;
}

}  // namespace llebif
