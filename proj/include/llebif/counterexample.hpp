#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "llebif/errors.hpp"

namespace llebif::counterexample {

/// Parameters of the non-uniformly-differentiable construction: the
/// series-localization rate a_cut in (2, 3), the maximizer z_star of
/// sin^2(z)/z on the positive axis and the maximum value M.
template <typename Scalar = double>
struct CexParams {
  Scalar a_cut;
  Scalar z_star;
  Scalar M;
};

/// Golden-section maximization of sin^2(z)/z on (0.5, 2.0), interval
/// shrunk below 1e-14, then polished on the stationarity equation
/// z sin(2z) = sin^2(z).  Value comparisons alone cannot place a quadratic
/// maximum beyond ~sqrt(eps), so the polish is what makes the derivative
/// residual drop below 1e-12.
template <typename Scalar = double>
CexParams<Scalar> maximize_sin2_over_z() {
  auto value = [](Scalar z) {
    const Scalar s = std::sin(z);
    return s * s / z;
  };
  const Scalar ratio = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
  Scalar a = Scalar(0.5), b = Scalar(2.0);
  Scalar c = b - ratio * (b - a), d = a + ratio * (b - a);
  while (b - a > Scalar(1e-14)) {
    if (value(c) > value(d)) {
      b = d;
      d = c;
      c = b - ratio * (b - a);
    } else {
      a = c;
      c = d;
      d = a + ratio * (b - a);
    }
  }
  Scalar z = (a + b) / Scalar(2);
  for (int it = 0; it < 4; ++it) {
    const Scalar g = z * std::sin(2 * z) - std::pow(std::sin(z), 2);
    const Scalar dg = Scalar(2) * z * std::cos(2 * z);
    if (dg == Scalar(0)) break;
    z -= g / dg;
  }
  return CexParams<Scalar>{Scalar(0), z, value(z)};
}

/// CexParams for a given localization rate; rejects a_cut outside (2, 3).
template <typename Scalar = double>
CexParams<Scalar> make_params(Scalar a_cut) {
  if (!(a_cut > Scalar(2) && a_cut < Scalar(3)))
    throw ConfigError("counterexample: a_cut must lie in (2, 3)");
  auto c = maximize_sin2_over_z<Scalar>();
  c.a_cut = a_cut;
  return c;
}

/// Smooth even bump: 1 on |z| <= 1/2, 0 on |z| >= 1, strictly between
/// otherwise.
template <typename Scalar>
Scalar smooth_bump(Scalar z) {
  auto g = [](Scalar s) {
    return s > Scalar(0) ? std::exp(Scalar(-1) / s) : Scalar(0);
  };
  z = std::abs(z);
  const Scalar up = g(Scalar(2) - Scalar(2) * z);
  const Scalar down = g(Scalar(2) * z - Scalar(1));
  if (up + down == Scalar(0)) return Scalar(0);
  return up / (up + down);
}

/// The building block: x - M^{-1} sin^2(x lambda^{-3}) lambda^3 for
/// lambda != 0, and x itself on the lambda = 0 slice.  Differentiable, but
/// not uniformly so along the trivial line.
template <typename Scalar>
Scalar base(Scalar x, Scalar lambda, const CexParams<Scalar>& c) {
  if (lambda == Scalar(0)) return x;
  const Scalar l3 = lambda * lambda * lambda;
  const Scalar s = std::sin(x / l3);
  return x - s * s * l3 / c.M;
}

/// The normalized remainder of the first-order expansion of `base` along
/// the nontrivial zero set x = z_star lambda^3.  Identically 1: the defect
/// of uniform differentiability does not decay with lambda.
template <typename Scalar>
Scalar diff_quotient(Scalar lambda, const CexParams<Scalar>& c) {
  if (lambda == Scalar(0))
    throw ConfigError("diff_quotient: lambda must be nonzero");
  const Scalar l3 = lambda * lambda * lambda;
  const Scalar x = c.z_star * l3;
  const Scalar z = x / l3;
  const Scalar s = std::sin(z);
  return s * s / (c.M * z);
}

namespace detail {

// Window of k for which chi(a 2^k (lambda -+ 2^-k)) may be nonzero:
// 2^-k within a factor (a-1)/a .. (a+1)/a of |lambda|, which spans at
// most two integers; the scan range includes one neighbour on each side.
template <typename Scalar>
std::pair<int, int> candidate_window(Scalar lambda, Scalar a) {
  const Scalar al = std::abs(lambda);
  const int k0 =
      static_cast<int>(std::floor(std::log2((a - Scalar(1)) / (a * al))));
  return {k0 - 2, k0 + 3};
}

}  // namespace detail

/// The assembled series for a raw localization rate a (internal form; the
/// public entry point takes CexParams).  For lambda != 0 only the
/// candidate-window terms can contribute.
template <typename Scalar, typename Chi>
Scalar eval_series(Scalar x, Scalar lambda, Scalar a,
                   const CexParams<Scalar>& c, Chi&& chi) {
  if (lambda == Scalar(0)) return Scalar(0);
  const auto [k_lo, k_hi] = detail::candidate_window(lambda, a);
  Scalar sum = 0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const Scalar pk = std::ldexp(Scalar(1), -k);  // 2^-k
    const Scalar scale = a / pk;                  // a 2^k
    const Scalar w_minus = chi(scale * (lambda - pk));
    if (w_minus != Scalar(0)) sum += w_minus * base(x, lambda - pk, c);
    const Scalar w_plus = chi(scale * (lambda + pk));
    if (w_plus != Scalar(0)) sum += w_plus * base(x, lambda + pk, c);
  }
  return lambda * sum;
}

/// The assembled function: differentiable, vanishing on the trivial line,
/// with bifurcation points accumulating at (0, 0).
template <typename Scalar, typename Chi>
Scalar eval(Scalar x, Scalar lambda, const CexParams<Scalar>& c, Chi&& chi) {
  return eval_series(x, lambda, c.a_cut, c, chi);
}

template <typename Scalar>
Scalar eval(Scalar x, Scalar lambda, const CexParams<Scalar>& c) {
  return eval(x, lambda, c, [](Scalar z) { return smooth_bump(z); });
}

/// x-derivative on the trivial line, in closed form: lambda times the sum
/// of all active cutoff weights.
template <typename Scalar, typename Chi>
Scalar derivative_at_zero(Scalar lambda, const CexParams<Scalar>& c,
                          Chi&& chi) {
  if (lambda == Scalar(0)) return Scalar(0);
  const auto [k_lo, k_hi] = detail::candidate_window(lambda, c.a_cut);
  Scalar sum = 0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const Scalar pk = std::ldexp(Scalar(1), -k);
    const Scalar scale = c.a_cut / pk;
    sum += chi(scale * (lambda - pk)) + chi(scale * (lambda + pk));
  }
  return lambda * sum;
}

template <typename Scalar>
Scalar derivative_at_zero(Scalar lambda, const CexParams<Scalar>& c) {
  return derivative_at_zero(lambda, c,
                            [](Scalar z) { return smooth_bump(z); });
}

template <typename Scalar = double>
struct ClaimResult {
  bool passed = true;
  std::string detail;
};

/// Outcome of the executable checks: (smallness) |F| <= 4 |lambda| |x|,
/// (derivative sign) F_x(0, lambda) lambda > 0 away from lambda = 0, and
/// (zeros) a nontrivial zero next to every dyadic level 2^-n.
template <typename Scalar = double>
struct Report {
  ClaimResult<Scalar> smallness;        // claim (i)
  ClaimResult<Scalar> derivative_sign;  // claim (ii)
  ClaimResult<Scalar> zeros;            // claim (iii)
  bool all_passed = false;
};

/// Default lambda grid for the derivative-sign check: log-spaced on both
/// sides of (and excluding) zero.
template <typename Scalar = double>
std::vector<Scalar> default_lambda_grid() {
  std::vector<Scalar> grid;
  for (int i = 0; i <= 120; ++i) {
    const Scalar lam = std::pow(Scalar(10), Scalar(-6) + Scalar(6.3) *
                                                             Scalar(i) /
                                                             Scalar(120));
    grid.push_back(lam);
    grid.push_back(-lam);
  }
  return grid;
}

/// Run the checks without throwing.
template <typename Scalar, typename Chi>
Report<Scalar> run_checks(int n_max, const CexParams<Scalar>& c, Chi&& chi,
                          const std::vector<Scalar>& lambda_grid) {
  if (n_max < 1 || n_max > 40)
    throw ConfigError("counterexample: n_max must lie in [1, 40]");

  Report<Scalar> rep;

  // (iii) nontrivial zeros near every (0, 2^-n)
  const Scalar a = c.a_cut;
  const Scalar slack = std::min((a - Scalar(1)) / (Scalar(2) * a),
                                (a - Scalar(2)) / a);
  for (int n = 1; n <= n_max && rep.zeros.passed; ++n) {
    const Scalar level = std::ldexp(Scalar(1), -n);
    for (int sg : {+1, -1}) {
      const Scalar lam = Scalar(sg) * Scalar(0.5) * slack * level;
      const Scalar x = c.z_star * lam * lam * lam;
      const Scalar v = eval(x, level + lam, c, chi);
      if (!(x != Scalar(0)) || !(std::abs(v) <= Scalar(1e-14))) {
        rep.zeros.passed = false;
        rep.zeros.detail = "no nontrivial zero at n=" + std::to_string(n);
        break;
      }
    }
  }
  if (rep.zeros.passed)
    rep.zeros.detail =
        "nontrivial zeros found beside 2^-n for n=1.." + std::to_string(n_max);

  // (ii) derivative sign away from lambda = 0
  for (Scalar lam : lambda_grid) {
    if (lam == Scalar(0)) continue;  // the claim is strict only off zero
    const Scalar v = derivative_at_zero(lam, c, chi);
    if (!(v * lam > Scalar(0))) {
      rep.derivative_sign.passed = false;
      rep.derivative_sign.detail =
          "F_x(0, lambda) lambda <= 0 at lambda=" + std::to_string(double(lam));
      break;
    }
  }
  if (rep.derivative_sign.passed)
    rep.derivative_sign.detail = "sign correct on the whole grid";

  // (i) smallness bound on random samples
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), ul(-2.0, 2.0);
  for (int i = 0; i < 20000; ++i) {
    const Scalar x = Scalar(ux(rng));
    const Scalar lam = Scalar(ul(rng));
    const Scalar bound =
        Scalar(4) * std::abs(lam) * std::abs(x) * (Scalar(1) + Scalar(1e-12));
    if (std::abs(eval(x, lam, c, chi)) > bound) {
      rep.smallness.passed = false;
      rep.smallness.detail = "bound violated at x=" +
                             std::to_string(double(x)) +
                             ", lambda=" + std::to_string(double(lam));
      break;
    }
  }
  if (rep.smallness.passed)
    rep.smallness.detail = "|F| <= 4 |lambda| |x| on 20000 samples";

  rep.all_passed = rep.smallness.passed && rep.derivative_sign.passed &&
                   rep.zeros.passed;
  return rep;
}

template <typename Scalar>
Report<Scalar> run_checks(int n_max, const CexParams<Scalar>& c) {
  return run_checks(n_max, c, [](Scalar z) { return smooth_bump(z); },
                    default_lambda_grid<Scalar>());
}

/// Checking entry point: returns the report, throwing ReportedFailure that
/// names the first violated claim.
template <typename Scalar, typename Chi>
Report<Scalar> verify(int n_max, const CexParams<Scalar>& c, Chi&& chi,
                      const std::vector<Scalar>& lambda_grid) {
  auto rep = run_checks(n_max, c, chi, lambda_grid);
  if (!rep.zeros.passed)
    throw ReportedFailure("counterexample zeros claim: " + rep.zeros.detail);
  if (!rep.derivative_sign.passed)
    throw ReportedFailure("counterexample derivative-sign claim: " +
                          rep.derivative_sign.detail);
  if (!rep.smallness.passed)
    throw ReportedFailure("counterexample smallness claim: " +
                          rep.smallness.detail);
  return rep;
}

template <typename Scalar>
Report<Scalar> verify(int n_max, const CexParams<Scalar>& c) {
  return verify(n_max, c, [](Scalar z) { return smooth_bump(z); },
                default_lambda_grid<Scalar>());
}

}  // namespace llebif::counterexample
