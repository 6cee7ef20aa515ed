#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "llebif/errors.hpp"
#include "llebif/params.hpp"
#include "llebif/primary_points.hpp"
#include "llebif/trivial_curve.hpp"

namespace llebif {

/// Real eigenvalues of the linearization at a constant solution, restricted
/// to one Fourier mode.  Empty when the underlying quadratic has a complex
/// conjugate pair (|a|^4 < 1), in which case complex_pair is set.
template <typename Scalar = double>
struct ModeSpectrum {
  int l = 0;
  std::vector<Scalar> roots;  // 0 or 2 values, ascending
  bool complex_pair = false;
};

/// Negative-eigenvalue count over the mode set {0, p, 2p, ...} at one curve
/// point, together with the resulting Leray-Schauder index.
template <typename Scalar = double>
struct MorseData {
  Scalar t = 0;
  int p_div = 1;
  int count = 0;   // number of negative real eigenvalues
  int iota = 1;    // (-1)^count
  int cutoff = 0;  // largest mode examined
};

/// Index jump at a primary bifurcation point in the ambient space of
/// 2*pi/p_div-periodic functions.
template <typename Scalar = double>
struct IndexJump {
  PrimaryBifPoint<Scalar> at;
  int p_div = 1;
  Scalar eps = 0;           // one-sided offset actually used
  int iota_left = 1;
  int iota_right = 1;
  int sign_zeta_prime = 1;
  int delta_star = 0;       // sign(zeta') * (iota_right - iota_left)
};

/// Eigenvalues E of the linearization at the curve point t for mode l.
///
/// With A = |a(t)|^2, sigma = d l^2 + sign(d) and mu = zeta + d l^2 - E sigma
/// the eigenvalue relation reads mu^2 - 4 A mu + 1 + 3 A^2 = 0, so
/// mu = 2A +- sqrt(A^2 - 1) and E = (zeta + d l^2 - mu) / sigma.
template <typename Scalar>
ModeSpectrum<Scalar> mode_eigenvalues(Scalar t, int l,
                                      const Params<Scalar>& p) {
  const auto pt = eval_trivial(t, p);
  const Scalar sigma = p.d * Scalar(l) * Scalar(l) + p.sign_d();
  if (std::abs(sigma) < Scalar(1e-12))
    throw ResonantMode("mode_eigenvalues: d*l^2 + sign(d) vanishes at l=" +
                       std::to_string(l));

  ModeSpectrum<Scalar> out;
  out.l = l;
  const Scalar A = std::norm(pt.a);
  const Scalar disc = A * A - Scalar(1);
  if (disc < Scalar(0)) {
    out.complex_pair = true;
    return out;
  }
  const Scalar s = std::sqrt(disc);
  const Scalar base = pt.zeta + p.d * Scalar(l) * Scalar(l);
  const Scalar e1 = (base - (Scalar(2) * A + s)) / sigma;
  const Scalar e2 = (base - (Scalar(2) * A - s)) / sigma;
  out.roots = {std::min(e1, e2), std::max(e1, e2)};
  return out;
}

/// Count the negative real eigenvalues over modes l in {0, p_div, 2 p_div, ...}.
///
/// Negative eigenvalues require d l^2 < mu_+ - zeta (d > 0) resp.
/// |d| l^2 < zeta - mu_- (d < 0), so the enumeration stops at an explicit
/// bound; two extra mode steps are scanned on top as a stability margin.
///
/// Throws DegeneratePoint when some mode eigenvalue is within 1e-10 of zero.
template <typename Scalar>
MorseData<Scalar> morse_count(Scalar t, int p_div, const Params<Scalar>& p) {
  if (p_div < 1) throw ConfigError("morse_count: p_div must be positive");
  const auto pt = eval_trivial(t, p);
  const Scalar A = std::norm(pt.a);
  const Scalar disc = A * A - Scalar(1);

  MorseData<Scalar> out;
  out.t = t;
  out.p_div = p_div;
  if (disc < Scalar(0)) {
    // every mode carries a complex pair; nothing to count
    out.count = 0;
    out.iota = 1;
    out.cutoff = 0;
    return out;
  }

  const Scalar s = std::sqrt(disc);
  const Scalar margin = p.d > Scalar(0)
                            ? (Scalar(2) * A + s) - pt.zeta
                            : pt.zeta - (Scalar(2) * A - s);
  Scalar l_bound = Scalar(0);
  if (margin > Scalar(0)) l_bound = std::sqrt(margin / std::abs(p.d));

  int cutoff = p_div * static_cast<int>(std::floor(l_bound / Scalar(p_div)));
  cutoff += 2 * p_div;  // stability margin

  int count = 0;
  for (int l = 0; l <= cutoff; l += p_div) {
    const auto spec = mode_eigenvalues(t, l, p);
    for (Scalar E : spec.roots) {
      if (std::abs(E) < Scalar(1e-10))
        throw DegeneratePoint("morse_count: zero eigenvalue at t=" +
                              std::to_string(t) + ", l=" + std::to_string(l));
      if (E < Scalar(0)) {
        if (l > cutoff - 2 * p_div)
          throw GenericityViolation(
              "morse_count: negative eigenvalue beyond the analytic bound");
        ++count;
      }
    }
  }
  out.count = count;
  out.iota = (count % 2 == 0) ? 1 : -1;
  out.cutoff = cutoff;
  return out;
}

/// Index jump at bp in the ambient space with period divisor p_div.
///
/// The one-sided offset eps starts at 1e-3 and is halved until
/// [t-eps, t+eps] contains no other crossing parameter of a mode in
/// p_div * {1, 2, ...} and no fold of the curve, and until both one-sided
/// counts are stable under a further halving.
template <typename Scalar>
IndexJump<Scalar> index_jump(const PrimaryBifPoint<Scalar>& bp, int p_div,
                             const Params<Scalar>& p) {
  if (p_div < 1) throw ConfigError("index_jump: p_div must be positive");
  const Scalar t = bp.t;
  const Scalar dz = bp.point.zeta_prime;
  if (std::abs(dz) < Scalar(1e-8))
    throw TurningPointBifurcation("index_jump: zeta'(t) vanishes at t=" +
                                  std::to_string(t));

  // Parameters that must stay outside the sampling interval: crossings of
  // modes in the ambient set, and folds of the curve.
  std::vector<Scalar> excluded = turning_points(p);
  const int kmax = compute_kmax(p);
  for (int k = p_div; k <= kmax; k += p_div) {
    for (const auto& q : find_primary_points(k, p)) {
      if (std::abs(q.t - t) > Scalar(1e-12)) excluded.push_back(q.t);
    }
  }

  auto interval_clear = [&](Scalar eps) {
    for (Scalar x : excluded)
      if (std::abs(x - t) <= eps) return false;
    return true;
  };

  IndexJump<Scalar> out;
  out.at = bp;
  out.p_div = p_div;
  out.sign_zeta_prime = dz > Scalar(0) ? 1 : -1;

  for (Scalar eps = Scalar(1e-3); eps >= Scalar(1e-10); eps /= Scalar(2)) {
    if (!interval_clear(eps)) continue;
    try {
      const auto left = morse_count(t - eps, p_div, p);
      const auto right = morse_count(t + eps, p_div, p);
      const auto left_h = morse_count(t - eps / Scalar(2), p_div, p);
      const auto right_h = morse_count(t + eps / Scalar(2), p_div, p);
      if (left.count != left_h.count || right.count != right_h.count)
        continue;
      out.eps = eps;
      out.iota_left = left.iota;
      out.iota_right = right.iota;
      out.delta_star = out.sign_zeta_prime * (right.iota - left.iota);
      return out;
    } catch (const DegeneratePoint&) {
      continue;  // sampled a crossing; shrink further
    }
  }
  throw NoStableEps("index_jump: offset underflowed at t=" +
                    std::to_string(t));
}

}  // namespace llebif
