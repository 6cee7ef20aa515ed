#pragma once

#include <string>
#include <vector>

#include "llebif/errors.hpp"
#include "llebif/params.hpp"
#include "llebif/primary_points.hpp"
#include "llebif/spectral_index.hpp"

namespace llebif {

/// Verdict of the symmetry-breaking criterion for the pair of mode-q
/// bifurcation points, evaluated in the ambient space with divisor p_div.
/// A nonzero total certifies secondary bifurcation along the connecting
/// continuum of 2*pi/q-periodic solutions.
template <typename Scalar = double>
struct Certificate {
  int q = 0;
  int p_div = 1;
  std::vector<PrimaryBifPoint<Scalar>> points;
  std::vector<IndexJump<Scalar>> jumps;
  int total = 0;
  bool certified = false;
};

/// The two mode-q bifurcation points, valid for kmax/2 < q <= kmax.
///
/// Inside this window q is the only multiple of q carrying bifurcation
/// points, so the symmetric continuum meets the curve in exactly this pair.
template <typename Scalar>
std::vector<PrimaryBifPoint<Scalar>> primary_pair(int q,
                                                  const Params<Scalar>& p) {
  if (q < 1) throw ConfigError("primary_pair: q must be positive");
  const int kmax = compute_kmax(p);
  if (!(2 * q > kmax && q <= kmax))
    throw OutOfWindow("primary_pair: q=" + std::to_string(q) +
                      " outside (kmax/2, kmax] with kmax=" +
                      std::to_string(kmax));
  auto pts = find_primary_points(q, p);
  if (pts.size() != 2)
    throw MissingPair("primary_pair: mode q=" + std::to_string(q) + " has " +
                      std::to_string(pts.size()) + " roots, expected 2");
  return pts;
}

/// Sum of index jumps over the given points in ambient divisor p_div.
/// Equals zero whenever the points exhaust the curve contacts of a bounded
/// continuum.
template <typename Scalar>
int dancer_balance(const std::vector<PrimaryBifPoint<Scalar>>& points,
                   int p_div, const Params<Scalar>& p) {
  int total = 0;
  for (const auto& bp : points) total += index_jump(bp, p_div, p).delta_star;
  return total;
}

/// Evaluate the symmetry-breaking criterion for (q, p_div).
template <typename Scalar>
Certificate<Scalar> certify(int q, int p_div, const Params<Scalar>& p) {
  if (p_div < 1 || q % p_div != 0 || p_div >= q)
    throw ConfigError("certify: p_div must divide q and be smaller than q");
  Certificate<Scalar> cert;
  cert.q = q;
  cert.p_div = p_div;
  cert.points = primary_pair(q, p);
  for (const auto& bp : cert.points)
    cert.jumps.push_back(index_jump(bp, p_div, p));
  cert.total = 0;
  for (const auto& j : cert.jumps) cert.total += j.delta_star;
  cert.certified = cert.total != 0;
  return cert;
}

}  // namespace llebif
