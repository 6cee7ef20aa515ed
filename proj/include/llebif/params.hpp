#pragma once

#include <cmath>
#include <string>

#include "llebif/errors.hpp"

namespace llebif {

/// Physical constants of one Lugiato-Lefever instance.
///
/// d is the dispersion coefficient, f the forcing amplitude, both
/// dimensionless.  Zero values are rejected: d = 0 degenerates the
/// differential operator and f = 0 collapses the constant-solution
/// curve to the origin.
template <typename Scalar = double>
struct Params {
  Scalar d;
  Scalar f;

  Params(Scalar d_, Scalar f_) : d(d_), f(f_) {
    if (d == Scalar(0)) throw ConfigError("Params: d must be nonzero");
    if (f == Scalar(0)) throw ConfigError("Params: f must be nonzero");
  }

  Scalar sign_d() const { return d > Scalar(0) ? Scalar(1) : Scalar(-1); }
};

using Paramsd = Params<double>;

}  // namespace llebif
