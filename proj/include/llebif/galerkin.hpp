#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "llebif/cosine_grid.hpp"
#include "llebif/errors.hpp"
#include "llebif/params.hpp"

namespace llebif {

/// A discretized field a(x) = sum_l c_l cos(l x) together with its detuning.
///
/// sym_div declares the period divisor of the subspace the state is meant to
/// live in; coefficients of modes outside sym_div * {0, 1, 2, ...} are set
/// to zero when such a state is constructed explicitly, and drift away from
/// zero is monitored, not projected out.
template <typename Scalar = double>
struct FourierState {
  using Complex = std::complex<Scalar>;
  using VectorXc = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  Scalar zeta = 0;
  VectorXc coeffs;  // size L+1
  int sym_div = 1;

  int L() const { return static_cast<int>(coeffs.size()) - 1; }
};

namespace galerkin {

template <typename Scalar>
using VectorXs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixXs = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
void check_sizes(const FourierState<Scalar>& state,
                 const CosineGrid<Scalar>& grid) {
  if (state.L() != grid.L())
    throw ConfigError("galerkin: state has L=" + std::to_string(state.L()) +
                      " but grid has L=" + std::to_string(grid.L()));
}

/// Flatten complex coefficients as [Re c; Im c].
template <typename Scalar>
VectorXs<Scalar> to_real(
    const Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>& c) {
  VectorXs<Scalar> u(2 * c.size());
  u.head(c.size()) = c.real();
  u.tail(c.size()) = c.imag();
  return u;
}

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> to_complex(
    const VectorXs<Scalar>& u) {
  const auto n = u.size() / 2;
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> c(n);
  c.real() = u.head(n);
  c.imag() = u.tail(n);
  return c;
}

/// Per-mode residual of the stationary equation,
///   (-d l^2 + i - zeta) c_l + [|a|^2 a]_l - i f [l = 0],
/// flattened to real and imaginary parts.  The cubic term is synthesized on
/// the collocation nodes, cubed pointwise and analyzed back.
template <typename Scalar>
VectorXs<Scalar> residual(const FourierState<Scalar>& state,
                          const CosineGrid<Scalar>& grid,
                          const Params<Scalar>& p) {
  check_sizes(state, grid);
  using Complex = std::complex<Scalar>;
  const int L = state.L();

  auto values = grid.synthesize(state.coeffs);
  for (int j = 0; j < values.size(); ++j)
    values(j) *= std::norm(values(j));
  auto cubic = grid.analyze(values);

  Eigen::Matrix<Complex, Eigen::Dynamic, 1> r(L + 1);
  const Complex i{Scalar(0), Scalar(1)};
  for (int l = 0; l <= L; ++l) {
    const Scalar lin = -p.d * Scalar(l) * Scalar(l) - state.zeta;
    r(l) = (lin + i) * state.coeffs(l) + cubic(l);
  }
  r(0) -= i * p.f;
  return to_real<Scalar>(r);
}

/// Exact linearization of the residual with respect to [Re c; Im c].
///
/// The cubic contributes h -> 2|a|^2 h + a^2 conj(h); pushed through the
/// synthesis/analysis pipeline this becomes two mode-coupling matrices
/// G1 = A diag(2|a|^2 + a^2) S and G2 = A diag(2|a|^2 - a^2) S, entering as
/// [[Re G1, -Im G2], [Im G1, Re G2]].
template <typename Scalar>
MatrixXs<Scalar> jacobian(const FourierState<Scalar>& state,
                          const CosineGrid<Scalar>& grid,
                          const Params<Scalar>& p) {
  check_sizes(state, grid);
  const int L = state.L();
  const int n = L + 1;
  const auto a = grid.synthesize(state.coeffs);

  VectorXs<Scalar> w1r(a.size()), w1i(a.size()), w2r(a.size()), w2i(a.size());
  for (int j = 0; j < a.size(); ++j) {
    const Scalar two_abs2 = Scalar(2) * std::norm(a(j));
    const std::complex<Scalar> asq = a(j) * a(j);
    w1r(j) = two_abs2 + asq.real();
    w1i(j) = asq.imag();
    w2r(j) = two_abs2 - asq.real();
    w2i(j) = -asq.imag();
  }

  const auto& A = grid.analysis_matrix();
  const auto& S = grid.synthesis_matrix();
  const MatrixXs<Scalar> G1r = A * w1r.asDiagonal() * S;
  const MatrixXs<Scalar> G1i = A * w1i.asDiagonal() * S;
  const MatrixXs<Scalar> G2r = A * w2r.asDiagonal() * S;
  const MatrixXs<Scalar> G2i = A * w2i.asDiagonal() * S;

  MatrixXs<Scalar> J(2 * n, 2 * n);
  J.topLeftCorner(n, n) = G1r;
  J.topRightCorner(n, n) = -G2i;
  J.bottomLeftCorner(n, n) = G1i;
  J.bottomRightCorner(n, n) = G2r;

  for (int l = 0; l <= L; ++l) {
    const Scalar lin = -p.d * Scalar(l) * Scalar(l) - state.zeta;
    J(l, l) += lin;
    J(n + l, n + l) += lin;
    J(l, n + l) += Scalar(-1);  // multiplication by i
    J(n + l, l) += Scalar(1);
  }
  return J;
}

/// Derivative of the residual with respect to zeta: simply -c.
template <typename Scalar>
VectorXs<Scalar> dresidual_dzeta(const FourierState<Scalar>& state) {
  return -to_real<Scalar>(state.coeffs);
}

/// Row scaling that turns the residual Jacobian into the linearization of
/// the compact-perturbation form: mode-l rows are multiplied by
/// -sign(d) / (|d| l^2 + 1).  Eigenvalue signs of the scaled mode blocks at
/// constant states then agree with the spectral enumeration.
template <typename Scalar>
VectorXs<Scalar> compact_form_row_scale(int L, const Params<Scalar>& p) {
  VectorXs<Scalar> s(2 * (L + 1));
  for (int l = 0; l <= L; ++l) {
    const Scalar v =
        -p.sign_d() / (std::abs(p.d) * Scalar(l) * Scalar(l) + Scalar(1));
    s(l) = v;
    s(L + 1 + l) = v;
  }
  return s;
}

/// Largest deviation of the field from its mean mode, max_j |a(x_j) - c_0|.
template <typename Scalar>
Scalar amplitude(const FourierState<Scalar>& state,
                 const CosineGrid<Scalar>& grid) {
  check_sizes(state, grid);
  const auto values = grid.synthesize(state.coeffs);
  Scalar amp = 0;
  for (int j = 0; j < values.size(); ++j)
    amp = std::max(amp, std::abs(values(j) - state.coeffs(0)));
  return amp;
}

/// Relative coefficient energy outside the modes divisible by s.
template <typename Scalar>
Scalar sym_residual(const FourierState<Scalar>& state, int s) {
  if (s < 1) throw ConfigError("sym_residual: divisor must be positive");
  Scalar off = 0, all = 0;
  for (int l = 0; l <= state.L(); ++l) {
    const Scalar e = std::norm(state.coeffs(l));
    all += e;
    if (l % s != 0) off += e;
  }
  if (all == Scalar(0)) return Scalar(0);
  return std::sqrt(off / all);
}

/// Number of negative real eigenvalues of the compact-form Jacobian
/// restricted to the modes divisible by ambient_div.
template <typename Scalar>
int morse_in_ambient(const FourierState<Scalar>& state,
                     const CosineGrid<Scalar>& grid, const Params<Scalar>& p,
                     int ambient_div) {
  if (ambient_div < 1)
    throw ConfigError("morse_in_ambient: divisor must be positive");
  const int L = state.L();
  const int n = L + 1;
  const MatrixXs<Scalar> J = jacobian(state, grid, p);
  const VectorXs<Scalar> scale = compact_form_row_scale(L, p);

  std::vector<int> keep;
  for (int l = 0; l <= L; ++l)
    if (l % ambient_div == 0) keep.push_back(l);
  const int m = static_cast<int>(keep.size());

  MatrixXs<Scalar> B(2 * m, 2 * m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      B(r, c) = scale(keep[r]) * J(keep[r], keep[c]);
      B(r, m + c) = scale(keep[r]) * J(keep[r], n + keep[c]);
      B(m + r, c) = scale(n + keep[r]) * J(n + keep[r], keep[c]);
      B(m + r, m + c) = scale(n + keep[r]) * J(n + keep[r], n + keep[c]);
    }
  }

  Eigen::EigenSolver<MatrixXs<Scalar>> solver(B, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw SingularJacobian("morse_in_ambient: eigenvalue iteration failed");
  int count = 0;
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    const auto ev = solver.eigenvalues()(i);
    const Scalar mag = std::max(Scalar(1), std::abs(ev));
    if (std::abs(ev.imag()) <= Scalar(1e-8) * mag && ev.real() < Scalar(0))
      ++count;
  }
  return count;
}

}  // namespace galerkin
}  // namespace llebif
