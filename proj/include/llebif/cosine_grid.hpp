#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>

#include "llebif/errors.hpp"

namespace llebif {

/// Collocation machinery for cosine series on [0, pi].
///
/// Modes 0..L are sampled on the N+1 nodes x_j = j pi / N.  The analysis
/// step recovers modes 0..L exactly for any cosine polynomial of degree
/// <= N, so with N >= 3L a pointwise cubic of a degree-L series introduces
/// no aliasing into the retained modes.
template <typename Scalar = double>
class CosineGrid {
 public:
  using MatrixXs = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using VectorXs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Complex = std::complex<Scalar>;
  using VectorXc = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  CosineGrid(int L, int N) : L_(L), N_(N) {
    if (L < 1) throw ConfigError("CosineGrid: L must be >= 1");
    if (N < 3 * L)
      throw ConfigError("CosineGrid: need N >= 3L, got L=" +
                        std::to_string(L) + ", N=" + std::to_string(N));
    modes_ = MatrixXs(L + 1, N + 1);
    for (int l = 0; l <= L; ++l)
      for (int j = 0; j <= N; ++j)
        modes_(l, j) = std::cos(Scalar(l) * Scalar(j) * pi() / Scalar(N));

    synth_ = modes_.transpose();

    // trapezoid-weighted discrete cosine analysis, exact up to degree N
    VectorXs w = VectorXs::Constant(N + 1, Scalar(1));
    w(0) = w(N) = Scalar(0.5);
    analysis_ = (Scalar(2) / Scalar(N)) * modes_ * w.asDiagonal();
    analysis_.row(0) *= Scalar(0.5);
  }

  int num_modes() const { return L_ + 1; }
  int num_nodes() const { return N_ + 1; }
  int L() const { return L_; }
  int N() const { return N_; }

  Scalar node(int j) const { return Scalar(j) * pi() / Scalar(N_); }

  /// coefficients -> node values
  VectorXc synthesize(const VectorXc& coeffs) const {
    VectorXc out(N_ + 1);
    out.real() = synth_ * coeffs.real();
    out.imag() = synth_ * coeffs.imag();
    return out;
  }

  /// node values -> modes 0..L
  VectorXc analyze(const VectorXc& values) const {
    VectorXc out(L_ + 1);
    out.real() = analysis_ * values.real();
    out.imag() = analysis_ * values.imag();
    return out;
  }

  const MatrixXs& synthesis_matrix() const { return synth_; }
  const MatrixXs& analysis_matrix() const { return analysis_; }

  static constexpr Scalar pi() {
    return Scalar(3.141592653589793238462643383279502884L);
  }

 private:
  int L_;
  int N_;
  MatrixXs modes_;     // (L+1) x (N+1), cos(l x_j)
  MatrixXs synth_;     // (N+1) x (L+1)
  MatrixXs analysis_;  // (L+1) x (N+1)
};

}  // namespace llebif
