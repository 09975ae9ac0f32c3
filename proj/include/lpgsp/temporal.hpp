#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "lpgsp/errors.hpp"
#include "lpgsp/filters.hpp"
#include "lpgsp/spectral.hpp"

namespace lpgsp {

/// n x T matrix, column t = signal at time t.
using TrajectoryMatrix = Eigen::MatrixXd;

namespace detail {

/// Moduli of the roots of z^q - a_1 z^{q-1} - ... - a_q via the companion
/// matrix.
inline std::vector<double> pole_moduli(const Eigen::VectorXd& a) {
  const Eigen::Index q = a.size();
  std::vector<double> mods;
  if (q == 0) return mods;
  if (q == 1) {
    mods.push_back(std::abs(a(0)));
    return mods;
  }
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(q, q);
  C.row(0) = a.transpose();
  C.block(1, 0, q - 1, q - 1).setIdentity();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(C, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("pole computation did not converge");
  for (Eigen::Index i = 0; i < q; ++i) mods.push_back(std::abs(solver.eigenvalues()(i)));
  return mods;
}

}  // namespace detail

/// GF-ARMA(q, r) filter: y_t = sum_s A_s(L) y_{t-s} + sum_s B_s(L) x_{t-s}.
/// Responses are tabulated at construction against the spectrum the filter
/// will run on, and stability (all poles of b(z)/a(z) strictly inside the
/// unit circle at every lambda_i) is certified then, failing fast instead of
/// producing diverging trajectories.
class GfArmaSpec {
 public:
  GfArmaSpec(std::vector<FilterSpec> ar, std::vector<FilterSpec> ma,
             const Eigen::VectorXd& lambdas)
      : lambdas_(lambdas) {
    detail::check_spectrum(lambdas);
    if (ma.empty()) throw ValidationError("GF-ARMA needs at least one MA tap");
    const Eigen::Index n = lambdas.size();
    ar_h_.resize(static_cast<Eigen::Index>(ar.size()), n);
    for (std::size_t s = 0; s < ar.size(); ++s)
      ar_h_.row(static_cast<Eigen::Index>(s)) =
          frequency_response(ar[s], lambdas).transpose();
    ma_h_.resize(static_cast<Eigen::Index>(ma.size()), n);
    for (std::size_t s = 0; s < ma.size(); ++s)
      ma_h_.row(static_cast<Eigen::Index>(s)) =
          frequency_response(ma[s], lambdas).transpose();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (double rho : detail::pole_moduli(ar_h_.col(i)))
        if (!(rho < 1.0))
          throw NumericalError("GF-ARMA spec is unstable at lambda = " +
                               std::to_string(lambdas(i)) +
                               " (pole modulus = " + std::to_string(rho) + ")");
    }
  }

  Eigen::Index q() const { return ar_h_.rows(); }
  Eigen::Index r() const { return ma_h_.rows() - 1; }
  Eigen::Index n() const { return lambdas_.size(); }
  const Eigen::VectorXd& lambdas() const { return lambdas_; }
  /// q x n table, entry (s-1, i) = h_{A_s}(lambda_i).
  const Eigen::MatrixXd& ar_response() const { return ar_h_; }
  /// (r+1) x n table, entry (s, i) = h_{B_s}(lambda_i).
  const Eigen::MatrixXd& ma_response() const { return ma_h_; }

 private:
  Eigen::VectorXd lambdas_;
  Eigen::MatrixXd ar_h_;
  Eigen::MatrixXd ma_h_;
};

/// Run the recursion with zero initial conditions (x_s = y_s = 0 for s < 0).
/// The recursion diagonalizes in the GFT domain, so each frequency channel is
/// a scalar ARMA.
inline TrajectoryMatrix simulate_gfarma(const SpectralBasis& basis, const GfArmaSpec& spec,
                                        const TrajectoryMatrix& X) {
  if (X.rows() != basis.n()) throw ValidationError("simulate_gfarma: signal length mismatch");
  if (X.cols() < 1) throw ValidationError("simulate_gfarma: empty trajectory");
  if (spec.n() != basis.n() ||
      (spec.lambdas() - basis.lambdas).cwiseAbs().maxCoeff() >
          1e-9 * std::max(1.0, basis.lambdas.cwiseAbs().maxCoeff()))
    throw ValidationError("GF-ARMA spec was built against a different spectrum");
  const Eigen::Index n = basis.n();
  const Eigen::Index T = X.cols();
  const Eigen::Index q = spec.q();
  const Eigen::Index r = spec.r();
  const Eigen::MatrixXd Xt = basis.U.transpose() * X;
  Eigen::MatrixXd Yt = Eigen::MatrixXd::Zero(n, T);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index t = 0; t < T; ++t) {
      double acc = 0.0;
      for (Eigen::Index s = 1; s <= q && s <= t; ++s)
        acc += spec.ar_response()(s - 1, i) * Yt(i, t - s);
      for (Eigen::Index s = 0; s <= r && s <= t; ++s)
        acc += spec.ma_response()(s, i) * Xt(i, t - s);
      Yt(i, t) = acc;
    }
  }
  return basis.U * Yt;
}

/// Joint transfer function H(lambda_i, z) = b(z) / a(z) at frequency index i,
/// with a(z) = 1 - sum_s h_{A_s}(lambda_i) z^{-s} and
/// b(z) = sum_s h_{B_s}(lambda_i) z^{-s}.
inline std::complex<double> joint_transfer(const GfArmaSpec& spec, Eigen::Index freq_index,
                                           std::complex<double> z) {
  if (freq_index < 0 || freq_index >= spec.n())
    throw ValidationError("joint_transfer: frequency index out of range");
  const std::complex<double> zinv = 1.0 / z;
  std::complex<double> a(1.0, 0.0);
  std::complex<double> zpow(1.0, 0.0);
  for (Eigen::Index s = 1; s <= spec.q(); ++s) {
    zpow *= zinv;
    a -= spec.ar_response()(s - 1, freq_index) * zpow;
  }
  std::complex<double> b(0.0, 0.0);
  zpow = std::complex<double>(1.0, 0.0);
  for (Eigen::Index s = 0; s <= spec.r(); ++s) {
    b += spec.ma_response()(s, freq_index) * zpow;
    zpow *= zinv;
  }
  if (std::abs(a) < 1e-15)
    throw NumericalError("joint transfer function has a pole at the requested (lambda, z)");
  return b / a;
}

/// Graph-temporal low-pass ratio: the sup/inf over the temporal band edges is
/// discretized on uniform grids, `gridsize` points on [0, omega0] for the
/// denominator and on (omega0, 2pi] for the numerator. Returns +infinity when
/// the denominator vanishes; the filter is low-pass iff the result is < 1.
inline double temporal_lowpass_ratio(const GfArmaSpec& spec, Eigen::Index k, double omega0,
                                     int gridsize) {
  const Eigen::Index n = spec.n();
  const double two_pi = 2.0 * std::numbers::pi;
  if (k < 1 || k > n - 1) throw ValidationError("temporal_lowpass_ratio needs 1 <= k <= n-1");
  if (!(omega0 > 0.0 && omega0 < two_pi))
    throw ValidationError("temporal_lowpass_ratio needs omega0 in (0, 2pi)");
  if (gridsize < 16) throw ValidationError("temporal_lowpass_ratio needs gridsize >= 16");
  double den = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < k; ++i) {
    for (int j = 0; j < gridsize; ++j) {
      const double omega = omega0 * j / (gridsize - 1);
      den = std::min(den, std::abs(joint_transfer(spec, i, std::polar(1.0, omega))));
    }
  }
  double num = 0.0;
  for (Eigen::Index i = k; i < n; ++i) {
    for (int j = 0; j < gridsize; ++j) {
      const double omega = omega0 + (two_pi - omega0) * (j + 1) / gridsize;
      num = std::max(num, std::abs(joint_transfer(spec, i, std::polar(1.0, omega))));
    }
  }
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

/// Exact fixed point of y_{t+1} = (1-beta)(I - alpha L) y_t + beta x:
/// y = (beta I + (1-beta) alpha L)^{-1} beta x, i.e. the output of the
/// resolvent filter with alpha_eff = alpha (1-beta) / beta.
inline Eigen::VectorXd steady_state(const LaplacianMatrix& L, double alpha, double beta,
                                    const Eigen::VectorXd& x) {
  if (x.size() != L.n()) throw ValidationError("steady_state: signal length mismatch");
  if (!(alpha > 0.0)) throw ValidationError("steady_state needs alpha > 0");
  if (!(beta > 0.0 && beta <= 1.0)) throw ValidationError("steady_state needs beta in (0,1]");
  const Eigen::MatrixXd A =
      beta * Eigen::MatrixXd::Identity(L.n(), L.n()) + (1.0 - beta) * alpha * L.values;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
  if (ldlt.info() != Eigen::Success)
    throw NumericalError("steady_state: singular system");
  return ldlt.solve(beta * x);
}

}  // namespace lpgsp
