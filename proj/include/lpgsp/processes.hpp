#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>

#include "lpgsp/errors.hpp"
#include "lpgsp/filters.hpp"
#include "lpgsp/rng.hpp"
#include "lpgsp/spectral.hpp"

namespace lpgsp {

/// n x m matrix, column l = observation y_l.
using SignalMatrix = Eigen::MatrixXd;

/// n x n symmetric positive semidefinite model covariance.
using CovarianceModel = Eigen::MatrixXd;

/// Draw m i.i.d. signals y_l = H(L) x_l + w_l with x_l, w_l standard Gaussian
/// white (noise scaled by sigma). Column l draws from its own sub-streams, so
/// per-column parallel generation reproduces sequential generation exactly.
inline SignalMatrix sample_lowpass_signals(const SpectralBasis& basis, const FilterSpec& spec,
                                           Eigen::Index m, double sigma, std::uint64_t seed) {
  if (m < 1) throw ValidationError("sample_lowpass_signals needs m >= 1");
  if (sigma < 0.0) throw ValidationError("sample_lowpass_signals needs sigma >= 0");
  const Eigen::Index n = basis.n();
  Eigen::MatrixXd X(n, m);
  Eigen::MatrixXd W(n, m);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index l = 0; l < m; ++l) {
    auto gx = rng::substream(seed, rng::kExcitationStream, static_cast<std::uint64_t>(l));
    for (Eigen::Index i = 0; i < n; ++i) X(i, l) = normal(gx);
    auto gw = rng::substream(seed, rng::kNoiseStream, static_cast<std::uint64_t>(l));
    for (Eigen::Index i = 0; i < n; ++i) W(i, l) = normal(gw);
  }
  Eigen::MatrixXd Y = apply_spectral(basis, spec, X);
  if (sigma > 0.0) Y += sigma * W;
  return Y;
}

/// Model covariance U h(Lambda)^2 U^T + sigma^2 I of the generative model.
inline CovarianceModel covariance_model(const SpectralBasis& basis, const FilterSpec& spec,
                                        double sigma) {
  if (sigma < 0.0) throw ValidationError("covariance_model needs sigma >= 0");
  const Eigen::VectorXd h = frequency_response(spec, basis.lambdas);
  Eigen::MatrixXd C =
      basis.U * h.array().square().matrix().asDiagonal() * basis.U.transpose();
  C.diagonal().array() += sigma * sigma;
  return 0.5 * (C + C.transpose());
}

/// Heat diffusion snapshot e^{-t_sigma L} x0, evaluated spectrally. The
/// matrix exponential is row stochastic, so 1^T y = 1^T x0.
inline Eigen::VectorXd diffusion_snapshot(const LaplacianMatrix& L, double t_sigma,
                                          const Eigen::VectorXd& x0) {
  if (t_sigma < 0.0) throw ValidationError("diffusion_snapshot needs t_sigma >= 0");
  if (x0.size() != L.n()) throw ValidationError("diffusion_snapshot: signal length mismatch");
  const SpectralBasis basis = eigendecompose(L);
  const Eigen::VectorXd decay = (-t_sigma * basis.lambdas.array()).exp().matrix();
  return basis.U * decay.cwiseProduct(basis.U.transpose() * x0);
}

/// Expected smoothness of the generated signals, truncated to the low band:
/// sum_{i<=k} lambda_i h(lambda_i)^2 + sigma^2 Tr(L). Exact for ideal k-low-pass
/// filters, an approximation otherwise.
inline double smoothness_expectation(const SpectralBasis& basis, const FilterSpec& spec,
                                     double sigma, Eigen::Index k) {
  if (k < 0 || k > basis.n()) throw ValidationError("smoothness_expectation needs 0 <= k <= n");
  const Eigen::VectorXd h = frequency_response(spec, basis.lambdas);
  const double low = (basis.lambdas.head(k).array() * h.head(k).array().square()).sum();
  return low + sigma * sigma * basis.lambdas.sum();
}

}  // namespace lpgsp
