#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lpgsp/errors.hpp"
#include "lpgsp/graph.hpp"
#include "lpgsp/spectral.hpp"

namespace lpgsp {

class FilterSpec;

/// h(lambda) = sum_p coeffs[p] lambda^p, lowest order first; 0^0 = 1.
struct PolynomialFilter {
  std::vector<double> coeffs;
};

/// Response tabulated per frequency index; must match the spectrum length.
struct ResponseTable {
  Eigen::VectorXd values;
};

/// 1 on the first k frequencies, 0 above.
struct IdealLowPass {
  Eigen::Index k = 1;
};

/// 0 on the first k frequencies, 1 above.
struct IdealHighPass {
  Eigen::Index k = 1;
};

/// Heat kernel e^{-t_sigma lambda}.
struct DiffusionFilter {
  double t_sigma = 1.0;
};

/// (I + alpha L)^{-1}: h(lambda) = 1 / (1 + alpha lambda).
struct ResolventFilter {
  double alpha = 1.0;
};

/// I - L / lambda_n: h(lambda) = 1 - lambda / lambda_n.
struct Order1Filter {};

/// Equilibrium of y <- (1-beta) H_inner y + beta x:
/// h(lambda) = beta / (1 - (1-beta) h_inner(lambda)).
struct FinanceEquilibrium {
  double beta = 0.5;
  std::shared_ptr<const FilterSpec> inner;
};

class FilterSpec {
 public:
  using Variant = std::variant<PolynomialFilter, ResponseTable, IdealLowPass,
                               IdealHighPass, DiffusionFilter, ResolventFilter,
                               Order1Filter, FinanceEquilibrium>;

  static FilterSpec polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw ValidationError("polynomial filter needs at least one coefficient");
    return FilterSpec(PolynomialFilter{std::move(coeffs)});
  }
  static FilterSpec response(Eigen::VectorXd values) {
    if (values.size() < 1) throw ValidationError("response table must be nonempty");
    return FilterSpec(ResponseTable{std::move(values)});
  }
  static FilterSpec ideal_low_pass(Eigen::Index k) {
    if (k < 1) throw ValidationError("ideal low-pass needs k >= 1");
    return FilterSpec(IdealLowPass{k});
  }
  static FilterSpec ideal_high_pass(Eigen::Index k) {
    if (k < 1) throw ValidationError("ideal high-pass needs k >= 1");
    return FilterSpec(IdealHighPass{k});
  }
  static FilterSpec diffusion(double t_sigma) {
    if (!(t_sigma > 0.0)) throw ValidationError("diffusion filter needs t_sigma > 0");
    return FilterSpec(DiffusionFilter{t_sigma});
  }
  static FilterSpec resolvent(double alpha) {
    if (!(alpha > 0.0)) throw ValidationError("resolvent filter needs alpha > 0");
    return FilterSpec(ResolventFilter{alpha});
  }
  static FilterSpec order1() { return FilterSpec(Order1Filter{}); }
  static FilterSpec finance_equilibrium(double beta, FilterSpec inner) {
    if (!(beta > 0.0 && beta < 1.0))
      throw ValidationError("finance equilibrium needs beta in (0,1)");
    return FilterSpec(FinanceEquilibrium{
        beta, std::make_shared<const FilterSpec>(std::move(inner))});
  }

  const Variant& node() const { return node_; }

 private:
  explicit FilterSpec(Variant v) : node_(std::move(v)) {}
  Variant node_;
};

namespace detail {
inline void check_spectrum(const Eigen::VectorXd& lambdas) {
  if (lambdas.size() < 1) throw ValidationError("empty spectrum");
  for (Eigen::Index i = 0; i + 1 < lambdas.size(); ++i)
    if (lambdas(i + 1) < lambdas(i))
      throw ValidationError("spectrum must be ascending");
}
}  // namespace detail

/// Transfer function values h(lambda_i) over an ascending spectrum.
inline Eigen::VectorXd frequency_response(const FilterSpec& spec,
                                          const Eigen::VectorXd& lambdas) {
  detail::check_spectrum(lambdas);
  const Eigen::Index n = lambdas.size();
  struct Visitor {
    const Eigen::VectorXd& lambdas;
    Eigen::Index n;

    Eigen::VectorXd operator()(const PolynomialFilter& f) const {
      // Horner; the lambda^0 = 1 convention holds at lambda = 0 as well.
      Eigen::VectorXd h = Eigen::VectorXd::Constant(n, f.coeffs.back());
      for (auto it = f.coeffs.rbegin() + 1; it != f.coeffs.rend(); ++it)
        h = (h.array() * lambdas.array() + *it).matrix();
      return h;
    }
    Eigen::VectorXd operator()(const ResponseTable& f) const {
      if (f.values.size() != n)
        throw ValidationError("response table length does not match the spectrum");
      return f.values;
    }
    Eigen::VectorXd operator()(const IdealLowPass& f) const {
      if (f.k > n) throw ValidationError("ideal low-pass cutoff exceeds spectrum size");
      Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
      h.head(f.k).setOnes();
      return h;
    }
    Eigen::VectorXd operator()(const IdealHighPass& f) const {
      if (f.k > n) throw ValidationError("ideal high-pass cutoff exceeds spectrum size");
      Eigen::VectorXd h = Eigen::VectorXd::Ones(n);
      h.head(f.k).setZero();
      return h;
    }
    Eigen::VectorXd operator()(const DiffusionFilter& f) const {
      return (-f.t_sigma * lambdas.array()).exp().matrix();
    }
    Eigen::VectorXd operator()(const ResolventFilter& f) const {
      return (1.0 / (1.0 + f.alpha * lambdas.array())).matrix();
    }
    Eigen::VectorXd operator()(const Order1Filter&) const {
      const double lam_max = lambdas(n - 1);
      if (!(lam_max > 0.0))
        throw ValidationError("order-1 filter needs a spectrum with lambda_n > 0");
      return (1.0 - lambdas.array() / lam_max).matrix();
    }
    Eigen::VectorXd operator()(const FinanceEquilibrium& f) const {
      const Eigen::VectorXd hin = frequency_response(*f.inner, lambdas);
      Eigen::VectorXd h(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double denom = 1.0 - (1.0 - f.beta) * hin(i);
        if (denom <= 0.0)
          throw NumericalError("finance equilibrium filter is unstable at lambda = " +
                               std::to_string(lambdas(i)));
        h(i) = f.beta / denom;
      }
      return h;
    }
  };
  return std::visit(Visitor{lambdas, n}, spec.node());
}

/// Apply sum_p h_p L^p to the columns of X by Horner-style iterated shifts;
/// L^p is never formed.
inline Eigen::MatrixXd apply_polynomial(const LaplacianMatrix& L,
                                        const std::vector<double>& coeffs,
                                        const Eigen::MatrixXd& X) {
  if (coeffs.empty()) throw ValidationError("polynomial filter needs at least one coefficient");
  if (X.rows() != L.n()) throw ValidationError("apply_polynomial: signal length mismatch");
  Eigen::MatrixXd Y = coeffs.back() * X;
  for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it)
    Y = L.values * Y + *it * X;
  return Y;
}

/// Apply U h(Lambda) U^T to the columns of X.
inline Eigen::MatrixXd apply_spectral(const SpectralBasis& basis, const FilterSpec& spec,
                                      const Eigen::MatrixXd& X) {
  if (X.rows() != basis.n()) throw ValidationError("apply_spectral: signal length mismatch");
  const Eigen::VectorXd h = frequency_response(spec, basis.lambdas);
  Eigen::MatrixXd Xt = basis.U.transpose() * X;
  Xt.array().colwise() *= h.array();
  return basis.U * Xt;
}

inline Eigen::VectorXd apply_spectral(const SpectralBasis& basis, const FilterSpec& spec,
                                      const Eigen::VectorXd& x) {
  return Eigen::VectorXd(
      apply_spectral(basis, spec, Eigen::MatrixXd(x)).col(0));
}

/// Low-pass ratio eta_k = max |h| above the cutoff / min |h| at or below it.
/// Returns +infinity when the low band contains a zero response; the filter
/// is k-low-pass iff the result is < 1.
inline double low_pass_ratio(const Eigen::VectorXd& response, Eigen::Index k) {
  const Eigen::Index n = response.size();
  if (k < 1 || k > n - 1)
    throw ValidationError("low_pass_ratio needs 1 <= k <= n-1");
  const double num = response.tail(n - k).cwiseAbs().maxCoeff();
  const double den = response.head(k).cwiseAbs().minCoeff();
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace lpgsp
