#pragma once

#include <optional>

#include <Eigen/Dense>

// Numerical primitives shared by every statistic: MLE covariances, least
// squares residual variances, the whitened generalized eigenproblem and the
// chi-square distribution.
namespace siri {

// Relative ridge added to a Gram or covariance matrix before it is factored:
// ridge = kSolverRidge * mean(diag).
inline constexpr double kSolverRidge = 1e-12;
// Profile eigenvalues are clamped into [0, kEigenCeiling] so that
// log(1 - lambda) stays finite.
inline constexpr double kEigenCeiling = 1.0 - 1e-12;

struct EigenResult {
  Eigen::VectorXd values;  // descending, each in [0, kEigenCeiling]
  std::optional<Eigen::MatrixXd> vectors;
  bool clamped = false;  // true when an eigenvalue had to be pulled below 1
};

// Maximum-likelihood (divide-by-n) covariance of the rows. Weights, when
// given, must be nonnegative and sum to one. Throws DataError("empty sample").
Eigen::MatrixXd cov_matrix(const Eigen::Ref<const Eigen::MatrixXd>& rows,
                           const std::optional<Eigen::VectorXd>& weights = std::nullopt);

// Lower Cholesky factor of m + kSolverRidge * mean(diag) * I.
// Throws NumericalError("degenerate covariance") if that still fails.
Eigen::LLT<Eigen::MatrixXd> ridge_cholesky(const Eigen::Ref<const Eigen::MatrixXd>& m,
                                           double relative_ridge = kSolverRidge);

// Ordinary least squares of a target on an intercept plus a fixed covariate
// matrix. The covariates are centered and factored once, so residual
// variances of many targets cost O(rows * cols) each.
class LinearResidualizer {
 public:
  LinearResidualizer() = default;
  // Throws NumericalError("slice too small for regression") when
  // rows <= cols + 1.
  explicit LinearResidualizer(const Eigen::Ref<const Eigen::MatrixXd>& covariates);

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(centered_.cols()); }

  // RSS / rows; never negative.
  double residual_variance(const Eigen::Ref<const Eigen::VectorXd>& target) const;

 private:
  int rows_ = 0;
  Eigen::MatrixXd centered_;
  Eigen::LLT<Eigen::MatrixXd> gram_;
};

// MLE residual variance of target regressed on covariates plus intercept.
// With zero covariates this is the plain MLE variance.
double residual_variance(const Eigen::Ref<const Eigen::VectorXd>& target,
                         const Eigen::Ref<const Eigen::MatrixXd>& covariates);

// Top-q eigenvalues of omega^{-1} b via Cholesky whitening, padded with
// zeros when q exceeds the dimension.
EigenResult profile_eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& b,
                                const Eigen::Ref<const Eigen::MatrixXd>& omega, int q,
                                bool want_vectors = false);

double chisq_cdf(double x, double dof);
// Upper tail probability, accurate far into the tail.
double chisq_sf(double x, double dof);
// Inverse of chisq_cdf by bracketing and safeguarded Newton steps.
// Throws std::domain_error unless 0 < alpha < 1 and dof > 0.
double chisq_quantile(double alpha, double dof);

}  // namespace siri
