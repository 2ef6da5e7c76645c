#include "siri/numkit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "siri/error.hpp"

namespace siri {

Eigen::MatrixXd cov_matrix(const Eigen::Ref<const Eigen::MatrixXd>& rows,
                           const std::optional<Eigen::VectorXd>& weights) {
  const Eigen::Index n = rows.rows();
  if (n == 0) throw DataError("empty sample");
  if (weights) {
    if (weights->size() != n) throw std::invalid_argument("cov_matrix: weight count mismatch");
    if ((weights->array() < 0.0).any() || std::abs(weights->sum() - 1.0) > 1e-9)
      throw std::invalid_argument("cov_matrix: weights must be nonnegative and sum to 1");
    const Eigen::RowVectorXd mean = weights->transpose() * rows;
    const Eigen::MatrixXd centered = rows.rowwise() - mean;
    Eigen::MatrixXd cov = centered.transpose() * weights->asDiagonal() * centered;
    return 0.5 * (cov + cov.transpose());
  }
  const Eigen::RowVectorXd mean = rows.colwise().mean();
  const Eigen::MatrixXd centered = rows.rowwise() - mean;
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n);
  return 0.5 * (cov + cov.transpose());
}

Eigen::LLT<Eigen::MatrixXd> ridge_cholesky(const Eigen::Ref<const Eigen::MatrixXd>& m,
                                           double relative_ridge) {
  const double scale = m.diagonal().mean();
  if (!std::isfinite(scale) || scale <= 0.0) throw NumericalError("degenerate covariance");
  Eigen::MatrixXd guarded = m;
  guarded.diagonal().array() += relative_ridge * scale;
  Eigen::LLT<Eigen::MatrixXd> llt(guarded);
  if (llt.info() != Eigen::Success) throw NumericalError("degenerate covariance");
  return llt;
}

LinearResidualizer::LinearResidualizer(const Eigen::Ref<const Eigen::MatrixXd>& covariates)
    : rows_(static_cast<int>(covariates.rows())) {
  if (rows_ <= covariates.cols() + 1) throw NumericalError("slice too small for regression");
  centered_ = covariates.rowwise() - covariates.colwise().mean();
  if (centered_.cols() > 0) {
    gram_ = ridge_cholesky(centered_.transpose() * centered_ / static_cast<double>(rows_));
  }
}

double LinearResidualizer::residual_variance(const Eigen::Ref<const Eigen::VectorXd>& target) const {
  if (target.size() != rows_) throw std::invalid_argument("residual_variance: length mismatch");
  const Eigen::VectorXd centered_target = target.array() - target.mean();
  if (centered_.cols() == 0) return centered_target.squaredNorm() / rows_;
  const Eigen::VectorXd beta =
      gram_.solve(centered_.transpose() * centered_target / static_cast<double>(rows_));
  const Eigen::VectorXd resid = centered_target - centered_ * beta;
  return resid.squaredNorm() / rows_;
}

double residual_variance(const Eigen::Ref<const Eigen::VectorXd>& target,
                         const Eigen::Ref<const Eigen::MatrixXd>& covariates) {
  if (target.size() != covariates.rows())
    throw std::invalid_argument("residual_variance: length mismatch");
  return LinearResidualizer(covariates).residual_variance(target);
}

EigenResult profile_eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& b,
                                const Eigen::Ref<const Eigen::MatrixXd>& omega, int q,
                                bool want_vectors) {
  if (b.rows() != b.cols() || omega.rows() != omega.cols() || b.rows() != omega.rows())
    throw std::invalid_argument("profile_eigenvalues: dimension mismatch");
  if (q < 0) throw std::invalid_argument("profile_eigenvalues: negative q");
  const Eigen::Index dim = b.rows();

  EigenResult out;
  out.values = Eigen::VectorXd::Zero(q);
  if (dim == 0) return out;

  const auto llt = ridge_cholesky(omega);
  const auto lower = llt.matrixL();
  // whitened = L^{-1} B L^{-T}
  const Eigen::MatrixXd half = lower.solve(b);
  Eigen::MatrixXd whitened = lower.solve(half.transpose()).transpose();
  whitened = 0.5 * (whitened + whitened.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      whitened, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("degenerate covariance");

  const Eigen::Index keep = std::min<Eigen::Index>(q, dim);
  for (Eigen::Index k = 0; k < keep; ++k) {
    double v = solver.eigenvalues()(dim - 1 - k);
    if (v > kEigenCeiling) {
      v = kEigenCeiling;
      out.clamped = true;
    }
    out.values(k) = std::max(v, 0.0);
  }
  if (want_vectors) {
    Eigen::MatrixXd vecs(dim, keep);
    for (Eigen::Index k = 0; k < keep; ++k) vecs.col(k) = solver.eigenvectors().col(dim - 1 - k);
    out.vectors = llt.matrixU().solve(vecs);
  }
  return out;
}

double chisq_cdf(double x, double dof) {
  if (!(dof > 0.0)) throw std::domain_error("chi-square dof must be positive");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(0.5 * dof, 0.5 * x);
}

double chisq_sf(double x, double dof) {
  if (!(dof > 0.0)) throw std::domain_error("chi-square dof must be positive");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

double chisq_quantile(double alpha, double dof) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("chi-square quantile needs 0 < alpha < 1");
  if (!(dof > 0.0)) throw std::domain_error("chi-square dof must be positive");

  // Work on whichever tail keeps the target away from 1, so quantiles such
  // as alpha = 1 - 1e-7 keep full relative precision.
  const bool upper = alpha > 0.5;
  const double target = upper ? 1.0 - alpha : alpha;
  auto excess = [&](double x) { return upper ? target - chisq_sf(x, dof) : chisq_cdf(x, dof) - target; };

  double lo = 0.0;
  double hi = std::max(dof, 1.0);
  while (excess(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 300; ++iter) {
    const double f = excess(x);
    if (f == 0.0) return x;
    if (f < 0.0) lo = x; else hi = x;
    const double density = 0.5 * boost::math::gamma_p_derivative(0.5 * dof, 0.5 * x);
    double next = density > 0.0 ? x - f / density : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * x || hi - lo <= 1e-15 * hi) return next;
    x = next;
  }
  return x;
}

}  // namespace siri
