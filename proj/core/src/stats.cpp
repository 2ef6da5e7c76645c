#include "siri/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "siri/error.hpp"

namespace siri {
namespace {

// Residual variances at or below this fraction of the target's variance are
// treated as exact fits.
constexpr double kDegenerateFraction = 1e-13;

Eigen::MatrixXd between_slice_cov(const Eigen::MatrixXd& slice_means,
                                  const std::vector<double>& weights) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(slice_means.cols(), slice_means.cols());
  for (Eigen::Index h = 0; h < slice_means.rows(); ++h)
    b.noalias() += weights[static_cast<std::size_t>(h)] * slice_means.row(h).transpose() *
                   slice_means.row(h);
  return b;
}

}  // namespace

StatContext::StatContext(const Dataset& data, const SlicingScheme& scheme,
                         std::vector<int> selected, int q)
    : data_(&data), scheme_(&scheme), selected_(std::move(selected)) {
  if (scheme.n() != data.n()) throw std::invalid_argument("slicing scheme does not match dataset");
  if (q < 1) throw std::invalid_argument("q must be at least 1");
  for (std::size_t a = 0; a < selected_.size(); ++a) {
    const int j = selected_[a];
    if (j < 0 || j >= data.p()) throw std::out_of_range("selected index out of range");
    if (std::find(selected_.begin(), selected_.begin() + static_cast<std::ptrdiff_t>(a), j) !=
        selected_.begin() + static_cast<std::ptrdiff_t>(a))
      throw std::invalid_argument("duplicate selected index");
  }
  const int cap = std::max(scheme.slices - 1, 1);
  q_ = std::min(q, cap);
  q_truncated_ = q > cap;

  const int n = data.n();
  const int d = this->d();
  const Eigen::MatrixXd xc = data.x(Eigen::all, selected_);

  try {
    const Eigen::RowVectorXd mean = xc.colwise().mean();
    centered_ = xc.rowwise() - mean;
    omega_ = centered_.transpose() * centered_ / static_cast<double>(n);
    slice_means_.resize(scheme.slices, d);
    for (int h = 0; h < scheme.slices; ++h)
      slice_means_.row(h) = centered_(scheme.index[static_cast<std::size_t>(h)], Eigen::all)
                                .colwise()
                                .mean();
    base_eigen_ = profile_eigenvalues(between_slice_cov(slice_means_, scheme.weights), omega_, q_);
  } catch (const std::exception& e) {
    hom_error_ = e.what();
  }

  try {
    pooled_ = LinearResidualizer(xc);
    per_slice_.reserve(static_cast<std::size_t>(scheme.slices));
    for (int h = 0; h < scheme.slices; ++h)
      per_slice_.emplace_back(xc(scheme.index[static_cast<std::size_t>(h)], Eigen::all));
  } catch (const std::exception& e) {
    aug_error_ = e.what();
  }
}

bool StatContext::contains(int j) const {
  return std::find(selected_.begin(), selected_.end(), j) != selected_.end();
}

void StatContext::check_candidate(int j) const {
  if (j < 0 || j >= data_->p()) throw std::out_of_range("candidate index out of range");
  if (contains(j)) throw std::invalid_argument("candidate already selected");
}

std::pair<EigenResult, EigenResult> StatContext::profile_pair(int j) const {
  check_candidate(j);
  if (hom_error_) throw NumericalError(*hom_error_);
  const int n = data_->n();
  const int d = this->d();
  const Eigen::VectorXd xj = data_->x.col(j).array() - data_->x.col(j).mean();

  Eigen::MatrixXd omega(d + 1, d + 1);
  omega.topLeftCorner(d, d) = omega_;
  const Eigen::VectorXd cross = centered_.transpose() * xj / static_cast<double>(n);
  omega.topRightCorner(d, 1) = cross;
  omega.bottomLeftCorner(1, d) = cross.transpose();
  omega(d, d) = xj.squaredNorm() / n;

  Eigen::MatrixXd means(scheme_->slices, d + 1);
  means.leftCols(d) = slice_means_;
  for (int h = 0; h < scheme_->slices; ++h)
    means(h, d) = xj(scheme_->index[static_cast<std::size_t>(h)]).mean();

  auto extended = profile_eigenvalues(between_slice_cov(means, scheme_->weights), omega, q_);
  return {base_eigen_, std::move(extended)};
}

std::pair<double, std::vector<double>> StatContext::residual_variances(int j) const {
  check_candidate(j);
  if (aug_error_) throw NumericalError(*aug_error_);
  const auto xj = data_->x.col(j);
  std::pair<double, std::vector<double>> out;
  out.first = pooled_.residual_variance(xj);
  out.second.reserve(per_slice_.size());
  for (std::size_t h = 0; h < per_slice_.size(); ++h) {
    const Eigen::VectorXd part = xj(scheme_->index[h]);
    out.second.push_back(per_slice_[h].residual_variance(part));
  }
  return out;
}

StatValue d_hom(const StatContext& ctx, int j) {
  const auto [base, extended] = ctx.profile_pair(j);
  double sum = 0.0;
  for (int k = 0; k < ctx.q(); ++k) {
    const double gain = (extended.values(k) - base.values(k)) / (1.0 - extended.values(k));
    sum += std::log1p(gain);
  }
  StatValue v;
  v.unclamped = sum;
  v.raw = std::max(sum, 0.0);
  v.scaled = ctx.n() * v.raw;
  v.dof = null_dof_hom(ctx.q());
  v.p_value = chisq_sf(v.scaled, v.dof);
  v.clamped_eigenvalue = base.clamped || extended.clamped;
  v.q_truncated = ctx.q_truncated();
  return v;
}

double cop_statistic(const StatContext& ctx, int j) {
  const auto [base, extended] = ctx.profile_pair(j);
  double sum = 0.0;
  for (int k = 0; k < ctx.q(); ++k)
    sum += (extended.values(k) - base.values(k)) / (1.0 - extended.values(k));
  return std::max(ctx.n() * sum, 0.0);
}

StatValue d_star(const StatContext& ctx, int j) {
  const auto [pooled, per_slice] = ctx.residual_variances(j);
  const auto xj = ctx.data().x.col(j);
  const double spread = (xj.array() - xj.mean()).square().mean();
  const double floor = std::max(1e-300, kDegenerateFraction * spread);
  if (pooled <= floor) throw NumericalError("degenerate slice regression");
  double within = 0.0;
  const auto& weights = ctx.scheme().weights;
  for (std::size_t h = 0; h < per_slice.size(); ++h) {
    if (per_slice[h] <= floor) throw NumericalError("degenerate slice regression");
    within += weights[h] * std::log(per_slice[h]);
  }
  StatValue v;
  v.unclamped = std::log(pooled) - within;
  v.raw = std::max(v.unclamped, 0.0);
  v.scaled = ctx.n() * v.raw;
  v.dof = null_dof_aug(ctx.scheme().slices, ctx.d());
  const double inflation = aug_inflation(ctx.n(), ctx.scheme().slices, ctx.d());
  v.p_value = (v.dof == 0 || !std::isfinite(inflation)) ? 1.0 : chisq_sf(v.scaled / inflation, v.dof);
  return v;
}

StatValue statistic(const StatContext& ctx, StatKind kind, int j) {
  return kind == StatKind::hom ? d_hom(ctx, j) : d_star(ctx, j);
}

int null_dof_hom(int q) {
  if (q < 1) throw std::invalid_argument("q must be at least 1");
  return q;
}

int null_dof_aug(int slices, int d) {
  if (slices < 1 || d < 0) throw std::invalid_argument("invalid slice count or dimension");
  return (slices - 1) * (d + 2);
}

double aug_inflation(int n, int slices, int d) {
  const double denom = static_cast<double>(n) - static_cast<double>(slices) * (d + 2);
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return n / denom;
}

}  // namespace siri
