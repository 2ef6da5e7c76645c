#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "siri/dataset.hpp"
#include "siri/numkit.hpp"
#include "siri/slicing.hpp"

namespace siri {

// Which inverse model a statistic comes from: the homoscedastic model
// (slice-dependent means in a q-dimensional subspace, common covariance) or
// the augmented model (slice-dependent means and covariances).
enum class StatKind { hom, aug };

struct StatValue {
  double raw = 0.0;        // D (hom) or D* (aug), clamped at zero
  double unclamped = 0.0;  // value before clamping
  double scaled = 0.0;     // n * raw, the chi-square scale
  int dof = 0;             // null chi-square degrees of freedom
  double p_value = 1.0;
  bool clamped_eigenvalue = false;  // a profile eigenvalue hit kEigenCeiling
  bool q_truncated = false;         // q was capped at H - 1
};

// Everything about a conditioning set C that does not depend on the
// candidate: centered covariates, Omega and slice means on C, the profile
// eigenvalues of C, and per-slice least-squares factorizations. Immutable
// after construction, so candidate scans may share one context across
// threads. The context keeps references to the dataset and scheme.
class StatContext {
 public:
  StatContext(const Dataset& data, const SlicingScheme& scheme, std::vector<int> selected,
              int q = 1);
  StatContext(const Dataset&, SlicingScheme&&, std::vector<int>, int = 1) = delete;
  StatContext(Dataset&&, const SlicingScheme&, std::vector<int>, int = 1) = delete;

  const Dataset& data() const { return *data_; }
  const SlicingScheme& scheme() const { return *scheme_; }
  const std::vector<int>& selected() const { return selected_; }
  int d() const { return static_cast<int>(selected_.size()); }
  int n() const { return data_->n(); }
  // q after capping at H - 1 (at least 1 when H >= 2).
  int q() const { return q_; }
  bool q_truncated() const { return q_truncated_; }
  bool contains(int j) const;

  // Profile eigenvalues of C and of C + {j}, top q each.
  std::pair<EigenResult, EigenResult> profile_pair(int j) const;
  // Residual variance of X_j on X_C: pooled, then one per slice.
  std::pair<double, std::vector<double>> residual_variances(int j) const;

 private:
  void check_candidate(int j) const;

  const Dataset* data_;
  const SlicingScheme* scheme_;
  std::vector<int> selected_;
  int q_ = 1;
  bool q_truncated_ = false;

  // homoscedastic model
  Eigen::MatrixXd centered_;      // n x d, X_C minus column means
  Eigen::MatrixXd slice_means_;   // H x d, slice means minus grand means
  Eigen::MatrixXd omega_;         // d x d
  EigenResult base_eigen_;
  std::optional<std::string> hom_error_;

  // augmented model
  LinearResidualizer pooled_;
  std::vector<LinearResidualizer> per_slice_;
  std::optional<std::string> aug_error_;
};

// Homoscedastic log-likelihood-ratio statistic
//   D_{j|C} = sum_k log(1 + (l_k^{d+1} - l_k^d) / (1 - l_k^{d+1})),
// null law chi-square(q).
StatValue d_hom(const StatContext& ctx, int j);

// COP_{1:q} = n * sum_k (l_k^{d+1} - l_k^d) / (1 - l_k^{d+1}); the linearized
// form of n * D_{j|C}.
double cop_statistic(const StatContext& ctx, int j);

// Augmented statistic
//   D*_{j|C} = log s2_{j|C} - sum_h (n_h / n) log s2^{(h)}_{j|C},
// null law chi-square((H - 1)(d + 2)). Throws
// NumericalError("degenerate slice regression") when a residual variance
// vanishes.
StatValue d_star(const StatContext& ctx, int j);

StatValue statistic(const StatContext& ctx, StatKind kind, int j);

int null_dof_hom(int q);
int null_dof_aug(int slices, int d);

// n / (n - H (d + 2)): finite-sample inflation applied to augmented-model
// thresholds; +inf when the denominator is not positive.
double aug_inflation(int n, int slices, int d);

}  // namespace siri
