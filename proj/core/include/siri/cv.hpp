#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "siri/dataset.hpp"
#include "siri/select.hpp"
#include "siri/slicing.hpp"

namespace siri {

struct FoldPlan {
  int folds = 0;
  std::vector<int> assignment;  // fold id per observation

  std::vector<int> test_rows(int fold) const;
  std::vector<int> train_rows(int fold) const;
};

// Random balanced partition: a seeded shuffle, then observation at shuffled
// position i goes to fold i mod K.
FoldPlan kfold_split(int n, int folds, std::uint64_t seed);

// Per-slice Gaussian on the selected columns (quadratic discriminant form),
// fitted by maximum likelihood on training data.
struct SliceModel {
  std::vector<int> selected;
  SlicingScheme scheme;
  std::vector<double> priors;  // n_h / n
  std::vector<double> ybar;    // mean training response per slice
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covariances;  // ridge-regularized
  std::vector<Eigen::LLT<Eigen::MatrixXd>> factors;
  std::vector<double> log_dets;
};

// Ridge for SliceModel covariances, relative to mean(diag). Larger than the
// solver guard because held-out densities get exponentiated.
inline constexpr double kModelRidge = 1e-6;

// Throws NumericalError("slice too small for regression") when some slice
// has fewer than |C| + 1 observations.
SliceModel fit_slice_model(const Dataset& train, const std::vector<int>& selected,
                           const SlicingScheme& scheme);

// Pr(S(y) = h | x) under the fitted model; `x` is a full predictor row.
Eigen::VectorXd slice_posterior(const SliceModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

// Rows are observations, columns slices.
Eigen::MatrixXd slice_posteriors(const SliceModel& model, const Eigen::MatrixXd& x);

// Fraction of rows whose argmax slice (lowest id on ties) differs from truth.
double classification_error(const Eigen::MatrixXd& posteriors, const std::vector<int>& truth);

// Mean of |y_j - sum_h p_j^(h) ybar^(h)|.
double absolute_error(const Eigen::MatrixXd& posteriors, const std::vector<double>& ybar,
                      const Eigen::Ref<const Eigen::VectorXd>& y);

// Scores held-out data with the measure; slices of the held-out responses
// come from the model's (training) scheme.
double holdout_error(const SliceModel& model, const Dataset& test, Measure measure);

struct CvOptions {
  std::vector<int> q_grid{0, 1, 2, 3, 4};
  std::vector<double> alpha_grid;  // empty: alpha_grid(p)
  int folds = 10;
  Measure measure = Measure::ce;
  std::uint64_t seed = 1;
  HyperParams base;  // slices, budget, cycle caps
  int threads = 1;
};

struct CvRow {
  int q = 0;
  double alpha = 0.0;
  std::vector<double> fold_errors;  // +inf where selection or scoring failed
  double mean = 0.0;
  bool chosen = false;
};

struct CvResult {
  int q = 0;
  double alpha = 0.0;
  std::vector<CvRow> table;
  // Hyperparameters of the chosen grid point, ready for select_variables().
  HyperParams chosen;
};

// Grid search over (q, alpha). Each grid point is scored by K-fold CV: siri
// on the training folds, fit_slice_model on its selection, the measure on
// the held-out fold. The lowest mean error wins; ties go to the smaller q,
// then the larger alpha.
CvResult select_hyperparams(const Dataset& data, const CvOptions& options);

}  // namespace siri
