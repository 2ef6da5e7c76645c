#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace siri {

// n observations of p predictors plus a scalar response. Predictors are
// stored column-major so per-variable scans touch contiguous memory.
struct Dataset {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::string> names;
  std::string response = "y";

  int n() const { return static_cast<int>(x.rows()); }
  int p() const { return static_cast<int>(x.cols()); }

  // Copy of the given observations, in the given order.
  Dataset rows(std::span<const int> index) const;

  // Throws DataError when shapes disagree or names are missing.
  void validate() const;
};

// Builds a dataset with default names x1..xp.
Dataset make_dataset(Eigen::MatrixXd x, Eigen::VectorXd y);

// Replaces every predictor column by its normal scores
// Phi^{-1}(rank / (n + 1)); ties share their average rank.
void quantile_normalize(Dataset& data);

}  // namespace siri
