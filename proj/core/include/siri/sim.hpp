#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "siri/dataset.hpp"
#include "siri/rng.hpp"

namespace siri {

enum class PredictorLaw { gaussian, uniform };

// Generative settings of one simulation scenario. Indices are 0-based, so
// the 1-based X_1 is column 0 and X_100 is column 99.
//
//   0.1  Y = X2 - rho X1 + 0.2 X100 + s e
//   0.2  Y = X1 X2 + s exp(2 |X100|) e
//   0.3  Y = X100 / (X1 + X2) + s e
//   1.1  Y = b'X + s e,  b = (3, 1.5, 2, 2, 2, 2, 2, 2, 0, ...)
//   1.2  Y = (X1 + X2 + X3) / (0.5 + (1.5 + X2 + X3 + X4)^2) + s e
//   1.3  Y = s e / (1.5 + X1 + ... + X8)
//   2.1  Y = 0.2 X1 + 0.2 X2 + X1 X2 + s e
//   2.2  Y = X1 + X1 X2 + X1 X3 + s e
//   2.3  Y = X1 X2 + X1 X3 + s e
//   2.4  Y = X1 X2 X3 + s e
//   2.5  Y = X1^2 X2 + s e
//   2.6  Y = X1 / (X2 + X3) + s e
struct ScenarioSpec {
  std::string id = "2.3";
  int n = 200;
  int p = 1000;
  double rho = 0.0;
  double sigma = 0.2;
  PredictorLaw law = PredictorLaw::gaussian;
  std::uint64_t seed = 1;

  // Relevant predictors. Scenario 0.1 with rho == 0 leaves X1 out.
  std::vector<int> truth() const;
  // Variables whose screening rates are reported: X1, X2, X100 for the 0.x
  // scenarios, the truth set otherwise.
  std::vector<int> tracked() const;
  // Smallest p the response formula can address.
  int min_p() const;
};

// Spec with the scenario's reference n, p, rho and sigma.
ScenarioSpec scenario(const std::string& id);
const std::vector<std::string>& scenario_ids();

// Zero-mean Gaussian rows with Cov(X_i, X_j) = rho^|i - j| from the causal
// recursion X_1 = Z_1, X_j = rho X_{j-1} + sqrt(1 - rho^2) Z_j.
Eigen::MatrixXd ar1_mvn(int n, int p, double rho, Rng& rng);
Eigen::MatrixXd ar1_mvn(int n, int p, double rho, std::uint64_t seed);

// Response for one predictor row and one standard normal draw e.
double scenario_response(const ScenarioSpec& spec, const Eigen::Ref<const Eigen::RowVectorXd>& row,
                         double e);

// Draws predictors (AR(1) Gaussian, or i.i.d. Uniform(-2, 2) ignoring rho)
// and then the response; bit-identical for identical specs.
Dataset generate(const ScenarioSpec& spec);

}  // namespace siri
