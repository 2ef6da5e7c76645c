#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <random>
#include <vector>

#include "siri/dataset.hpp"
#include "siri/rng.hpp"
#include "siri/slicing.hpp"

namespace test {

// Dataset whose columns are given one vector at a time.
inline siri::Dataset columns(std::initializer_list<std::vector<double>> cols, std::vector<double> y) {
  const auto n = static_cast<Eigen::Index>(y.size());
  Eigen::MatrixXd x(n, static_cast<Eigen::Index>(cols.size()));
  Eigen::Index j = 0;
  for (const auto& c : cols) {
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = c[static_cast<std::size_t>(i)];
    ++j;
  }
  return siri::make_dataset(std::move(x), Eigen::Map<Eigen::VectorXd>(y.data(), n));
}

inline Eigen::MatrixXd gaussian(int n, int p, siri::Rng& rng) {
  std::normal_distribution<double> z;
  Eigen::MatrixXd x(n, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) x(i, j) = z(rng);
  return x;
}

// Y = X1 * X2 + sqrt(0.1) e on independent standard normal predictors.
inline siri::Dataset product_example(int n, int p, std::uint64_t seed) {
  siri::Rng rng(seed);
  Eigen::MatrixXd x = gaussian(n, p, rng);
  std::normal_distribution<double> z;
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = x(i, 0) * x(i, 1) + std::sqrt(0.1) * z(rng);
  return siri::make_dataset(std::move(x), std::move(y));
}

inline siri::Dataset pure_noise(int n, int p, std::uint64_t seed) {
  siri::Rng rng(seed);
  Eigen::MatrixXd x = gaussian(n, p, rng);
  std::normal_distribution<double> z;
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = z(rng);
  return siri::make_dataset(std::move(x), std::move(y));
}

inline siri::SlicingScheme slices(const siri::Dataset& d, int h) {
  return siri::build_slices(std::span<const double>(d.y.data(), static_cast<std::size_t>(d.y.size())), h);
}

inline double mle_variance(const std::vector<double>& v) {
  double mean = 0.0;
  for (double a : v) mean += a;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double a : v) ss += (a - mean) * (a - mean);
  return ss / static_cast<double>(v.size());
}

}  // namespace test
