#include "siri/dataset.hpp"

#include <algorithm>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

#include "siri/error.hpp"

namespace siri {

Dataset Dataset::rows(std::span<const int> index) const {
  Dataset out;
  out.x.resize(static_cast<Eigen::Index>(index.size()), x.cols());
  out.y.resize(static_cast<Eigen::Index>(index.size()));
  for (std::size_t r = 0; r < index.size(); ++r) {
    out.x.row(static_cast<Eigen::Index>(r)) = x.row(index[r]);
    out.y(static_cast<Eigen::Index>(r)) = y(index[r]);
  }
  out.names = names;
  out.response = response;
  return out;
}

void Dataset::validate() const {
  if (x.rows() != y.size()) throw DataError("predictor and response row counts differ");
  if (static_cast<Eigen::Index>(names.size()) != x.cols())
    throw DataError("predictor name count does not match column count");
  if (x.rows() == 0) throw DataError("no observations");
}

Dataset make_dataset(Eigen::MatrixXd x, Eigen::VectorXd y) {
  Dataset d;
  d.names.reserve(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index j = 0; j < x.cols(); ++j) d.names.push_back("x" + std::to_string(j + 1));
  d.x = std::move(x);
  d.y = std::move(y);
  return d;
}

void quantile_normalize(Dataset& data) {
  const int n = data.n();
  const boost::math::normal standard;
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int j = 0; j < data.p(); ++j) {
    auto col = data.x.col(j);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return col(a) < col(b); });
    Eigen::VectorXd scores(n);
    for (int start = 0; start < n;) {
      int stop = start + 1;
      while (stop < n && col(order[stop]) == col(order[start])) ++stop;
      // average 1-based rank of the tie block
      const double rank = 0.5 * (start + 1 + stop);
      const double z = boost::math::quantile(standard, rank / (n + 1.0));
      for (int k = start; k < stop; ++k) scores(order[k]) = z;
      start = stop;
    }
    col = scores;
  }
}

}  // namespace siri
