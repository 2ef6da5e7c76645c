#include "siri/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace siri {
namespace {

struct Reference {
  const char* id;
  int n;
  int p;
  double rho;
  double sigma;
};

constexpr Reference kReferences[] = {
    {"0.1", 200, 2000, 0.0, 0.2}, {"0.2", 200, 2000, 0.0, 0.2}, {"0.3", 200, 2000, 0.0, 0.2},
    {"1.1", 200, 1000, 0.5, 1.0}, {"1.2", 200, 1000, 0.0, 0.2}, {"1.3", 1000, 1000, 0.0, 0.2},
    {"2.1", 200, 1000, 0.0, 0.2}, {"2.2", 200, 1000, 0.0, 0.2}, {"2.3", 200, 1000, 0.0, 0.2},
    {"2.4", 200, 1000, 0.0, 0.2}, {"2.5", 200, 1000, 0.0, 0.2}, {"2.6", 200, 1000, 0.0, 0.2},
};

std::vector<int> first(int k) {
  std::vector<int> v(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

}  // namespace

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& r : kReferences) v.emplace_back(r.id);
    return v;
  }();
  return ids;
}

ScenarioSpec scenario(const std::string& id) {
  for (const auto& r : kReferences) {
    if (id == r.id) {
      ScenarioSpec s;
      s.id = id;
      s.n = r.n;
      s.p = r.p;
      s.rho = r.rho;
      s.sigma = r.sigma;
      return s;
    }
  }
  throw std::invalid_argument("unknown scenario '" + id + "'");
}

std::vector<int> ScenarioSpec::truth() const {
  if (id == "0.1") return rho == 0.0 ? std::vector<int>{1, 99} : std::vector<int>{0, 1, 99};
  if (id == "0.2" || id == "0.3") return {0, 1, 99};
  if (id == "1.1" || id == "1.3") return first(8);
  if (id == "1.2") return first(4);
  if (id == "2.1" || id == "2.5") return first(2);
  if (id == "2.2" || id == "2.3" || id == "2.4" || id == "2.6") return first(3);
  throw std::invalid_argument("unknown scenario '" + id + "'");
}

std::vector<int> ScenarioSpec::tracked() const {
  if (id.starts_with("0.")) return {0, 1, 99};
  return truth();
}

int ScenarioSpec::min_p() const {
  const auto t = tracked();
  return *std::max_element(t.begin(), t.end()) + 1;
}

Eigen::MatrixXd ar1_mvn(int n, int p, double rho, Rng& rng) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
  if (n < 0 || p < 0) throw std::invalid_argument("negative dimension");
  std::normal_distribution<double> z;
  const double innovation = std::sqrt(1.0 - rho * rho);
  Eigen::MatrixXd x(n, p);
  for (int i = 0; i < n; ++i) {
    double prev = 0.0;
    for (int j = 0; j < p; ++j) {
      const double v = j == 0 ? z(rng) : rho * prev + innovation * z(rng);
      x(i, j) = v;
      prev = v;
    }
  }
  return x;
}

Eigen::MatrixXd ar1_mvn(int n, int p, double rho, std::uint64_t seed) {
  Rng rng(seed);
  return ar1_mvn(n, p, rho, rng);
}

double scenario_response(const ScenarioSpec& spec, const Eigen::Ref<const Eigen::RowVectorXd>& row,
                         double e) {
  auto X = [&](int k) { return row(k - 1); };
  const double s = spec.sigma;
  const std::string& id = spec.id;
  if (id == "0.1") return X(2) - spec.rho * X(1) + 0.2 * X(100) + s * e;
  if (id == "0.2") return X(1) * X(2) + s * std::exp(2.0 * std::abs(X(100))) * e;
  if (id == "0.3") return X(100) / (X(1) + X(2)) + s * e;
  if (id == "1.1") {
    constexpr double beta[] = {3.0, 1.5, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0};
    double v = 0.0;
    for (int k = 0; k < 8; ++k) v += beta[k] * X(k + 1);
    return v + s * e;
  }
  if (id == "1.2") {
    const double inner = 1.5 + X(2) + X(3) + X(4);
    return (X(1) + X(2) + X(3)) / (0.5 + inner * inner) + s * e;
  }
  if (id == "1.3") {
    double sum = 0.0;
    for (int k = 1; k <= 8; ++k) sum += X(k);
    return s * e / (1.5 + sum);
  }
  if (id == "2.1") return 0.2 * X(1) + 0.2 * X(2) + X(1) * X(2) + s * e;
  if (id == "2.2") return X(1) + X(1) * X(2) + X(1) * X(3) + s * e;
  if (id == "2.3") return X(1) * X(2) + X(1) * X(3) + s * e;
  if (id == "2.4") return X(1) * X(2) * X(3) + s * e;
  if (id == "2.5") return X(1) * X(1) * X(2) + s * e;
  if (id == "2.6") return X(1) / (X(2) + X(3)) + s * e;
  throw std::invalid_argument("unknown scenario '" + id + "'");
}

Dataset generate(const ScenarioSpec& spec) {
  const int needed = spec.min_p();
  if (spec.p < needed)
    throw std::invalid_argument("scenario " + spec.id + " needs p >= " + std::to_string(needed));
  if (spec.n < 1) throw std::invalid_argument("n must be positive");

  Rng rng(spec.seed);
  Eigen::MatrixXd x;
  if (spec.law == PredictorLaw::gaussian) {
    x = ar1_mvn(spec.n, spec.p, spec.rho, rng);
  } else {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    x.resize(spec.n, spec.p);
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.p; ++j) x(i, j) = u(rng);
  }
  std::normal_distribution<double> z;
  Eigen::VectorXd eps(spec.n);
  for (int i = 0; i < spec.n; ++i) eps(i) = z(rng);

  Eigen::VectorXd y(spec.n);
  for (int i = 0; i < spec.n; ++i) y(i) = scenario_response(spec, x.row(i), eps(i));
  return make_dataset(std::move(x), std::move(y));
}

}  // namespace siri
