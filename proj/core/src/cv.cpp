#include "siri/cv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "siri/error.hpp"
#include "siri/numkit.hpp"
#include "siri/parallel.hpp"
#include "siri/rng.hpp"

namespace siri {

std::vector<int> FoldPlan::test_rows(int fold) const {
  std::vector<int> rows;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] == fold) rows.push_back(static_cast<int>(i));
  return rows;
}

std::vector<int> FoldPlan::train_rows(int fold) const {
  std::vector<int> rows;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    if (assignment[i] != fold) rows.push_back(static_cast<int>(i));
  return rows;
}

FoldPlan kfold_split(int n, int folds, std::uint64_t seed) {
  if (folds < 2 || folds > n) throw std::invalid_argument("fold count must be in [2, n]");
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  FoldPlan plan;
  plan.folds = folds;
  plan.assignment.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) plan.assignment[static_cast<std::size_t>(order[i])] = i % folds;
  return plan;
}

SliceModel fit_slice_model(const Dataset& train, const std::vector<int>& selected,
                           const SlicingScheme& scheme) {
  if (scheme.n() != train.n()) throw std::invalid_argument("slicing scheme does not match dataset");
  const int d = static_cast<int>(selected.size());
  if (scheme.min_count() < d + 1) throw NumericalError("slice too small for regression");

  SliceModel m;
  m.selected = selected;
  m.scheme = scheme;
  m.priors = scheme.weights;
  for (int h = 0; h < scheme.slices; ++h) {
    const auto& rows = scheme.index[static_cast<std::size_t>(h)];
    m.ybar.push_back(train.y(rows).mean());
    if (d == 0) continue;
    const Eigen::MatrixXd xs = train.x(rows, selected);
    m.means.emplace_back(xs.colwise().mean().transpose());
    Eigen::MatrixXd cov = cov_matrix(xs);
    auto llt = ridge_cholesky(cov, kModelRidge);
    cov.diagonal().array() += kModelRidge * cov.diagonal().mean();
    double log_det = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) log_det += 2.0 * std::log(llt.matrixL()(k, k));
    m.covariances.push_back(std::move(cov));
    m.factors.push_back(std::move(llt));
    m.log_dets.push_back(log_det);
  }
  return m;
}

Eigen::VectorXd slice_posterior(const SliceModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const std::size_t slices = model.priors.size();
  Eigen::VectorXd logp(static_cast<Eigen::Index>(slices));
  const Eigen::VectorXd xs = x(model.selected);
  for (std::size_t h = 0; h < slices; ++h) {
    double v = std::log(model.priors[h]);
    if (!model.selected.empty()) {
      const Eigen::VectorXd z = model.factors[h].matrixL().solve(xs - model.means[h]);
      v -= 0.5 * (model.log_dets[h] + z.squaredNorm());
    }
    logp(static_cast<Eigen::Index>(h)) = v;
  }
  const Eigen::VectorXd w = (logp.array() - logp.maxCoeff()).exp();
  return w / w.sum();
}

Eigen::MatrixXd slice_posteriors(const SliceModel& model, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out(x.rows(), static_cast<Eigen::Index>(model.priors.size()));
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    out.row(i) = slice_posterior(model, x.row(i).transpose()).transpose();
  return out;
}

double classification_error(const Eigen::MatrixXd& posteriors, const std::vector<int>& truth) {
  if (static_cast<std::size_t>(posteriors.rows()) != truth.size())
    throw std::invalid_argument("classification_error: row count mismatch");
  if (truth.empty()) return 0.0;
  int wrong = 0;
  for (Eigen::Index i = 0; i < posteriors.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index h = 1; h < posteriors.cols(); ++h)
      if (posteriors(i, h) > posteriors(i, best)) best = h;
    if (best != truth[static_cast<std::size_t>(i)]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(truth.size());
}

double absolute_error(const Eigen::MatrixXd& posteriors, const std::vector<double>& ybar,
                      const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (posteriors.rows() != y.size() || static_cast<std::size_t>(posteriors.cols()) != ybar.size())
    throw std::invalid_argument("absolute_error: shape mismatch");
  if (y.size() == 0) return 0.0;
  const Eigen::Map<const Eigen::VectorXd> centers(ybar.data(), static_cast<Eigen::Index>(ybar.size()));
  return ((posteriors * centers) - y).cwiseAbs().mean();
}

double holdout_error(const SliceModel& model, const Dataset& test, Measure measure) {
  const Eigen::MatrixXd post = slice_posteriors(model, test.x);
  if (measure == Measure::ae) return absolute_error(post, model.ybar, test.y);
  std::vector<int> truth;
  truth.reserve(static_cast<std::size_t>(test.n()));
  for (Eigen::Index i = 0; i < test.y.size(); ++i) truth.push_back(assign_slice(model.scheme, test.y(i)));
  return classification_error(post, truth);
}

CvResult select_hyperparams(const Dataset& data, const CvOptions& options) {
  if (options.q_grid.empty()) throw std::invalid_argument("empty q grid");
  std::vector<double> alphas = options.alpha_grid.empty() ? alpha_grid(data.p()) : options.alpha_grid;
  const FoldPlan plan = kfold_split(data.n(), options.folds, options.seed);

  struct Fold {
    Dataset train;
    Dataset test;
    std::optional<SlicingScheme> scheme;
  };
  std::vector<Fold> folds(static_cast<std::size_t>(options.folds));
  for (int k = 0; k < options.folds; ++k) {
    auto& f = folds[static_cast<std::size_t>(k)];
    const auto train_rows = plan.train_rows(k);
    const auto test_rows = plan.test_rows(k);
    f.train = data.rows(train_rows);
    f.test = data.rows(test_rows);
    try {
      f.scheme = make_scheme(f.train, options.base);
    } catch (const std::exception&) {
      f.scheme.reset();
    }
  }

  CvResult result;
  for (int q : options.q_grid)
    for (double a : alphas) result.table.push_back({q, a, {}, 0.0, false});
  for (auto& row : result.table)
    row.fold_errors.assign(folds.size(), std::numeric_limits<double>::infinity());

  const std::size_t tasks = result.table.size() * folds.size();
  parallel_for(tasks, options.threads, [&](std::size_t t) {
    auto& row = result.table[t / folds.size()];
    const auto& fold = folds[t % folds.size()];
    if (!fold.scheme) return;
    try {
      HyperParams hp = options.base;
      hp.q = row.q;
      hp.alpha = row.alpha;
      hp.hom_thresholds.reset();
      hp.aug_thresholds.reset();
      const SelectionState sel = select_variables(fold.train, *fold.scheme, hp, 1);
      const SliceModel model = fit_slice_model(fold.train, sel.selected, *fold.scheme);
      row.fold_errors[t % folds.size()] = holdout_error(model, fold.test, options.measure);
    } catch (const std::exception&) {
      // scored as +inf
    }
  });

  std::size_t best = 0;
  for (std::size_t r = 0; r < result.table.size(); ++r) {
    auto& row = result.table[r];
    double sum = 0.0;
    for (double e : row.fold_errors) sum += e;
    row.mean = sum / static_cast<double>(row.fold_errors.size());
    const auto& b = result.table[best];
    const bool better = row.mean < b.mean ||
                        (row.mean == b.mean && (row.q < b.q || (row.q == b.q && row.alpha > b.alpha)));
    if (r == 0 || better) best = r;
  }
  result.table[best].chosen = true;
  result.q = result.table[best].q;
  result.alpha = result.table[best].alpha;
  result.chosen = options.base;
  result.chosen.q = result.q;
  result.chosen.alpha = result.alpha;
  result.chosen.hom_thresholds.reset();
  result.chosen.aug_thresholds.reset();
  result.chosen.measure = options.measure;
  result.chosen.folds = options.folds;
  return result;
}

}  // namespace siri
