#include "siri/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "siri/parallel.hpp"
#include "siri/rng.hpp"

namespace siri {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed2(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v;
  return s.str();
}

}  // namespace

FpFn fp_fn(const std::vector<int>& selected, const std::vector<int>& truth, int p) {
  std::vector<int> s = selected;
  std::vector<int> t = truth;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  for (int j : s)
    if (j < 0 || j >= p) throw std::out_of_range("selected index out of range");
  FpFn r;
  std::vector<int> diff;
  std::set_difference(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(diff));
  r.fp = static_cast<int>(diff.size());
  diff.clear();
  std::set_difference(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(diff));
  r.fn = static_cast<int>(diff.size());
  return r;
}

std::vector<int> screened_set(const Dataset& data, ScreenMethod method, int budget,
                              const HyperParams& hyper) {
  budget = std::clamp(budget, 1, data.p());
  std::vector<int> out;
  switch (method) {
    case ScreenMethod::sis_star: {
      const auto scheme = make_scheme(data, hyper);
      for (const auto& e : sis_star(data, scheme, budget)) out.push_back(e.index);
      break;
    }
    case ScreenMethod::siri: {
      HyperParams hp = hyper;
      hp.budget = budget;
      const auto state = select_variables(data, hp);
      out = state.selected;
      for (int j : state.screened) {
        if (static_cast<int>(out.size()) >= budget) break;
        out.push_back(j);
      }
      break;
    }
    case ScreenMethod::correlation: {
      const Eigen::VectorXd yc = data.y.array() - data.y.mean();
      std::vector<std::pair<double, int>> score;
      for (int j = 0; j < data.p(); ++j) {
        const Eigen::VectorXd xc = data.x.col(j).array() - data.x.col(j).mean();
        const double denom = std::sqrt(xc.squaredNorm() * yc.squaredNorm());
        score.emplace_back(denom > 0.0 ? std::abs(xc.dot(yc)) / denom : 0.0, j);
      }
      std::stable_sort(score.begin(), score.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      for (int k = 0; k < budget; ++k) out.push_back(score[static_cast<std::size_t>(k)].second);
      break;
    }
  }
  return out;
}

ScreeningReport screening_proportion(const ScenarioSpec& spec, ScreenMethod method, int budget,
                                     int reps, std::uint64_t seed, const HyperParams& hyper,
                                     int threads) {
  if (reps < 1) throw std::invalid_argument("replication count must be positive");
  const auto start = Clock::now();
  ScreeningReport report;
  report.spec = spec;
  report.method = method;
  report.budget = budget;
  report.reps = reps;
  report.tracked = spec.tracked();

  std::vector<std::vector<char>> hits(static_cast<std::size_t>(reps));
  parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t r) {
    ScenarioSpec s = spec;
    s.seed = derive_seed(seed, r);
    const Dataset data = generate(s);
    const auto kept = screened_set(data, method, budget, hyper);
    for (int j : report.tracked)
      hits[r].push_back(std::find(kept.begin(), kept.end(), j) != kept.end() ? 1 : 0);
  });
  report.rates.assign(report.tracked.size(), 0.0);
  for (const auto& h : hits)
    for (std::size_t k = 0; k < h.size(); ++k) report.rates[k] += h[k];
  for (double& rate : report.rates) rate /= reps;
  report.seconds = seconds_since(start);
  return report;
}

BenchMethod BenchMethod::siri_ce() {
  BenchMethod m;
  m.name = "SIRI-CE";
  m.cv.measure = Measure::ce;
  return m;
}

BenchMethod BenchMethod::siri_ae() {
  BenchMethod m;
  m.name = "SIRI-AE";
  m.cv.measure = Measure::ae;
  return m;
}

BenchMethod BenchMethod::siri_fixed(const HyperParams& hyper) {
  BenchMethod m;
  m.name = "SIRI-fixed";
  m.cross_validate = false;
  m.fixed = hyper;
  return m;
}

ReplicationRow run_replication(const ScenarioSpec& spec, const BenchMethod& method, int rep,
                               std::uint64_t rep_seed) {
  ScenarioSpec s = spec;
  s.seed = rep_seed;
  const Dataset data = generate(s);

  ReplicationRow row;
  row.rep = rep;
  row.seed = rep_seed;
  HyperParams hyper = method.fixed;
  if (method.cross_validate) {
    CvOptions cv = method.cv;
    cv.base = method.fixed;
    cv.seed = derive_seed(rep_seed, 1);
    cv.threads = 1;
    hyper = select_hyperparams(data, cv).chosen;
  }
  row.q = hyper.q;
  row.alpha = resolved_alpha(hyper, data.p());
  row.selected = select_variables(data, hyper).selected;
  std::sort(row.selected.begin(), row.selected.end());
  const FpFn e = fp_fn(row.selected, s.truth(), s.p);
  row.fp = e.fp;
  row.fn = e.fn;
  return row;
}

std::pair<double, double> mean_se(const std::vector<double>& values) {
  if (values.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

std::vector<BenchReport> run_table(const std::vector<ScenarioSpec>& specs,
                                   const std::vector<BenchMethod>& methods, int reps,
                                   std::uint64_t seed, int threads) {
  if (reps < 1) throw std::invalid_argument("replication count must be positive");
  std::vector<BenchReport> reports;
  for (const auto& spec : specs) {
    for (const auto& method : methods) {
      const auto start = Clock::now();
      BenchReport report;
      report.spec = spec;
      report.method = method.name;
      report.reps = reps;
      report.tracked = spec.tracked();
      report.rows.resize(static_cast<std::size_t>(reps));
      parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t r) {
        report.rows[r] = run_replication(spec, method, static_cast<int>(r), derive_seed(seed, r));
      });
      std::vector<double> fps, fns;
      report.inclusion.assign(report.tracked.size(), 0.0);
      for (const auto& row : report.rows) {
        fps.push_back(row.fp);
        fns.push_back(row.fn);
        for (std::size_t k = 0; k < report.tracked.size(); ++k)
          if (std::binary_search(row.selected.begin(), row.selected.end(), report.tracked[k]))
            report.inclusion[k] += 1.0 / reps;
      }
      std::tie(report.fp_mean, report.fp_se) = mean_se(fps);
      std::tie(report.fn_mean, report.fn_se) = mean_se(fns);
      report.seconds = seconds_since(start);
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

void write_text_table(std::ostream& out, const std::vector<BenchReport>& reports) {
  // one column block per scenario, one row per method
  std::vector<std::string> scenarios, methods;
  std::map<std::pair<std::string, std::string>, const BenchReport*> cell;
  for (const auto& r : reports) {
    const std::string key = "Scenario " + r.spec.id + " (p=" + std::to_string(r.spec.p) + ")";
    if (std::find(scenarios.begin(), scenarios.end(), key) == scenarios.end()) scenarios.push_back(key);
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
    cell[{key, r.method}] = &r;
  }
  constexpr int kMethodWidth = 12;
  constexpr int kCellWidth = 13;
  out << std::left << std::setw(kMethodWidth) << "";
  for (const auto& s : scenarios) out << std::setw(2 * kCellWidth) << s;
  out << '\n' << std::setw(kMethodWidth) << "Method";
  for (std::size_t k = 0; k < scenarios.size(); ++k)
    out << std::setw(kCellWidth) << "FP" << std::setw(kCellWidth) << "FN";
  out << '\n';
  for (const auto& m : methods) {
    out << std::setw(kMethodWidth) << m;
    for (const auto& s : scenarios) {
      const auto it = cell.find({s, m});
      if (it == cell.end()) {
        out << std::setw(kCellWidth) << "--" << std::setw(kCellWidth) << "--";
        continue;
      }
      const auto& r = *it->second;
      out << std::setw(kCellWidth) << fixed2(r.fp_mean) + " (" + fixed2(r.fp_se) + ")"
          << std::setw(kCellWidth) << fixed2(r.fn_mean) + " (" + fixed2(r.fn_se) + ")";
    }
    out << '\n';
  }
}

void write_text_table(std::ostream& out, const std::vector<ScreeningReport>& reports) {
  constexpr int kWidth = 10;
  for (const auto& r : reports) {
    out << "Scenario " << r.spec.id << "  p=" << r.spec.p << " n=" << r.spec.n << " rho=" << r.spec.rho
        << " budget=" << r.budget << " R=" << r.reps << '\n';
    out << std::left << std::setw(14) << "Method";
    for (int j : r.tracked) out << std::setw(kWidth) << ("X" + std::to_string(j + 1));
    out << '\n' << std::setw(14) << to_string(r.method);
    for (double rate : r.rates) out << std::setw(kWidth) << fixed2(rate);
    out << '\n';
  }
}

const char* to_string(ScreenMethod method) {
  switch (method) {
    case ScreenMethod::sis_star: return "sis*";
    case ScreenMethod::siri: return "siri";
    case ScreenMethod::correlation: return "correlation";
  }
  return "siri";
}

}  // namespace siri
