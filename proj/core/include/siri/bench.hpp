#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "siri/cv.hpp"
#include "siri/select.hpp"
#include "siri/sim.hpp"

namespace siri {

struct FpFn {
  int fp = 0;  // selected but irrelevant
  int fn = 0;  // relevant but not selected
};

FpFn fp_fn(const std::vector<int>& selected, const std::vector<int>& truth, int p);

enum class ScreenMethod {
  sis_star,     // one-shot ranking by D*_{j|empty}
  siri,         // C from siri plus the top of the final conditional ranking
  correlation,  // |sample Corr(X_j, Y)|
};

struct ScreeningReport {
  ScenarioSpec spec;
  ScreenMethod method = ScreenMethod::siri;
  int budget = 0;
  int reps = 0;
  std::vector<int> tracked;
  std::vector<double> rates;  // per tracked variable
  double seconds = 0.0;
};

// Indices a screening method keeps within `budget` on one dataset.
std::vector<int> screened_set(const Dataset& data, ScreenMethod method, int budget,
                              const HyperParams& hyper);

// Fraction of R replications placing each tracked variable within the
// budget. Replication r draws its data with seed derive_seed(seed, r).
ScreeningReport screening_proportion(const ScenarioSpec& spec, ScreenMethod method, int budget,
                                     int reps, std::uint64_t seed, const HyperParams& hyper = {},
                                     int threads = 1);

// How one replication chooses hyperparameters: K-fold CV over the grid
// (SIRI-CE / SIRI-AE), or fixed hyperparameters.
struct BenchMethod {
  std::string name;
  bool cross_validate = true;
  CvOptions cv;       // used when cross_validate
  HyperParams fixed;  // used otherwise; also supplies slices/budget to CV

  static BenchMethod siri_ce();
  static BenchMethod siri_ae();
  static BenchMethod siri_fixed(const HyperParams& hyper);
};

struct ReplicationRow {
  int rep = 0;
  std::uint64_t seed = 0;
  std::vector<int> selected;
  int fp = 0;
  int fn = 0;
  int q = 0;
  double alpha = 0.0;
};

struct BenchReport {
  ScenarioSpec spec;
  std::string method;
  int reps = 0;
  double fp_mean = 0.0;
  double fp_se = 0.0;
  double fn_mean = 0.0;
  double fn_se = 0.0;
  std::vector<int> tracked;
  std::vector<double> inclusion;  // fraction of runs selecting each tracked variable
  double seconds = 0.0;
  std::vector<ReplicationRow> rows;
};

// generate -> (CV) -> siri -> fp_fn for one replication seed.
ReplicationRow run_replication(const ScenarioSpec& spec, const BenchMethod& method, int rep,
                               std::uint64_t rep_seed);

// One report per spec x method, R replications each. Replication r of every
// spec uses data seed derive_seed(seed, r) and CV seed derive_seed(that, 1),
// so results do not depend on the thread count.
std::vector<BenchReport> run_table(const std::vector<ScenarioSpec>& specs,
                                   const std::vector<BenchMethod>& methods, int reps,
                                   std::uint64_t seed, int threads = 1);

// Mean and standard error (sample sd / sqrt(R)).
std::pair<double, double> mean_se(const std::vector<double>& values);

// FP / FN table, one row per method:
// Method | Scenario: FP (se) FN (se).
void write_text_table(std::ostream& out, const std::vector<BenchReport>& reports);
void write_text_table(std::ostream& out, const std::vector<ScreeningReport>& reports);

const char* to_string(ScreenMethod method);

}  // namespace siri
