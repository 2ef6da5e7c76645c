#pragma once

#include <optional>
#include <string>
#include <vector>

#include "siri/dataset.hpp"
#include "siri/slicing.hpp"
#include "siri/stats.hpp"

namespace siri {

// Addition and deletion thresholds on the scaled (chi-square scale)
// statistic n * D or n * D*. Addition requires value > add, deletion
// requires value < remove.
struct ThresholdPair {
  double add = 0.0;
  double remove = 0.0;
};

// Either a fixed pair, or chi-square quantiles at alpha (addition) and
// alpha - 0.05 (deletion). Augmented-model quantiles use (H - 1)(d + 2)
// degrees of freedom and are inflated by n / (n - H (d + 2)), so they are
// resolved per step from the size d of the conditioning set.
struct ThresholdRule {
  std::optional<ThresholdPair> fixed;
  double alpha = 0.999;

  static ThresholdRule constant(ThresholdPair pair) { return {pair, 0.0}; }
  static ThresholdRule chi_square(double alpha) { return {std::nullopt, alpha}; }

  ThresholdPair resolve(StatKind kind, int n, int slices, int q, int d) const;
};

// {1 - 1/p, 1 - 0.5/p, 1 - 0.1/p, 1 - 0.05/p, 1 - 0.01/p}
std::vector<double> alpha_grid(int p);

// One ThresholdPair per alpha in alpha_grid(p) for a test with `dof`
// degrees of freedom conditioning on d variables. Augmented pairs carry the
// n / (n - H (d + 2)) inflation; pass dof = (H - 1)(d + 2) for them.
std::vector<ThresholdPair> threshold_grid(int p, int dof, int n, int slices, int d, StatKind model);

struct ScreenEntry {
  int index = 0;
  double score = 0.0;  // n * D*_{j|C}
  double p_value = 1.0;
  bool flagged = false;  // statistic failed; scored as 0
};

// Ranks every predictor by n * D*_{j|empty}, descending (flagged entries
// last, ties to the lower index) and keeps the first `budget`.
std::vector<ScreenEntry> sis_star(const Dataset& data, const SlicingScheme& scheme, int budget,
                                  int threads = 1);

// Same ranking for j outside `selected`, conditioning on it.
std::vector<ScreenEntry> conditional_screen(const Dataset& data, const SlicingScheme& scheme,
                                            const std::vector<int>& selected, int budget,
                                            int threads = 1);

enum class StepAction { add, remove, screen, excluded, note };

struct TraceEntry {
  StepAction action = StepAction::note;
  int index = -1;
  double value = 0.0;
  double threshold = 0.0;
  StatKind stat = StatKind::aug;
  int cycle = 0;
  std::string note;
};

struct SelectionState {
  std::vector<int> initial;
  std::vector<int> selected;  // in order of addition
  std::vector<TraceEntry> trace;
  std::vector<int> screened;  // current candidate pool S
  std::vector<std::vector<int>> screen_history;
  int cycles = 0;

  // Applies the add/remove entries of the trace to `initial`.
  std::vector<int> replay() const;
};

struct StepwiseOptions {
  StatKind kind = StatKind::aug;
  int q = 1;
  ThresholdRule rule;
  int max_iters = 100;
  int threads = 1;
  int cycle = 0;
  // Members of the initial set that deletion may consider; all of them when
  // empty. Variables added during the call are always deletable.
  std::optional<std::vector<int>> deletable;
  // Variables that may not be added. With ban_removed, every deleted
  // variable joins this list for the rest of the call.
  std::vector<int> banned;
  bool ban_removed = false;
};

// Forward-addition / backward-deletion. Each round adds the best candidate
// of pool \ C if it clears the addition threshold, then removes the weakest
// member (tested against the others) if it falls below the deletion
// threshold. Stops when a round changes nothing or after max_iters rounds.
// Candidates whose statistic fails are skipped and logged as `excluded`.
SelectionState stepwise(const Dataset& data, const SlicingScheme& scheme,
                        const std::vector<int>& initial, const std::vector<int>& pool,
                        const StepwiseOptions& options);

// Variant whose addition step sweeps the pool in index order, adding every
// candidate that clears the threshold given the set built so far.
SelectionState stepwise_sequential(const Dataset& data, const SlicingScheme& scheme,
                                   const std::vector<int>& initial, const std::vector<int>& pool,
                                   const StepwiseOptions& options);

enum class Measure { ce, ae };

struct HyperParams {
  int slices = 5;
  int q = 1;           // 0 skips the homoscedastic step
  double alpha = 0.0;  // <= 0 picks 1 - 0.1 / p
  std::optional<ThresholdPair> hom_thresholds;  // override alpha for D
  std::optional<ThresholdPair> aug_thresholds;  // override alpha for D*
  std::optional<int> budget;                    // default floor(n / log n)
  int folds = 10;
  Measure measure = Measure::ce;
  int max_cycles = 20;
  int max_steps = 100;
  bool discrete_response = false;
};

int default_budget(int n);

// Screening budget and alpha actually used for a dataset.
int resolved_budget(const HyperParams& hyper, int n, int p);
double resolved_alpha(const HyperParams& hyper, int p);

// Cross-stitched selection: SIS* screening, then cycles of homoscedastic
// stepwise, augmented stepwise and conditional re-screening until a cycle
// leaves C unchanged (or max_cycles). Within a cycle a deleted variable is
// not re-added; each step only deletes variables that step's statistic
// admitted.
SelectionState select_variables(const Dataset& data, const SlicingScheme& scheme, const HyperParams& hyper,
                    int threads = 1);
// Builds the slicing scheme from the response first.
SelectionState select_variables(const Dataset& data, const HyperParams& hyper, int threads = 1);

SlicingScheme make_scheme(const Dataset& data, const HyperParams& hyper);

const char* to_string(StepAction action);
const char* to_string(StatKind kind);

}  // namespace siri
