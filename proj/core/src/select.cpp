#include "siri/select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "siri/error.hpp"
#include "siri/numkit.hpp"
#include "siri/parallel.hpp"

namespace siri {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Evaluated {
  int index = 0;
  std::optional<StatValue> value;
  std::string error;
};

// Statistic of every candidate against one shared context; failures are
// captured per candidate instead of aborting the scan.
std::vector<Evaluated> evaluate(const StatContext& ctx, StatKind kind,
                                const std::vector<int>& candidates, int threads) {
  std::vector<Evaluated> out(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    out[i].index = candidates[i];
    try {
      out[i].value = statistic(ctx, kind, candidates[i]);
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

bool contains(const std::vector<int>& v, int j) { return std::find(v.begin(), v.end(), j) != v.end(); }

std::vector<ScreenEntry> rank(const Dataset& data, const SlicingScheme& scheme,
                              const std::vector<int>& selected, int budget, int threads) {
  if (budget < 1) throw std::invalid_argument("screening budget must be at least 1");
  std::vector<int> candidates;
  candidates.reserve(static_cast<std::size_t>(data.p()));
  for (int j = 0; j < data.p(); ++j)
    if (!contains(selected, j)) candidates.push_back(j);

  std::vector<ScreenEntry> ranking;
  ranking.reserve(candidates.size());
  const StatContext ctx(data, scheme, selected);
  for (auto& e : evaluate(ctx, StatKind::aug, candidates, threads)) {
    ScreenEntry entry;
    entry.index = e.index;
    if (e.value) {
      entry.score = e.value->scaled;
      entry.p_value = e.value->p_value;
    } else {
      entry.flagged = true;
    }
    ranking.push_back(entry);
  }
  std::stable_sort(ranking.begin(), ranking.end(), [](const ScreenEntry& a, const ScreenEntry& b) {
    if (a.flagged != b.flagged) return !a.flagged;
    return a.score > b.score;
  });
  if (static_cast<int>(ranking.size()) > budget) ranking.resize(static_cast<std::size_t>(budget));
  return ranking;
}

SelectionState run_stepwise(const Dataset& data, const SlicingScheme& scheme,
                            const std::vector<int>& initial, const std::vector<int>& pool,
                            const StepwiseOptions& opt, bool sequential) {
  if (opt.max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  const int n = data.n();
  const int q = opt.kind == StatKind::hom ? std::max(opt.q, 1) : 1;

  SelectionState state;
  for (int j : initial)
    if (!contains(state.initial, j)) state.initial.push_back(j);
  state.selected = state.initial;

  std::vector<char> deletable(static_cast<std::size_t>(data.p()), 1);
  if (opt.deletable) {
    for (int j : state.initial) deletable[static_cast<std::size_t>(j)] = 0;
    for (int j : *opt.deletable)
      if (j >= 0 && j < data.p()) deletable[static_cast<std::size_t>(j)] = 1;
  }
  std::vector<int> banned = opt.banned;
  std::vector<int> ordered_pool = pool;
  std::sort(ordered_pool.begin(), ordered_pool.end());
  ordered_pool.erase(std::unique(ordered_pool.begin(), ordered_pool.end()), ordered_pool.end());

  auto trace = [&](StepAction action, int index, double value, double threshold, std::string note = {}) {
    state.trace.push_back({action, index, value, threshold, opt.kind, opt.cycle, std::move(note)});
  };
  auto open_candidates = [&] {
    std::vector<int> c;
    for (int j : ordered_pool)
      if (!contains(state.selected, j) && !contains(banned, j)) c.push_back(j);
    return c;
  };
  // Augmented statistics regress on C inside every slice.
  auto slices_allow = [&](int d) { return opt.kind == StatKind::hom || scheme.min_count() >= d + 2; };

  for (int round = 0; round < opt.max_iters; ++round) {
    bool changed = false;

    if (sequential) {
      for (int j : open_candidates()) {
        const int d = static_cast<int>(state.selected.size());
        if (!slices_allow(d)) {
          trace(StepAction::note, -1, 0.0, 0.0, "slice size guard stops additions");
          break;
        }
        const double threshold = opt.rule.resolve(opt.kind, n, scheme.slices, q, d).add;
        try {
          const StatContext ctx(data, scheme, state.selected, q);
          const StatValue v = statistic(ctx, opt.kind, j);
          if (v.scaled > threshold) {
            state.selected.push_back(j);
            trace(StepAction::add, j, v.scaled, threshold);
            changed = true;
          }
        } catch (const std::exception& e) {
          trace(StepAction::excluded, j, 0.0, threshold, e.what());
        }
      }
    } else {
      const int d = static_cast<int>(state.selected.size());
      const auto candidates = open_candidates();
      if (!candidates.empty() && !slices_allow(d)) {
        trace(StepAction::note, -1, 0.0, 0.0, "slice size guard stops additions");
      } else if (!candidates.empty()) {
        const double threshold = opt.rule.resolve(opt.kind, n, scheme.slices, q, d).add;
        const StatContext ctx(data, scheme, state.selected, q);
        int best = -1;
        double best_value = -kInf;
        for (const auto& e : evaluate(ctx, opt.kind, candidates, opt.threads)) {
          if (!e.value) {
            trace(StepAction::excluded, e.index, 0.0, threshold, e.error);
            continue;
          }
          if (e.value->scaled > best_value) {
            best_value = e.value->scaled;
            best = e.index;
          }
        }
        if (best >= 0 && best_value > threshold) {
          state.selected.push_back(best);
          trace(StepAction::add, best, best_value, threshold);
          changed = true;
        }
      }
    }

    if (!state.selected.empty()) {
      const int d = static_cast<int>(state.selected.size()) - 1;
      const double threshold = opt.rule.resolve(opt.kind, n, scheme.slices, q, d).remove;
      std::vector<int> members;
      for (int j : state.selected)
        if (deletable[static_cast<std::size_t>(j)]) members.push_back(j);
      std::sort(members.begin(), members.end());
      std::vector<Evaluated> tested(members.size());
      parallel_for(members.size(), opt.threads, [&](std::size_t i) {
        tested[i].index = members[i];
        std::vector<int> rest;
        for (int k : state.selected)
          if (k != members[i]) rest.push_back(k);
        try {
          const StatContext ctx(data, scheme, std::move(rest), q);
          tested[i].value = statistic(ctx, opt.kind, members[i]);
        } catch (const std::exception& e) {
          tested[i].error = e.what();
        }
      });
      int worst = -1;
      double worst_value = kInf;
      for (const auto& e : tested) {
        if (!e.value) {
          trace(StepAction::excluded, e.index, 0.0, threshold, e.error);
          continue;
        }
        if (e.value->scaled < worst_value) {
          worst_value = e.value->scaled;
          worst = e.index;
        }
      }
      if (worst >= 0 && worst_value < threshold) {
        state.selected.erase(std::find(state.selected.begin(), state.selected.end(), worst));
        trace(StepAction::remove, worst, worst_value, threshold);
        if (opt.ban_removed) banned.push_back(worst);
        changed = true;
      }
    }

    if (!changed) break;
  }
  state.screened = ordered_pool;
  return state;
}

}  // namespace

ThresholdPair ThresholdRule::resolve(StatKind kind, int n, int slices, int q, int d) const {
  if (fixed) return *fixed;
  if (kind == StatKind::hom)
    return {chisq_quantile(alpha, q), chisq_quantile(alpha - 0.05, q)};
  const int dof = null_dof_aug(slices, d);
  if (dof == 0) return {kInf, 0.0};
  const double inflation = aug_inflation(n, slices, d);
  const double remove = chisq_quantile(alpha - 0.05, dof);
  if (!std::isfinite(inflation)) return {kInf, remove};
  return {inflation * chisq_quantile(alpha, dof), inflation * remove};
}

std::vector<double> alpha_grid(int p) {
  if (p < 1) throw std::invalid_argument("p must be positive");
  std::vector<double> grid;
  for (double c : {1.0, 0.5, 0.1, 0.05, 0.01}) grid.push_back(1.0 - c / p);
  return grid;
}

std::vector<ThresholdPair> threshold_grid(int p, int dof, int n, int slices, int d, StatKind model) {
  const double inflation = model == StatKind::aug ? aug_inflation(n, slices, d) : 1.0;
  std::vector<ThresholdPair> grid;
  for (double a : alpha_grid(p))
    grid.push_back({inflation * chisq_quantile(a, dof), inflation * chisq_quantile(a - 0.05, dof)});
  return grid;
}

std::vector<ScreenEntry> sis_star(const Dataset& data, const SlicingScheme& scheme, int budget,
                                  int threads) {
  return rank(data, scheme, {}, budget, threads);
}

std::vector<ScreenEntry> conditional_screen(const Dataset& data, const SlicingScheme& scheme,
                                            const std::vector<int>& selected, int budget,
                                            int threads) {
  return rank(data, scheme, selected, budget, threads);
}

std::vector<int> SelectionState::replay() const {
  std::vector<int> c = initial;
  for (const auto& e : trace) {
    if (e.action == StepAction::add) {
      c.push_back(e.index);
    } else if (e.action == StepAction::remove) {
      const auto it = std::find(c.begin(), c.end(), e.index);
      if (it != c.end()) c.erase(it);
    }
  }
  return c;
}

SelectionState stepwise(const Dataset& data, const SlicingScheme& scheme,
                        const std::vector<int>& initial, const std::vector<int>& pool,
                        const StepwiseOptions& options) {
  return run_stepwise(data, scheme, initial, pool, options, false);
}

SelectionState stepwise_sequential(const Dataset& data, const SlicingScheme& scheme,
                                   const std::vector<int>& initial, const std::vector<int>& pool,
                                   const StepwiseOptions& options) {
  return run_stepwise(data, scheme, initial, pool, options, true);
}

int default_budget(int n) {
  if (n < 2) return 1;
  return std::max(1, static_cast<int>(std::floor(n / std::log(static_cast<double>(n)))));
}

int resolved_budget(const HyperParams& hyper, int n, int p) {
  const int b = hyper.budget ? *hyper.budget : default_budget(n);
  return std::clamp(b, 1, std::max(p, 1));
}

double resolved_alpha(const HyperParams& hyper, int p) {
  return hyper.alpha > 0.0 ? hyper.alpha : 1.0 - 0.1 / p;
}

SlicingScheme make_scheme(const Dataset& data, const HyperParams& hyper) {
  const std::span<const double> y(data.y.data(), static_cast<std::size_t>(data.y.size()));
  return hyper.discrete_response ? build_slices_discrete(y) : build_slices(y, hyper.slices);
}

SelectionState select_variables(const Dataset& data, const HyperParams& hyper, int threads) {
  return select_variables(data, make_scheme(data, hyper), hyper, threads);
}

SelectionState select_variables(const Dataset& data, const SlicingScheme& scheme, const HyperParams& hyper,
                    int threads) {
  if (hyper.q < 0) throw std::invalid_argument("q must be nonnegative");
  if (hyper.max_cycles < 1) throw std::invalid_argument("max_cycles must be at least 1");
  const int budget = resolved_budget(hyper, data.n(), data.p());
  const double alpha = resolved_alpha(hyper, data.p());
  const ThresholdRule hom_rule = hyper.hom_thresholds ? ThresholdRule::constant(*hyper.hom_thresholds)
                                                      : ThresholdRule::chi_square(alpha);
  const ThresholdRule aug_rule = hyper.aug_thresholds ? ThresholdRule::constant(*hyper.aug_thresholds)
                                                      : ThresholdRule::chi_square(alpha);

  SelectionState state;
  auto screen = [&](int cycle) {
    state.screened.clear();
    for (const auto& e : conditional_screen(data, scheme, state.selected, budget, threads))
      state.screened.push_back(e.index);
    state.screen_history.push_back(state.screened);
    state.trace.push_back({StepAction::screen, -1, static_cast<double>(state.screened.size()), 0.0,
                           StatKind::aug, cycle, state.selected.empty() ? "sis*" : "conditional"});
  };
  screen(0);

  // Which statistic admitted each member; a step only deletes its own.
  std::vector<std::pair<int, StatKind>> origin;
  auto owned_by = [&](StatKind kind) {
    std::vector<int> v;
    for (const auto& [j, k] : origin)
      if (k == kind) v.push_back(j);
    return v;
  };
  auto absorb = [&](const SelectionState& step, StatKind kind) {
    state.trace.insert(state.trace.end(), step.trace.begin(), step.trace.end());
    for (const auto& e : step.trace) {
      if (e.action == StepAction::add) {
        origin.emplace_back(e.index, kind);
      } else if (e.action == StepAction::remove) {
        std::erase_if(origin, [&](const auto& o) { return o.first == e.index; });
      }
    }
    state.selected = step.selected;
  };

  for (int cycle = 1; cycle <= hyper.max_cycles; ++cycle) {
    state.cycles = cycle;
    std::vector<int> before = state.selected;
    std::sort(before.begin(), before.end());
    std::vector<int> banned;

    auto run_step = [&](StatKind kind) {
      StepwiseOptions opt;
      opt.kind = kind;
      opt.q = std::max(hyper.q, 1);
      opt.rule = kind == StatKind::hom ? hom_rule : aug_rule;
      opt.max_iters = hyper.max_steps;
      opt.threads = threads;
      opt.cycle = cycle;
      opt.deletable = owned_by(kind);
      opt.banned = banned;
      opt.ban_removed = true;
      const SelectionState step = stepwise(data, scheme, state.selected, state.screened, opt);
      for (const auto& e : step.trace)
        if (e.action == StepAction::remove) banned.push_back(e.index);
      absorb(step, kind);
    };
    if (hyper.q > 0) run_step(StatKind::hom);
    run_step(StatKind::aug);
    screen(cycle);

    std::vector<int> after = state.selected;
    std::sort(after.begin(), after.end());
    if (after == before) break;
  }
  return state;
}

const char* to_string(StepAction action) {
  switch (action) {
    case StepAction::add: return "add";
    case StepAction::remove: return "delete";
    case StepAction::screen: return "screen";
    case StepAction::excluded: return "excluded";
    case StepAction::note: return "note";
  }
  return "note";
}

const char* to_string(StatKind kind) { return kind == StatKind::hom ? "hom" : "aug"; }

}  // namespace siri
