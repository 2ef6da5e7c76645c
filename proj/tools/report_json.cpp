#include "report_json.hpp"

#include <cmath>

namespace siri::cli {
namespace {

std::string column_name(const Dataset& data, int j) {
  return j >= 0 && j < data.p() ? data.names[static_cast<std::size_t>(j)] : std::string();
}

std::string default_name(int j) { return "x" + std::to_string(j + 1); }

Json pair_json(const ThresholdPair& pair) {
  return Json{{"add", number(pair.add)}, {"delete", number(pair.remove)}};
}

const char* law_name(PredictorLaw law) {
  return law == PredictorLaw::uniform ? "uniform" : "gaussian";
}

}  // namespace

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json ranking_json(const Dataset& data, const std::vector<ScreenEntry>& ranking) {
  Json out = Json::array();
  int rank = 1;
  for (const auto& e : ranking) {
    out.push_back({{"rank", rank++},
                   {"index", e.index},
                   {"name", column_name(data, e.index)},
                   {"statistic", number(e.score)},
                   {"p_value", number(e.p_value)},
                   {"flagged", e.flagged}});
  }
  return out;
}

Json selection_json(const Dataset& data, const SelectionState& state) {
  Json selected = Json::array();
  for (int j : state.selected) selected.push_back({{"index", j}, {"name", column_name(data, j)}});
  Json trace = Json::array();
  for (const auto& t : state.trace) {
    Json row{{"cycle", t.cycle}, {"action", to_string(t.action)}};
    if (t.action == StepAction::add || t.action == StepAction::remove ||
        t.action == StepAction::excluded) {
      row["statistic"] = to_string(t.stat);
      row["index"] = t.index;
      row["name"] = column_name(data, t.index);
      row["value"] = number(t.value);
      row["threshold"] = number(t.threshold);
    }
    if (!t.note.empty()) row["note"] = t.note;
    trace.push_back(std::move(row));
  }
  return Json{{"selected", std::move(selected)},
              {"cycles", state.cycles},
              {"screened", state.screened},
              {"trace", std::move(trace)}};
}

Json thresholds_json(const HyperParams& hyper, int n, int p, int max_d) {
  const double alpha = resolved_alpha(hyper, p);
  const ThresholdRule hom = hyper.hom_thresholds ? ThresholdRule::constant(*hyper.hom_thresholds)
                                                 : ThresholdRule::chi_square(alpha);
  const ThresholdRule aug = hyper.aug_thresholds ? ThresholdRule::constant(*hyper.aug_thresholds)
                                                 : ThresholdRule::chi_square(alpha);
  Json out{{"alpha", alpha}};
  if (hyper.q > 0)
    out["hom"] = pair_json(hom.resolve(StatKind::hom, n, hyper.slices, hyper.q, 0));
  else
    out["hom"] = nullptr;
  Json by_d = Json::array();
  for (int d = 0; d <= max_d; ++d) {
    Json row = pair_json(aug.resolve(StatKind::aug, n, hyper.slices, hyper.q, d));
    row["d"] = d;
    by_d.push_back(std::move(row));
  }
  out["aug"] = std::move(by_d);
  return out;
}

Json cv_table_json(const CvResult& cv) {
  Json table = Json::array();
  for (const auto& row : cv.table) {
    Json folds = Json::array();
    for (double e : row.fold_errors) folds.push_back(number(e));
    table.push_back({{"q", row.q},
                     {"alpha", row.alpha},
                     {"fold_errors", std::move(folds)},
                     {"mean", number(row.mean)},
                     {"chosen", row.chosen}});
  }
  return table;
}

Json spec_json(const ScenarioSpec& spec) {
  return Json{{"scenario", spec.id}, {"n", spec.n},         {"p", spec.p},
              {"rho", spec.rho},     {"sigma", spec.sigma}, {"law", law_name(spec.law)}};
}

Json truth_json(const ScenarioSpec& spec) {
  Json out = spec_json(spec);
  out["seed"] = spec.seed;
  Json names = Json::array();
  for (int j : spec.truth()) names.push_back(default_name(j));
  out["truth"] = spec.truth();
  out["truth_names"] = std::move(names);
  return out;
}

Json report_json(const BenchReport& report, bool timing) {
  Json tracked = Json::array();
  for (std::size_t k = 0; k < report.tracked.size(); ++k)
    tracked.push_back({{"index", report.tracked[k]},
                       {"name", default_name(report.tracked[k])},
                       {"inclusion", report.inclusion[k]}});
  Json out = spec_json(report.spec);
  out["method"] = report.method;
  out["reps"] = report.reps;
  out["fp"] = {{"mean", report.fp_mean}, {"se", number(report.fp_se)}};
  out["fn"] = {{"mean", report.fn_mean}, {"se", number(report.fn_se)}};
  out["tracked"] = std::move(tracked);
  if (timing) out["seconds"] = report.seconds;
  return out;
}

Json report_json(const ScreeningReport& report, bool timing) {
  Json tracked = Json::array();
  for (std::size_t k = 0; k < report.tracked.size(); ++k)
    tracked.push_back({{"index", report.tracked[k]},
                       {"name", default_name(report.tracked[k])},
                       {"rate", report.rates[k]}});
  Json out = spec_json(report.spec);
  out["method"] = to_string(report.method);
  out["budget"] = report.budget;
  out["reps"] = report.reps;
  out["tracked"] = std::move(tracked);
  if (timing) out["seconds"] = report.seconds;
  return out;
}

}  // namespace siri::cli
