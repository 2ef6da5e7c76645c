#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "csv.hpp"
#include "report_json.hpp"
#include "siri/error.hpp"
#include "siri/parallel.hpp"

namespace siri::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Dataset load_input(const RunConfig& config) {
  if (config.input.empty()) throw UsageError("--input is required");
  Dataset data = load_csv(config.input, config.response);
  if (config.qnorm) quantile_normalize(data);
  return data;
}

SlicingScheme scheme_for(const Dataset& data, const RunConfig& config) {
  SlicingScheme scheme = make_scheme(data, config.hyper);
  if (config.verbosity > 0 && slice_size_warning(scheme))
    std::cerr << "warning: some slice holds fewer than " << kRecommendedSliceSize
              << " observations\n";
  return scheme;
}

void emit(const RunConfig& config, std::ostream& out, const Json& doc) {
  if (config.out.empty()) {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) throw DataError("cannot write '" + config.out + "'");
  file << doc.dump(2) << '\n';
}

Json data_header(const std::string& command, const Dataset& data, const RunConfig& config) {
  return Json{{"command", command},
              {"n", data.n()},
              {"p", data.p()},
              {"response", data.response},
              {"slices", config.hyper.slices},
              {"budget", resolved_budget(config.hyper, data.n(), data.p())}};
}

int run_screen(const RunConfig& config, std::ostream& out) {
  const Dataset data = load_input(config);
  const SlicingScheme scheme = scheme_for(data, config);
  const int budget =
      config.full_ranking ? data.p() : resolved_budget(config.hyper, data.n(), data.p());
  Json doc = data_header("screen", data, config);
  doc["budget"] = budget;
  doc["ranking"] = ranking_json(data, sis_star(data, scheme, budget, config.threads));
  emit(config, out, doc);
  return ok;
}

Json selection_doc(const std::string& command, const Dataset& data, const SlicingScheme& scheme,
                   const HyperParams& hyper, const RunConfig& config) {
  const SelectionState state = select_variables(data, scheme, hyper, config.threads);
  Json doc = data_header(command, data, config);
  doc["q"] = hyper.q;
  doc["thresholds"] =
      thresholds_json(hyper, data.n(), data.p(), static_cast<int>(state.selected.size()));
  const Json selection = selection_json(data, state);
  for (const auto& [key, value] : selection.items()) doc[key] = value;
  return doc;
}

int run_select(const RunConfig& config, std::ostream& out) {
  const Dataset data = load_input(config);
  const SlicingScheme scheme = scheme_for(data, config);
  emit(config, out, selection_doc("select", data, scheme, config.hyper, config));
  return ok;
}

int run_cv_select(const RunConfig& config, std::ostream& out) {
  const Dataset data = load_input(config);
  const SlicingScheme scheme = scheme_for(data, config);
  CvOptions options;
  options.q_grid = config.q_grid;
  options.alpha_grid = config.alpha_grid;
  options.folds = config.hyper.folds;
  options.measure = config.hyper.measure;
  options.seed = config.seed;
  options.base = config.hyper;
  options.threads = config.threads;
  const CvResult cv = select_hyperparams(data, options);
  Json doc = selection_doc("cv-select", data, scheme, cv.chosen, config);
  doc["measure"] = config.hyper.measure == Measure::ae ? "ae" : "ce";
  doc["folds"] = config.hyper.folds;
  doc["seed"] = config.seed;
  doc["chosen"] = {{"q", cv.q}, {"alpha", cv.alpha}};
  doc["cv_table"] = cv_table_json(cv);
  emit(config, out, doc);
  return ok;
}

std::string sidecar_path(const RunConfig& config) {
  if (!config.truth.empty()) return config.truth;
  if (config.out.empty()) return {};
  return std::filesystem::path(config.out).replace_extension(".truth.json").string();
}

int run_simulate(const RunConfig& config, std::ostream& out) {
  if (config.scenarios.size() != 1) throw UsageError("simulate takes exactly one --scenario");
  ScenarioSpec spec = resolve_scenario(config, config.scenarios.front());
  spec.seed = config.seed;
  const Dataset data = generate(spec);
  if (config.out.empty()) {
    write_csv(out, data);
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw DataError("cannot write '" + config.out + "'");
    write_csv(file, data);
  }
  if (const std::string path = sidecar_path(config); !path.empty()) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot write '" + path + "'");
    file << truth_json(spec).dump(2) << '\n';
  }
  return ok;
}

BenchMethod bench_method(const std::string& name, const RunConfig& config) {
  BenchMethod method;
  if (name == "ce") method = BenchMethod::siri_ce();
  else if (name == "ae") method = BenchMethod::siri_ae();
  else if (name == "fixed") method = BenchMethod::siri_fixed(config.hyper);
  else throw UsageError("unknown method '" + name + "' (expected ce, ae or fixed)");
  method.fixed = config.hyper;
  method.cv.q_grid = config.q_grid;
  method.cv.alpha_grid = config.alpha_grid;
  method.cv.folds = config.hyper.folds;
  return method;
}

ScreenMethod screen_method(const std::string& name) {
  if (name == "sis*" || name == "sis-star") return ScreenMethod::sis_star;
  if (name == "siri") return ScreenMethod::siri;
  if (name == "correlation") return ScreenMethod::correlation;
  throw UsageError("unknown screening method '" + name + "'");
}

void write_rows(const std::string& path, const std::vector<BenchReport>& reports) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot write '" + path + "'");
  file << "scenario,method,rep,seed,q,alpha,fp,fn,selected\n";
  for (const auto& report : reports) {
    for (const auto& row : report.rows) {
      file << report.spec.id << ',' << report.method << ',' << row.rep << ',' << row.seed << ','
           << row.q << ',' << Json(row.alpha).dump() << ',' << row.fp << ',' << row.fn << ',';
      for (std::size_t k = 0; k < row.selected.size(); ++k)
        file << (k ? " " : "") << row.selected[k] + 1;
      file << '\n';
    }
  }
}

int run_bench(const RunConfig& config, std::ostream& out) {
  std::vector<ScenarioSpec> specs;
  for (const auto& id : config.scenarios) specs.push_back(resolve_scenario(config, id));
  Json doc{{"command", "bench"}, {"seed", config.seed}, {"reps", config.reps}};

  if (config.screening) {
    const ScreenMethod method = screen_method(*config.screening);
    std::vector<ScreeningReport> reports;
    Json list = Json::array();
    for (const auto& spec : specs) {
      const int budget = resolved_budget(config.hyper, spec.n, spec.p);
      reports.push_back(screening_proportion(spec, method, budget, config.reps, config.seed,
                                             config.hyper, config.threads));
      list.push_back(report_json(reports.back(), config.timing));
    }
    write_text_table(out, reports);
    doc["screening"] = std::move(list);
  } else {
    std::vector<BenchMethod> methods;
    for (const auto& name : config.methods) methods.push_back(bench_method(name, config));
    const auto reports = run_table(specs, methods, config.reps, config.seed, config.threads);
    write_text_table(out, reports);
    Json list = Json::array();
    for (const auto& report : reports) list.push_back(report_json(report, config.timing));
    doc["reports"] = std::move(list);
    if (!config.rows.empty()) write_rows(config.rows, reports);
  }
  if (!config.out.empty()) emit(config, out, doc);
  return ok;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      T v;
      if constexpr (std::is_same_v<T, int>) v = std::stoi(item, &used);
      else v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "bad list entry '" + item + "'");
    }
  }
  if (values.empty()) throw CLI::ValidationError(flag, "empty list");
  return values;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

ScenarioSpec resolve_scenario(const RunConfig& config, const std::string& id) {
  const auto& ids = scenario_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    throw UsageError("unknown scenario '" + id + "'");
  ScenarioSpec spec = scenario(id);
  if (config.command == "bench") spec.p = 200;  // desk scale unless overridden
  if (config.n) spec.n = *config.n;
  if (config.p) spec.p = *config.p;
  if (config.rho) spec.rho = *config.rho;
  if (config.sigma) spec.sigma = *config.sigma;
  spec.law = config.law;
  if (spec.p < spec.min_p())
    throw UsageError("scenario " + id + " needs p >= " + std::to_string(spec.min_p()));
  if (spec.n < 2) throw UsageError("--n must be at least 2");
  return spec;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "screen") return run_screen(config, out);
    if (config.command == "select") return run_select(config, out);
    if (config.command == "cv-select") return run_cv_select(config, out);
    if (config.command == "simulate") return run_simulate(config, out);
    if (config.command == "bench") return run_bench(config, out);
    throw UsageError("unknown command '" + config.command + "'");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return data_error;
  } catch (const std::invalid_argument& e) {
    err << "data error: " << e.what() << '\n';
    return data_error;
  } catch (const std::out_of_range& e) {
    err << "data error: " << e.what() << '\n';
    return data_error;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return numerical_failure;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Variable selection by sliced inverse regression", "siri"};
  app.require_subcommand(1, 1);

  std::string q_grid, alpha_grid, measure = "ce", law = "gaussian", scenarios, methods;
  std::optional<int> budget;
  std::optional<double> alpha;
  std::vector<double> hom_pair, aug_pair;

  app.add_option("--threads", config.threads, "Worker threads (0: one per core)");
  app.add_option("--seed", config.seed, "Master seed");
  app.add_flag("-v,--verbose", config.verbosity, "Print warnings");

  auto data_options = [&](CLI::App* sub) {
    sub->add_option("-i,--input", config.input, "CSV file with a header row")->required();
    sub->add_option("-r,--response", config.response, "Response column")->capture_default_str();
    sub->add_option("--slices", config.hyper.slices, "Number of slices H")->capture_default_str();
    sub->add_option("--budget", budget, "Screening budget (default floor(n / log n))");
    sub->add_flag("--discrete", config.hyper.discrete_response, "One slice per response value");
    sub->add_flag("--qnorm", config.qnorm, "Quantile-normalize predictors first");
    sub->add_option("-o,--out", config.out, "Output file (default stdout)");
    sub->add_option("--threads", config.threads, "Worker threads (0: one per core)");
    sub->add_option("--seed", config.seed, "Master seed");
  };
  auto scenario_options = [&](CLI::App* sub, bool many) {
    sub->add_option("--scenario", scenarios,
                    many ? "Comma-separated scenario ids" : "Scenario id (0.1 ... 2.6)");
    sub->add_option("--n", config.n, "Observations");
    sub->add_option("--p", config.p, "Predictors");
    sub->add_option("--rho", config.rho, "AR(1) correlation");
    sub->add_option("--sigma", config.sigma, "Noise scale");
    sub->add_option("--law", law, "Predictor law: gaussian or uniform")
        ->check(CLI::IsMember({"gaussian", "uniform"}));
    sub->add_option("--seed", config.seed, "Master seed");
    sub->add_option("-o,--out", config.out, "Output file");
  };
  auto selection_options = [&](CLI::App* sub) {
    sub->add_option("--q", config.hyper.q, "Directions in the homoscedastic step (0 skips it)")
        ->capture_default_str();
    sub->add_option("--alpha", alpha, "Addition level (default 1 - 0.1 / p)");
    sub->add_option("--hom-thresholds", hom_pair, "Fixed add,delete thresholds for D")
        ->expected(2)->delimiter(',');
    sub->add_option("--aug-thresholds", aug_pair, "Fixed add,delete thresholds for D*")
        ->expected(2)->delimiter(',');
    sub->add_option("--max-cycles", config.hyper.max_cycles, "Cycle cap")->capture_default_str();
  };
  auto cv_options = [&](CLI::App* sub) {
    sub->add_option("--q-grid", q_grid, "Comma-separated q values (default 0,1,2,3,4)");
    sub->add_option("--alpha-grid", alpha_grid, "Comma-separated alpha values");
    sub->add_option("--folds", config.hyper.folds, "CV folds")->capture_default_str();
    sub->add_option("--measure", measure, "ce or ae")->check(CLI::IsMember({"ce", "ae"}));
  };

  auto* screen = app.add_subcommand("screen", "Rank predictors by n * D*");
  data_options(screen);
  screen->add_flag("--all", config.full_ranking, "Rank every predictor");

  auto* select = app.add_subcommand("select", "Stepwise selection at fixed hyperparameters");
  data_options(select);
  selection_options(select);

  auto* cv_select = app.add_subcommand("cv-select", "Cross-validate (q, alpha), then select");
  data_options(cv_select);
  selection_options(cv_select);
  cv_options(cv_select);

  auto* simulate = app.add_subcommand("simulate", "Draw a dataset from a scenario");
  scenario_options(simulate, false);
  simulate->add_option("--truth", config.truth, "Truth sidecar path");

  auto* bench = app.add_subcommand("bench", "FP / FN or screening benchmark");
  scenario_options(bench, true);
  bench->add_option("--reps", config.reps, "Replications")->capture_default_str();
  bench->add_option("--method", methods, "Comma-separated: ce, ae, fixed (default ae)");
  bench->add_option("--screening", config.screening, "Screening rates: sis*, siri or correlation");
  bench->add_option("--rows", config.rows, "Per-replication CSV");
  bench->add_option("--slices", config.hyper.slices, "Number of slices H")->capture_default_str();
  bench->add_option("--budget", budget, "Screening budget (default floor(n / log n))");
  bench->add_option("--threads", config.threads, "Worker threads (0: one per core)");
  bench->add_flag("--timing", config.timing, "Include wall-clock seconds in the JSON");
  selection_options(bench);
  cv_options(bench);

  try {
    app.parse(argc, argv);
    if (!q_grid.empty()) config.q_grid = parse_list<int>(q_grid, "--q-grid");
    if (!alpha_grid.empty()) config.alpha_grid = parse_list<double>(alpha_grid, "--alpha-grid");
    if (!scenarios.empty()) config.scenarios = split_names(scenarios);
    if (!methods.empty()) config.methods = split_names(methods);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return usage_error;
  }

  config.command = app.get_subcommands().front()->get_name();
  config.hyper.measure = measure == "ae" ? Measure::ae : Measure::ce;
  config.law = law == "uniform" ? PredictorLaw::uniform : PredictorLaw::gaussian;
  if (budget) config.hyper.budget = *budget;
  if (alpha) config.hyper.alpha = *alpha;
  if (hom_pair.size() == 2) config.hyper.hom_thresholds = ThresholdPair{hom_pair[0], hom_pair[1]};
  if (aug_pair.size() == 2) config.hyper.aug_thresholds = ThresholdPair{aug_pair[0], aug_pair[1]};
  config.threads = resolve_threads(config.threads);
  return run(config, out, err);
}

}  // namespace siri::cli
