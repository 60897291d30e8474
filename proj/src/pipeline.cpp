#include "srgm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "srgm/csv.hpp"

namespace srgm {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write output file: " + path.string());
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

FittedModel load_fit_result(const RunConfig& config, ModelId model) {
  const auto path = result_file_path(config.out_dir, model);
  std::ifstream in(path);
  if (!in)
    throw UsageError("no fit result for " + std::string(model_info(model).display_name) +
                     " at " + path.string() + "; run `fit` first");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return fitted_model_from_json(buffer.str());
}

}  // namespace

std::vector<ModelId> RunConfig::selected_models() const {
  if (!models.empty()) return models;
  std::vector<ModelId> all;
  for (const auto& info : model_catalog()) all.push_back(info.id);
  return all;
}

std::vector<CriterionId> RunConfig::selected_criteria() const {
  if (!criteria.empty()) return criteria;
  const auto def = default_ranking_criteria();
  return {def.begin(), def.end()};
}

std::filesystem::path result_file_path(const std::filesystem::path& out_dir, ModelId model) {
  return out_dir / ("result_" + normalized_model_name(model) + ".json");
}

std::filesystem::path curve_file_path(const std::filesystem::path& out_dir, ModelId model) {
  return out_dir / ("curve_" + normalized_model_name(model) + ".csv");
}

std::vector<ModelId> parse_model_selection(const std::string& names) {
  std::vector<ModelId> out;
  for (const auto& item : split_list(names)) {
    const auto id = parse_model_name(item);
    if (!id) {
      std::string valid;
      for (const auto& info : model_catalog())
        valid += (valid.empty() ? "" : ", ") + normalized_model_name(info.id);
      throw UsageError("unknown model '" + item + "'; valid names: " + valid);
    }
    out.push_back(*id);
  }
  return out;
}

std::vector<CriterionId> parse_criteria_selection(const std::string& names) {
  std::vector<CriterionId> out;
  for (const auto& item : split_list(names)) {
    const auto id = parse_criterion_name(item);
    if (!id) {
      std::string valid;
      for (CriterionId c : all_criteria())
        valid += (valid.empty() ? "" : ", ") + std::string(criterion_name(c));
      throw UsageError("unknown criterion '" + item + "'; valid names: " + valid);
    }
    out.push_back(*id);
  }
  return out;
}

std::vector<FittedModel> cmd_fit(const RunConfig& config) {
  const FailureDataset dataset = load_dataset(config.dataset_path);
  std::filesystem::create_directories(config.out_dir);

  std::vector<FittedModel> fits;
  for (ModelId model : config.selected_models()) {
    FitOptions options;
    options.ssa = config.ssa;
    options.ssa.seed = config.ssa.seed ^ static_cast<std::uint64_t>(model_index(model));
    options.ztp_pin_p = config.ztp_pin_p;

    SsaResult run;
    FittedModel fitted = fit_model(dataset, model, options, &run);
    if (!std::isfinite(fitted.objective_value) || fitted.objective_value >= 1e100)
      throw NumericalError("fit for " + std::string(model_info(model).display_name) +
                           " found no finite objective value");

    auto out = open_output(result_file_path(config.out_dir, model));
    out << fitted_model_to_json(fitted);
    if (config.write_history) {
      auto hist = open_output(config.out_dir /
                              ("history_" + normalized_model_name(model) + ".csv"));
      write_history_csv(hist, run);
    }
    fits.push_back(std::move(fitted));
  }

  auto params_csv = open_output(config.out_dir / "params.csv");
  params_csv << "model,parameters,objective_sse\n";
  for (const FittedModel& fitted : fits) {
    const ModelInfo& info = model_info(fitted.model);
    params_csv << info.display_name << ',';
    for (std::size_t i = 0; i < info.params.size(); ++i) {
      if (i) params_csv << ';';
      params_csv << info.params[i] << '='
                 << format_double(fitted.params(static_cast<Eigen::Index>(i)));
    }
    params_csv << ',' << format_double(fitted.objective_value) << '\n';
  }
  return fits;
}

RankingResult cmd_rank(const RunConfig& config) {
  CriteriaMatrix matrix;
  if (config.criteria_csv) {
    // Replay path: rank an externally supplied table; the optimizer never runs.
    std::ifstream in(*config.criteria_csv);
    if (!in)
      throw UsageError("cannot open criteria CSV: " + config.criteria_csv->string());
    matrix = read_criteria_csv(in);
  } else {
    const FailureDataset dataset = load_dataset(config.dataset_path);
    std::vector<FittedModel> fits;
    for (ModelId model : config.selected_models())
      fits.push_back(load_fit_result(config, model));
    matrix = evaluate_all(dataset, fits, config.selected_criteria());
  }

  std::filesystem::create_directories(config.out_dir);
  {
    auto out = open_output(config.out_dir / "criteria.csv");
    write_criteria_csv(out, matrix);
  }
  RankingPolicy policy{config.prr_direction};
  RankingResult result = rank_models(matrix, policy);
  {
    auto out = open_output(config.out_dir / "ranking.csv");
    write_ranking_csv(out, result);
  }
  return result;
}

void cmd_curve(const RunConfig& config, ModelId model) {
  const FailureDataset dataset = load_dataset(config.dataset_path);
  const FittedModel fitted = load_fit_result(config, model);

  std::filesystem::create_directories(config.out_dir);
  auto out = open_output(curve_file_path(config.out_dir, model));
  out << "t,actual,estimated\n";

  const int grid = std::max(config.curve_grid_points, 2);
  const double t_end = dataset.last_time();
  Eigen::Index obs = 0;
  for (int g = 0; g <= grid; ++g) {
    const double t = t_end * g / grid;
    // Observations interleave in time order, before any grid row at the same t.
    while (obs < dataset.size() && dataset.times()(obs) <= t) {
      out << format_double(dataset.times()(obs)) << ','
          << format_double(dataset.counts()(obs)) << ','
          << format_double(mean_value(model, fitted.params, dataset.times()(obs))) << '\n';
      ++obs;
    }
    out << format_double(t) << ",," << format_double(mean_value(model, fitted.params, t))
        << '\n';
  }
  while (obs < dataset.size()) {
    out << format_double(dataset.times()(obs)) << ',' << format_double(dataset.counts()(obs))
        << ',' << format_double(mean_value(model, fitted.params, dataset.times()(obs)))
        << '\n';
    ++obs;
  }
}

void cmd_report(const RunConfig& config) {
  cmd_fit(config);
  cmd_rank(config);
  for (ModelId model : config.selected_models()) cmd_curve(config, model);
}

}  // namespace srgm
