#include "srgm/fit.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <utility>

namespace srgm {
namespace {

constexpr double kPenalty = 1e100;

using nlohmann::json;

json config_to_json(const SsaConfig& c) {
  return json{{"population", c.population},
              {"attenuation_rate", c.attenuation_rate},
              {"mask_change_base", c.mask_change_base},
              {"mask_one_prob", c.mask_one_prob},
              {"max_iters", c.max_iters},
              {"seed", c.seed},
              {"intensity_c", c.intensity_c},
              {"no_improve_window", c.no_improve_window}};
}

SsaConfig config_from_json(const json& j) {
  SsaConfig c;
  j.at("population").get_to(c.population);
  j.at("attenuation_rate").get_to(c.attenuation_rate);
  j.at("mask_change_base").get_to(c.mask_change_base);
  j.at("mask_one_prob").get_to(c.mask_one_prob);
  j.at("max_iters").get_to(c.max_iters);
  j.at("seed").get_to(c.seed);
  j.at("intensity_c").get_to(c.intensity_c);
  j.at("no_improve_window").get_to(c.no_improve_window);
  return c;
}

}  // namespace

double objective_sse(const FailureDataset& dataset, ModelId model,
                     const Eigen::ArrayXd& params) {
  if (!params_valid(model, params)) return kPenalty;
  double sse = 0.0;
  for (Eigen::Index i = 0; i < dataset.size(); ++i) {
    const double r = dataset.counts()(i) - mean_value(model, params, dataset.times()(i));
    sse += r * r;
  }
  return std::isfinite(sse) ? sse : kPenalty;
}

FittedModel fit_model(const FailureDataset& dataset, ModelId model,
                      const FitOptions& options, SsaResult* run_out) {
  const bool pin_p = options.ztp_pin_p && model == ModelId::ZTP;

  ParamBounds bounds =
      options.bounds ? *options.bounds : default_bounds(model, dataset);
  Objective objective;
  if (pin_p) {
    // Optimize (a, b, c, alpha, beta) with p fixed at 1; beta stays below p.
    ParamBounds reduced;
    reduced.lower.resize(5);
    reduced.upper.resize(5);
    const int full_to_reduced[] = {0, 1, 2, 4, 5};
    for (int i = 0; i < 5; ++i) {
      reduced.lower(i) = bounds.lower(full_to_reduced[i]);
      reduced.upper(i) = bounds.upper(full_to_reduced[i]);
    }
    reduced.upper(4) = std::min(reduced.upper(4), 1.0 - 1e-6);
    bounds = std::move(reduced);
    objective = [&dataset](const Eigen::ArrayXd& x) {
      Eigen::ArrayXd full(6);
      full << x(0), x(1), x(2), 1.0, x(3), x(4);
      return objective_sse(dataset, ModelId::ZTP, full);
    };
  } else {
    objective = [&dataset, model](const Eigen::ArrayXd& x) {
      return objective_sse(dataset, model, x);
    };
  }

  SsaResult run = optimize(objective, bounds, options.ssa);
  if (run_out) *run_out = run;

  FittedModel fitted;
  fitted.model = model;
  if (pin_p) {
    fitted.params.resize(6);
    fitted.params << run.best_position(0), run.best_position(1), run.best_position(2), 1.0,
        run.best_position(3), run.best_position(4);
  } else {
    fitted.params = run.best_position;
  }
  fitted.objective_value = run.best_fitness;
  fitted.config_used = options.ssa;
  fitted.dataset_name = dataset.name();
  fitted.underdetermined = dataset.size() <= bounds.dim();
  fitted.ztp_pinned_p = pin_p;
  return fitted;
}

std::string fitted_model_to_json(const FittedModel& fitted) {
  const ModelInfo& info = model_info(fitted.model);
  json params = json::object();
  for (std::size_t i = 0; i < info.params.size(); ++i)
    params[std::string(info.params[i])] = fitted.params(static_cast<Eigen::Index>(i));
  json j{{"model", info.display_name},
         {"params", params},
         {"objective_sse", fitted.objective_value},
         {"dataset", fitted.dataset_name},
         {"underdetermined", fitted.underdetermined},
         {"ztp_pinned_p", fitted.ztp_pinned_p},
         {"ssa", config_to_json(fitted.config_used)}};
  return j.dump(2) + "\n";
}

FittedModel fitted_model_from_json(const std::string& text) {
  const json j = json::parse(text);
  const auto model = parse_model_name(j.at("model").get<std::string>());
  if (!model)
    throw std::invalid_argument("unknown model name in result file: " +
                                j.at("model").get<std::string>());
  FittedModel fitted;
  fitted.model = *model;
  const ModelInfo& info = model_info(*model);
  fitted.params.resize(static_cast<Eigen::Index>(info.params.size()));
  const json& params = j.at("params");
  for (std::size_t i = 0; i < info.params.size(); ++i)
    fitted.params(static_cast<Eigen::Index>(i)) =
        params.at(std::string(info.params[i])).get<double>();
  j.at("objective_sse").get_to(fitted.objective_value);
  j.at("dataset").get_to(fitted.dataset_name);
  j.at("underdetermined").get_to(fitted.underdetermined);
  j.at("ztp_pinned_p").get_to(fitted.ztp_pinned_p);
  fitted.config_used = config_from_json(j.at("ssa"));
  return fitted;
}

}  // namespace srgm
