#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>

#include "srgm/failure_data.hpp"
#include "srgm/models.hpp"
#include "srgm/ssa.hpp"

namespace srgm {

struct FitOptions {
  SsaConfig ssa;
  std::optional<ParamBounds> bounds;  // default_bounds(model, dataset) when unset
  bool ztp_pin_p = false;             // fix Z-T-P's p at 1 and fit the remaining five
};

struct FittedModel {
  ModelId model = ModelId::GoelOkumoto;
  Eigen::ArrayXd params;
  double objective_value = 0.0;  // SSE at the returned params
  SsaConfig config_used;
  std::string dataset_name;
  bool underdetermined = false;  // k <= fitted parameter count
  bool ztp_pinned_p = false;
};

/// Sum of squared errors over the observations. Parameter vectors outside the
/// model's constraint region score a large penalty instead of throwing.
double objective_sse(const FailureDataset& dataset, ModelId model,
                     const Eigen::ArrayXd& params);

/// `run_out`, when given, receives the full optimizer result (history etc).
FittedModel fit_model(const FailureDataset& dataset, ModelId model,
                      const FitOptions& options, SsaResult* run_out = nullptr);

std::string fitted_model_to_json(const FittedModel& fitted);
FittedModel fitted_model_from_json(const std::string& text);

}  // namespace srgm
