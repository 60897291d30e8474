#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "srgm/criteria.hpp"
#include "srgm/fit.hpp"
#include "srgm/models.hpp"
#include "srgm/ranking.hpp"
#include "srgm/ssa.hpp"

namespace srgm {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One run of the fit -> criteria -> rank pipeline. Everything an output file
/// depends on lives here, so identical configs reproduce byte-identical trees.
struct RunConfig {
  std::filesystem::path dataset_path;
  std::filesystem::path out_dir = ".";
  std::vector<ModelId> models;            // empty = all 16
  std::vector<CriterionId> criteria;      // empty = the default ten
  SsaConfig ssa;                          // per-model sub-seed = seed ^ model index
  PrrMode prr_direction = PrrMode::Absolute;
  bool ztp_pin_p = false;
  bool write_history = false;             // emit history_<model>.csv per fit
  int curve_grid_points = 200;
  std::optional<std::filesystem::path> criteria_csv;  // replay input for `rank`

  std::vector<ModelId> selected_models() const;
  std::vector<CriterionId> selected_criteria() const;
};

/// Fits the selected models; writes params.csv plus result_<model>.json per
/// model (and optional histories). Returns the fits in selection order.
std::vector<FittedModel> cmd_fit(const RunConfig& config);

/// Computes criteria + ranking from existing result files, or replays a
/// supplied criteria CSV without touching the optimizer. Writes criteria.csv
/// and ranking.csv.
RankingResult cmd_rank(const RunConfig& config);

/// Writes curve_<model>.csv with `t,actual,estimated` at the observation
/// times plus a dense grid (grid rows leave `actual` empty). Requires a prior
/// fit result for the model.
void cmd_curve(const RunConfig& config, ModelId model);

/// fit + rank + one curve per selected model.
void cmd_report(const RunConfig& config);

std::filesystem::path result_file_path(const std::filesystem::path& out_dir, ModelId model);
std::filesystem::path curve_file_path(const std::filesystem::path& out_dir, ModelId model);

/// Comma-separated normalized model names -> ids; throws UsageError listing
/// the valid names on an unknown entry. Same contract for criteria.
std::vector<ModelId> parse_model_selection(const std::string& names);
std::vector<CriterionId> parse_criteria_selection(const std::string& names);

}  // namespace srgm
