#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "srgm/bounds.hpp"
#include "srgm/failure_data.hpp"

namespace srgm {

/// The 16 NHPP mean-value models, in catalog order. The enum value doubles
/// as the model index used for sub-seed derivation.
enum class ModelId {
  GoelOkumoto,
  GeneralizedGoel,
  Gompertz,
  InflectedS,
  LogisticGrowth,
  MusaOkumoto,
  YamadaDelayedS,
  ModifiedDuane,
  PhamZhangIFD,
  YamadaRayleigh,
  YamadaImperfect1,
  YamadaImperfect2,
  YamadaExponential,
  PNZ,
  PhamZhang,
  ZTP,
};

inline constexpr int kModelCount = 16;

struct ModelInfo {
  ModelId id;
  std::string_view display_name;            // table-style short name, e.g. "Log. Gro."
  std::span<const std::string_view> params; // parameter names in vector order
};

const std::array<ModelInfo, kModelCount>& model_catalog();
const ModelInfo& model_info(ModelId id);
inline int model_index(ModelId id) { return static_cast<int>(id); }
inline int param_count(ModelId id) { return static_cast<int>(model_info(id).params.size()); }

/// Accepts display names normalized by dropping spaces/periods, case-insensitive
/// ("Log. Gro." <-> "loggro"). Returns nullopt for unknown names.
std::optional<ModelId> parse_model_name(std::string_view name);
std::string normalized_model_name(ModelId id);

/// True when the vector lies strictly inside the model's constraint region
/// (positivity, Gompertz b,k < 1, Z-T-P p > beta).
bool params_valid(ModelId id, const Eigen::ArrayXd& params);

/// Expected cumulative faults m(t). Throws std::domain_error on invalid
/// params or t < 0; finite for all finite inputs.
double mean_value(ModelId id, const Eigen::ArrayXd& params, double t);
Eigen::ArrayXd mean_value(ModelId id, const Eigen::ArrayXd& params,
                          const Eigen::ArrayXd& times);

/// Failure intensity lambda(t) = dm/dt, analytic form.
double intensity(ModelId id, const Eigen::ArrayXd& params, double t);
Eigen::ArrayXd intensity(ModelId id, const Eigen::ArrayXd& params,
                         const Eigen::ArrayXd& times);

/// Scale-aware default search box: total-fault scales capped at 100*m_k,
/// rate/shape parameters at 5 (tighter where the model constrains them),
/// all lower bounds 1e-6.
ParamBounds default_bounds(ModelId id, const FailureDataset& dataset);

/// Estimated cumulative count at the last observation time, m(t_k).
double total_expected_faults(ModelId id, const Eigen::ArrayXd& params,
                             const FailureDataset& dataset);

}  // namespace srgm
