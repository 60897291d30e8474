#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "srgm/failure_data.hpp"
#include "srgm/fit.hpp"

namespace srgm {

enum class CriterionId { Bias, MSE, MAE, MEOP, AE, Noise, PRR, Variance, RMSPE, Rsq, SSE, TS };

inline constexpr int kCriterionCount = 12;

enum class Direction { LowerIsBetter, HigherIsBetter };

/// Rsq is the only higher-is-better criterion.
Direction direction(CriterionId id);

std::string_view criterion_name(CriterionId id);
std::optional<CriterionId> parse_criterion_name(std::string_view name);

/// The ten criteria the ranking uses by default, in table column order:
/// MSE, MAE, MEOP, AE, Noise, RMSPE, SSE, TS, PRR, Rsq.
std::span<const CriterionId> default_ranking_criteria();
std::span<const CriterionId> all_criteria();

struct CriterionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Residual-level criterion formulas. `observed` holds m_i, `predicted` holds
/// m(t_i); p is the model parameter count. Noise takes the intensities
/// lambda(t_i) instead and sums |lambda(t_i)/lambda(t_{i-1}) - 1| from the
/// second observation on.
namespace crit {
double bias(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted);
double mse(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted, int p);
double mae(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted, int p);
double meop(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted, int p);
double ae(double actual_total, double estimated_total);
double noise(const Eigen::ArrayXd& intensities);
double prr(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted);
double variance(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted);
double rmspe(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted);
double r_squared(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted);
double sse(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted);
double theil(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted);
}  // namespace crit

/// Evaluates one criterion for a fitted model on its dataset. Throws
/// CriterionError when a precondition fails (k <= p, zero denominators, ...).
double evaluate_criterion(CriterionId id, const FailureDataset& dataset,
                          const FittedModel& fitted);

/// Models x criteria value matrix plus per-column extremes.
struct CriteriaMatrix {
  std::vector<std::string> row_names;      // model display names
  std::vector<CriterionId> criteria;       // column order
  Eigen::MatrixXd values;                  // rows match row_names

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
  Eigen::RowVectorXd col_min() const { return values.colwise().minCoeff(); }
  Eigen::RowVectorXd col_max() const { return values.colwise().maxCoeff(); }
};

/// Evaluates the selected criteria for every fitted model. All fits must
/// reference `dataset`; a failing cell aborts naming the model/criterion pair.
CriteriaMatrix evaluate_all(const FailureDataset& dataset,
                            std::span<const FittedModel> fits,
                            std::span<const CriterionId> selection);

/// CSV with a `model` column, one column per criterion, and trailing
/// Amin/Amax rows.
void write_criteria_csv(std::ostream& out, const CriteriaMatrix& matrix);

/// Reads the same layout (Amin/Amax rows optional and ignored); used to
/// replay externally supplied criteria tables.
CriteriaMatrix read_criteria_csv(std::istream& in);

}  // namespace srgm
