#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <vector>

#include "srgm/criteria.hpp"

namespace srgm {

/// How the signed PRR column enters the ranking. Ratings always use the raw
/// signed values with lower-is-better orientation; the switch controls the
/// weighted-value products:
///   Raw      - A_ij = W_ij * a_ij, sign preserved.
///   Absolute - A_ij = W_ij * |a_ij|, so the weighted misfit cannot reward a
///              model for overshooting with large negative ratios (default).
enum class PrrMode { Raw, Absolute };

struct RankingPolicy {
  PrrMode prr_mode = PrrMode::Absolute;
};

/// Per-column rating in [0,1]: (Amax - a)/(Amax - Amin) for lower-is-better
/// columns, (a - Amin)/(Amax - Amin) for higher-is-better ones. Degenerate
/// columns (Amax == Amin) rate 1 for every row.
Eigen::MatrixXd rate(const CriteriaMatrix& matrix);

/// W = 1 - X.
Eigen::MatrixXd weights(const Eigen::MatrixXd& rating);

/// A_ij = W_ij * a_ij on the raw criterion values, sign preserved.
Eigen::MatrixXd weighted_values(const Eigen::MatrixXd& weight,
                                const CriteriaMatrix& matrix);

/// Z_i = sum_j A_ij / sum_j W_ij; a model best in every column (sum W == 0)
/// gets -infinity so it ranks first.
Eigen::ArrayXd permanent_values(const Eigen::MatrixXd& weighted,
                                const Eigen::MatrixXd& weight);

struct RankingResult {
  std::vector<std::string> names;
  Eigen::MatrixXd rating;         // X
  Eigen::MatrixXd weight;         // W
  Eigen::MatrixXd weighted;       // A
  Eigen::ArrayXd sum_weight;      // per-model sum of W
  Eigen::ArrayXd sum_weighted;    // per-model sum of A
  Eigen::ArrayXd permanent;       // Z
  std::vector<int> rank;          // 1..n, ascending in Z
};

/// Full rate/weight/weighted-value/permanent-value pipeline. Ranks ascend in
/// Z; ties break by smaller sum of weights, then by name.
RankingResult rank_models(const CriteriaMatrix& matrix,
                          const RankingPolicy& policy = {});

/// CSV columns: model,sum_weight,sum_weighted_value,permanent_value,rank.
void write_ranking_csv(std::ostream& out, const RankingResult& result);

}  // namespace srgm
