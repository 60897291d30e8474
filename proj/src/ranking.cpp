#include "srgm/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "srgm/csv.hpp"

namespace srgm {
namespace {

Eigen::MatrixXd weighting_basis(const CriteriaMatrix& matrix, const RankingPolicy& policy) {
  Eigen::MatrixXd basis = matrix.values;
  if (policy.prr_mode == PrrMode::Absolute) {
    for (Eigen::Index c = 0; c < basis.cols(); ++c)
      if (matrix.criteria[static_cast<std::size_t>(c)] == CriterionId::PRR)
        basis.col(c) = basis.col(c).cwiseAbs();
  }
  return basis;
}

}  // namespace

Eigen::MatrixXd rate(const CriteriaMatrix& matrix) {
  const Eigen::Index n = matrix.rows(), m = matrix.cols();
  Eigen::MatrixXd rating(n, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    const auto col = matrix.values.col(c);
    const double amin = col.minCoeff();
    const double amax = col.maxCoeff();
    if (amax == amin) {
      rating.col(c).setOnes();  // no discriminating information
      continue;
    }
    const double range = amax - amin;
    if (direction(matrix.criteria[static_cast<std::size_t>(c)]) == Direction::LowerIsBetter)
      rating.col(c) = (amax - col.array()) / range;
    else
      rating.col(c) = (col.array() - amin) / range;
  }
  return rating;
}

Eigen::MatrixXd weights(const Eigen::MatrixXd& rating) {
  return Eigen::MatrixXd::Ones(rating.rows(), rating.cols()) - rating;
}

Eigen::MatrixXd weighted_values(const Eigen::MatrixXd& weight, const CriteriaMatrix& matrix) {
  return weight.cwiseProduct(matrix.values);
}

Eigen::ArrayXd permanent_values(const Eigen::MatrixXd& weighted,
                                const Eigen::MatrixXd& weight) {
  const Eigen::ArrayXd sum_weighted = weighted.rowwise().sum().array();
  const Eigen::ArrayXd sum_weight = weight.rowwise().sum().array();
  Eigen::ArrayXd z(weighted.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i)
    z(i) = sum_weight(i) > 0.0 ? sum_weighted(i) / sum_weight(i)
                               : -std::numeric_limits<double>::infinity();
  return z;
}

RankingResult rank_models(const CriteriaMatrix& matrix, const RankingPolicy& policy) {
  RankingResult result;
  result.names = matrix.row_names;
  result.rating = rate(matrix);
  result.weight = weights(result.rating);

  CriteriaMatrix weighting = matrix;
  weighting.values = weighting_basis(matrix, policy);
  result.weighted = weighted_values(result.weight, weighting);

  result.sum_weight = result.weight.rowwise().sum().array();
  result.sum_weighted = result.weighted.rowwise().sum().array();
  result.permanent = permanent_values(result.weighted, result.weight);

  const Eigen::Index n = matrix.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (result.permanent(a) != result.permanent(b))
      return result.permanent(a) < result.permanent(b);
    if (result.sum_weight(a) != result.sum_weight(b))
      return result.sum_weight(a) < result.sum_weight(b);
    return result.names[static_cast<std::size_t>(a)] < result.names[static_cast<std::size_t>(b)];
  });
  result.rank.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    result.rank[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos) + 1;
  return result;
}

void write_ranking_csv(std::ostream& out, const RankingResult& result) {
  out << "model,sum_weight,sum_weighted_value,permanent_value,rank\n";
  for (std::size_t i = 0; i < result.names.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    out << result.names[i] << ',' << format_double(result.sum_weight(idx)) << ','
        << format_double(result.sum_weighted(idx)) << ','
        << format_double(result.permanent(idx)) << ',' << result.rank[i] << '\n';
  }
}

}  // namespace srgm
