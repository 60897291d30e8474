#include "srgm/criteria.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>

#include "srgm/csv.hpp"

namespace srgm {
namespace {

constexpr std::array<std::string_view, kCriterionCount> kNames = {
    "Bias", "MSE", "MAE", "MEOP", "AE", "Noise", "PRR", "Variance", "RMSPE", "Rsq", "SSE", "TS"};

constexpr std::array<CriterionId, 10> kDefaultTen = {
    CriterionId::MSE, CriterionId::MAE,   CriterionId::MEOP, CriterionId::AE,
    CriterionId::Noise, CriterionId::RMSPE, CriterionId::SSE,  CriterionId::TS,
    CriterionId::PRR, CriterionId::Rsq};

constexpr std::array<CriterionId, kCriterionCount> kAll = {
    CriterionId::Bias, CriterionId::MSE,      CriterionId::MAE,   CriterionId::MEOP,
    CriterionId::AE,   CriterionId::Noise,    CriterionId::PRR,   CriterionId::Variance,
    CriterionId::RMSPE, CriterionId::Rsq,     CriterionId::SSE,   CriterionId::TS};

void require(bool cond, const std::string& message) {
  if (!cond) throw CriterionError(message);
}

void check_shapes(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted) {
  require(observed.size() == predicted.size(),
          "observed/predicted length mismatch");
  require(observed.size() >= 1, "empty residual vectors");
}

}  // namespace

Direction direction(CriterionId id) {
  return id == CriterionId::Rsq ? Direction::HigherIsBetter : Direction::LowerIsBetter;
}

std::string_view criterion_name(CriterionId id) {
  return kNames[static_cast<std::size_t>(id)];
}

std::optional<CriterionId> parse_criterion_name(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out;
    for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
  };
  const std::string wanted = lower(name);
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (lower(kNames[i]) == wanted) return static_cast<CriterionId>(i);
  if (wanted == "rsqr") return CriterionId::Rsq;  // table-header variant
  return std::nullopt;
}

std::span<const CriterionId> default_ranking_criteria() { return kDefaultTen; }
std::span<const CriterionId> all_criteria() { return kAll; }

namespace crit {

double bias(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted) {
  check_shapes(observed, predicted);
  return (predicted - observed).mean();
}

double mse(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted, int p) {
  check_shapes(observed, predicted);
  const auto k = observed.size();
  require(k > p, "k - p <= 0 for model with " + std::to_string(p) + " parameters on " +
                     std::to_string(k) + " points");
  return (observed - predicted).square().sum() / static_cast<double>(k - p);
}

double mae(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted, int p) {
  check_shapes(observed, predicted);
  const auto k = observed.size();
  require(k > p, "k - p <= 0 for model with " + std::to_string(p) + " parameters on " +
                     std::to_string(k) + " points");
  return (observed - predicted).abs().sum() / static_cast<double>(k - p);
}

double meop(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted, int p) {
  check_shapes(observed, predicted);
  const auto k = observed.size();
  require(k - p + 1 >= 1, "k - p + 1 < 1 for model with " + std::to_string(p) +
                              " parameters on " + std::to_string(k) + " points");
  return (predicted - observed).abs().sum() / static_cast<double>(k - p + 1);
}

double ae(double actual_total, double estimated_total) {
  require(actual_total != 0.0, "AE undefined: actual total fault count is zero");
  return std::abs((actual_total - estimated_total) / actual_total);
}

double noise(const Eigen::ArrayXd& intensities) {
  require(intensities.size() >= 2, "Noise needs at least 2 observation times");
  double sum = 0.0;
  for (Eigen::Index i = 1; i < intensities.size(); ++i) {
    const double prev = intensities(i - 1);
    require(prev != 0.0 && std::isfinite(prev),
            "Noise undefined: zero or non-finite intensity at observation " +
                std::to_string(i));
    sum += std::abs((intensities(i) - prev) / prev);
  }
  return sum;
}

double prr(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted) {
  check_shapes(observed, predicted);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < observed.size(); ++i) {
    require(predicted(i) != 0.0,
            "PRR undefined: zero model estimate at observation " + std::to_string(i + 1));
    sum += (predicted(i) - observed(i)) / predicted(i);
  }
  return sum;
}

double variance(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted) {
  check_shapes(observed, predicted);
  const auto k = observed.size();
  require(k >= 2, "Variance needs k >= 2");
  const double b = bias(observed, predicted);
  return std::sqrt((observed - predicted - b).square().sum() / static_cast<double>(k - 1));
}

double rmspe(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted) {
  const double v = variance(observed, predicted);
  const double b = bias(observed, predicted);
  return std::sqrt(v * v + b * b);
}

double r_squared(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted) {
  check_shapes(observed, predicted);
  const double mean = observed.mean();
  const double total = (observed - mean).square().sum();
  require(total != 0.0, "Rsq undefined: observations have zero variance");
  return 1.0 - (observed - predicted).square().sum() / total;
}

double sse(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted) {
  check_shapes(observed, predicted);
  return (observed - predicted).square().sum();
}

double theil(const Eigen::ArrayXd& observed, const Eigen::ArrayXd& predicted) {
  check_shapes(observed, predicted);
  const double denom = observed.square().sum();
  require(denom != 0.0, "TS undefined: all observed counts are zero");
  return 100.0 * std::sqrt((observed - predicted).square().sum() / denom);
}

}  // namespace crit

double evaluate_criterion(CriterionId id, const FailureDataset& dataset,
                          const FittedModel& fitted) {
  const Eigen::ArrayXd& observed = dataset.counts();
  const int p = param_count(fitted.model);
  switch (id) {
    case CriterionId::AE:
      return crit::ae(dataset.total_faults(),
                      total_expected_faults(fitted.model, fitted.params, dataset));
    case CriterionId::Noise:
      return crit::noise(intensity(fitted.model, fitted.params, dataset.times()));
    default:
      break;
  }
  const Eigen::ArrayXd predicted = mean_value(fitted.model, fitted.params, dataset.times());
  switch (id) {
    case CriterionId::Bias: return crit::bias(observed, predicted);
    case CriterionId::MSE: return crit::mse(observed, predicted, p);
    case CriterionId::MAE: return crit::mae(observed, predicted, p);
    case CriterionId::MEOP: return crit::meop(observed, predicted, p);
    case CriterionId::PRR: return crit::prr(observed, predicted);
    case CriterionId::Variance: return crit::variance(observed, predicted);
    case CriterionId::RMSPE: return crit::rmspe(observed, predicted);
    case CriterionId::Rsq: return crit::r_squared(observed, predicted);
    case CriterionId::SSE: return crit::sse(observed, predicted);
    case CriterionId::TS: return crit::theil(observed, predicted);
    default:
      throw std::logic_error("unreachable criterion id");
  }
}

CriteriaMatrix evaluate_all(const FailureDataset& dataset,
                            std::span<const FittedModel> fits,
                            std::span<const CriterionId> selection) {
  if (selection.empty()) throw CriterionError("criteria selection is empty");
  CriteriaMatrix matrix;
  matrix.criteria.assign(selection.begin(), selection.end());
  matrix.values.resize(static_cast<Eigen::Index>(fits.size()),
                       static_cast<Eigen::Index>(selection.size()));
  for (std::size_t r = 0; r < fits.size(); ++r) {
    const FittedModel& fit = fits[r];
    if (fit.dataset_name != dataset.name())
      throw CriterionError("fit for " + std::string(model_info(fit.model).display_name) +
                           " references dataset '" + fit.dataset_name + "', expected '" +
                           dataset.name() + "'");
    matrix.row_names.emplace_back(model_info(fit.model).display_name);
    for (std::size_t c = 0; c < selection.size(); ++c) {
      try {
        matrix.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            evaluate_criterion(selection[c], dataset, fit);
      } catch (const CriterionError& e) {
        throw CriterionError(std::string(model_info(fit.model).display_name) + " / " +
                             std::string(criterion_name(selection[c])) + ": " + e.what());
      }
    }
  }
  return matrix;
}

void write_criteria_csv(std::ostream& out, const CriteriaMatrix& matrix) {
  out << "model";
  for (CriterionId id : matrix.criteria) out << ',' << criterion_name(id);
  out << '\n';
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    out << matrix.row_names[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < matrix.cols(); ++c)
      out << ',' << format_double(matrix.values(r, c));
    out << '\n';
  }
  const Eigen::RowVectorXd mins = matrix.col_min();
  const Eigen::RowVectorXd maxs = matrix.col_max();
  out << "Amin";
  for (Eigen::Index c = 0; c < matrix.cols(); ++c) out << ',' << format_double(mins(c));
  out << "\nAmax";
  for (Eigen::Index c = 0; c < matrix.cols(); ++c) out << ',' << format_double(maxs(c));
  out << '\n';
}

CriteriaMatrix read_criteria_csv(std::istream& in) {
  auto rows = read_csv_rows(in);
  if (rows.size() < 2) throw CriterionError("criteria CSV needs a header and at least one row");
  const auto& header = rows.front();
  if (header.empty() || header[0] != "model")
    throw CriterionError("criteria CSV must start with a 'model' column");

  CriteriaMatrix matrix;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const auto id = parse_criterion_name(header[c]);
    if (!id) throw CriterionError("unknown criterion column '" + header[c] + "'");
    matrix.criteria.push_back(*id);
  }
  if (matrix.criteria.empty()) throw CriterionError("criteria CSV has no criterion columns");

  std::vector<std::vector<std::string>> data;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].front() == "Amin" || rows[r].front() == "Amax") continue;
    data.push_back(rows[r]);
  }
  matrix.values.resize(static_cast<Eigen::Index>(data.size()),
                       static_cast<Eigen::Index>(matrix.criteria.size()));
  for (std::size_t r = 0; r < data.size(); ++r) {
    if (data[r].size() != header.size())
      throw CriterionError("criteria CSV row '" + data[r].front() + "' has " +
                           std::to_string(data[r].size()) + " fields, expected " +
                           std::to_string(header.size()));
    matrix.row_names.push_back(data[r].front());
    for (std::size_t c = 1; c < data[r].size(); ++c)
      matrix.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c - 1)) =
          parse_double(data[r][c]);
  }
  return matrix;
}

}  // namespace srgm
