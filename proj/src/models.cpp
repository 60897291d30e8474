#include "srgm/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace srgm {
namespace {

constexpr double kExpClamp = 700.0;  // exp(+-700) stays finite in double

double stable_exp(double x) { return std::exp(std::clamp(x, -kExpClamp, kExpClamp)); }

/// 1 - exp(-x) for x >= 0, exact 0 at x = 0.
double one_minus_exp(double x) { return -std::expm1(-std::clamp(x, -kExpClamp, kExpClamp)); }

/// sinh(u)/u, even, == 1 at u = 0.
double sinhc(double u) {
  double u2 = u * u;
  if (std::abs(u) < 1e-3) return 1.0 + u2 / 6.0 + u2 * u2 / 120.0;
  return std::sinh(u) / u;
}

/// d/du sinh(u)/u.
double sinhc_prime(double u) {
  if (std::abs(u) < 1e-3) return u / 3.0 + u * u * u / 30.0;
  return (std::cosh(u) - std::sinh(u) / u) / u;
}

/// (exp(-alpha t) - exp(-b t)) / (b - alpha), continuous through b == alpha.
double exp_diff_ratio(double alpha, double b, double t) {
  const double delta = 0.5 * (b - alpha);
  if (std::abs(delta * t) < 1e-3)
    return t * stable_exp(-0.5 * (alpha + b) * t) * sinhc(delta * t);
  return (stable_exp(-alpha * t) - stable_exp(-b * t)) / (b - alpha);
}

/// Time derivative of exp_diff_ratio.
double exp_diff_ratio_dt(double alpha, double b, double t) {
  const double mu = 0.5 * (alpha + b);
  const double delta = 0.5 * (b - alpha);
  if (std::abs(delta * t) < 1e-3)
    return stable_exp(-mu * t) *
           ((1.0 - mu * t) * sinhc(delta * t) + delta * t * sinhc_prime(delta * t));
  return (-alpha * stable_exp(-alpha * t) + b * stable_exp(-b * t)) / (b - alpha);
}

using ParamNames = std::span<const std::string_view>;

constexpr std::string_view kAB[] = {"a", "b"};
constexpr std::string_view kABC[] = {"a", "b", "c"};
constexpr std::string_view kABK[] = {"a", "b", "k"};
constexpr std::string_view kABBeta[] = {"a", "b", "beta"};
constexpr std::string_view kABD[] = {"a", "b", "d"};
constexpr std::string_view kAAlphaBeta[] = {"a", "alpha", "beta"};
constexpr std::string_view kABAlpha[] = {"a", "b", "alpha"};
constexpr std::string_view kAGBeta[] = {"a", "g", "beta"};
constexpr std::string_view kPnz[] = {"a", "b", "alpha", "beta"};
constexpr std::string_view kPz[] = {"a", "b", "c", "alpha", "beta"};
constexpr std::string_view kZtp[] = {"a", "b", "c", "p", "alpha", "beta"};

const std::array<ModelInfo, kModelCount> kCatalog = {{
    {ModelId::GoelOkumoto, "Goel-O.", kAB},
    {ModelId::GeneralizedGoel, "G.Goel", kABC},
    {ModelId::Gompertz, "Gompert", kABK},
    {ModelId::InflectedS, "Inf. S.", kABBeta},
    {ModelId::LogisticGrowth, "Log. Gro.", kABK},
    {ModelId::MusaOkumoto, "Musa-O.", kAB},
    {ModelId::YamadaDelayedS, "Y. Del.", kAB},
    {ModelId::ModifiedDuane, "Modi-D.", kABC},
    {ModelId::PhamZhangIFD, "P-Z-IFD", kABD},
    {ModelId::YamadaRayleigh, "Y. Ray.", kAAlphaBeta},
    {ModelId::YamadaImperfect1, "Y. M1", kABAlpha},
    {ModelId::YamadaImperfect2, "Y. M2", kABAlpha},
    {ModelId::YamadaExponential, "Y. Exp.", kAGBeta},
    {ModelId::PNZ, "P-N-Z", kPnz},
    {ModelId::PhamZhang, "P-Z", kPz},
    {ModelId::ZTP, "Z-T-P", kZtp},
}};

std::string normalize(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == ' ' || c == '.') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

void check_inputs(ModelId id, const Eigen::ArrayXd& params, double t) {
  if (t < 0.0) throw std::domain_error("negative time");
  if (params.size() != param_count(id))
    throw std::domain_error(std::string(model_info(id).display_name) + ": expected " +
                            std::to_string(param_count(id)) + " parameters, got " +
                            std::to_string(params.size()));
  if (!params_valid(id, params))
    throw std::domain_error(std::string(model_info(id).display_name) +
                            ": parameters violate model constraints");
}

}  // namespace

const std::array<ModelInfo, kModelCount>& model_catalog() { return kCatalog; }

const ModelInfo& model_info(ModelId id) { return kCatalog[static_cast<std::size_t>(id)]; }

std::optional<ModelId> parse_model_name(std::string_view name) {
  const std::string wanted = normalize(name);
  for (const auto& info : kCatalog)
    if (normalize(info.display_name) == wanted) return info.id;
  return std::nullopt;
}

std::string normalized_model_name(ModelId id) { return normalize(model_info(id).display_name); }

bool params_valid(ModelId id, const Eigen::ArrayXd& params) {
  if (params.size() != param_count(id)) return false;
  if (!(params > 0.0).all() || !params.isFinite().all()) return false;
  switch (id) {
    case ModelId::Gompertz:
      return params(1) < 1.0 && params(2) < 1.0;  // 0 < b < 1, 0 < k < 1
    case ModelId::ZTP:
      return params(3) > params(5);  // p > beta
    default:
      return true;
  }
}

double mean_value(ModelId id, const Eigen::ArrayXd& params, double t) {
  check_inputs(id, params, t);
  const auto* x = params.data();
  switch (id) {
    case ModelId::GoelOkumoto:  // a, b
      return x[0] * one_minus_exp(x[1] * t);
    case ModelId::GeneralizedGoel:  // a, b, c
      return x[0] * one_minus_exp(x[1] * std::pow(t, x[2]));
    case ModelId::Gompertz:  // a, b, k: a * k^(e^{-bt})
      return x[0] * std::exp(stable_exp(-x[1] * t) * std::log(x[2]));
    case ModelId::InflectedS: {  // a, b, beta
      const double e = stable_exp(-x[1] * t);
      return x[0] * one_minus_exp(x[1] * t) / (1.0 + x[2] * e);
    }
    case ModelId::LogisticGrowth:  // a, b, k
      return x[0] / (1.0 + x[2] * stable_exp(-x[1] * t));
    case ModelId::MusaOkumoto:  // a, b
      return x[0] * std::log1p(x[1] * t);
    case ModelId::YamadaDelayedS: {  // a, b
      const double bt = x[1] * t;
      return x[0] * (one_minus_exp(bt) - bt * stable_exp(-bt));
    }
    case ModelId::ModifiedDuane:  // a, b, c
      return x[0] * (1.0 - std::pow(x[1] / (x[1] + t), x[2]));
    case ModelId::PhamZhangIFD: {  // a, b, d
      const double q = 1.0 + (x[1] + x[2]) * t + x[1] * x[2] * t * t;
      return x[0] * (1.0 - stable_exp(-x[1] * t) * q);
    }
    case ModelId::YamadaRayleigh: {  // a, alpha (= r*alpha), beta
      const double inner = one_minus_exp(0.5 * x[2] * t * t);
      return x[0] * one_minus_exp(x[1] * inner);
    }
    case ModelId::YamadaImperfect1:  // a, b, alpha
      return x[0] * x[1] * (stable_exp(x[2] * t) - stable_exp(-x[1] * t)) / (x[2] + x[1]);
    case ModelId::YamadaImperfect2:  // a, b, alpha
      return x[0] * one_minus_exp(x[1] * t) * (1.0 - x[2] / x[1]) + x[0] * x[2] * t;
    case ModelId::YamadaExponential: {  // a, g (= r*alpha), beta
      return x[0] * one_minus_exp(x[1] * one_minus_exp(x[2] * t));
    }
    case ModelId::PNZ: {  // a, b, alpha, beta
      const double n = x[0] * one_minus_exp(x[1] * t) * (1.0 - x[2] / x[1]) + x[0] * x[2] * t;
      return n / (1.0 + x[3] * stable_exp(-x[1] * t));
    }
    case ModelId::PhamZhang: {  // a, b, c, alpha, beta
      const double e = stable_exp(-x[1] * t);
      const double s = (x[2] + x[0]) * one_minus_exp(x[1] * t) -
                       x[0] * x[1] * exp_diff_ratio(x[3], x[1], t);
      return s / (1.0 + x[4] * e);
    }
    case ModelId::ZTP: {  // a, b, c, p, alpha, beta
      const double e = stable_exp(-x[1] * t);
      const double base = one_minus_exp(x[1] * t) / (1.0 + x[4] * e);
      const double expo = x[2] / x[1] * (x[3] - x[5]);
      return x[0] / (x[3] - x[5]) * std::pow(base, expo);
    }
  }
  throw std::logic_error("unreachable model id");
}

double intensity(ModelId id, const Eigen::ArrayXd& params, double t) {
  check_inputs(id, params, t);
  const auto* x = params.data();
  switch (id) {
    case ModelId::GoelOkumoto:
      return x[0] * x[1] * stable_exp(-x[1] * t);
    case ModelId::GeneralizedGoel:
      return x[0] * x[1] * x[2] * std::pow(t, x[2] - 1.0) *
             stable_exp(-x[1] * std::pow(t, x[2]));
    case ModelId::Gompertz: {
      const double e = stable_exp(-x[1] * t);
      return -x[0] * x[1] * std::log(x[2]) * e * std::exp(e * std::log(x[2]));
    }
    case ModelId::InflectedS: {
      const double e = stable_exp(-x[1] * t);
      const double q = 1.0 + x[2] * e;
      return x[0] * x[1] * e * (1.0 + x[2]) / (q * q);
    }
    case ModelId::LogisticGrowth: {
      const double e = stable_exp(-x[1] * t);
      const double q = 1.0 + x[2] * e;
      return x[0] * x[2] * x[1] * e / (q * q);
    }
    case ModelId::MusaOkumoto:
      return x[0] * x[1] / (1.0 + x[1] * t);
    case ModelId::YamadaDelayedS:
      return x[0] * x[1] * x[1] * t * stable_exp(-x[1] * t);
    case ModelId::ModifiedDuane:
      return x[0] * x[2] * std::pow(x[1] / (x[1] + t), x[2]) / (x[1] + t);
    case ModelId::PhamZhangIFD: {
      const double b = x[1], d = x[2];
      return x[0] * stable_exp(-b * t) * (b * b * t * (1.0 + d * t) - d * (1.0 + b * t));
    }
    case ModelId::YamadaRayleigh: {
      const double r = stable_exp(-0.5 * x[2] * t * t);
      return x[0] * x[1] * x[2] * t * r * stable_exp(-x[1] * (1.0 - r));
    }
    case ModelId::YamadaImperfect1:
      return x[0] * x[1] * (x[2] * stable_exp(x[2] * t) + x[1] * stable_exp(-x[1] * t)) /
             (x[2] + x[1]);
    case ModelId::YamadaImperfect2:
      return x[0] * stable_exp(-x[1] * t) * (x[1] - x[2]) + x[0] * x[2];
    case ModelId::YamadaExponential: {
      const double e = stable_exp(-x[2] * t);
      return x[0] * x[1] * x[2] * e * stable_exp(-x[1] * (1.0 - e));
    }
    case ModelId::PNZ: {
      const double e = stable_exp(-x[1] * t);
      const double n = x[0] * one_minus_exp(x[1] * t) * (1.0 - x[2] / x[1]) + x[0] * x[2] * t;
      const double nd = x[0] * e * (x[1] - x[2]) + x[0] * x[2];
      const double q = 1.0 + x[3] * e;
      return (nd * q + n * x[1] * x[3] * e) / (q * q);
    }
    case ModelId::PhamZhang: {
      const double e = stable_exp(-x[1] * t);
      const double s = (x[2] + x[0]) * one_minus_exp(x[1] * t) -
                       x[0] * x[1] * exp_diff_ratio(x[3], x[1], t);
      const double sd =
          (x[2] + x[0]) * x[1] * e - x[0] * x[1] * exp_diff_ratio_dt(x[3], x[1], t);
      const double q = 1.0 + x[4] * e;
      return (sd * q + s * x[1] * x[4] * e) / (q * q);
    }
    case ModelId::ZTP: {
      const double e = stable_exp(-x[1] * t);
      const double q = 1.0 + x[4] * e;
      const double base = one_minus_exp(x[1] * t) / q;
      const double based = x[1] * e * (1.0 + x[4]) / (q * q);
      const double expo = x[2] / x[1] * (x[3] - x[5]);
      return x[0] / (x[3] - x[5]) * expo * std::pow(base, expo - 1.0) * based;
    }
  }
  throw std::logic_error("unreachable model id");
}

Eigen::ArrayXd mean_value(ModelId id, const Eigen::ArrayXd& params,
                          const Eigen::ArrayXd& times) {
  Eigen::ArrayXd out(times.size());
  for (Eigen::Index i = 0; i < times.size(); ++i) out(i) = mean_value(id, params, times(i));
  return out;
}

Eigen::ArrayXd intensity(ModelId id, const Eigen::ArrayXd& params,
                         const Eigen::ArrayXd& times) {
  Eigen::ArrayXd out(times.size());
  for (Eigen::Index i = 0; i < times.size(); ++i) out(i) = intensity(id, params, times(i));
  return out;
}

ParamBounds default_bounds(ModelId id, const FailureDataset& dataset) {
  constexpr double kLow = 1e-6;
  constexpr double kRate = 5.0;
  // Total-fault scale; keep a usable box even for an all-zero dataset.
  const double scale = 100.0 * std::max(dataset.total_faults(), 1.0);

  const int d = param_count(id);
  Eigen::ArrayXd lo = Eigen::ArrayXd::Constant(d, kLow);
  Eigen::ArrayXd hi = Eigen::ArrayXd::Constant(d, kRate);
  hi(0) = scale;  // every model's first parameter is the fault-count scale a

  switch (id) {
    case ModelId::Gompertz:
      hi(1) = 1.0 - 1e-6;  // 0 < b < 1
      hi(2) = 1.0 - 1e-6;  // 0 < k < 1
      break;
    case ModelId::LogisticGrowth:
      hi(2) = 100.0;  // k
      break;
    case ModelId::PhamZhang:
      hi(2) = scale;  // c is a fault-count scale too
      break;
    case ModelId::ZTP:
      // beta capped at 1 and p in (1+1e-6, 2] so the whole box satisfies p > beta.
      hi(5) = 1.0;
      lo(3) = 1.0 + 1e-6;
      hi(3) = 2.0;
      break;
    default:
      break;
  }
  ParamBounds bounds{std::move(lo), std::move(hi)};
  bounds.validate();
  return bounds;
}

double total_expected_faults(ModelId id, const Eigen::ArrayXd& params,
                             const FailureDataset& dataset) {
  return mean_value(id, params, dataset.last_time());
}

}  // namespace srgm
