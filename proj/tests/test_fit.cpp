#include <doctest.h>

#include <cmath>

#include "srgm/fit.hpp"

using namespace srgm;

namespace {

FailureDataset goel_dataset(double a, double b, int k) {
  Eigen::ArrayXd t(k), m(k);
  Eigen::ArrayXd p(2);
  p << a, b;
  for (int i = 0; i < k; ++i) {
    t(i) = i + 1;
    m(i) = mean_value(ModelId::GoelOkumoto, p, t(i));
  }
  return FailureDataset("goel-synth", std::move(t), std::move(m));
}

Eigen::ArrayXd params(std::initializer_list<double> vals) {
  Eigen::ArrayXd p(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double v : vals) p(i++) = v;
  return p;
}

}  // namespace

TEST_CASE("objective is zero at the generating parameters") {
  const auto dataset = goel_dataset(100.0, 0.1, 20);
  CHECK(objective_sse(dataset, ModelId::GoelOkumoto, params({100.0, 0.1})) == 0.0);
}

TEST_CASE("objective sums squared residuals") {
  // Counts offset from the model curve by (1, -2) give SSE = 5.
  Eigen::ArrayXd t(2), m(2);
  const auto p = params({50.0, 0.2});
  t << 1, 2;
  m << mean_value(ModelId::GoelOkumoto, p, 1.0) + 1.0,
      mean_value(ModelId::GoelOkumoto, p, 2.0) - 2.0;
  const FailureDataset dataset("two", std::move(t), std::move(m));
  CHECK(objective_sse(dataset, ModelId::GoelOkumoto, p) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("constraint-violating vectors score the penalty") {
  const auto dataset = goel_dataset(100.0, 0.1, 10);
  CHECK(objective_sse(dataset, ModelId::GoelOkumoto, params({-1.0, 0.1})) >= 1e100);
  CHECK(objective_sse(dataset, ModelId::ZTP, params({10, 0.5, 0.5, 1.0, 0.5, 1.5})) >= 1e100);
}

TEST_CASE("synthetic noiseless curve is recovered") {
  const auto dataset = goel_dataset(100.0, 0.1, 20);
  FitOptions options;
  options.ssa.seed = 20250810;
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    options.ssa.seed = seed;
    const auto fitted = fit_model(dataset, ModelId::GoelOkumoto, options);
    CHECK(fitted.objective_value ==
          objective_sse(dataset, ModelId::GoelOkumoto, fitted.params));
    if (fitted.objective_value < 1e-2) ++ok;
  }
  CHECK(ok >= 2);
}

TEST_CASE("fit result beats every initial population member") {
  const auto dataset = goel_dataset(80.0, 0.2, 12);
  FitOptions options;
  options.ssa.seed = 77;
  options.ssa.max_iters = 100;
  SsaResult run;
  const auto fitted = fit_model(dataset, ModelId::GoelOkumoto, options, &run);
  CHECK(fitted.objective_value <= run.history.front());
}

TEST_CASE("same seed refits identically") {
  const auto dataset = goel_dataset(100.0, 0.1, 15);
  FitOptions options;
  options.ssa.seed = 123;
  options.ssa.max_iters = 120;
  const auto a = fit_model(dataset, ModelId::InflectedS, options);
  const auto b = fit_model(dataset, ModelId::InflectedS, options);
  CHECK((a.params == b.params).all());
  CHECK(a.objective_value == b.objective_value);
}

TEST_CASE("underdetermined fits are flagged, not refused") {
  Eigen::ArrayXd t(3), m(3);
  t << 1, 2, 3;
  m << 2, 4, 5;
  const FailureDataset dataset("tiny", std::move(t), std::move(m));
  FitOptions options;
  options.ssa.max_iters = 30;
  const auto fitted = fit_model(dataset, ModelId::PNZ, options);  // 4 params, 3 points
  CHECK(fitted.underdetermined);
  CHECK(std::isfinite(fitted.objective_value));
  const auto fine = fit_model(dataset, ModelId::GoelOkumoto, options);
  CHECK(!fine.underdetermined);
}

TEST_CASE("user-supplied bounds are honored") {
  const auto dataset = goel_dataset(100.0, 0.1, 15);
  FitOptions options;
  options.ssa.max_iters = 60;
  options.bounds = ParamBounds{params({10.0, 0.05}), params({20.0, 0.08})};
  const auto fitted = fit_model(dataset, ModelId::GoelOkumoto, options);
  CHECK(options.bounds->contains(fitted.params));
}

TEST_CASE("pinned Z-T-P fits keep p at exactly 1") {
  const auto dataset = goel_dataset(100.0, 0.1, 20);
  FitOptions options;
  options.ssa.max_iters = 80;
  options.ztp_pin_p = true;
  const auto fitted = fit_model(dataset, ModelId::ZTP, options);
  CHECK(fitted.ztp_pinned_p);
  CHECK(fitted.params.size() == 6);
  CHECK(fitted.params(3) == 1.0);     // p
  CHECK(fitted.params(5) < 1.0);      // beta stays below the pinned p
  CHECK(std::isfinite(fitted.objective_value));
}

TEST_CASE("fitted model JSON round-trips") {
  const auto dataset = goel_dataset(60.0, 0.15, 10);
  FitOptions options;
  options.ssa.max_iters = 40;
  options.ssa.seed = 99;
  const auto fitted = fit_model(dataset, ModelId::MusaOkumoto, options);
  const auto text = fitted_model_to_json(fitted);
  const auto back = fitted_model_from_json(text);
  CHECK(back.model == fitted.model);
  CHECK((back.params == fitted.params).all());
  CHECK(back.objective_value == fitted.objective_value);
  CHECK(back.dataset_name == fitted.dataset_name);
  CHECK(back.underdetermined == fitted.underdetermined);
  CHECK(back.config_used.seed == fitted.config_used.seed);
  CHECK(back.config_used.max_iters == fitted.config_used.max_iters);
}
