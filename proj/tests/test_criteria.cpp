#include <doctest.h>

#include <cmath>
#include <sstream>

#include "srgm/criteria.hpp"
#include "srgm/ssa.hpp"

using namespace srgm;

namespace {

Eigen::ArrayXd vec(std::initializer_list<double> vals) {
  Eigen::ArrayXd v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v(i++) = x;
  return v;
}

/// Dataset generated exactly by GoelOkumoto(a, b), plus a FittedModel at the
/// generating parameters.
std::pair<FailureDataset, FittedModel> exact_goel(double a, double b, int k) {
  Eigen::ArrayXd t(k), m(k);
  const auto p = vec({a, b});
  for (int i = 0; i < k; ++i) {
    t(i) = i + 1;
    m(i) = mean_value(ModelId::GoelOkumoto, p, t(i));
  }
  FittedModel fitted;
  fitted.model = ModelId::GoelOkumoto;
  fitted.params = vec({a, b});
  fitted.dataset_name = "exact";
  return {FailureDataset("exact", std::move(t), std::move(m)), fitted};
}

}  // namespace

TEST_CASE("direction registry marks only Rsq as higher-is-better") {
  for (CriterionId id : all_criteria()) {
    if (id == CriterionId::Rsq)
      CHECK(direction(id) == Direction::HigherIsBetter);
    else
      CHECK(direction(id) == Direction::LowerIsBetter);
  }
}

TEST_CASE("default selection is the standard ten, in table order") {
  const auto ten = default_ranking_criteria();
  REQUIRE(ten.size() == 10);
  const CriterionId expected[] = {CriterionId::MSE,  CriterionId::MAE,   CriterionId::MEOP,
                                  CriterionId::AE,   CriterionId::Noise, CriterionId::RMSPE,
                                  CriterionId::SSE,  CriterionId::TS,    CriterionId::PRR,
                                  CriterionId::Rsq};
  for (std::size_t i = 0; i < 10; ++i) CHECK(ten[i] == expected[i]);
}

TEST_CASE("criterion names round-trip") {
  for (CriterionId id : all_criteria())
    CHECK(parse_criterion_name(criterion_name(id)) == id);
  CHECK(parse_criterion_name("rsqr") == CriterionId::Rsq);
  CHECK(!parse_criterion_name("AIC"));
}

TEST_CASE("hand-computed residual vector (1, -1, 2) with p = 1") {
  // Residuals are m_i - m(t_i).
  const auto observed = vec({11.0, 9.0, 14.0});
  const auto predicted = vec({10.0, 10.0, 12.0});
  CHECK(crit::bias(observed, predicted) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  CHECK(crit::mse(observed, predicted, 1) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(crit::sse(observed, predicted) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(crit::mae(observed, predicted, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(crit::meop(observed, predicted, 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("perfect fit zeroes the misfit criteria and gives Rsq = 1") {
  const auto [dataset, fitted] = exact_goel(100.0, 0.1, 12);
  for (CriterionId id : all_criteria()) {
    const double v = evaluate_criterion(id, dataset, fitted);
    CAPTURE(criterion_name(id));
    if (id == CriterionId::Rsq)
      CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    else if (id == CriterionId::Noise)
      CHECK(v > 0.0);  // intensity ratios, not residuals
    else
      CHECK(std::abs(v) < 1e-9);
  }
}

TEST_CASE("identities hold on random residual vectors") {
  Rng rng(2468);
  for (int rep = 0; rep < 200; ++rep) {
    const int k = 5 + rng.index(30);
    const int p = 1 + rng.index(std::min(4, k - 2));
    Eigen::ArrayXd observed(k), predicted(k);
    for (int i = 0; i < k; ++i) {
      observed(i) = rng.uniform(0.0, 100.0);
      predicted(i) = rng.uniform(0.1, 100.0);
    }
    const double mse = crit::mse(observed, predicted, p);
    const double sse = crit::sse(observed, predicted);
    const double mae = crit::mae(observed, predicted, p);
    const double meop = crit::meop(observed, predicted, p);
    const double rmspe = crit::rmspe(observed, predicted);
    const double var = crit::variance(observed, predicted);
    const double bias = crit::bias(observed, predicted);

    CHECK(sse == doctest::Approx(mse * (k - p)).epsilon(1e-12));
    CHECK(mae * (k - p) == doctest::Approx(meop * (k - p + 1)).epsilon(1e-12));
    CHECK(rmspe * rmspe == doctest::Approx(var * var + bias * bias).epsilon(1e-10));
    CHECK(crit::r_squared(observed, predicted) <= 1.0);
    CHECK((crit::theil(observed, predicted) == 0.0) == (sse == 0.0));
  }
}

TEST_CASE("translating predictions shifts Bias by exactly the constant") {
  const auto observed = vec({5.0, 9.0, 12.0, 20.0});
  const auto predicted = vec({6.0, 8.5, 13.0, 19.0});
  const double c = 2.75;
  CHECK(crit::bias(observed, predicted + c) ==
        doctest::Approx(crit::bias(observed, predicted) + c).epsilon(1e-12));
}

TEST_CASE("AE steps are multiples of 1/M_a for integer estimates") {
  // A 21-week dataset ending at 43 faults: an estimate off by one whole fault
  // moves AE by exactly 1/43 (0.0233 to table precision), off by four by 4/43.
  Eigen::ArrayXd t(21), m(21);
  for (int i = 0; i < 21; ++i) {
    t(i) = i + 1;
    m(i) = std::min(43.0, 2.2 * (i + 1));
  }
  const FailureDataset d1("d1", std::move(t), std::move(m));
  CHECK(d1.size() == 21);
  CHECK(d1.total_faults() == 43.0);
  CHECK(crit::ae(43.0, 44.0) == doctest::Approx(1.0 / 43.0).epsilon(1e-15));
  CHECK(crit::ae(43.0, 39.0) == doctest::Approx(4.0 / 43.0).epsilon(1e-15));
  CHECK(1.0 / 43.0 == doctest::Approx(0.0233).epsilon(2e-3));
  CHECK(4.0 / 43.0 == doctest::Approx(0.0930).epsilon(2e-3));
}

TEST_CASE("AE compares last-point totals") {
  const auto [dataset, fitted] = exact_goel(100.0, 0.1, 10);
  CHECK(evaluate_criterion(CriterionId::AE, dataset, fitted) == 0.0);

  FittedModel off = fitted;
  off.params = vec({110.0, 0.1});
  const double m_k = dataset.total_faults();
  const double est = mean_value(ModelId::GoelOkumoto, off.params, dataset.last_time());
  CHECK(evaluate_criterion(CriterionId::AE, dataset, off) ==
        doctest::Approx(std::abs((m_k - est) / m_k)).epsilon(1e-12));
  CHECK_THROWS_AS(crit::ae(0.0, 5.0), CriterionError);
}

TEST_CASE("Noise sums intensity ratios from the second observation") {
  const auto [dataset, fitted] = exact_goel(100.0, 0.3, 4);
  const auto lam = intensity(ModelId::GoelOkumoto, fitted.params, dataset.times());
  double expected = 0.0;
  for (int i = 1; i < 4; ++i) expected += std::abs((lam(i) - lam(i - 1)) / lam(i - 1));
  CHECK(evaluate_criterion(CriterionId::Noise, dataset, fitted) ==
        doctest::Approx(expected).epsilon(1e-12));
  // Goel-Okumoto: lambda ratio is e^{-b dt}, so each term is 1 - e^{-b}.
  CHECK(expected == doctest::Approx(3.0 * (1.0 - std::exp(-0.3))).epsilon(1e-9));
}

TEST_CASE("preconditions raise named criterion errors") {
  const auto observed = vec({1.0, 2.0});
  SUBCASE("k - p <= 0") {
    CHECK_THROWS_WITH_AS(crit::mse(observed, observed, 2),
                         "k - p <= 0 for model with 2 parameters on 2 points",
                         CriterionError);
    CHECK_THROWS_AS(crit::mae(observed, observed, 3), CriterionError);
  }
  SUBCASE("PRR with a zero estimate") {
    CHECK_THROWS_AS(crit::prr(observed, vec({0.0, 2.0})), CriterionError);
  }
  SUBCASE("Rsq with constant observations") {
    CHECK_THROWS_AS(crit::r_squared(vec({3.0, 3.0}), vec({1.0, 2.0})), CriterionError);
  }
  SUBCASE("Noise with a zero intensity") {
    CHECK_THROWS_AS(crit::noise(vec({0.0, 1.0})), CriterionError);
  }
  SUBCASE("TS with all-zero observations") {
    CHECK_THROWS_AS(crit::theil(vec({0.0, 0.0}), vec({1.0, 2.0})), CriterionError);
  }
}

TEST_CASE("evaluate_all builds the matrix and tags failures") {
  const auto [dataset, fitted] = exact_goel(100.0, 0.1, 12);
  std::vector<FittedModel> fits = {fitted};
  const auto matrix = evaluate_all(dataset, fits, default_ranking_criteria());
  CHECK(matrix.rows() == 1);
  CHECK(matrix.cols() == 10);
  CHECK(matrix.row_names[0] == "Goel-O.");
  CHECK((matrix.col_min() == matrix.col_max()));  // single row

  SUBCASE("dataset mismatch is rejected") {
    FittedModel stray = fitted;
    stray.dataset_name = "other";
    std::vector<FittedModel> bad = {stray};
    CHECK_THROWS_AS(evaluate_all(dataset, bad, default_ranking_criteria()), CriterionError);
  }
  SUBCASE("cell failures name the model/criterion pair") {
    Eigen::ArrayXd t(2), m(2);
    t << 1, 2;
    m << 3, 5;
    const FailureDataset tiny("exact", std::move(t), std::move(m));
    try {
      std::vector<FittedModel> one = {fitted};
      evaluate_all(tiny, one, default_ranking_criteria());
      FAIL("expected CriterionError");
    } catch (const CriterionError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("Goel-O.") != std::string::npos);
      CHECK(msg.find("MSE") != std::string::npos);
    }
  }
  SUBCASE("empty selection is rejected") {
    std::vector<FittedModel> one = {fitted};
    CHECK_THROWS_AS(evaluate_all(dataset, one, {}), CriterionError);
  }
}

TEST_CASE("criteria CSV round-trips with Amin/Amax trailer") {
  CriteriaMatrix matrix;
  matrix.row_names = {"Goel-O.", "Musa-O."};
  matrix.criteria = {CriterionId::MSE, CriterionId::PRR};
  matrix.values.resize(2, 2);
  matrix.values << 6.6637, 1.0198, 6.7084, -0.5;

  std::ostringstream out;
  write_criteria_csv(out, matrix);
  const std::string text = out.str();
  CHECK(text.find("model,MSE,PRR\n") == 0);
  CHECK(text.find("Amin,6.6637,-0.5\n") != std::string::npos);
  CHECK(text.find("Amax,6.7084,1.0198\n") != std::string::npos);

  std::istringstream in(text);
  const auto back = read_criteria_csv(in);
  CHECK(back.row_names == matrix.row_names);
  CHECK(back.criteria == matrix.criteria);
  CHECK((back.values.array() == matrix.values.array()).all());
}

TEST_CASE("criteria CSV rejects unknown columns and ragged rows") {
  std::istringstream unknown("model,MSE,Frobnitz\nGoel-O.,1,2\n");
  CHECK_THROWS_AS(read_criteria_csv(unknown), CriterionError);
  std::istringstream ragged("model,MSE,PRR\nGoel-O.,1\n");
  CHECK_THROWS_AS(read_criteria_csv(ragged), CriterionError);
}
