#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "srgm/pipeline.hpp"

namespace {

int run(const CLI::App& app, const srgm::RunConfig& config, const CLI::App* fit,
        const CLI::App* rank, const CLI::App* curve, const CLI::App* report,
        const std::string& curve_model) {
  using namespace srgm;
  if (fit->parsed()) {
    cmd_fit(config);
  } else if (rank->parsed()) {
    const RankingResult result = cmd_rank(config);
    for (std::size_t i = 0; i < result.names.size(); ++i)
      if (result.rank[i] == 1)
        std::cout << "rank 1: " << result.names[i] << " (Z="
                  << result.permanent(static_cast<Eigen::Index>(i)) << ")\n";
  } else if (curve->parsed()) {
    const auto models = parse_model_selection(curve_model);
    if (models.size() != 1) throw UsageError("curve expects exactly one --model");
    cmd_curve(config, models.front());
  } else if (report->parsed()) {
    cmd_report(config);
  } else {
    std::cerr << app.help();
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fit software reliability growth models with the social spider"
               " optimizer, score them, and rank them by weighted criteria"};
  app.fallthrough();
  app.set_config("--config", "", "key=value config file; command-line flags win");

  srgm::RunConfig config;
  std::vector<std::string> models_list, criteria_list;
  std::string prr = "absolute", curve_model;

  app.add_option("--data", config.dataset_path, "dataset CSV (t,cumulative_faults)");
  app.add_option("--out", config.out_dir, "output directory")->capture_default_str();
  app.add_option("--models", models_list, "comma-separated model names (default: all 16)")
      ->delimiter(',');
  app.add_option("--criteria", criteria_list,
                 "comma-separated criteria (default: MSE,MAE,MEOP,AE,Noise,RMSPE,SSE,TS,PRR,Rsq)")
      ->delimiter(',');
  app.add_option("--seed", config.ssa.seed, "base RNG seed; per-model sub-seed = seed XOR model index")
      ->capture_default_str();
  app.add_option("--pop", config.ssa.population, "population size")->capture_default_str();
  app.add_option("--ra", config.ssa.attenuation_rate, "vibration attenuation rate r_a")
      ->capture_default_str();
  app.add_option("--pc", config.ssa.mask_change_base, "mask-change base probability p_c")
      ->capture_default_str();
  app.add_option("--pm", config.ssa.mask_one_prob, "mask-bit-one probability p_m")
      ->capture_default_str();
  app.add_option("--iters", config.ssa.max_iters, "iteration cap")->capture_default_str();
  app.add_option("--intensity-c", config.ssa.intensity_c,
                 "vibration intensity constant C (< 0)")
      ->capture_default_str();
  app.add_option("--no-improve-window", config.ssa.no_improve_window,
                 "stop after this many stale iterations (0 = run the full cap)")
      ->capture_default_str();
  app.add_option("--prr-direction", prr, "raw|absolute PRR weighting")
      ->check(CLI::IsMember({"raw", "absolute"}))
      ->capture_default_str();
  app.add_flag("--ztp-pin-p", config.ztp_pin_p, "pin Z-T-P's p parameter at 1");
  app.add_flag("--history", config.write_history, "write per-model history_<model>.csv");
  app.add_option("--grid-points", config.curve_grid_points, "curve grid resolution")
      ->capture_default_str();
  app.add_option("--criteria-csv", [&config](const std::vector<std::string>& v) {
        config.criteria_csv = v.front();
        return true;
      },
      "rank a precomputed criteria table instead of fit results");

  auto* fit = app.add_subcommand("fit", "estimate parameters for the selected models");
  auto* rank = app.add_subcommand("rank", "compute criteria and rank models");
  auto* curve = app.add_subcommand("curve", "write actual-vs-estimated curve data");
  curve->add_option("--model", curve_model, "model to plot")->required();
  auto* report = app.add_subcommand("report", "fit, rank, and write all curves");
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // 0 covers --help/--version
  }

  auto join = [](const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) out += (out.empty() ? "" : ",") + item;
    return out;
  };
  try {
    config.models = models_list.empty() ? std::vector<srgm::ModelId>{}
                                        : srgm::parse_model_selection(join(models_list));
    config.criteria = criteria_list.empty()
                          ? std::vector<srgm::CriterionId>{}
                          : srgm::parse_criteria_selection(join(criteria_list));
    config.prr_direction = prr == "raw" ? srgm::PrrMode::Raw : srgm::PrrMode::Absolute;
    return run(app, config, fit, rank, curve, report, curve_model);
  } catch (const srgm::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const srgm::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const srgm::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
