#include "srgm/ssa.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "srgm/csv.hpp"

namespace srgm {
namespace {

constexpr double kPenaltyFitness = 1e100;  // stands in for NaN/Inf objective values

double sanitize_fitness(double f) { return std::isfinite(f) ? f : kPenaltyFitness; }

double manhattan(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
  return (a - b).abs().sum();
}

/// Mean over dimensions of the per-dimension population standard deviation.
double mean_position_stddev(const std::vector<Spider>& spiders) {
  const auto pop = static_cast<double>(spiders.size());
  const Eigen::Index dim = spiders.front().position.size();
  double acc = 0.0;
  for (Eigen::Index d = 0; d < dim; ++d) {
    double mean = 0.0;
    for (const Spider& s : spiders) mean += s.position(d);
    mean /= pop;
    double var = 0.0;
    for (const Spider& s : spiders) {
      const double dev = s.position(d) - mean;
      var += dev * dev;
    }
    acc += std::sqrt(var / pop);
  }
  return acc / static_cast<double>(dim);
}

}  // namespace

void SsaConfig::validate() const {
  if (population < 2) throw std::invalid_argument("SsaConfig: population must be >= 2");
  if (!(attenuation_rate > 0)) throw std::invalid_argument("SsaConfig: r_a must be > 0");
  if (!(mask_change_base > 0 && mask_change_base < 1))
    throw std::invalid_argument("SsaConfig: p_c must lie in (0,1)");
  if (!(mask_one_prob > 0 && mask_one_prob < 1))
    throw std::invalid_argument("SsaConfig: p_m must lie in (0,1)");
  if (max_iters < 0) throw std::invalid_argument("SsaConfig: max_iters must be >= 0");
  if (!(intensity_c < 0))
    throw std::invalid_argument("SsaConfig: C must be < 0 for nonnegative objectives");
}

double source_intensity(double fitness, double c) {
  if (!(fitness > c))
    throw std::domain_error("source_intensity: fitness must exceed the intensity constant C");
  return std::log(1.0 / (fitness - c) + 1.0);
}

double attenuated_intensity(double intensity, double manhattan_distance, double sigma_bar,
                            double attenuation_rate) {
  if (sigma_bar == 0.0) return manhattan_distance == 0.0 ? intensity : 0.0;
  return intensity * std::exp(-manhattan_distance / (sigma_bar * attenuation_rate));
}

bool replace_target(Spider& spider, const Eigen::ArrayXd& source_position,
                    double received_intensity) {
  if (received_intensity > spider.target_intensity) {
    spider.target_position = source_position;
    spider.target_intensity = received_intensity;
    spider.inactive_degree = 0;
    return true;
  }
  ++spider.inactive_degree;
  return false;
}

void select_target(Spider& spider, std::span<const Vibration> received) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < received.size(); ++i)
    if (received[i].intensity > received[best].intensity) best = i;
  replace_target(spider, received[best].position, received[best].intensity);
}

void update_mask(Spider& spider, double mask_change_base, double mask_one_prob, Rng& rng) {
  const double change_prob =
      1.0 - std::pow(mask_change_base, static_cast<double>(spider.inactive_degree));
  if (!(rng.uniform01() < change_prob)) return;

  const Eigen::Index dim = spider.mask.size();
  bool any_one = false, all_one = true;
  for (Eigen::Index d = 0; d < dim; ++d) {
    const bool bit = rng.bernoulli(mask_one_prob);
    spider.mask(d) = bit;
    any_one |= bit;
    all_one &= bit;
  }
  if (!any_one)
    spider.mask(rng.index(static_cast<int>(dim))) = true;
  else if (all_one)
    spider.mask(rng.index(static_cast<int>(dim))) = false;
}

Eigen::ArrayXd following_position(const Spider& spider,
                                  std::span<const Eigen::ArrayXd> positions, Rng& rng) {
  const Eigen::Index dim = spider.position.size();
  Eigen::ArrayXd fo(dim);
  for (Eigen::Index d = 0; d < dim; ++d) {
    if (spider.mask(d))
      fo(d) = positions[static_cast<std::size_t>(rng.index(static_cast<int>(positions.size())))](d);
    else
      fo(d) = spider.target_position(d);
  }
  return fo;
}

Eigen::ArrayXd random_walk(Spider& spider, const Eigen::ArrayXd& following_pos, Rng& rng) {
  const double r = rng.uniform01();
  Eigen::ArrayXd step(spider.position.size());
  for (Eigen::Index d = 0; d < step.size(); ++d) step(d) = rng.uniform01();
  Eigen::ArrayXd proposed =
      spider.position + spider.previous_move * r + (following_pos - spider.position) * step;
  spider.previous_move = proposed - spider.position;
  return proposed;
}

Eigen::ArrayXd clamp_to_bounds(const Eigen::ArrayXd& old_position, Eigen::ArrayXd proposed,
                               const ParamBounds& bounds, Rng& rng) {
  for (Eigen::Index d = 0; d < proposed.size(); ++d) {
    if (proposed(d) > bounds.upper(d))
      proposed(d) = old_position(d) + (bounds.upper(d) - old_position(d)) * rng.uniform01();
    else if (proposed(d) < bounds.lower(d))
      proposed(d) = old_position(d) - (old_position(d) - bounds.lower(d)) * rng.uniform01();
  }
  return proposed;
}

SsaResult optimize(const Objective& objective, const ParamBounds& bounds,
                   const SsaConfig& config) {
  config.validate();
  bounds.validate();
  const Eigen::Index dim = bounds.dim();
  const int pop = config.population;
  Rng rng(config.seed);

  std::vector<Spider> spiders(static_cast<std::size_t>(pop));
  for (Spider& s : spiders) {
    s.position.resize(dim);
    for (Eigen::Index d = 0; d < dim; ++d)
      s.position(d) = rng.uniform(bounds.lower(d), bounds.upper(d));
    s.previous_move = Eigen::ArrayXd::Zero(dim);
    s.mask = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(dim, false);
    s.mask(rng.index(static_cast<int>(dim))) = true;  // all-zero mask repaired at start
  }

  SsaResult result;
  result.best_fitness = std::numeric_limits<double>::infinity();
  auto evaluate_all = [&] {
    for (Spider& s : spiders) {
      s.fitness = sanitize_fitness(objective(s.position));
      if (s.fitness < result.best_fitness) {
        result.best_fitness = s.fitness;
        result.best_position = s.position;
      }
    }
  };

  evaluate_all();
  for (Spider& s : spiders) {
    s.target_position = s.position;
    s.target_intensity = source_intensity(s.fitness, config.intensity_c);
  }
  result.history.reserve(static_cast<std::size_t>(config.max_iters) + 1);
  result.history.push_back(result.best_fitness);

  const auto count = static_cast<std::size_t>(pop);
  std::vector<Eigen::ArrayXd> snapshot(count);
  std::vector<double> intensities(count);
  int stale = 0;
  for (int iter = 0; iter < config.max_iters; ++iter) {
    const double sigma_bar = mean_position_stddev(spiders);
    for (std::size_t i = 0; i < count; ++i) {
      snapshot[i] = spiders[i].position;
      intensities[i] = source_intensity(spiders[i].fitness, config.intensity_c);
    }

    for (std::size_t i = 0; i < count; ++i) {
      Spider& s = spiders[i];

      // Strongest received vibration (first index wins ties).
      std::size_t best = 0;
      double best_intensity = -1.0;
      for (std::size_t j = 0; j < count; ++j) {
        const double att =
            attenuated_intensity(intensities[j], manhattan(snapshot[j], snapshot[i]),
                                 sigma_bar, config.attenuation_rate);
        if (att > best_intensity) {
          best_intensity = att;
          best = j;
        }
      }
      replace_target(s, snapshot[best], best_intensity);

      update_mask(s, config.mask_change_base, config.mask_one_prob, rng);
      const Eigen::ArrayXd fo = following_position(s, snapshot, rng);
      Eigen::ArrayXd proposed = random_walk(s, fo, rng);
      s.position = clamp_to_bounds(snapshot[i], std::move(proposed), bounds, rng);
    }

    const double before = result.best_fitness;
    evaluate_all();
    result.history.push_back(result.best_fitness);
    result.iterations = iter + 1;

    if (config.no_improve_window > 0) {
      stale = result.best_fitness < before ? 0 : stale + 1;
      if (stale >= config.no_improve_window) break;
    }
  }
  return result;
}

void write_history_csv(std::ostream& out, const SsaResult& result) {
  out << "iter,best_fitness\n";
  for (std::size_t i = 0; i < result.history.size(); ++i)
    out << i << ',' << format_double(result.history[i]) << '\n';
}

}  // namespace srgm
