#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "srgm/bounds.hpp"

namespace srgm {

/// Deterministic RNG used by the optimizer. The stream is fully pinned:
/// std::mt19937_64 raw output, doubles built from the top 53 bits
/// (u >> 11) * 2^-53, indices via floor(uniform01() * n). Two runs with the
/// same seed produce bit-identical draws on any conforming implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n).
  int index(int n) {
    int i = static_cast<int>(uniform01() * n);
    return i >= n ? n - 1 : i;
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 gen_;
};

struct SsaConfig {
  int population = 40;
  double attenuation_rate = 1.0;   // r_a
  double mask_change_base = 0.7;   // p_c
  double mask_one_prob = 0.1;      // p_m
  int max_iters = 500;
  std::uint64_t seed = 0;
  double intensity_c = -1e-6;      // C, strictly below the objective's infimum
  int no_improve_window = 0;       // 0 disables early stop

  void validate() const;
};

struct Vibration {
  Eigen::ArrayXd position;  // source position
  double intensity = 0.0;   // as received (attenuated), >= 0
};

struct Spider {
  Eigen::ArrayXd position;
  double fitness = 0.0;
  Eigen::ArrayXd target_position;
  double target_intensity = 0.0;
  int inactive_degree = 0;                    // d_in
  Eigen::ArrayXd previous_move;
  Eigen::Array<bool, Eigen::Dynamic, 1> mask;
};

/// log(1/(fitness - C) + 1); strictly decreasing in fitness.
/// Throws std::domain_error when fitness <= C.
double source_intensity(double fitness, double c);

/// I * exp(-d / (sigma_bar * r_a)). A fully collapsed population
/// (sigma_bar == 0) attenuates everything except the d == 0 self-vibration.
double attenuated_intensity(double intensity, double manhattan_distance,
                            double sigma_bar, double attenuation_rate);

/// Target replacement rule: adopt (position, intensity) as the new target when
/// strictly stronger than the stored one, resetting the inactive degree;
/// otherwise increment it. Returns true on replacement.
bool replace_target(Spider& spider, const Eigen::ArrayXd& source_position,
                    double received_intensity);

/// Picks the strongest received vibration (first index wins ties) and applies
/// the replacement rule.
void select_target(Spider& spider, std::span<const Vibration> received);

/// Mask mutation: with probability 1 - p_c^d_in regenerate the mask bitwise
/// (one w.p. p_m), then repair all-zero/all-one masks by flipping one
/// uniformly chosen bit.
void update_mask(Spider& spider, double mask_change_base, double mask_one_prob,
                 Rng& rng);

/// The following position: target coordinates where the mask bit is 0, the
/// same coordinate of a uniformly chosen spider (index redrawn per dimension)
/// where it is 1.
Eigen::ArrayXd following_position(const Spider& spider,
                                  std::span<const Eigen::ArrayXd> positions,
                                  Rng& rng);

/// Random walk: p + previous_move * r + (p_fo - p) .* R with one scalar r per
/// spider and per-dimension R, all uniform in [0,1). Stores the proposed
/// displacement as the spider's previous move.
Eigen::ArrayXd random_walk(Spider& spider, const Eigen::ArrayXd& following_pos,
                           Rng& rng);

/// Constraint handling: out-of-range coordinates are pulled back between the
/// old (in-bounds) coordinate and the violated bound by a fresh uniform factor.
Eigen::ArrayXd clamp_to_bounds(const Eigen::ArrayXd& old_position,
                               Eigen::ArrayXd proposed, const ParamBounds& bounds,
                               Rng& rng);

using Objective = std::function<double(const Eigen::ArrayXd&)>;

struct SsaResult {
  Eigen::ArrayXd best_position;
  double best_fitness = 0.0;
  std::vector<double> history;  // best-ever fitness; entry 0 is the initial population
  int iterations = 0;
};

/// Runs the full evaluate/select/mutate/walk/clamp loop. Deterministic given
/// the config seed. Draw order: per spider its position coordinates then its
/// initial mask index; then per iteration, per spider in index order, the
/// mask change/bit/repair draws, the peer indices, the walk scalar r, the
/// per-dimension R, and clamp draws for violated coordinates. Non-finite
/// objective values are treated as a large penalty. Target selection and peer
/// lookups within an iteration use the iteration-start snapshot.
SsaResult optimize(const Objective& objective, const ParamBounds& bounds,
                   const SsaConfig& config);

/// Writes `iter,best_fitness` rows, one per history entry.
void write_history_csv(std::ostream& out, const SsaResult& result);

}  // namespace srgm
