#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace srgm {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
  int line;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Cumulative failure observations: strictly increasing positive times,
/// nondecreasing nonnegative counts, at least two points. Immutable after
/// construction; safe to share across concurrent fits.
class FailureDataset {
 public:
  /// Validates all invariants; throws ValidationError naming the offending row.
  FailureDataset(std::string name, Eigen::ArrayXd times, Eigen::ArrayXd counts);

  const std::string& name() const { return name_; }
  const Eigen::ArrayXd& times() const { return times_; }
  const Eigen::ArrayXd& counts() const { return counts_; }

  Eigen::Index size() const { return times_.size(); }       // k
  double last_time() const { return times_(times_.size() - 1); }
  double total_faults() const { return counts_(counts_.size() - 1); }  // m_k

  bool operator==(const FailureDataset& other) const {
    return name_ == other.name_ && (times_ == other.times_).all() &&
           (counts_ == other.counts_).all();
  }

 private:
  std::string name_;
  Eigen::ArrayXd times_;
  Eigen::ArrayXd counts_;
};

/// CSV with header `t,cumulative_faults`; lines starting with '#' are comments.
FailureDataset parse_dataset(std::istream& in, std::string name);
FailureDataset load_dataset(const std::filesystem::path& file);

/// Emits the exact format parse_dataset accepts; parse(serialize(d)) == d.
void serialize_dataset(std::ostream& out, const FailureDataset& dataset);

}  // namespace srgm
