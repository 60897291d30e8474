#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace srgm {

/// Axis-aligned search box. lower(i) < upper(i) for every coordinate.
struct ParamBounds {
  Eigen::ArrayXd lower;
  Eigen::ArrayXd upper;

  Eigen::Index dim() const { return lower.size(); }

  void validate() const {
    if (lower.size() != upper.size())
      throw std::invalid_argument("ParamBounds: lower/upper dimension mismatch");
    for (Eigen::Index i = 0; i < lower.size(); ++i)
      if (!(lower(i) < upper(i)))
        throw std::invalid_argument("ParamBounds: lower >= upper at coordinate " +
                                    std::to_string(i));
  }

  bool contains(const Eigen::ArrayXd& x) const {
    return x.size() == lower.size() && (x >= lower).all() && (x <= upper).all();
  }
};

}  // namespace srgm
