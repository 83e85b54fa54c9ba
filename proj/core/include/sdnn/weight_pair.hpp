#pragma once

#include <stdexcept>

namespace sdnn {

/// Weights (alpha_f, alpha_p) of the Neumann-Neumann update and preconditioner.
struct WeightPair {
  double alpha_f = 0.0;
  double alpha_p = 0.0;

  /// Throws std::invalid_argument unless both weights are positive.
  void validate() const {
    if (!(alpha_f > 0.0) || !(alpha_p > 0.0))
      throw std::invalid_argument("WeightPair: both weights must be positive");
  }
};

}  // namespace sdnn
