#pragma once

#include <cstddef>
#include <cstdint>

#include "syssamp/population.hpp"

namespace syssamp {

/// y linear in x plus noise, with exact population moments: the generated
/// values are rescaled so that the means, mean squares (divisor N-1) and the
/// y-x correlation equal the requested ones to rounding error.
struct LinearPopulationSpec {
  std::size_t size = 240;
  double mean_x = 10;
  double s2_x = 4;
  double mean_y = 100;
  double s2_y = 400;
  double rho = 0.9;
  std::uint64_t seed = 1;
  /// Arrange units in ascending order of x; otherwise the order is random.
  bool sort_by_x = false;
};

FinitePopulation linear_population(const LinearPopulationSpec& spec);

}  // namespace syssamp
