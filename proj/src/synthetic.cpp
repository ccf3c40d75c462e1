#include "syssamp/synthetic.hpp"

#include <cmath>
#include <random>

#include "syssamp/design.hpp"
#include "syssamp/error.hpp"

namespace syssamp {

namespace {

// Centres v and scales it to unit mean square (divisor N-1).
void standardize(std::vector<double>& v) {
  const double m = mean(v);
  for (double& e : v) e -= m;
  const double s = std::sqrt(mean_square(v));
  if (s == 0) throw DegenerateInputError("cannot standardize constant draws");
  for (double& e : v) e /= s;
}

}  // namespace

FinitePopulation linear_population(const LinearPopulationSpec& spec) {
  if (spec.size < 3) throw DomainError("synthetic population needs at least 3 units");
  if (!(spec.rho >= -1 && spec.rho <= 1)) throw DomainError("rho must lie in [-1, 1]");
  if (!(spec.s2_x > 0) || !(spec.s2_y >= 0)) throw DomainError("mean squares must be positive");

  Rng rng(spec.seed);
  std::normal_distribution<double> normal;
  std::vector<double> zx(spec.size), ze(spec.size);
  for (double& v : zx) v = normal(rng);
  for (double& v : ze) v = normal(rng);
  standardize(zx);
  standardize(ze);

  // Remove the component of the noise along x so the correlation is exact.
  double proj = 0, norm = 0;
  for (std::size_t i = 0; i < spec.size; ++i) {
    proj += ze[i] * zx[i];
    norm += zx[i] * zx[i];
  }
  for (std::size_t i = 0; i < spec.size; ++i) ze[i] -= proj / norm * zx[i];
  standardize(ze);

  const double sx = std::sqrt(spec.s2_x), sy = std::sqrt(spec.s2_y);
  const double noise = std::sqrt(std::max(0.0, 1 - spec.rho * spec.rho));
  std::vector<double> y(spec.size), x(spec.size);
  for (std::size_t i = 0; i < spec.size; ++i) {
    x[i] = spec.mean_x + sx * zx[i];
    y[i] = spec.mean_y + sy * (spec.rho * zx[i] + noise * ze[i]);
  }
  FinitePopulation pop(std::move(y), std::move(x));
  return spec.sort_by_x ? sorted_by_x(pop) : pop;
}

}  // namespace syssamp
