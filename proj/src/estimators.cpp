#include "syssamp/estimators.hpp"

#include <cmath>
#include <numeric>

#include "syssamp/design.hpp"
#include "syssamp/error.hpp"

namespace syssamp {

namespace {

double average(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

void FamilyParams::validate(double pop_mean_x) const {
  if (a == 0) throw DomainError("family parameter a must be nonzero");
  if (a * pop_mean_x + b == 0) throw DomainError("a * Xbar + b is zero; lambda is undefined");
}

double hh_mean(const SampleRealization& real) {
  const std::size_t n1 = real.y_respondents.size();
  const std::size_t h2 = real.y_subsample.size();
  const std::size_t n2 = real.n2();
  if (n1 + h2 == 0) throw DomainError("Hansen-Hurwitz mean of a sample with no observed y");
  if (n2 > 0 && h2 == 0) throw DomainError("non-respondents present but none followed up");
  if (n2 == 0) return average(real.y_respondents);
  if (n1 == 0) return average(real.y_subsample);
  const auto n = static_cast<double>(n1 + n2);
  return (static_cast<double>(n1) * average(real.y_respondents) +
          static_cast<double>(n2) * average(real.y_subsample)) /
         n;
}

double aux_mean(const SampleRealization& real) {
  if (real.x_observed.empty()) throw DomainError("auxiliary mean of an empty sample");
  return average(real.x_observed);
}

double family_estimate(double ybar_star, double xbar, double pop_mean_x, const FamilyParams& p) {
  const double numerator = p.a * pop_mean_x + p.b;
  const double denominator = p.alpha * (p.a * xbar + p.b) + (1 - p.alpha) * numerator;
  if (denominator == 0) throw SingularityError("family estimator: zero denominator");
  const double base = numerator / denominator;
  if (base <= 0 && p.g != std::trunc(p.g)) {
    throw DomainError("family estimator: nonpositive base raised to non-integer g");
  }
  return ybar_star * std::pow(base, p.g);
}

double ratio_estimate(double ybar_star, double xbar, double pop_mean_x) {
  if (xbar == 0) throw SingularityError("ratio estimator: sample mean of x is zero");
  return ybar_star * (pop_mean_x / xbar);
}

double product_estimate(double ybar_star, double xbar, double pop_mean_x) {
  if (pop_mean_x == 0) throw SingularityError("product estimator: population mean of x is zero");
  return ybar_star * (xbar / pop_mean_x);
}

}  // namespace syssamp
