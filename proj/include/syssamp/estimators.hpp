#pragma once

namespace syssamp {

struct SampleRealization;

/// Parameters (a, b, alpha, g) of the estimator family
///   t = ybar* [ (a Xbar + b) / (alpha (a xbar + b) + (1 - alpha)(a Xbar + b)) ]^g.
struct FamilyParams {
  double a = 1;
  double b = 0;
  double alpha = 0;
  double g = 1;

  /// Throws DomainError when a == 0 or a * pop_mean_x + b == 0.
  void validate(double pop_mean_x) const;

  static FamilyParams ratio() { return {1, 0, 1, 1}; }
  static FamilyParams product() { return {1, 0, 1, -1}; }
};

/// Hansen-Hurwitz mean (n1 ybar_n1 + n2 ybar_h2) / n.
double hh_mean(const SampleRealization& real);

/// Mean of x over all n sampled units.
double aux_mean(const SampleRealization& real);

double family_estimate(double ybar_star, double xbar, double pop_mean_x, const FamilyParams& p);

/// ybar* Xbar / xbar. Bitwise equal to family_estimate with FamilyParams::ratio().
double ratio_estimate(double ybar_star, double xbar, double pop_mean_x);

/// ybar* xbar / Xbar.
double product_estimate(double ybar_star, double xbar, double pop_mean_x);

}  // namespace syssamp
