#pragma once

#include <cstddef>
#include <span>

#include "syssamp/estimators.hpp"
#include "syssamp/population.hpp"

// First-order (Taylor, second moments only) theory of the Hansen-Hurwitz mean
// and the ratio, product and general family estimators under systematic
// sampling with non-response on y.

namespace syssamp {

/// Everything the closed-form expressions depend on besides the estimator.
struct SamplingContext {
  PopulationMoments moments;
  std::size_t N = 0;
  std::size_t n = 0;
  double w2 = 0;
  double ell = 1;

  /// Throws DomainError/DesignError on invalid inputs: n < 2, N not a
  /// multiple of n, w2 outside [0, 1), ell < 1, nonpositive intraclass
  /// brackets, zero means, negative mean squares.
  void validate() const;

  /// (N - 1) / (n N)
  double fpc() const noexcept;
  /// 1 + (n - 1) rho_y
  double bracket_y() const noexcept;
  /// 1 + (n - 1) rho_x
  double bracket_x() const noexcept;
  /// ((L - 1) / n) w2 S_y2^2
  double nonresponse_term() const noexcept;
};

/// rho*, K, lambda and the finite-population factor f.
struct DerivedConstants {
  double rho_star = 0;
  double big_k = 0;
  double lambda = 0;
  double f = 0;
};

/// Relative-error moments E(e0^2), E(e1^2), E(e0 e1).
struct ErrorMoments {
  double e0_sq = 0;
  double e1_sq = 0;
  double e0_e1 = 0;
};

enum class ClassicalKind { Ratio, Product };

DerivedConstants derived_constants(const SamplingContext& ctx, const FamilyParams& p);
ErrorMoments error_moments(const SamplingContext& ctx);

/// V(ybar*)
double var_mean_y(const SamplingContext& ctx);
/// V(xbar)
double var_mean_x(const SamplingContext& ctx);

double classical_bias(ClassicalKind kind, const SamplingContext& ctx, const DerivedConstants& c);
double classical_mse(ClassicalKind kind, const SamplingContext& ctx, const DerivedConstants& c);

double family_bias(const FamilyParams& p, const SamplingContext& ctx, const DerivedConstants& c);
double family_mse(const FamilyParams& p, const SamplingContext& ctx, const DerivedConstants& c);

/// alpha minimizing family_mse: rho* K / (g lambda). Throws NoOptimumError
/// when g or lambda is zero.
double optimum_alpha(const DerivedConstants& c, double g);

/// family_mse at the optimum alpha; independent of (a, b, g).
double family_mse_min(const SamplingContext& ctx, const DerivedConstants& c);

/// Same quantity through the regression-estimator form
/// f {1 + (n-1) rho_y} S_y^2 (1 - rho^2) + NR term.
double regression_mse(const SamplingContext& ctx);

/// 100 V(ybar*) / min MSE. Throws DomainError when the minimum MSE is zero.
double pre_optimum(const SamplingContext& ctx, const DerivedConstants& c);

/// PRE with rho_y and rho_x both replaced by `intraclass`.
double pre_with_intraclass(SamplingContext ctx, double intraclass);

/// Common intraclass value (rho_y = rho_x) for which the PRE at (w2, ell)
/// equals `target_pre`, by bisection over (-1/(n-1), 1]. Throws DomainError
/// when the target is not bracketed.
double backsolve_intraclass(const SamplingContext& ctx, double target_pre);

struct PreCell {
  double w2 = 0;
  double ell = 1;
  double pre = 0;
};

/// Common intraclass value minimizing the largest absolute PRE error over
/// `cells` (golden-section search over the valid range).
double fit_intraclass(const SamplingContext& ctx, std::span<const PreCell> cells);

}  // namespace syssamp
