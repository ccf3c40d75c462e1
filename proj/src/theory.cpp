#include "syssamp/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "syssamp/error.hpp"

namespace syssamp {

void SamplingContext::validate() const {
  if (n < 2) throw DesignError("sample size must be at least 2");
  if (N < n || N % n != 0) throw DesignError("N must be a multiple of n");
  if (!(w2 >= 0 && w2 < 1)) throw DomainError("w2 must lie in [0, 1)");
  if (!(ell >= 1) || !std::isfinite(ell)) throw DomainError("L must be >= 1");
  const auto& m = moments;
  if (m.mean_y == 0 || m.mean_x == 0) throw DomainError("population means must be nonzero");
  if (m.s2_y < 0 || m.s2_x < 0 || m.s2_y2 < 0) throw DomainError("mean squares must be >= 0");
  if (m.cv_x <= 0) throw DomainError("C_x must be positive");
  if (!(m.rho >= -1 && m.rho <= 1)) throw DomainError("rho must lie in [-1, 1]");
  if (!(bracket_x() > 0)) throw DomainError("1 + (n-1) rho_x must be positive");
  if (!(bracket_y() >= 0)) throw DomainError("1 + (n-1) rho_y must be nonnegative");
}

double SamplingContext::fpc() const noexcept {
  return static_cast<double>(N - 1) / (static_cast<double>(n) * static_cast<double>(N));
}

double SamplingContext::bracket_y() const noexcept {
  return 1 + static_cast<double>(n - 1) * moments.rho_y;
}

double SamplingContext::bracket_x() const noexcept {
  return 1 + static_cast<double>(n - 1) * moments.rho_x;
}

double SamplingContext::nonresponse_term() const noexcept {
  return (ell - 1) / static_cast<double>(n) * w2 * moments.s2_y2;
}

DerivedConstants derived_constants(const SamplingContext& ctx, const FamilyParams& p) {
  ctx.validate();
  p.validate(ctx.moments.mean_x);
  const auto& m = ctx.moments;
  DerivedConstants c;
  c.f = ctx.fpc();
  c.rho_star = std::sqrt(ctx.bracket_y() / ctx.bracket_x());
  c.big_k = m.rho * m.cv_y / m.cv_x;
  const double ax = p.a * m.mean_x;
  c.lambda = ax / (ax + p.b);
  return c;
}

ErrorMoments error_moments(const SamplingContext& ctx) {
  ctx.validate();
  const auto& m = ctx.moments;
  const double f = ctx.fpc();
  ErrorMoments e;
  e.e0_sq = f * ctx.bracket_y() * m.cv_y * m.cv_y +
            (ctx.ell - 1) / static_cast<double>(ctx.n) * ctx.w2 * m.s2_y2 / (m.mean_y * m.mean_y);
  e.e1_sq = f * ctx.bracket_x() * m.cv_x * m.cv_x;
  e.e0_e1 = f * std::sqrt(ctx.bracket_y()) * std::sqrt(ctx.bracket_x()) * m.rho * m.cv_y * m.cv_x;
  return e;
}

double var_mean_y(const SamplingContext& ctx) {
  ctx.validate();
  return ctx.fpc() * ctx.bracket_y() * ctx.moments.s2_y + ctx.nonresponse_term();
}

double var_mean_x(const SamplingContext& ctx) {
  ctx.validate();
  return ctx.fpc() * ctx.bracket_x() * ctx.moments.s2_x;
}

// The classical and family expressions below share one evaluation order so
// that the ratio and product specializations agree bit for bit.

double classical_bias(ClassicalKind kind, const SamplingContext& ctx, const DerivedConstants& c) {
  const auto& m = ctx.moments;
  const double scale = c.f * m.mean_y * ctx.bracket_x() * (m.cv_x * m.cv_x);
  const double k_rho = c.big_k * c.rho_star;
  return scale * (kind == ClassicalKind::Ratio ? 1 - k_rho : k_rho);
}

double classical_mse(ClassicalKind kind, const SamplingContext& ctx, const DerivedConstants& c) {
  const auto& m = ctx.moments;
  const double sign = kind == ClassicalKind::Ratio ? 1.0 : -1.0;
  const double bracket = c.rho_star * c.rho_star * (m.cv_y * m.cv_y) +
                         (1.0 - 2.0 * sign * c.rho_star * c.big_k) * (m.cv_x * m.cv_x);
  return c.f * (m.mean_y * m.mean_y) * ctx.bracket_x() * bracket + ctx.nonresponse_term();
}

double family_bias(const FamilyParams& p, const SamplingContext& ctx, const DerivedConstants& c) {
  const auto& m = ctx.moments;
  const double scale = c.f * m.mean_y * ctx.bracket_x() * (m.cv_x * m.cv_x);
  const double gal = p.g * p.alpha * c.lambda;
  const double quadratic = p.g * (p.g + 1) / 2 * (p.alpha * p.alpha) * (c.lambda * c.lambda);
  return scale * (quadratic - gal * (c.big_k * c.rho_star));
}

double family_mse(const FamilyParams& p, const SamplingContext& ctx, const DerivedConstants& c) {
  const auto& m = ctx.moments;
  const double gal = p.g * p.alpha * c.lambda;
  const double bracket = c.rho_star * c.rho_star * (m.cv_y * m.cv_y) +
                         (gal * gal - 2.0 * gal * c.rho_star * c.big_k) * (m.cv_x * m.cv_x);
  return c.f * (m.mean_y * m.mean_y) * ctx.bracket_x() * bracket + ctx.nonresponse_term();
}

double optimum_alpha(const DerivedConstants& c, double g) {
  if (g == 0) throw NoOptimumError("g = 0: the family MSE does not depend on alpha");
  if (c.lambda == 0) throw NoOptimumError("lambda = 0: the family MSE does not depend on alpha");
  return c.rho_star * c.big_k / (g * c.lambda);
}

double family_mse_min(const SamplingContext& ctx, const DerivedConstants& c) {
  const auto& m = ctx.moments;
  const double bracket = m.cv_y * m.cv_y - c.big_k * c.big_k * (m.cv_x * m.cv_x);
  return c.f * (m.mean_y * m.mean_y) * ctx.bracket_x() * bracket * (c.rho_star * c.rho_star) +
         ctx.nonresponse_term();
}

double regression_mse(const SamplingContext& ctx) {
  ctx.validate();
  const auto& m = ctx.moments;
  return ctx.fpc() * ctx.bracket_y() * m.s2_y * (1 - m.rho * m.rho) + ctx.nonresponse_term();
}

double pre_optimum(const SamplingContext& ctx, const DerivedConstants& c) {
  const double min_mse = family_mse_min(ctx, c);
  if (!(min_mse > 0)) throw DomainError("minimum MSE is zero; PRE is undefined");
  return 100.0 * var_mean_y(ctx) / min_mse;
}

double pre_with_intraclass(SamplingContext ctx, double intraclass) {
  ctx.moments.rho_y = intraclass;
  ctx.moments.rho_x = intraclass;
  return pre_optimum(ctx, derived_constants(ctx, FamilyParams{}));
}

namespace {

// Smallest admissible common intraclass value: brackets must stay positive.
double intraclass_floor(const SamplingContext& ctx) {
  const double lo = -1.0 / static_cast<double>(ctx.n - 1);
  return lo + 1e-9 * (1.0 - lo);
}

}  // namespace

double backsolve_intraclass(const SamplingContext& ctx, double target_pre) {
  double lo = intraclass_floor(ctx);
  double hi = 1.0;
  double f_lo = pre_with_intraclass(ctx, lo) - target_pre;
  double f_hi = pre_with_intraclass(ctx, hi) - target_pre;
  if (f_lo == 0) return lo;
  if (f_hi == 0) return hi;
  if ((f_lo < 0) == (f_hi < 0)) {
    throw DomainError("PRE " + std::to_string(target_pre) +
                      " is not reachable for any admissible intraclass correlation");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = pre_with_intraclass(ctx, mid) - target_pre;
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double fit_intraclass(const SamplingContext& ctx, std::span<const PreCell> cells) {
  if (cells.empty()) throw DomainError("no PRE cells to fit");
  auto worst = [&](double ic) {
    double w = 0;
    for (const auto& cell : cells) {
      SamplingContext c = ctx;
      c.w2 = cell.w2;
      c.ell = cell.ell;
      w = std::max(w, std::abs(pre_with_intraclass(c, ic) - cell.pre));
    }
    return w;
  };
  // Each cell's PRE is monotone in the intraclass value, so the worst error
  // is unimodal.
  const double inv_phi = (std::sqrt(5.0) - 1) / 2;
  double lo = intraclass_floor(ctx), hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = worst(x1), f2 = worst(x2);
  while (hi - lo > 1e-12) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = worst(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = worst(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace syssamp
