#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "syssamp/design.hpp"
#include "syssamp/estimators.hpp"
#include "syssamp/population.hpp"

namespace syssamp {

struct HHMeanSpec {};
struct RatioSpec {};
struct ProductSpec {};
struct FamilySpec {
  FamilyParams params;
};

using EstimatorKind = std::variant<HHMeanSpec, RatioSpec, ProductSpec, FamilySpec>;

struct EstimatorSpec {
  std::string label;
  EstimatorKind kind;
};

struct SimulationConfig {
  std::size_t replicates = 1;
  std::uint64_t master_seed = 0;
  std::vector<EstimatorSpec> estimators;
  NonResponseModel nr = NonResponseModel::complete_response();
  /// Replicate r uses start (r mod k) + 1 instead of a random start.
  bool exhaustive_start = false;
  /// 0 picks std::thread::hardware_concurrency(). Never changes the result.
  std::size_t threads = 0;

  /// Throws ConfigError: zero replicates, no estimators, duplicate labels.
  void validate() const;
};

/// A failure rate above this marks an estimator's result invalid.
inline constexpr double kMaxFailureRate = 0.01;

struct EstimatorSummary {
  std::string label;
  std::size_t used = 0;      ///< replicates contributing to the aggregates
  std::size_t failures = 0;  ///< replicates where the estimator was singular
  double empirical_mean = 0;
  double empirical_bias = 0;  ///< empirical_mean - true mean
  double empirical_mse = 0;
  double bias_standard_error = 0;
  double mse_standard_error = 0;

  bool valid() const noexcept;
};

struct SimulationReport {
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::uint64_t population_fingerprint = 0;
  double true_mean = 0;
  std::vector<EstimatorSummary> estimators;

  /// Throws ConfigError on an unknown label.
  const EstimatorSummary& at(const std::string& label) const;
};

/// Design-based replication of systematic sampling with non-response. The
/// result depends only on (pop, design, cfg minus threads).
SimulationReport run_simulation(const FinitePopulation& pop, const SystematicDesign& design,
                                const SimulationConfig& cfg);

struct TheoryTarget {
  std::string label;      ///< estimator label in the report
  std::string reference;  ///< name of the theoretical quantity
  double value = 0;
  /// Target is a first-order approximation rather than an exact expression.
  bool first_order = false;
};

struct Verdict {
  std::string label;
  std::string reference;
  double theory = 0;
  double empirical = 0;
  double standard_error = 0;
  bool pass = false;
  double z = 0;
  double relative_gap = 0;  ///< (empirical - theory) / theory
  bool first_order = false;
  bool infinite_z = false;
  bool invalid = false;  ///< failure rate above kMaxFailureRate
};

/// z = (empirical MSE - theory) / MC standard error. PASS iff |z| <= tolerance_sigma,
/// or, for first-order targets, |relative gap| <= first_order_rel_tol.
std::vector<Verdict> compare_to_theory(const SimulationReport& report,
                                       const std::vector<TheoryTarget>& targets,
                                       double tolerance_sigma,
                                       double first_order_rel_tol = 0.0);

/// Exact design MSE of the Hansen-Hurwitz mean under a fixed stratum,
/// obtained by enumerating the k starts and adding the follow-up variance
/// (n2/n)^2 (1/h2 - 1/n2) s2^2 of each sample.
double exact_hh_mse(const FinitePopulation& pop, const SystematicDesign& design,
                    const NonResponseModel& nr);

}  // namespace syssamp
