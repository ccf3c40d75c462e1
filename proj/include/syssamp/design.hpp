#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace syssamp {

class FinitePopulation;

/// Random stream used by every stochastic operation.
using Rng = std::mt19937_64;

/// Stream for one replicate, derived only from (master seed, replicate index).
Rng replicate_stream(std::uint64_t master_seed, std::uint64_t replicate);

/// Linear systematic design with N = n * k. Units are numbered 1..N.
class SystematicDesign {
 public:
  /// Throws DesignError unless population_size = sample_size * interval and
  /// sample_size >= 2.
  SystematicDesign(std::size_t population_size, std::size_t sample_size,
                   std::size_t interval);

  /// Design for a sample of size n from N units; throws DesignError listing
  /// valid sample sizes when n does not divide N.
  static SystematicDesign for_sample_size(std::size_t population_size,
                                          std::size_t sample_size);

  std::size_t population_size() const noexcept { return N_; }
  std::size_t sample_size() const noexcept { return n_; }
  std::size_t interval() const noexcept { return k_; }

  /// Units of the sample with random start `start` (1..k): start, start+k, ...
  std::vector<std::size_t> sample_units(std::size_t start) const;

  friend bool operator==(const SystematicDesign&, const SystematicDesign&) = default;

 private:
  std::size_t N_;
  std::size_t n_;
  std::size_t k_;
};

/// Divisors n of N with 2 <= n, i.e. every sample size admitting N = nk.
std::vector<std::size_t> valid_sample_sizes(std::size_t population_size);

/// All k candidate samples; element i-1 holds the sample with start i.
std::vector<std::vector<std::size_t>> enumerate_samples(const SystematicDesign& design);

/// Uniform random start in 1..k.
std::size_t draw_sample(const SystematicDesign& design, Rng& rng);

enum class StratumMode {
  FixedStratum,          ///< non-respondents are a fixed set of population units
  BernoulliPerReplicate  ///< every sampled unit fails to respond with probability w2
};

/// Hansen-Hurwitz non-response mechanism: rate w2, follow-up ratio L = n2/h2.
class NonResponseModel {
 public:
  /// Fixed stratum of 1-based unit indices. Throws ConfigError when the
  /// stratum has duplicates, out-of-range units or a size other than
  /// round(w2 * N).
  static NonResponseModel fixed(double w2, double ell, std::vector<std::size_t> stratum,
                                std::size_t population_size);
  static NonResponseModel bernoulli(double w2, double ell);
  /// w2 = 0: everybody responds.
  static NonResponseModel complete_response();

  double w2() const noexcept { return w2_; }
  double ell() const noexcept { return ell_; }
  StratumMode mode() const noexcept { return mode_; }
  /// Sorted stratum; empty in Bernoulli mode.
  const std::vector<std::size_t>& stratum() const noexcept { return stratum_; }
  bool in_stratum(std::size_t unit) const;

  /// Follow-up size for n2 non-respondents: max(1, round(n2 / L)), 0 if n2 = 0.
  std::size_t followup_size(std::size_t n2) const;

 private:
  NonResponseModel(double w2, double ell, StratumMode mode, std::vector<std::size_t> stratum);

  double w2_;
  double ell_;
  StratumMode mode_;
  std::vector<std::size_t> stratum_;
};

/// Uniformly random fixed stratum of round(w2 * N) units.
std::vector<std::size_t> random_stratum(const SystematicDesign& design, double w2, Rng& rng);

/// Fixed stratum of round(w2 * N) units spread across the k samples so that,
/// where the total allows it, each sample holds a multiple of L non-respondents
/// (integral L only). Which samples get more, and which positions inside each
/// sample, is random.
std::vector<std::size_t> balanced_stratum(const SystematicDesign& design, double w2,
                                          double ell, Rng& rng);

/// One systematic sample after non-response and follow-up.
struct SampleRealization {
  std::size_t sample_index = 0;
  std::vector<std::size_t> units;
  std::vector<std::size_t> respondents;
  std::vector<std::size_t> nonrespondents;
  std::vector<std::size_t> subsample;
  std::vector<double> y_respondents;  ///< y of respondents, same order
  std::vector<double> y_subsample;    ///< y of the followed-up subsample
  std::vector<double> x_observed;     ///< x of all n units

  std::size_t n() const noexcept { return units.size(); }
  std::size_t n1() const noexcept { return respondents.size(); }
  std::size_t n2() const noexcept { return nonrespondents.size(); }
  std::size_t h2() const noexcept { return subsample.size(); }
};

/// Applies the non-response mechanism and the follow-up draw to one sample.
/// `sample_index` is recorded verbatim (0 if unknown).
SampleRealization apply_nonresponse(const std::vector<std::size_t>& units,
                                    const FinitePopulation& pop, const NonResponseModel& nr,
                                    Rng& rng, std::size_t sample_index = 0);

}  // namespace syssamp
