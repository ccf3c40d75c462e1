#include "syssamp/design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "syssamp/error.hpp"
#include "syssamp/population.hpp"

namespace syssamp {

Rng replicate_stream(std::uint64_t master_seed, std::uint64_t replicate) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(replicate),
                    static_cast<std::uint32_t>(replicate >> 32)};
  return Rng(seq);
}

SystematicDesign::SystematicDesign(std::size_t population_size, std::size_t sample_size,
                                   std::size_t interval)
    : N_(population_size), n_(sample_size), k_(interval) {
  if (n_ < 2) throw DesignError("sample size must be at least 2");
  if (k_ < 1) throw DesignError("sampling interval must be at least 1");
  if (n_ * k_ != N_) {
    throw DesignError("N = " + std::to_string(N_) + " is not n * k = " + std::to_string(n_) +
                      " * " + std::to_string(k_));
  }
}

std::vector<std::size_t> valid_sample_sizes(std::size_t population_size) {
  std::vector<std::size_t> out;
  for (std::size_t n = 2; n <= population_size; ++n) {
    if (population_size % n == 0) out.push_back(n);
  }
  return out;
}

SystematicDesign SystematicDesign::for_sample_size(std::size_t population_size,
                                                   std::size_t sample_size) {
  if (sample_size < 2 || sample_size > population_size || population_size % sample_size != 0) {
    std::string msg = "sample size " + std::to_string(sample_size) + " does not divide N = " +
                      std::to_string(population_size) + "; trim the population or choose n in {";
    auto sizes = valid_sample_sizes(population_size);
    // Nearest valid sizes first.
    std::stable_sort(sizes.begin(), sizes.end(), [&](std::size_t a, std::size_t b) {
      auto da = a > sample_size ? a - sample_size : sample_size - a;
      auto db = b > sample_size ? b - sample_size : sample_size - b;
      return da < db;
    });
    if (sizes.size() > 6) sizes.resize(6);
    std::sort(sizes.begin(), sizes.end());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      msg += (i ? ", " : "") + std::to_string(sizes[i]) + " (k = " +
             std::to_string(population_size / sizes[i]) + ")";
    }
    msg += "}";
    throw DesignError(msg);
  }
  return SystematicDesign(population_size, sample_size, population_size / sample_size);
}

std::vector<std::size_t> SystematicDesign::sample_units(std::size_t start) const {
  if (start < 1 || start > k_) {
    throw DesignError("start " + std::to_string(start) + " outside 1.." + std::to_string(k_));
  }
  std::vector<std::size_t> units(n_);
  for (std::size_t j = 0; j < n_; ++j) units[j] = start + j * k_;
  return units;
}

std::vector<std::vector<std::size_t>> enumerate_samples(const SystematicDesign& design) {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(design.interval());
  for (std::size_t i = 1; i <= design.interval(); ++i) out.push_back(design.sample_units(i));
  return out;
}

std::size_t draw_sample(const SystematicDesign& design, Rng& rng) {
  std::uniform_int_distribution<std::size_t> start(1, design.interval());
  return start(rng);
}

namespace {

void check_rates(double w2, double ell) {
  if (!(w2 >= 0.0 && w2 < 1.0)) throw ConfigError("non-response rate w2 must lie in [0, 1)");
  if (!(ell >= 1.0) || !std::isfinite(ell)) throw ConfigError("sub-sampling ratio L must be >= 1");
}

std::size_t stratum_size(double w2, std::size_t N) {
  return static_cast<std::size_t>(std::llround(w2 * static_cast<double>(N)));
}

}  // namespace

NonResponseModel::NonResponseModel(double w2, double ell, StratumMode mode,
                                   std::vector<std::size_t> stratum)
    : w2_(w2), ell_(ell), mode_(mode), stratum_(std::move(stratum)) {}

NonResponseModel NonResponseModel::fixed(double w2, double ell, std::vector<std::size_t> stratum,
                                         std::size_t population_size) {
  check_rates(w2, ell);
  std::sort(stratum.begin(), stratum.end());
  if (std::adjacent_find(stratum.begin(), stratum.end()) != stratum.end()) {
    throw ConfigError("stratum lists a unit more than once");
  }
  if (!stratum.empty() && (stratum.front() < 1 || stratum.back() > population_size)) {
    throw ConfigError("stratum units must lie in 1.." + std::to_string(population_size));
  }
  const std::size_t want = stratum_size(w2, population_size);
  if (stratum.size() != want) {
    throw ConfigError("stratum has " + std::to_string(stratum.size()) +
                      " units; w2 * N rounds to " + std::to_string(want));
  }
  return NonResponseModel(w2, ell, StratumMode::FixedStratum, std::move(stratum));
}

NonResponseModel NonResponseModel::bernoulli(double w2, double ell) {
  check_rates(w2, ell);
  return NonResponseModel(w2, ell, StratumMode::BernoulliPerReplicate, {});
}

NonResponseModel NonResponseModel::complete_response() {
  return NonResponseModel(0.0, 1.0, StratumMode::FixedStratum, {});
}

bool NonResponseModel::in_stratum(std::size_t unit) const {
  return std::binary_search(stratum_.begin(), stratum_.end(), unit);
}

std::size_t NonResponseModel::followup_size(std::size_t n2) const {
  if (n2 == 0) return 0;
  const auto h2 = static_cast<std::size_t>(std::llround(static_cast<double>(n2) / ell_));
  return std::clamp<std::size_t>(h2, 1, n2);
}

std::vector<std::size_t> random_stratum(const SystematicDesign& design, double w2, Rng& rng) {
  check_rates(w2, 1.0);
  const std::size_t N = design.population_size();
  std::vector<std::size_t> all(N);
  std::iota(all.begin(), all.end(), std::size_t{1});
  std::vector<std::size_t> out;
  std::sample(all.begin(), all.end(), std::back_inserter(out), stratum_size(w2, N), rng);
  return out;
}

std::vector<std::size_t> balanced_stratum(const SystematicDesign& design, double w2, double ell,
                                          Rng& rng) {
  check_rates(w2, ell);
  const std::size_t n = design.sample_size();
  const std::size_t k = design.interval();
  const std::size_t total = stratum_size(w2, design.population_size());

  // Per-sample counts: two adjacent levels, `upper` of the samples at the high one.
  std::size_t step = 1;
  const double rounded_ell = std::round(ell);
  if (ell == rounded_ell && ell >= 2) {
    const auto l = static_cast<std::size_t>(rounded_ell);
    const std::size_t low = (total / k) / l * l;
    const std::size_t rest = total - low * k;
    if (rest % l == 0 && rest / l <= k && low + l <= n) step = l;
  }
  std::size_t low = 0, upper = 0;
  if (step > 1) {
    low = (total / k) / step * step;
    upper = (total - low * k) / step;
  } else {
    low = total / k;
    upper = total - low * k;
  }

  std::vector<std::size_t> counts(k, low);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < upper; ++i) counts[order[i]] += step;

  std::vector<std::size_t> out;
  out.reserve(total);
  for (std::size_t s = 0; s < k; ++s) {
    auto units = design.sample_units(s + 1);
    std::sample(units.begin(), units.end(), std::back_inserter(out), counts[s], rng);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SampleRealization apply_nonresponse(const std::vector<std::size_t>& units,
                                    const FinitePopulation& pop, const NonResponseModel& nr,
                                    Rng& rng, std::size_t sample_index) {
  SampleRealization r;
  r.sample_index = sample_index;
  r.units = units;
  r.x_observed.reserve(units.size());

  std::bernoulli_distribution fails(nr.w2());
  for (std::size_t u : units) {
    r.x_observed.push_back(pop.x_at(u));
    const bool nonrespondent = nr.mode() == StratumMode::FixedStratum
                                   ? nr.in_stratum(u)
                                   : (nr.w2() > 0 && fails(rng));
    if (nonrespondent) {
      r.nonrespondents.push_back(u);
    } else {
      r.respondents.push_back(u);
      r.y_respondents.push_back(pop.y_at(u));
    }
  }

  const std::size_t h2 = nr.followup_size(r.nonrespondents.size());
  std::sample(r.nonrespondents.begin(), r.nonrespondents.end(), std::back_inserter(r.subsample),
              h2, rng);
  r.y_subsample.reserve(h2);
  for (std::size_t u : r.subsample) r.y_subsample.push_back(pop.y_at(u));
  return r;
}

}  // namespace syssamp
