#include "syssamp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "syssamp/error.hpp"

namespace syssamp {

void SimulationConfig::validate() const {
  if (replicates == 0) throw ConfigError("replicates must be at least 1");
  if (estimators.empty()) throw ConfigError("no estimators configured");
  std::set<std::string> labels;
  for (const auto& e : estimators) {
    if (!labels.insert(e.label).second) throw ConfigError("duplicate estimator label '" + e.label + "'");
  }
}

bool EstimatorSummary::valid() const noexcept {
  const std::size_t total = used + failures;
  return used > 0 &&
         static_cast<double>(failures) <= kMaxFailureRate * static_cast<double>(total);
}

const EstimatorSummary& SimulationReport::at(const std::string& label) const {
  for (const auto& e : estimators) {
    if (e.label == label) return e;
  }
  throw ConfigError("no estimator labelled '" + label + "' in the report");
}

namespace {

constexpr double kFailed = std::numeric_limits<double>::quiet_NaN();

struct Evaluator {
  double pop_mean_x;

  double operator()(const HHMeanSpec&, double ybar, double) const { return ybar; }
  double operator()(const RatioSpec&, double ybar, double xbar) const {
    return ratio_estimate(ybar, xbar, pop_mean_x);
  }
  double operator()(const ProductSpec&, double ybar, double xbar) const {
    return product_estimate(ybar, xbar, pop_mean_x);
  }
  double operator()(const FamilySpec& f, double ybar, double xbar) const {
    return family_estimate(ybar, xbar, pop_mean_x, f.params);
  }
};

void run_replicates(const FinitePopulation& pop, const SystematicDesign& design,
                    const SimulationConfig& cfg, std::size_t first, std::size_t last,
                    std::vector<double>& estimates) {
  const std::size_t m = cfg.estimators.size();
  const Evaluator eval{mean(pop.x())};
  for (std::size_t r = first; r < last; ++r) {
    Rng rng = replicate_stream(cfg.master_seed, r);
    const std::size_t start =
        cfg.exhaustive_start ? r % design.interval() + 1 : draw_sample(design, rng);
    const auto real = apply_nonresponse(design.sample_units(start), pop, cfg.nr, rng, start);
    const double ybar = hh_mean(real);
    const double xbar = aux_mean(real);
    for (std::size_t e = 0; e < m; ++e) {
      double value = kFailed;
      try {
        value = std::visit([&](const auto& spec) { return eval(spec, ybar, xbar); },
                           cfg.estimators[e].kind);
        if (!std::isfinite(value)) value = kFailed;
      } catch (const SingularityError&) {
      } catch (const DomainError&) {
      }
      estimates[r * m + e] = value;
    }
  }
}

}  // namespace

SimulationReport run_simulation(const FinitePopulation& pop, const SystematicDesign& design,
                                const SimulationConfig& cfg) {
  cfg.validate();
  if (pop.size() != design.population_size()) {
    throw DesignError("population size does not match the design");
  }
  for (const auto& e : cfg.estimators) {
    if (const auto* f = std::get_if<FamilySpec>(&e.kind)) f->params.validate(mean(pop.x()));
  }

  const std::size_t R = cfg.replicates;
  const std::size_t m = cfg.estimators.size();
  std::vector<double> estimates(R * m);

  std::size_t threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, R / 256));
  if (threads == 1) {
    run_replicates(pop, design, cfg, 0, R, estimates);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (R + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t first = t * chunk, last = std::min(R, first + chunk);
      pool.emplace_back([&, t, first, last] {
        try {
          run_replicates(pop, design, cfg, first, last, estimates);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SimulationReport report;
  report.replicates = R;
  report.seed = cfg.master_seed;
  report.population_fingerprint = pop.fingerprint();
  report.true_mean = mean(pop.y());

  // Reductions run in replicate order so the sums do not depend on threading.
  for (std::size_t e = 0; e < m; ++e) {
    EstimatorSummary s;
    s.label = cfg.estimators[e].label;
    double sum = 0;
    for (std::size_t r = 0; r < R; ++r) {
      const double v = estimates[r * m + e];
      if (std::isnan(v)) {
        ++s.failures;
      } else {
        ++s.used;
        sum += v;
      }
    }
    if (s.used > 0) {
      const auto used = static_cast<double>(s.used);
      s.empirical_mean = sum / used;
      s.empirical_bias = s.empirical_mean - report.true_mean;
      double sq_sum = 0, dev_ss = 0;
      for (std::size_t r = 0; r < R; ++r) {
        const double v = estimates[r * m + e];
        if (std::isnan(v)) continue;
        const double err = v - report.true_mean;
        sq_sum += err * err;
        dev_ss += (v - s.empirical_mean) * (v - s.empirical_mean);
      }
      s.empirical_mse = sq_sum / used;
      double sq_dev_ss = 0;
      for (std::size_t r = 0; r < R; ++r) {
        const double v = estimates[r * m + e];
        if (std::isnan(v)) continue;
        const double err = v - report.true_mean;
        sq_dev_ss += (err * err - s.empirical_mse) * (err * err - s.empirical_mse);
      }
      if (s.used > 1) {
        s.bias_standard_error = std::sqrt(dev_ss / (used - 1) / used);
        s.mse_standard_error = std::sqrt(sq_dev_ss / (used - 1) / used);
      }
    }
    report.estimators.push_back(std::move(s));
  }
  return report;
}

std::vector<Verdict> compare_to_theory(const SimulationReport& report,
                                       const std::vector<TheoryTarget>& targets,
                                       double tolerance_sigma, double first_order_rel_tol) {
  std::vector<Verdict> out;
  out.reserve(targets.size());
  for (const auto& t : targets) {
    const auto& s = report.at(t.label);
    Verdict v;
    v.label = t.label;
    v.reference = t.reference;
    v.theory = t.value;
    v.empirical = s.empirical_mse;
    v.standard_error = s.mse_standard_error;
    v.first_order = t.first_order;
    const double gap = s.empirical_mse - t.value;
    v.relative_gap = t.value != 0 ? gap / t.value : (gap == 0 ? 0 : std::copysign(INFINITY, gap));
    if (s.mse_standard_error > 0) {
      v.z = gap / s.mse_standard_error;
    } else if (gap != 0) {
      v.z = std::copysign(INFINITY, gap);
      v.infinite_z = true;
    }
    v.pass = std::abs(v.z) <= tolerance_sigma;
    if (!v.pass && t.first_order && std::abs(v.relative_gap) <= first_order_rel_tol) v.pass = true;
    v.invalid = !s.valid();
    if (v.invalid) v.pass = false;
    out.push_back(v);
  }
  return out;
}

double exact_hh_mse(const FinitePopulation& pop, const SystematicDesign& design,
                    const NonResponseModel& nr) {
  if (nr.mode() != StratumMode::FixedStratum) {
    throw ConfigError("exact design MSE needs a fixed non-response stratum");
  }
  if (pop.size() != design.population_size()) {
    throw DesignError("population size does not match the design");
  }
  const double true_mean = mean(pop.y());
  const auto n = static_cast<double>(design.sample_size());
  double total = 0;
  for (const auto& units : enumerate_samples(design)) {
    std::vector<double> y, y_nr;
    for (std::size_t u : units) {
      y.push_back(pop.y_at(u));
      if (nr.in_stratum(u)) y_nr.push_back(pop.y_at(u));
    }
    // Given the sample, ybar* is unbiased for the full-sample mean.
    const double dev = mean(y) - true_mean;
    double followup = 0;
    if (y_nr.size() >= 2) {
      const auto n2 = static_cast<double>(y_nr.size());
      const auto h2 = static_cast<double>(nr.followup_size(y_nr.size()));
      followup = (n2 / n) * (n2 / n) * (1 / h2 - 1 / n2) * mean_square(y_nr);
    }
    total += dev * dev + followup;
  }
  return total / static_cast<double>(design.interval());
}

}  // namespace syssamp
