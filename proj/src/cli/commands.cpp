#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "syssamp/cli.hpp"
#include "syssamp/design.hpp"
#include "syssamp/error.hpp"
#include "syssamp/montecarlo.hpp"
#include "syssamp/population.hpp"
#include "syssamp/presets.hpp"
#include "syssamp/synthetic.hpp"
#include "syssamp/theory.hpp"

namespace syssamp::cli {

namespace {

using ojson = nlohmann::ordered_json;

// Stream of the stratum layout; kept apart from replicate streams.
constexpr std::uint64_t kStratumStream = ~std::uint64_t{0};

struct LoadedInput {
  FinitePopulation pop;
  std::vector<std::size_t> stratum;  ///< 1-based, after rearrangement
  bool has_stratum = false;
  std::string hash;
};

std::optional<char> delimiter_of(const std::string& name) {
  if (name == "auto") return std::nullopt;
  if (name == "comma" || name == ",") return ',';
  if (name == "tab" || name == "\\t" || name == "\t") return '\t';
  throw ConfigError("unknown delimiter '" + name + "' (auto, comma, tab)");
}

LoadedInput load_input(const InputOptions& o) {
  std::ifstream in(o.path);
  if (!in) throw ConfigError("cannot open '" + o.path + "'");
  const auto table = read_delimited(in, delimiter_of(o.delimiter));
  FinitePopulation pop = load_population(table, o.y_column, o.x_column);

  std::vector<double> indicator;
  if (!o.stratum_column.empty()) {
    indicator = table.numeric_column(o.stratum_column);
    for (std::size_t r = 0; r < indicator.size(); ++r) {
      if (indicator[r] != 0 && indicator[r] != 1) {
        throw ParseError(r + 1, o.stratum_column,
                         "row " + std::to_string(r + 1) + ", column '" + o.stratum_column +
                             "': stratum indicator must be 0 or 1");
      }
    }
  }

  std::vector<std::size_t> order(pop.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (o.sort_by == "x") {
    order = ascending_order(pop.x());
  } else if (o.sort_by == "y") {
    order = ascending_order(pop.y());
  } else if (o.sort_by != "none") {
    throw ConfigError("unknown --sort-by '" + o.sort_by + "' (none, x, y)");
  }
  LoadedInput r{pop.permuted(order), {}, !indicator.empty(), file_hash(o.path)};
  for (std::size_t i = 0; i < order.size() && r.has_stratum; ++i) {
    if (indicator[order[i]] == 1) r.stratum.push_back(i + 1);
  }
  return r;
}

RunManifest make_manifest(const std::string& command, const CommonOptions& c) {
  RunManifest m;
  m.command = command;
  m.argv = c.argv;
  m.version = kVersion;
  m.timestamp = resolve_timestamp(c.timestamp);
  return m;
}

void add_input(RunManifest& m, const InputOptions& o, const LoadedInput& in) {
  m.input_path = o.path;
  m.input_hash = in.hash;
  m.parameters["y_column"] = o.y_column;
  m.parameters["x_column"] = o.x_column;
  m.parameters["sort_by"] = o.sort_by;
  if (!o.stratum_column.empty()) m.parameters["stratum_column"] = o.stratum_column;
}

void publish(const RunManifest& m, const CommonOptions& c) {
  if (c.manifest_sink) *c.manifest_sink = m;
}

std::string num(double v) { return fmt::format("{:.10g}", v); }
std::string full(double v) { return fmt::format("{:.17g}", v); }

// Single-level JSON value for a double, null when not finite.
ojson jnum(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

}  // namespace

// ---------------------------------------------------------------- params

int cmd_params(const ParamsOptions& o, const CommonOptions& c, std::ostream& out) {
  const auto in = load_input(o.input);
  const auto design = SystematicDesign::for_sample_size(in.pop.size(), o.n);

  PopulationMoments m;
  std::string s2y2_source = "none";
  if (o.s2y2_factor) {
    m = compute_moments_scaled(in.pop, design, *o.s2y2_factor);
    s2y2_source = "factor " + num(*o.s2y2_factor);
  } else if (in.has_stratum) {
    m = compute_moments(in.pop, design, in.stratum);
    s2y2_source = "stratum (" + std::to_string(in.stratum.size()) + " units)";
  } else {
    m = compute_moments_scaled(in.pop, design, 0.0);
  }
  const bool have_s2y2 = s2y2_source != "none";
  const std::string fingerprint = hex64(in.pop.fingerprint());

  auto manifest = make_manifest("params", c);
  add_input(manifest, o.input, in);
  manifest.parameters["n"] = o.n;
  if (o.s2y2_factor) manifest.parameters["s2y2_factor"] = *o.s2y2_factor;

  std::vector<std::pair<std::string, double>> rows{
      {"N", static_cast<double>(design.population_size())},
      {"n", static_cast<double>(design.sample_size())},
      {"k", static_cast<double>(design.interval())},
      {"mean_y", m.mean_y},
      {"mean_x", m.mean_x},
      {"s2_y", m.s2_y},
      {"s2_x", m.s2_x},
      {"cv_y", m.cv_y},
      {"cv_x", m.cv_x},
      {"rho", m.rho},
      {"rho_y", m.rho_y},
      {"rho_x", m.rho_x},
      {"s2_y2", have_s2y2 ? m.s2_y2 : NAN},
  };

  publish(manifest, c);
  if (c.format == Format::Json) {
    ojson doc;
    doc["manifest"] = manifest.to_json();
    ojson p;
    for (const auto& [k, v] : rows) p[k] = jnum(v);
    p["s2_y2_source"] = s2y2_source;
    p["fingerprint"] = fingerprint;
    doc["parameters"] = p;
    out << doc.dump(2) << '\n';
  } else if (c.format == Format::Csv) {
    manifest.write_comment_block(out);
    out << "parameter,value\n";
    for (const auto& [k, v] : rows) out << k << ',' << (std::isfinite(v) ? full(v) : "") << '\n';
    out << "fingerprint," << fingerprint << '\n';
  } else {
    manifest.write_comment_block(out);
    for (const auto& [k, v] : rows) {
      fmt::print(out, "{:<12} {}\n", k, std::isfinite(v) ? num(v) : "n/a");
    }
    fmt::print(out, "{:<12} {}\n", "s2_y2 from", s2y2_source);
    fmt::print(out, "{:<12} {}\n", "fingerprint", fingerprint);
  }

  if (!o.expect_fingerprint.empty() && o.expect_fingerprint != fingerprint) {
    *c.err << "fingerprint mismatch: expected " << o.expect_fingerprint << ", got "
              << fingerprint << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- theory-table

namespace {

SamplingContext explicit_context(const TheoryTableOptions& o) {
  auto need = [](const std::optional<double>& v, const char* flag) {
    if (!v) throw ConfigError(std::string("explicit moments need ") + flag);
    return *v;
  };
  if (!o.N) throw ConfigError("explicit moments need --N");
  SamplingContext ctx;
  ctx.N = *o.N;
  ctx.n = o.n;
  auto& m = ctx.moments;
  m.mean_y = need(o.mean_y, "--mean-y");
  m.mean_x = need(o.mean_x, "--mean-x");
  m.s2_y = need(o.s2_y, "--s2y");
  m.s2_x = need(o.s2_x, "--s2x");
  m.rho = need(o.rho, "--rho");
  m.rho_y = need(o.rho_y, "--rho-y");
  m.rho_x = need(o.rho_x, "--rho-x");
  if (o.s2_y2) {
    m.s2_y2 = *o.s2_y2;
  } else {
    m.s2_y2 = need(o.s2y2_factor, "--s2y2 or --s2y2-factor") * m.s2_y;
  }
  m.update_cv();
  return ctx;
}

}  // namespace

int cmd_theory_table(const TheoryTableOptions& o, const CommonOptions& c, std::ostream& out) {
  if (o.g == 0) throw ConfigError("g must be nonzero for an optimum alpha");
  auto manifest = make_manifest("theory-table", c);

  SamplingContext ctx;
  std::optional<double> fitted;
  if (!o.preset.empty()) {
    if (o.preset != "murthy") throw ConfigError("unknown preset '" + o.preset + "' (murthy)");
    double ic = 0;
    if (o.intraclass) {
      ic = *o.intraclass;
    } else {
      std::vector<PreCell> cells;
      for (std::size_t i = 0; i < kMurthyPreTable.size(); ++i) {
        if (i != kMurthyMisprintCell) cells.push_back(kMurthyPreTable[i]);
      }
      ic = fit_intraclass(murthy_context(0.8), cells);
      fitted = ic;
    }
    ctx = murthy_context(ic);
    manifest.parameters["preset"] = o.preset;
    manifest.parameters["n"] = ctx.n;
    manifest.parameters["intraclass"] = ic;
    manifest.parameters["intraclass_source"] = fitted ? "fit to published PRE table" : "flag";
  } else if (!o.input.path.empty()) {
    const auto in = load_input(o.input);
    const auto design = SystematicDesign::for_sample_size(in.pop.size(), o.n);
    if (o.s2y2_factor) {
      ctx.moments = compute_moments_scaled(in.pop, design, *o.s2y2_factor);
    } else if (in.has_stratum) {
      ctx.moments = compute_moments(in.pop, design, in.stratum);
    } else {
      throw ConfigError("S_y2^2 needs --s2y2-factor or --stratum-column");
    }
    ctx.N = design.population_size();
    ctx.n = design.sample_size();
    add_input(manifest, o.input, in);
    manifest.parameters["n"] = ctx.n;
    if (o.s2y2_factor) manifest.parameters["s2y2_factor"] = *o.s2y2_factor;
  } else {
    ctx = explicit_context(o);
    const auto& m = ctx.moments;
    manifest.parameters["moments"] = {{"N", ctx.N},         {"n", ctx.n},
                                      {"mean_y", m.mean_y}, {"mean_x", m.mean_x},
                                      {"s2_y", m.s2_y},     {"s2_x", m.s2_x},
                                      {"rho", m.rho},       {"rho_y", m.rho_y},
                                      {"rho_x", m.rho_x},   {"s2_y2", m.s2_y2}};
  }
  manifest.parameters["w2"] = o.w2s;
  manifest.parameters["ell"] = o.ells;
  manifest.parameters["family"] = {{"a", o.a}, {"b", o.b}, {"g", o.g}};

  struct Row {
    double w2, ell, var_y, mse_min, pre, alpha;
  };
  std::vector<Row> rows;
  const FamilyParams family{o.a, o.b, 0.0, o.g};
  for (double w2 : o.w2s) {
    for (double ell : o.ells) {
      SamplingContext cell = ctx;
      cell.w2 = w2;
      cell.ell = ell;
      const auto consts = derived_constants(cell, family);
      rows.push_back({w2, ell, var_mean_y(cell), family_mse_min(cell, consts),
                      pre_optimum(cell, consts), optimum_alpha(consts, o.g)});
    }
  }

  publish(manifest, c);
  if (c.format == Format::Json) {
    ojson doc;
    doc["manifest"] = manifest.to_json();
    if (fitted) doc["fitted_intraclass"] = *fitted;
    ojson arr = ojson::array();
    for (const auto& r : rows) {
      arr.push_back({{"w2", r.w2},
                     {"ell", r.ell},
                     {"var_mean_y", r.var_y},
                     {"mse_min", r.mse_min},
                     {"pre", r.pre},
                     {"alpha_opt", r.alpha}});
    }
    doc["rows"] = arr;
    out << doc.dump(2) << '\n';
  } else if (c.format == Format::Csv) {
    manifest.write_comment_block(out);
    out << "w2,ell,var_mean_y,mse_min,pre,alpha_opt\n";
    for (const auto& r : rows) {
      out << full(r.w2) << ',' << full(r.ell) << ',' << full(r.var_y) << ',' << full(r.mse_min)
          << ',' << full(r.pre) << ',' << full(r.alpha) << '\n';
    }
  } else {
    manifest.write_comment_block(out);
    if (fitted) fmt::print(out, "fitted common intraclass correlation: {:.6f}\n", *fitted);
    fmt::print(out, "{:>6} {:>6} {:>14} {:>14} {:>9} {:>10}\n", "w2", "L", "V(ybar*)",
               "MSE_min(t*)", "PRE", "alpha_opt");
    for (const auto& r : rows) {
      fmt::print(out, "{:>6.3f} {:>6.3f} {:>14.4f} {:>14.4f} {:>9.2f} {:>10.6f}\n", r.w2, r.ell,
                 r.var_y, r.mse_min, r.pre, r.alpha);
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const SimulateOptions& o, const CommonOptions& c, std::ostream& out) {
  const auto in = load_input(o.input);
  const auto design = SystematicDesign::for_sample_size(in.pop.size(), o.n);
  const std::size_t N = design.population_size();
  if (o.exhaustive && o.replicates % design.interval() != 0) {
    throw ConfigError("--exhaustive needs a replicate count that is a multiple of k = " +
                      std::to_string(design.interval()));
  }

  auto manifest = make_manifest("simulate", c);
  add_input(manifest, o.input, in);
  manifest.seed = o.seed;

  // Non-response model and the S_y2^2 that goes with it.
  double w2 = o.w2;
  NonResponseModel nr = NonResponseModel::complete_response();
  std::vector<std::size_t> stratum;
  std::string stratum_desc;
  if (o.stratum_mode == "fixed") {
    if (in.has_stratum) {
      stratum = in.stratum;
      w2 = static_cast<double>(stratum.size()) / static_cast<double>(N);
      stratum_desc = "column " + o.input.stratum_column;
    } else {
      Rng rng = replicate_stream(o.stratum_seed.value_or(o.seed), kStratumStream);
      if (o.stratum == "balanced") {
        stratum = balanced_stratum(design, w2, o.ell, rng);
      } else if (o.stratum == "random") {
        stratum = random_stratum(design, w2, rng);
      } else {
        throw ConfigError("unknown --stratum '" + o.stratum + "' (balanced, random)");
      }
      stratum_desc = o.stratum;
    }
    nr = NonResponseModel::fixed(w2, o.ell, stratum, N);
  } else if (o.stratum_mode == "bernoulli") {
    nr = NonResponseModel::bernoulli(w2, o.ell);
    stratum_desc = "bernoulli";
  } else {
    throw ConfigError("unknown --stratum-mode '" + o.stratum_mode + "' (fixed, bernoulli)");
  }

  SamplingContext ctx;
  ctx.N = N;
  ctx.n = design.sample_size();
  ctx.w2 = w2;
  ctx.ell = o.ell;
  if (o.s2y2_factor) {
    ctx.moments = compute_moments_scaled(in.pop, design, *o.s2y2_factor);
  } else if (nr.mode() == StratumMode::FixedStratum && stratum.size() >= 2) {
    ctx.moments = compute_moments(in.pop, design, stratum);
  } else {
    // Bernoulli non-respondents are a random part of the sample.
    ctx.moments = compute_moments_scaled(in.pop, design,
                                         nr.mode() == StratumMode::FixedStratum ? 0.0 : 1.0);
  }

  const FamilyParams base{o.a, o.b, 0.0, o.g};
  const auto consts = derived_constants(ctx, base);
  FamilyParams family = base;
  const bool optimum = o.alpha == "optimum";
  if (optimum) {
    family.alpha = optimum_alpha(consts, o.g);
  } else {
    try {
      std::size_t pos = 0;
      family.alpha = std::stod(o.alpha, &pos);
      if (pos != o.alpha.size()) throw std::invalid_argument(o.alpha);
    } catch (const std::logic_error&) {
      throw ConfigError("--alpha must be 'optimum' or a number, got '" + o.alpha + "'");
    }
  }

  SimulationConfig cfg;
  cfg.replicates = o.replicates;
  cfg.master_seed = o.seed;
  cfg.nr = nr;
  cfg.exhaustive_start = o.exhaustive;
  cfg.threads = o.threads;
  std::vector<TheoryTarget> targets;
  for (const auto& name : o.estimators) {
    if (name == "hh") {
      cfg.estimators.push_back({"hh", HHMeanSpec{}});
      targets.push_back({"hh", "V(ybar*)", var_mean_y(ctx), false});
      if (nr.mode() == StratumMode::FixedStratum) {
        targets.push_back({"hh", "exact design MSE", exact_hh_mse(in.pop, design, nr), false});
      }
    } else if (name == "ratio") {
      cfg.estimators.push_back({"ratio", RatioSpec{}});
      targets.push_back({"ratio", "MSE ratio", classical_mse(ClassicalKind::Ratio, ctx, consts), true});
    } else if (name == "product") {
      cfg.estimators.push_back({"product", ProductSpec{}});
      targets.push_back(
          {"product", "MSE product", classical_mse(ClassicalKind::Product, ctx, consts), true});
    } else if (name == "family") {
      cfg.estimators.push_back({"family", FamilySpec{family}});
      targets.push_back({"family", optimum ? "min MSE t*" : "MSE t*",
                         optimum ? family_mse_min(ctx, consts) : family_mse(family, ctx, consts),
                         true});
    } else {
      throw ConfigError("unknown estimator '" + name + "' (hh, ratio, product, family)");
    }
  }

  manifest.parameters["n"] = o.n;
  manifest.parameters["replicates"] = o.replicates;
  manifest.parameters["w2"] = w2;
  manifest.parameters["ell"] = o.ell;
  manifest.parameters["stratum_mode"] = o.stratum_mode;
  manifest.parameters["stratum"] = stratum_desc;
  if (o.stratum_seed) manifest.parameters["stratum_seed"] = *o.stratum_seed;
  if (o.s2y2_factor) manifest.parameters["s2y2_factor"] = *o.s2y2_factor;
  manifest.parameters["estimators"] = o.estimators;
  manifest.parameters["family"] = {{"a", o.a}, {"b", o.b}, {"g", o.g}, {"alpha", family.alpha}};
  manifest.parameters["alpha_policy"] = optimum ? "optimum" : "explicit";
  manifest.parameters["exhaustive"] = o.exhaustive;
  manifest.parameters["tolerance_sigma"] = o.tolerance;
  manifest.parameters["first_order_tolerance"] = o.first_order_tolerance;

  const auto report = run_simulation(in.pop, design, cfg);
  const auto verdicts = compare_to_theory(report, targets, o.tolerance, o.first_order_tolerance);
  bool all_pass = true;
  for (const auto& v : verdicts) all_pass = all_pass && v.pass;
  const char* status = all_pass ? "PASS" : "FAIL";

  auto verdict_word = [](const Verdict& v) {
    return v.invalid ? "INVALID" : (v.pass ? "PASS" : "FAIL");
  };

  publish(manifest, c);
  if (c.format == Format::Json) {
    ojson doc;
    doc["manifest"] = manifest.to_json();
    doc["population"] = {{"fingerprint", hex64(report.population_fingerprint)},
                         {"true_mean", report.true_mean},
                         {"stratum_size", stratum.size()}};
    ojson est = ojson::array();
    for (const auto& s : report.estimators) {
      est.push_back({{"label", s.label},
                     {"used", s.used},
                     {"failures", s.failures},
                     {"valid", s.valid()},
                     {"empirical_mean", jnum(s.empirical_mean)},
                     {"empirical_bias", jnum(s.empirical_bias)},
                     {"bias_standard_error", jnum(s.bias_standard_error)},
                     {"empirical_mse", jnum(s.empirical_mse)},
                     {"mse_standard_error", jnum(s.mse_standard_error)}});
    }
    doc["estimators"] = est;
    ojson checks = ojson::array();
    for (const auto& v : verdicts) {
      checks.push_back({{"label", v.label},
                        {"reference", v.reference},
                        {"theory", jnum(v.theory)},
                        {"empirical", jnum(v.empirical)},
                        {"z", v.infinite_z ? ojson(v.z > 0 ? "inf" : "-inf") : jnum(v.z)},
                        {"relative_gap", jnum(v.relative_gap)},
                        {"first_order", v.first_order},
                        {"verdict", verdict_word(v)}});
    }
    doc["checks"] = checks;
    doc["status"] = status;
    out << doc.dump(2) << '\n';
  } else if (c.format == Format::Csv) {
    manifest.write_comment_block(out);
    out << "label,reference,theory,empirical_mse,mse_se,z,relative_gap,empirical_bias,bias_se,"
           "failures,verdict\n";
    for (const auto& v : verdicts) {
      const auto& s = report.at(v.label);
      out << v.label << ',' << v.reference << ',' << full(v.theory) << ',' << full(v.empirical)
          << ',' << full(v.standard_error) << ',' << full(v.z) << ',' << full(v.relative_gap)
          << ',' << full(s.empirical_bias) << ',' << full(s.bias_standard_error) << ','
          << s.failures << ',' << verdict_word(v) << '\n';
    }
  } else {
    manifest.write_comment_block(out);
    fmt::print(out, "population fingerprint {}  true mean {}  stratum units {}\n",
               hex64(report.population_fingerprint), num(report.true_mean), stratum.size());
    fmt::print(out, "{:<8} {:>8} {:>7} {:>14} {:>12} {:>10} {:>14} {:>12}\n", "estimator",
               "used", "failed", "mean", "bias", "bias_se", "mse", "mse_se");
    for (const auto& s : report.estimators) {
      fmt::print(out, "{:<8} {:>8} {:>7} {:>14.6f} {:>12.6f} {:>10.6f} {:>14.6f} {:>12.6f}\n",
                 s.label, s.used, s.failures, s.empirical_mean, s.empirical_bias,
                 s.bias_standard_error, s.empirical_mse, s.mse_standard_error);
    }
    fmt::print(out, "\n{:<8} {:<18} {:>14} {:>14} {:>9} {:>9}  {}\n", "check", "reference",
               "theory", "empirical", "z", "rel_gap", "verdict");
    for (const auto& v : verdicts) {
      fmt::print(out, "{:<8} {:<18} {:>14.6f} {:>14.6f} {:>9.3f} {:>8.3f}%  {}\n", v.label,
                 v.reference, v.theory, v.empirical, v.z, 100 * v.relative_gap, verdict_word(v));
    }
    fmt::print(out, "status: {}\n", status);
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- generate

int cmd_generate(const GenerateOptions& o, const CommonOptions& c, std::ostream& out) {
  LinearPopulationSpec spec;
  std::string y_name = "y", x_name = "x";
  if (o.kind == "linear") {
    spec = {o.N, o.mean_x, o.s2_x, o.mean_y, o.s2_y, o.rho, o.seed, o.sorted};
  } else if (o.kind == "murthy-standin") {
    spec = murthy_standin_spec(o.seed);
    y_name = "volume";
    x_name = "length";
  } else {
    throw ConfigError("unknown --kind '" + o.kind + "' (linear, murthy-standin)");
  }
  const auto pop = linear_population(spec);

  std::vector<char> in_stratum(pop.size(), 0);
  if (o.stratum_w2) {
    const auto design = SystematicDesign::for_sample_size(pop.size(), o.stratum_n);
    Rng rng = replicate_stream(o.seed, kStratumStream);
    for (std::size_t u : balanced_stratum(design, *o.stratum_w2, o.stratum_ell, rng)) {
      in_stratum[u - 1] = 1;
    }
  }

  auto manifest = make_manifest("generate", c);
  manifest.seed = o.seed;
  manifest.parameters["kind"] = o.kind;
  manifest.parameters["N"] = spec.size;
  manifest.parameters["mean_x"] = spec.mean_x;
  manifest.parameters["s2_x"] = spec.s2_x;
  manifest.parameters["mean_y"] = spec.mean_y;
  manifest.parameters["s2_y"] = spec.s2_y;
  manifest.parameters["rho"] = spec.rho;
  manifest.parameters["sorted"] = spec.sort_by_x;
  if (o.stratum_w2) {
    manifest.parameters["stratum"] = {
        {"w2", *o.stratum_w2}, {"ell", o.stratum_ell}, {"n", o.stratum_n}};
  }

  std::ofstream file;
  std::ostream* dst = &out;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) throw ConfigError("cannot write '" + o.output + "'");
    dst = &file;
  }
  publish(manifest, c);
  manifest.write_comment_block(*dst);
  *dst << y_name << ',' << x_name << (o.stratum_w2 ? ",nonresponse" : "") << '\n';
  for (std::size_t i = 0; i < pop.size(); ++i) {
    *dst << full(pop.y()[i]) << ',' << full(pop.x()[i]);
    if (o.stratum_w2) *dst << ',' << int(in_stratum[i]);
    *dst << '\n';
  }
  if (!o.output.empty()) {
    fmt::print(out, "wrote {} units to {} (fingerprint {})\n", pop.size(), o.output,
               hex64(pop.fingerprint()));
  }
  return kExitOk;
}

}  // namespace syssamp::cli
