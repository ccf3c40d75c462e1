#include <algorithm>
#include <fstream>
#include <sstream>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "syssamp/cli.hpp"
#include "syssamp/error.hpp"

namespace syssamp::cli {

namespace {

void add_input_options(CLI::App* cmd, InputOptions& in, bool required) {
  auto* opt = cmd->add_option("-i,--input", in.path, "Delimited text file with a header row");
  if (required) opt->required();
  cmd->add_option("--y", in.y_column, "Study variable column")->capture_default_str();
  cmd->add_option("--x", in.x_column, "Auxiliary variable column")->capture_default_str();
  cmd->add_option("--sort-by", in.sort_by, "Rearrange units before sampling: none, x, y")
      ->capture_default_str();
  cmd->add_option("--delimiter", in.delimiter, "auto, comma or tab")->capture_default_str();
  cmd->add_option("--stratum-column", in.stratum_column,
                  "0/1 column marking the non-response stratum");
}

// Arguments minus the options that do not affect results.
std::vector<std::string> replayable(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--timestamp" || a == "--manifest" || a == "--threads") {
      ++i;
      continue;
    }
    if (a.rfind("--timestamp=", 0) == 0 || a.rfind("--manifest=", 0) == 0 ||
        a.rfind("--threads=", 0) == 0) {
      continue;
    }
    out.push_back(a);
  }
  return out;
}

int replay(const std::string& manifest_path, std::ostream& out, std::ostream& err) {
  std::ifstream in(manifest_path);
  if (!in) throw ConfigError("cannot open manifest '" + manifest_path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("manifest is not JSON: ") + e.what());
  }
  const auto m = RunManifest::from_json(j);
  if (!m.input_path.empty()) {
    const auto now = file_hash(m.input_path);
    if (now != m.input_hash) {
      throw ConfigError("input '" + m.input_path + "' changed since the run (fnv1a64 " + now +
                        ", manifest " + m.input_hash + ")");
    }
  }
  if (m.argv.empty() || m.argv.front() == "replay") throw ConfigError("manifest has no command");
  auto args = m.argv;
  args.push_back("--timestamp");
  args.push_back(m.timestamp);
  return run(args, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Systematic sampling under non-response: population parameters, "
               "first-order theory tables and design-based simulation"};
  app.name("syssamp");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonOptions common;
  common.err = &err;
  std::string format = "text";
  std::string manifest_out;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "text, csv or json")->capture_default_str();
    cmd->add_option("--timestamp", common.timestamp,
                    "Manifest timestamp (default: SOURCE_DATE_EPOCH or now)");
    cmd->add_option("--manifest", manifest_out, "Also write the run manifest as JSON here");
  };

  ParamsOptions params;
  auto* p = app.add_subcommand("params", "Population parameters for a systematic design");
  add_input_options(p, params.input, true);
  p->add_option("-n,--n", params.n, "Sample size (must divide N)")->required();
  p->add_option("--s2y2-factor", params.s2y2_factor, "Set S_y2^2 = factor * S_y^2");
  p->add_option("--expect-fingerprint", params.expect_fingerprint,
                "Fail unless the ingested data has this fingerprint");
  add_common(p);

  TheoryTableOptions table;
  auto* t = app.add_subcommand("theory-table", "PRE of the optimum family estimator over (w2, L)");
  add_input_options(t, table.input, false);
  t->add_option("--preset", table.preset, "Published moments: murthy");
  t->add_option("--intraclass", table.intraclass, "Common rho_y = rho_x for the preset");
  t->add_option("-n,--n", table.n, "Sample size");
  t->add_option("--N", table.N, "Population size (explicit moments)");
  t->add_option("--mean-y", table.mean_y);
  t->add_option("--mean-x", table.mean_x);
  t->add_option("--s2y", table.s2_y);
  t->add_option("--s2x", table.s2_x);
  t->add_option("--s2y2", table.s2_y2);
  t->add_option("--rho", table.rho);
  t->add_option("--rho-y", table.rho_y);
  t->add_option("--rho-x", table.rho_x);
  t->add_option("--s2y2-factor", table.s2y2_factor, "Set S_y2^2 = factor * S_y^2");
  t->add_option("--w2", table.w2s, "Non-response rates")->delimiter(',')->capture_default_str();
  t->add_option("--ell", table.ells, "Sub-sampling ratios L")->delimiter(',')->capture_default_str();
  t->add_option("--a", table.a)->capture_default_str();
  t->add_option("--b", table.b)->capture_default_str();
  t->add_option("--g", table.g)->capture_default_str();
  add_common(t);

  SimulateOptions sim;
  auto* s = app.add_subcommand("simulate", "Design-based Monte Carlo against the theory");
  add_input_options(s, sim.input, true);
  s->add_option("-n,--n", sim.n, "Sample size (must divide N)")->required();
  s->add_option("-r,--replicates", sim.replicates)->capture_default_str();
  s->add_option("--seed", sim.seed)->capture_default_str();
  s->add_option("--w2", sim.w2, "Non-response rate")->capture_default_str();
  s->add_option("--ell", sim.ell, "Sub-sampling ratio L = n2/h2")->capture_default_str();
  s->add_option("--stratum-mode", sim.stratum_mode, "fixed or bernoulli")->capture_default_str();
  s->add_option("--stratum", sim.stratum, "Fixed stratum layout: balanced or random")
      ->capture_default_str();
  s->add_option("--stratum-seed", sim.stratum_seed, "Seed of the stratum layout (default: --seed)");
  s->add_option("--s2y2-factor", sim.s2y2_factor, "Theory uses S_y2^2 = factor * S_y^2");
  s->add_option("--estimators", sim.estimators, "hh, ratio, product, family")
      ->delimiter(',')
      ->capture_default_str();
  s->add_option("--alpha", sim.alpha, "'optimum' or a number")->capture_default_str();
  s->add_option("--a", sim.a)->capture_default_str();
  s->add_option("--b", sim.b)->capture_default_str();
  s->add_option("--g", sim.g)->capture_default_str();
  s->add_flag("--exhaustive", sim.exhaustive, "Cycle through all k starts");
  s->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  s->add_option("--tolerance", sim.tolerance, "PASS threshold in MC standard errors")
      ->capture_default_str();
  s->add_option("--first-order-tolerance", sim.first_order_tolerance,
                "Relative slack for first-order targets")
      ->capture_default_str();
  add_common(s);

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Write a synthetic population");
  g->add_option("--kind", gen.kind, "linear or murthy-standin")->capture_default_str();
  g->add_option("-o,--output", gen.output, "Output file (default: standard output)");
  g->add_option("--N", gen.N)->capture_default_str();
  g->add_option("--mean-x", gen.mean_x)->capture_default_str();
  g->add_option("--s2x", gen.s2_x)->capture_default_str();
  g->add_option("--mean-y", gen.mean_y)->capture_default_str();
  g->add_option("--s2y", gen.s2_y)->capture_default_str();
  g->add_option("--rho", gen.rho)->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_flag("--sorted", gen.sorted, "Arrange units by ascending x");
  g->add_option("--stratum-w2", gen.stratum_w2, "Add a balanced non-response column");
  g->add_option("--stratum-ell", gen.stratum_ell)->capture_default_str();
  g->add_option("--stratum-n", gen.stratum_n, "Sample size the stratum is balanced for");
  add_common(g);

  std::string manifest_in;
  auto* r = app.add_subcommand("replay", "Re-run a command from its JSON manifest");
  r->add_option("manifest", manifest_in, "Manifest file or JSON output")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand help arrives as CallForHelp too; everything else is usage.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  common.argv = replayable(args);
  try {
    common.format = parse_format(format);
    int code = kExitUsage;
    RunManifest sink;
    common.manifest_sink = &sink;
    std::ostringstream buffer;
    std::ostream& dst = manifest_out.empty() ? out : buffer;
    if (*p) code = cmd_params(params, common, dst);
    if (*t) code = cmd_theory_table(table, common, dst);
    if (*s) code = cmd_simulate(sim, common, dst);
    if (*g) code = cmd_generate(gen, common, dst);
    if (*r) return replay(manifest_in, out, err);

    if (!manifest_out.empty()) {
      out << buffer.str();
      std::ofstream mf(manifest_out);
      if (!mf) throw ConfigError("cannot write manifest '" + manifest_out + "'");
      mf << sink.to_json().dump(2) << '\n';
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace syssamp::cli
