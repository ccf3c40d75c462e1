#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace syssamp::cli {

enum class Format { Text, Csv, Json };

Format parse_format(const std::string& name);

/// Provenance block written with every result.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;  ///< resolved arguments, replayable
  std::string input_path;
  std::string input_hash;  ///< FNV-1a 64 of the input bytes, hex
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;
  std::string version;
  std::string timestamp;

  nlohmann::ordered_json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
  /// "# key: value" lines for text and CSV output.
  void write_comment_block(std::ostream& out) const;
};

/// FNV-1a 64 of the file contents as 16 hex digits.
std::string file_hash(const std::string& path);
std::string hex64(std::uint64_t v);

/// --timestamp value, else SOURCE_DATE_EPOCH, else the current UTC time.
std::string resolve_timestamp(const std::string& flag);

struct InputOptions {
  std::string path;
  std::string y_column = "y";
  std::string x_column = "x";
  std::string sort_by = "none";  ///< none | x | y
  std::string delimiter = "auto";
  std::string stratum_column;  ///< 0/1 indicator of non-response stratum units
};

struct ParamsOptions {
  InputOptions input;
  std::size_t n = 0;
  std::optional<double> s2y2_factor;
  std::string expect_fingerprint;
};

struct TheoryTableOptions {
  InputOptions input;
  std::string preset;  ///< "murthy" or empty
  std::optional<double> intraclass;
  bool fit_intraclass = false;
  // explicit moments
  std::optional<std::size_t> N;
  std::size_t n = 0;
  std::optional<double> mean_y, mean_x, s2_y, s2_x, s2_y2, rho, rho_y, rho_x;
  std::optional<double> s2y2_factor;
  std::vector<double> w2s{0.1, 0.2, 0.3, 0.4};
  std::vector<double> ells{2.0, 2.5, 3.0, 3.5};
  double a = 1, b = 0, g = 1;
};

struct SimulateOptions {
  InputOptions input;
  std::size_t n = 0;
  std::size_t replicates = 10000;
  std::uint64_t seed = 1;
  double w2 = 0;
  double ell = 1;
  std::string stratum_mode = "fixed";  ///< fixed | bernoulli
  std::string stratum = "balanced";    ///< balanced | random (ignored with a stratum column)
  std::optional<std::uint64_t> stratum_seed;
  std::optional<double> s2y2_factor;
  std::vector<std::string> estimators{"hh", "ratio", "product", "family"};
  std::string alpha = "optimum";  ///< "optimum" or a number
  double a = 1, b = 0, g = 1;
  bool exhaustive = false;
  std::size_t threads = 0;
  double tolerance = 3.0;
  double first_order_tolerance = 0.10;
};

struct GenerateOptions {
  std::string kind = "linear";  ///< linear | murthy-standin
  std::string output;           ///< empty: standard output
  std::size_t N = 240;
  double mean_x = 10, s2_x = 4, mean_y = 100, s2_y = 400, rho = 0.9;
  std::uint64_t seed = 1;
  bool sorted = false;
  // optional 0/1 non-response column laid out as a balanced stratum
  std::optional<double> stratum_w2;
  double stratum_ell = 2;
  std::size_t stratum_n = 0;
};

struct CommonOptions {
  Format format = Format::Text;
  std::string timestamp;
  std::vector<std::string> argv;
  std::ostream* err = nullptr;
  /// Receives the manifest of the run when set.
  RunManifest* manifest_sink = nullptr;
};

int cmd_params(const ParamsOptions& o, const CommonOptions& c, std::ostream& out);
int cmd_theory_table(const TheoryTableOptions& o, const CommonOptions& c, std::ostream& out);
int cmd_simulate(const SimulateOptions& o, const CommonOptions& c, std::ostream& out);
int cmd_generate(const GenerateOptions& o, const CommonOptions& c, std::ostream& out);

}  // namespace syssamp::cli
