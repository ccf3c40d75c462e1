#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace syssamp {

class SystematicDesign;

/// Paired study (y) and auxiliary (x) values for N units in a fixed order.
/// Order matters: systematic samples are defined by position.
class FinitePopulation {
 public:
  /// Throws DomainError on length mismatch, N < 2 or non-finite values.
  FinitePopulation(std::vector<double> y, std::vector<double> x);

  std::size_t size() const noexcept { return y_.size(); }
  const std::vector<double>& y() const noexcept { return y_; }
  const std::vector<double>& x() const noexcept { return x_; }
  /// 1-based accessors.
  double y_at(std::size_t unit) const { return y_.at(unit - 1); }
  double x_at(std::size_t unit) const { return x_.at(unit - 1); }

  /// Population with units rearranged: unit i of the result is unit order[i]
  /// (0-based) of this one.
  FinitePopulation permuted(std::span<const std::size_t> order) const;

  /// 64-bit FNV-1a over the IEEE-754 bytes of y then x.
  std::uint64_t fingerprint() const noexcept;

 private:
  std::vector<double> y_;
  std::vector<double> x_;
};

/// Header plus raw string cells of a delimited text file.
struct DelimitedTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Throws ConfigError when the column is absent.
  std::size_t column_index(const std::string& name) const;
  /// Parses every cell of the column as a finite real; ParseError names the
  /// 1-based data row and the column.
  std::vector<double> numeric_column(const std::string& name) const;
};

/// Reads comma- or tab-separated text with a header row. When `delimiter` is
/// not given it is inferred from the header (tab if present, else comma).
/// Blank lines and lines starting with '#' are ignored.
DelimitedTable read_delimited(std::istream& in, std::optional<char> delimiter = std::nullopt);

FinitePopulation load_population(std::istream& in, const std::string& y_column,
                                 const std::string& x_column,
                                 std::optional<char> delimiter = std::nullopt);
FinitePopulation load_population(const DelimitedTable& table, const std::string& y_column,
                                 const std::string& x_column);

/// Stable ascending order of `values` (0-based indices).
std::vector<std::size_t> ascending_order(std::span<const double> values);

/// Same population rearranged in ascending order of x. Ties keep file order.
FinitePopulation sorted_by_x(const FinitePopulation& pop);

double mean(std::span<const double> values);
/// Mean square with divisor (count - 1).
double mean_square(std::span<const double> values);
/// Pearson correlation; throws DegenerateInputError if either side is constant.
double correlation(std::span<const double> a, std::span<const double> b);

/// Intraclass correlation of `values` within the systematic samples of
/// `design`: the sum of within-sample cross products over ordered pairs
/// divided by (n - 1) times the total sum of squares about the mean.
/// Lies in [-1/(n-1), 1]. Throws DesignError if values.size() != N and
/// DegenerateInputError if all values are equal.
double intraclass_correlation(std::span<const double> values, const SystematicDesign& design);

struct PopulationMoments {
  double mean_y = 0;
  double mean_x = 0;
  double s2_y = 0;   ///< divisor N-1
  double s2_x = 0;
  double s2_y2 = 0;  ///< mean square of y over the non-response stratum
  double cv_y = 0;
  double cv_x = 0;
  double rho = 0;    ///< correlation of y and x
  double rho_y = 0;  ///< intraclass correlation of y
  double rho_x = 0;  ///< intraclass correlation of x

  /// Fills cv_y and cv_x from the means and mean squares; throws
  /// DomainError when a mean is zero.
  void update_cv();
};

/// All population parameters, with s2_y2 taken over `nr_stratum` (1-based
/// units, at least two of them).
PopulationMoments compute_moments(const FinitePopulation& pop, const SystematicDesign& design,
                                  std::span<const std::size_t> nr_stratum);

/// All population parameters, with s2_y2 = factor * s2_y in place of a stratum.
PopulationMoments compute_moments_scaled(const FinitePopulation& pop,
                                         const SystematicDesign& design,
                                         double s2_y2_factor);

}  // namespace syssamp
