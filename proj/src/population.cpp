#include "syssamp/population.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <numeric>
#include <string_view>

#include "syssamp/design.hpp"
#include "syssamp/error.hpp"

namespace syssamp {

namespace {

void fnv1a(std::uint64_t& h, const std::vector<double>& values) {
  for (double v : values) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  }
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Splits one record; double quotes protect delimiters, "" is a literal quote.
std::vector<std::string> split_record(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.emplace_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.emplace_back(trim(cur));
  return out;
}

double parse_real(std::string_view cell, std::size_t row, const std::string& column) {
  double v = 0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ParseError(row, column,
                     "row " + std::to_string(row) + ", column '" + column +
                         "': cannot read '" + std::string(cell) + "' as a finite number");
  }
  return v;
}

}  // namespace

FinitePopulation::FinitePopulation(std::vector<double> y, std::vector<double> x)
    : y_(std::move(y)), x_(std::move(x)) {
  if (y_.size() != x_.size()) {
    throw DomainError("population: y has " + std::to_string(y_.size()) + " values, x has " +
                      std::to_string(x_.size()));
  }
  if (y_.size() < 2) throw DomainError("population: at least 2 units are required");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(y_.begin(), y_.end(), finite) || !std::all_of(x_.begin(), x_.end(), finite)) {
    throw DomainError("population: all values must be finite");
  }
}

FinitePopulation FinitePopulation::permuted(std::span<const std::size_t> order) const {
  if (order.size() != size()) throw DomainError("permutation size differs from population size");
  std::vector<char> seen(size(), 0);
  std::vector<double> y(size()), x(size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t j = order[i];
    if (j >= size() || seen[j]) throw DomainError("not a permutation");
    seen[j] = 1;
    y[i] = y_[j];
    x[i] = x_[j];
  }
  return FinitePopulation(std::move(y), std::move(x));
}

std::uint64_t FinitePopulation::fingerprint() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  fnv1a(h, y_);
  fnv1a(h, x_);
  return h;
}

std::size_t DelimitedTable::column_index(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    std::string known;
    for (const auto& c : columns) known += (known.empty() ? "" : ", ") + c;
    throw ConfigError("no column named '" + name + "' (columns: " + known + ")");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> DelimitedTable::numeric_column(const std::string& name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) out.push_back(parse_real(rows[r][c], r + 1, name));
  return out;
}

DelimitedTable read_delimited(std::istream& in, std::optional<char> delimiter) {
  DelimitedTable table;
  std::string line;
  // Blank lines and '#' comment lines (run manifests) are skipped.
  auto skip = [](std::string_view l) { return trim(l).empty() || trim(l).front() == '#'; };
  bool first = true;
  while (std::getline(in, line)) {
    if (first && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    first = false;
    if (!skip(line)) break;
  }
  if (skip(line)) throw ConfigError("input has no header row");

  const char delim = delimiter.value_or(line.find('\t') != std::string::npos ? '\t' : ',');
  table.columns = split_record(line, delim);

  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (skip(line)) continue;
    ++row;
    auto cells = split_record(line, delim);
    if (cells.size() != table.columns.size()) {
      throw ParseError(row, "", "row " + std::to_string(row) + ": expected " +
                                    std::to_string(table.columns.size()) + " fields, found " +
                                    std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

FinitePopulation load_population(const DelimitedTable& table, const std::string& y_column,
                                 const std::string& x_column) {
  // Cells are parsed row by row so the first bad row is reported.
  const std::size_t yc = table.column_index(y_column);
  const std::size_t xc = table.column_index(x_column);
  std::vector<double> y, x;
  y.reserve(table.rows.size());
  x.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    y.push_back(parse_real(table.rows[r][yc], r + 1, y_column));
    x.push_back(parse_real(table.rows[r][xc], r + 1, x_column));
  }
  if (y.size() < 2) {
    throw DomainError("population needs at least 2 rows, found " + std::to_string(y.size()));
  }
  return FinitePopulation(std::move(y), std::move(x));
}

FinitePopulation load_population(std::istream& in, const std::string& y_column,
                                 const std::string& x_column, std::optional<char> delimiter) {
  return load_population(read_delimited(in, delimiter), y_column, x_column);
}

std::vector<std::size_t> ascending_order(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

FinitePopulation sorted_by_x(const FinitePopulation& pop) {
  return pop.permuted(ascending_order(pop.x()));
}

double mean(std::span<const double> values) {
  if (values.empty()) throw DomainError("mean of no values");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double mean_square(std::span<const double> values) {
  if (values.size() < 2) throw DomainError("mean square needs at least 2 values");
  const double m = mean(values);
  double ss = 0;
  for (double v : values) ss += (v - m) * (v - m);
  return ss / static_cast<double>(values.size() - 1);
}

double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw DomainError("correlation: bad lengths");
  const double ma = mean(a), mb = mean(b);
  double saa = 0, sbb = 0, sab = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (saa == 0 || sbb == 0) throw DegenerateInputError("correlation of a constant variable");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double intraclass_correlation(std::span<const double> values, const SystematicDesign& design) {
  const std::size_t N = design.population_size();
  const std::size_t n = design.sample_size();
  const std::size_t k = design.interval();
  if (values.size() != N) {
    throw DesignError("intraclass correlation: " + std::to_string(values.size()) +
                      " values for a design with N = " + std::to_string(N));
  }
  const double m = mean(values);

  // Sum over ordered pairs j != l of d_j d_l equals (sum d)^2 - sum d^2 per sample.
  double total_ss = 0;
  double cross = 0;
  for (std::size_t start = 0; start < k; ++start) {
    double s = 0, ss = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = values[start + j * k] - m;
      s += d;
      ss += d * d;
    }
    total_ss += ss;
    cross += s * s - ss;
  }
  if (total_ss == 0) throw DegenerateInputError("intraclass correlation of constant values");

  const double nm1 = static_cast<double>(n - 1);
  const double rho = cross / (nm1 * total_ss);
  // Rounding can push a boundary value slightly outside its range.
  return std::clamp(rho, -1.0 / nm1, 1.0);
}

void PopulationMoments::update_cv() {
  if (mean_y == 0 || mean_x == 0) {
    throw DomainError("coefficient of variation undefined for a zero population mean");
  }
  cv_y = std::sqrt(s2_y) / std::abs(mean_y);
  cv_x = std::sqrt(s2_x) / std::abs(mean_x);
}

namespace {

PopulationMoments base_moments(const FinitePopulation& pop, const SystematicDesign& design) {
  if (pop.size() != design.population_size()) {
    throw DesignError("population has " + std::to_string(pop.size()) +
                      " units but the design expects " +
                      std::to_string(design.population_size()));
  }
  PopulationMoments m;
  m.mean_y = mean(pop.y());
  m.mean_x = mean(pop.x());
  m.s2_y = mean_square(pop.y());
  m.s2_x = mean_square(pop.x());
  m.rho = correlation(pop.y(), pop.x());
  m.rho_y = intraclass_correlation(pop.y(), design);
  m.rho_x = intraclass_correlation(pop.x(), design);
  m.update_cv();
  return m;
}

}  // namespace

PopulationMoments compute_moments(const FinitePopulation& pop, const SystematicDesign& design,
                                  std::span<const std::size_t> nr_stratum) {
  if (nr_stratum.size() < 2) {
    throw DomainError("non-response stratum needs at least 2 units for S_y2^2, has " +
                      std::to_string(nr_stratum.size()));
  }
  PopulationMoments m = base_moments(pop, design);
  std::vector<double> ys;
  ys.reserve(nr_stratum.size());
  for (std::size_t u : nr_stratum) {
    if (u < 1 || u > pop.size()) {
      throw ConfigError("stratum unit " + std::to_string(u) + " outside 1.." +
                        std::to_string(pop.size()));
    }
    ys.push_back(pop.y_at(u));
  }
  m.s2_y2 = mean_square(ys);
  return m;
}

PopulationMoments compute_moments_scaled(const FinitePopulation& pop,
                                         const SystematicDesign& design, double s2_y2_factor) {
  if (!(s2_y2_factor >= 0) || !std::isfinite(s2_y2_factor)) {
    throw DomainError("S_y2^2 factor must be a finite nonnegative number");
  }
  PopulationMoments m = base_moments(pop, design);
  m.s2_y2 = s2_y2_factor * m.s2_y;
  return m;
}

}  // namespace syssamp
