#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace radreact {

//! Columnar numeric table with a commented header block. Values are written
//! with 17 significant digits so a read-back reproduces every double
//! bit-exactly.
struct CsvTable {
  std::vector<std::string> comments;  //!< lines after "# " in the header
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t col_index(const std::string& name) const;  // throws if missing
  std::vector<double> column(const std::string& name) const;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

//! Natural cubic spline through (t, y), evaluated at t_new. Queries outside
//! [t.front(), t.back()] throw std::out_of_range.
std::vector<double> cubic_resample(std::span<const double> t,
                                   std::span<const double> y,
                                   std::span<const double> t_new);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

//! Least-squares straight line through (x, y).
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

//! Slope of log|y| vs log|x| (scaling exponent). All entries must be
//! nonzero.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

//! FNV-1a hash, used to stamp trajectory files with their scenario.
std::uint64_t fnv1a(const std::string& text);

} // namespace radreact
