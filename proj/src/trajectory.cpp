#include "radreact/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace radreact {

std::size_t CsvTable::col_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("CsvTable: no column named " + name);
}

std::vector<double> CsvTable::column(const std::string& name) const {
  const std::size_t idx = col_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[idx]);
  return out;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream os(path);
  if (!os) {
    throw std::runtime_error("write_csv: cannot open " + path.string());
  }
  for (const auto& c : table.comments) os << "# " << c << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
  }
  os << "\n";
  char buf[64];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      os << buf << (i + 1 < row.size() ? "," : "");
    }
    os << "\n";
  }
  if (!os) {
    throw std::runtime_error("write_csv: write failed for " + path.string());
  }
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) {
    throw std::runtime_error("read_csv: cannot open " + path.string());
  }
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string c = line.substr(1);
      if (!c.empty() && c.front() == ' ') c.erase(c.begin());
      table.comments.push_back(c);
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (!have_header) {
      while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
      have_header = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(table.columns.size());
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != table.columns.size()) {
      throw std::runtime_error("read_csv: ragged row in " + path.string());
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<double> cubic_resample(std::span<const double> t,
                                   std::span<const double> y,
                                   std::span<const double> t_new) {
  const std::size_t n = t.size();
  if (n != y.size() || n < 2) {
    throw std::invalid_argument("cubic_resample: need matching arrays, n >= 2");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(t[i] > t[i - 1])) {
      throw std::invalid_argument("cubic_resample: abscissae must increase");
    }
  }

  // second derivatives of the natural spline (Thomas algorithm)
  std::vector<double> m(n, 0.0);
  if (n > 2) {
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = t[i] - t[i - 1];
      const double h1 = t[i + 1] - t[i];
      a[i] = h0;
      b[i] = 2.0 * (h0 + h1);
      c[i] = h1;
      d[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
      const double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      d[i] -= w * d[i - 1];
    }
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(n) - 2; i >= 1; --i) {
      const auto j = static_cast<std::size_t>(i);
      const double next = (j + 2 < n) ? m[j + 1] : 0.0;
      m[j] = (d[j] - c[j] * next) / b[j];
    }
  }

  std::vector<double> out;
  out.reserve(t_new.size());
  const double slack = 1e-9 * (std::abs(t.front()) + std::abs(t.back()) +
                               (t.back() - t.front()));
  for (double tq : t_new) {
    if (tq < t.front() - slack || tq > t.back() + slack) {
      throw std::out_of_range("cubic_resample: query outside the data range");
    }
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (t[mid] <= tq) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double h = t[hi] - t[lo];
    const double A = (t[hi] - tq) / h;
    const double B = (tq - t[lo]) / h;
    out.push_back(A * y[lo] + B * y[hi] +
                  ((A * A * A - A) * m[lo] + (B * B * B - B) * m[hi]) *
                      (h * h) / 6.0);
  }
  return out;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need matching arrays, n >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) {
    throw std::invalid_argument("fit_line: degenerate abscissae");
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  lx.reserve(x.size());
  ly.reserve(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0 || y[i] == 0.0) {
      throw std::invalid_argument("fit_loglog_slope: zero entry");
    }
    lx.push_back(std::log(std::abs(x[i])));
    ly.push_back(std::log(std::abs(y[i])));
  }
  return fit_line(lx, ly).slope;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

} // namespace radreact
