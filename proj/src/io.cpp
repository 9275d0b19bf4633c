#include "sllab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "sllab/errors.hpp"

namespace sllab::io {

namespace {

std::vector<double> parse_row(const std::string& line, int line_no) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(field, &used);
    } catch (const std::exception&) {
      throw IoError("line " + std::to_string(line_no) + ": not a number: '" + field + "'");
    }
    while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
    if (used != field.size())
      throw IoError("line " + std::to_string(line_no) + ": trailing text in '" + field + "'");
    if (!std::isfinite(value))
      throw IoError("line " + std::to_string(line_no) + ": non-finite value");
    row.push_back(value);
  }
  return row;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

std::string format_double(double value) {
  if (value == 0) return "0";  // also folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

SymMatrix<double> read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    rows.push_back(parse_row(line, line_no));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw IoError("matrix file is empty");
  if (n > kMaxDim) throw IoError("matrix larger than " + std::to_string(kMaxDim));
  Matrix<double> a(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw IoError("matrix is not square: row " + std::to_string(i + 1) + " has " +
                    std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) a(i, j) = rows[i][j];
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(a(i, j) - a(j, i)) > kSymmetryTolerance)
        throw IoError("matrix is not symmetric at (" + std::to_string(i + 1) + ", " +
                      std::to_string(j + 1) + ")");
  return SymMatrix<double>::from_upper(a);
}

void write_matrix_csv(std::ostream& out, const SymMatrix<double>& x) {
  for (int i = 0; i < x.dim(); ++i) {
    for (int j = 0; j < x.dim(); ++j) out << (j ? "," : "") << format_double(x(i, j));
    out << '\n';
  }
}

void write_grid_csv(std::ostream& out, const GridValues& values) {
  out << values.rows() << '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c)
      out << (c ? "," : "") << format_double(values(r, c));
    out << '\n';
  }
}

GridValues read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || blank(line)) throw IoError("grid file is empty");
  const auto header = parse_row(line, 1);
  if (header.size() != 1 || header[0] < 1 || header[0] != std::floor(header[0]))
    throw IoError("grid header must be a single positive integer");
  const int m = static_cast<int>(header[0]);
  GridValues values(m, m);
  int r = 0;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (r == m) throw IoError("grid has more than " + std::to_string(m) + " rows");
    const auto row = parse_row(line, line_no);
    if (static_cast<int>(row.size()) != m)
      throw IoError("line " + std::to_string(line_no) + ": expected " + std::to_string(m) +
                    " values");
    for (int c = 0; c < m; ++c) values(r, c) = row[c];
    ++r;
  }
  if (r != m) throw IoError("grid has " + std::to_string(r) + " rows, expected " + std::to_string(m));
  return values;
}

void write_grid_file(const std::string& path, const GridValues& values) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_grid_csv(out, values);
  if (!out) throw IoError("failed writing '" + path + "'");
}

nlohmann::json to_json(const VerificationReport& report) {
  auto number = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  nlohmann::json j;
  j["n"] = report.n;
  j["k"] = report.k;
  j["p"] = report.p;
  j["grid"] = report.grid;
  j["points_checked"] = report.points_checked;
  j["min_margin"] = number(report.min_margin);
  j["probe_min_margin"] = number(report.probe_min_margin);
  j["probe_trials"] = report.probe_trials;
  j["probe_touching"] = report.probe_touching;
  j["probe_witnessed"] = report.probe_witnessed;
  j["passed"] = report.passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks)
    j["checks"].push_back(
        {{"name", c.name}, {"count", c.count}, {"worst", number(c.worst)}, {"passed", c.passed}});
  j["violations"] = nlohmann::json::array();
  for (const auto& v : report.violations) {
    std::vector<double> x(v.x.data(), v.x.data() + v.x.size());
    j["violations"].push_back({{"x", x}, {"margin", number(v.margin)}, {"what", v.what}});
  }
  return j;
}

}  // namespace sllab::io
