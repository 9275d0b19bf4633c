#pragma once

// Plain-text formats: CSV matrices and grids, JSON verification reports.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sllab/fdsolve.hpp"
#include "sllab/symmat.hpp"
#include "sllab/viscosity.hpp"

namespace sllab::io {

inline constexpr double kSymmetryTolerance = 1e-12;

/// Shortest text that round-trips the double (printf %.17g).
std::string format_double(double value);

/// Full square matrix, one row per line, comma separated. Rejects ragged or
/// non-square input, non-numeric fields, and |a_ij - a_ji| > 1e-12.
SymMatrix<double> read_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const SymMatrix<double>& x);

/// First line holds m, then m rows of m comma-separated values, row-major.
void write_grid_csv(std::ostream& out, const GridValues& values);
GridValues read_grid_csv(std::istream& in);

void write_grid_file(const std::string& path, const GridValues& values);

/// {n, k, p, grid, points_checked, min_margin, violations: [...], ...}
nlohmann::json to_json(const VerificationReport& report);

}  // namespace sllab::io
