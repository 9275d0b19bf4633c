#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sllab/errors.hpp"
#include "sllab/io.hpp"

using namespace sllab;

namespace {

SymMatrix<double> parse(const std::string& text) {
  std::istringstream in(text);
  return io::read_matrix_csv(in);
}

}  // namespace

TEST_CASE("format_double round-trips") {
  CHECK(io::format_double(0.0) == "0");
  CHECK(io::format_double(-0.0) == "0");
  CHECK(io::format_double(1.5) == "1.5");
  for (double v : {0.1, -1.0 / 3, 1e-300, 6.02214076e23, 0.6435011087932844}) {
    CHECK(std::stod(io::format_double(v)) == v);
  }
}

TEST_CASE("matrix CSV") {
  const auto x = parse("1, 2\n2, -0.5\n\n");
  CHECK(x.dim() == 2);
  CHECK(x(0, 1) == 2);
  CHECK(x(1, 1) == -0.5);

  std::ostringstream out;
  io::write_matrix_csv(out, x);
  CHECK(out.str() == "1,2\n2,-0.5\n");
  const auto back = parse(out.str());
  CHECK((back.dense() - x.dense()).norm() == 0);

  CHECK_THROWS_AS(parse(""), IoError);
  CHECK_THROWS_AS(parse("1,2\n3\n"), IoError);
  CHECK_THROWS_AS(parse("1,2,3\n4,5,6\n"), IoError);
  CHECK_THROWS_AS(parse("1,x\nx,1\n"), IoError);
  CHECK_THROWS_AS(parse("1,2abc\n2,1\n"), IoError);
  CHECK_THROWS_AS(parse("1,inf\ninf,1\n"), IoError);
  CHECK_THROWS_AS(parse("1,2\n2.1,1\n"), IoError);
  CHECK_NOTHROW(parse("1,2\n2.0000000000001,1\n"));
}

TEST_CASE("grid CSV") {
  GridValues g(3, 3);
  g << 1, 2, 3, 4, 5, 6, 7, 8, 0.1;
  std::ostringstream out;
  io::write_grid_csv(out, g);
  CHECK(out.str().rfind("3\n1,2,3\n", 0) == 0);
  std::istringstream in(out.str());
  CHECK(io::read_grid_csv(in) == g);

  auto read = [](const std::string& text) {
    std::istringstream s(text);
    return io::read_grid_csv(s);
  };
  CHECK_THROWS_AS(read(""), IoError);
  CHECK_THROWS_AS(read("2.5\n"), IoError);
  CHECK_THROWS_AS(read("2\n1,2\n"), IoError);
  CHECK_THROWS_AS(read("2\n1,2\n3\n"), IoError);
  CHECK_THROWS_AS(read("1\n1\n2\n"), IoError);
  CHECK_THROWS_AS(io::write_grid_file("/nonexistent-dir/grid.csv", g), IoError);
}

TEST_CASE("report JSON") {
  VerificationReport r;
  r.n = 2;
  r.k = 1;
  r.grid = 9;
  r.points_checked = 81;
  r.min_margin = 0.25;
  r.checks.push_back({"phase_at_origin", 1, 0.0, true});
  Point<double> x(2);
  x << 0.5, -0.5;
  r.violations.push_back({x, -0.1, "example"});
  const auto j = io::to_json(r);
  CHECK(j["n"] == 2);
  CHECK(j["k"] == 1);
  CHECK(j["grid"] == 9);
  CHECK(j["points_checked"] == 81);
  CHECK(j["min_margin"] == 0.25);
  CHECK(j["probe_min_margin"].is_null());
  CHECK(j["passed"] == false);
  CHECK(j["checks"][0]["name"] == "phase_at_origin");
  CHECK(j["violations"].size() == 1);
  CHECK(j["violations"][0]["x"][1] == -0.5);
}
