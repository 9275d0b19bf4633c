#include "sllab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>

#include "sllab/certificate.hpp"
#include "sllab/errors.hpp"
#include "sllab/family.hpp"
#include "sllab/fdsolve.hpp"
#include "sllab/io.hpp"
#include "sllab/slop.hpp"
#include "sllab/viscosity.hpp"

namespace sllab::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

struct VerifyConfig {
  int n = 0;
  int k = 0;
  double p = Family<double>::kDefaultExponent;
  int grid = 41;
  std::uint64_t seed = 0;
  std::size_t trials = 64;
  double radius = 1e-3;
  std::string out;

  void validate() const {
    require(n >= 1 && n <= 3, "--n must be in [1, 3]");
    require(k >= 0 && k <= n, "--k must be in [0, n]");
    require(p > 1 && p < 2, "--p must lie strictly between 1 and 2");
    require(grid >= 2, "--grid must be >= 2");
    require(radius > 0 && radius < 1, "--radius must be in (0, 1)");
  }
};

struct FigureConfig {
  int grid = 33;
  std::string out = ".";

  void validate() const { require(grid >= 17, "--grid must be >= 17"); }
};

struct DeltaConfig {
  int n = 2;
  double theta = 0;
  double tau = 1;
  std::vector<double> caps{1e1, 1e2, 1e3, 1e4};
  int resolution = 2000;

  void validate() const {
    require(n >= 1 && n <= 3, "--n must be in [1, 3]");
    require(std::abs(theta) < Phase<double>::bound(n), "--theta must lie in (-n pi/2, n pi/2)");
    require(tau > 0, "--tau must be > 0");
    require(!caps.empty(), "--caps needs at least one value");
    for (double c : caps) require(c > 0 && std::isfinite(c), "--caps values must be > 0");
    require(resolution >= 2, "--resolution must be >= 2");
  }
};

struct SolveConfig {
  std::string problem;
  int m = 33;
  double tol = 1e-8;
  int max_iters = 500000;
  int log_every = 1;
  std::string out;

  void validate() const {
    require(m >= 5 && m % 2 == 1, "--m must be odd and >= 5");
    require(tol > 0, "--tol must be > 0");
    require(max_iters >= 0, "--max-iters must be >= 0");
    require(log_every >= 1, "--log-every must be >= 1");
    require(!out.empty(), "--out is required");
  }

  Problem2D make_problem() const {
    if (problem == "radial32") return radial_problem();
    if (problem == "affine") return affine_problem(0.25, 0.5, -0.75);
    const auto colon = problem.find(':');
    require(colon != std::string::npos,
            "--problem must be radial32, affine, constant:<theta> or counterexample:<k>");
    const std::string kind = problem.substr(0, colon);
    const std::string arg = problem.substr(colon + 1);
    try {
      std::size_t used = 0;
      if (kind == "constant") {
        const double theta = std::stod(arg, &used);
        require(used == arg.size() && std::abs(theta) < std::numbers::pi,
                "constant:<theta> needs |theta| < pi");
        // A = tan(theta/2) I has F(A) = theta.
        const double a = std::tan(theta / 2);
        return quadratic_problem(Eigen::Matrix2d{{a, 0}, {0, a}});
      }
      if (kind == "counterexample") {
        const int k = std::stoi(arg, &used);
        require(used == arg.size() && k >= 0 && k <= 2, "counterexample:<k> needs k in [0, 2]");
        return counterexample_problem(k);
      }
    } catch (const std::logic_error&) {
      throw UsageError("cannot parse --problem argument '" + arg + "'");
    }
    throw UsageError("unknown problem '" + kind + "'");
  }
};

int cmd_verify(const VerifyConfig& cfg, std::ostream& out, std::ostream& err) {
  const Family<double> fam(cfg.n, cfg.k, cfg.p);
  SweepOptions options;
  options.grid = cfg.grid;
  options.probe.seed = cfg.seed;
  options.probe.trials = cfg.trials;
  options.probe.radius = cfg.radius;
  const VerificationReport report = verify_all(fam, options);
  const std::string text = io::to_json(report).dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out);
    if (!file) throw IoError("cannot open '" + cfg.out + "' for writing");
    file << text;
  }
  if (!report.passed()) {
    err << "verify: " << report.violations.size() << " violation(s)\n";
    return kFailure;
  }
  return kSuccess;
}

// Panels of the n = 2, k = 1 case over [-1, 1]^2; axis values use the
// continuous extensions.
int cmd_figure(const FigureConfig& cfg, std::ostream& out) {
  namespace fs = std::filesystem;
  const Family<double> fam(2, 1);
  const int g = cfg.grid;
  GridValues v(g, g), u(g, g), diff(g, g), f(g, g);
  for (int r = 0; r < g; ++r)
    for (int c = 0; c < g; ++c) {
      Point<double> x(2);
      x << static_cast<double>(2 * c - (g - 1)) / (g - 1),
          static_cast<double>(2 * r - (g - 1)) / (g - 1);
      v(r, c) = subsolution(fam, x);
      u(r, c) = supersolution(fam, x);
      diff(r, c) = difference(fam, x);
      f(r, c) = phase(fam, x).value();
    }
  const fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw IoError("cannot create directory '" + cfg.out + "'");
  const std::pair<const char*, const GridValues*> panels[] = {
      {"vfig.csv", &v}, {"ufig.csv", &u}, {"vsubufig.csv", &diff}, {"phasefig.csv", &f}};
  for (const auto& [name, values] : panels) {
    io::write_grid_file((dir / name).string(), *values);
    out << (dir / name).string() << '\n';
  }
  return kSuccess;
}

int cmd_delta(const DeltaConfig& cfg, std::ostream& out, std::ostream& err) {
  out << "cap,theta,tau,delta\n";
  int status = kSuccess;
  for (double cap : cfg.caps) {
    out << io::format_double(cap) << ',' << io::format_double(cfg.theta) << ','
        << io::format_double(cfg.tau) << ',';
    try {
      const auto r = delta(DeltaQuery{cfg.n, cfg.theta, cfg.tau, cap, cfg.resolution});
      out << io::format_double(r.delta) << '\n';
    } catch (const InfeasibleQuery& e) {
      out << "infeasible\n";
      err << "delta: cap " << cap << ": " << e.what() << '\n';
      status = kFailure;
    }
  }
  return status;
}

int cmd_solve(const SolveConfig& cfg, const Problem2D& prob, std::ostream& out,
              std::ostream& err) {
  SolveOptions options;
  options.tol = cfg.tol;
  options.max_iters = cfg.max_iters;
  out << "iter,residual\n";
  options.log = [&](int it, double res) {
    if (it % cfg.log_every == 0) out << it << ',' << io::format_double(res) << '\n';
  };
  const SolveResult result = solve(prob, cfg.m, StencilSet::wide(), options);
  io::write_grid_file(cfg.out, result.grid.values());
  err << "solve: " << prob.name << " m=" << cfg.m << " iterations=" << result.iterations
      << " residual=" << io::format_double(result.residual)
      << (result.converged ? " converged" : " not converged");
  if (prob.exact) err << " max_error=" << io::format_double(max_error(result.grid, prob));
  err << '\n';
  return kSuccess;
}

int cmd_phase(const std::string& path, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  const auto x = io::read_matrix_csv(in);
  const auto lambda = eigenvalues(x);
  out << "eigenvalues";
  for (int i = 0; i < lambda.size(); ++i) out << ',' << io::format_double(lambda[i]);
  out << "\nF," << io::format_double(special_lagrangian(lambda).value()) << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counterexamples and numerics for the special Lagrangian potential equation",
               "sllab"};
  app.require_subcommand(1);

  VerifyConfig verify_cfg;
  auto* verify = app.add_subcommand("verify", "check the sub/supersolution family on a grid");
  verify->add_option("--n", verify_cfg.n, "dimension (1-3)")->required();
  verify->add_option("--k", verify_cfg.k, "family index (0-n)")->required();
  verify->add_option("--p", verify_cfg.p, "exponent in (1, 2)")->capture_default_str();
  verify->add_option("--grid", verify_cfg.grid, "nodes per side")->capture_default_str();
  verify->add_option("--seed", verify_cfg.seed, "probe seed")->capture_default_str();
  verify->add_option("--trials", verify_cfg.trials, "probe quadratics per point")
      ->capture_default_str();
  verify->add_option("--radius", verify_cfg.radius, "touching radius")->capture_default_str();
  verify->add_option("--out", verify_cfg.out, "report file (default stdout)");

  FigureConfig figure_cfg;
  auto* figure = app.add_subcommand("figure", "write the four n=2, k=1 panels as CSV");
  figure->add_option("--grid", figure_cfg.grid, "nodes per side")->capture_default_str();
  figure->add_option("--out", figure_cfg.out, "output directory")->capture_default_str();

  DeltaConfig delta_cfg;
  auto* delta_cmd = app.add_subcommand("delta", "comparison margin delta(theta, tau) per cap");
  delta_cmd->add_option("--n", delta_cfg.n, "dimension (1-3)")->capture_default_str();
  delta_cmd->add_option("--theta", delta_cfg.theta, "phase value")->required();
  delta_cmd->add_option("--tau", delta_cfg.tau, "shift")->capture_default_str();
  delta_cmd->add_option("--caps", delta_cfg.caps, "eigenvalue caps")
      ->delimiter(',')
      ->capture_default_str();
  delta_cmd->add_option("--resolution", delta_cfg.resolution, "scan nodes per axis")
      ->capture_default_str();

  SolveConfig solve_cfg;
  auto* solve_cmd = app.add_subcommand("solve", "finite-difference solve on [-1,1]^2");
  solve_cmd
      ->add_option("--problem", solve_cfg.problem,
                   "radial32 | affine | constant:<theta> | counterexample:<k>")
      ->required();
  solve_cmd->add_option("--m", solve_cfg.m, "nodes per side (odd)")->capture_default_str();
  solve_cmd->add_option("--tol", solve_cfg.tol, "residual tolerance")->capture_default_str();
  solve_cmd->add_option("--max-iters", solve_cfg.max_iters, "iteration cap")
      ->capture_default_str();
  solve_cmd->add_option("--log-every", solve_cfg.log_every, "log stride")->capture_default_str();
  solve_cmd->add_option("--out", solve_cfg.out, "grid CSV path")->required();

  std::string matrix_path;
  auto* phase_cmd = app.add_subcommand("phase", "eigenvalues and F of a CSV matrix");
  phase_cmd->add_option("--matrix", matrix_path, "symmetric matrix CSV")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (verify->parsed()) {
      verify_cfg.validate();
      return cmd_verify(verify_cfg, out, err);
    }
    if (figure->parsed()) {
      figure_cfg.validate();
      return cmd_figure(figure_cfg, out);
    }
    if (delta_cmd->parsed()) {
      delta_cfg.validate();
      return cmd_delta(delta_cfg, out, err);
    }
    if (solve_cmd->parsed()) {
      solve_cfg.validate();
      const Problem2D prob = solve_cfg.make_problem();
      return cmd_solve(solve_cfg, prob, out, err);
    }
    if (phase_cmd->parsed()) return cmd_phase(matrix_path, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace sllab::cli
