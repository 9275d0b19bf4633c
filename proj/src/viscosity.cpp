#include "sllab/viscosity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Cholesky>

#include "sllab/errors.hpp"
#include "sllab/parallel.hpp"
#include "sllab/slop.hpp"

namespace sllab {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// Gap tolerance when comparing a quadratic with the target on the sample set.
constexpr double kTouchTolerance = 1e-13;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// How v_k behaves along coordinate i at x.
enum class Coord {
  power,   // i > k, x_i != 0: |t|^p / 2, smooth
  linear,  // i <= k, x_i != 0: -|t|, smooth with zero curvature
  kink,    // i <= k, x_i == 0: concave corner, any slope in [-1, 1]
  cusp,    // i > k, x_i == 0: infinite curvature, no touching from above
};

Coord classify(const Family<double>& fam, const Point<double>& x, int i) {
  const bool head = i < fam.index();
  if (x[i] == 0) return head ? Coord::kink : Coord::cusp;
  return head ? Coord::linear : Coord::power;
}

double pow10(double e) { return std::exp(e * std::numbers::ln10); }

double sign(double t) { return t < 0 ? -1.0 : 1.0; }

class CandidateGenerator {
 public:
  CandidateGenerator(const Family<double>& fam, const Point<double>& x, std::uint64_t seed)
      : fam_(fam), x_(x), rng_(seed), kinds_(fam.dim()) {
    const int n = fam.dim();
    value_ = subsolution(fam, x);
    base_gradient_ = Vector<double>::Zero(n);
    base_curvature_ = Vector<double>::Zero(n);
    for (int i = 0; i < n; ++i) {
      const double t = std::abs(x[i]);
      kinds_[i] = classify(fam, x, i);
      if (kinds_[i] == Coord::power) {
        base_gradient_[i] = fam.exponent() / 2 * std::pow(t, fam.exponent() - 1) * sign(x[i]);
        base_curvature_[i] = fam.coefficient() * std::pow(t, fam.exponent() - 2);
      } else if (kinds_[i] == Coord::linear) {
        base_gradient_[i] = -sign(x[i]);
      }
    }
  }

  // Trial t cycles through four shapes: bare expansion + eps I, with a PSD
  // part, with negative curvature in the kink directions, and a large PSD
  // part with negative kink curvature.
  Quadratic next(std::size_t trial) {
    const int n = fam_.dim();
    const int mode = static_cast<int>(trial % 4);
    Quadratic q;
    q.center = x_;
    q.value = value_;
    q.gradient = base_gradient_;
    double a[kMaxDim][kMaxDim] = {};
    for (int i = 0; i < n; ++i) a[i][i] = base_curvature_[i];

    for (int i = 0; i < n; ++i) {
      if (kinds_[i] == Coord::kink) {
        q.gradient[i] = mode == 0 ? 0.0 : unit_(rng_);
      } else if (kinds_[i] == Coord::cusp) {
        q.gradient[i] = unit_(rng_);
        a[i][i] = pow10(uniform(-2.0, 4.0));
      }
    }

    const double eps = pow10(uniform(-6.0, 0.0));
    for (int i = 0; i < n; ++i) a[i][i] += eps;

    if (mode >= 1) {
      const double scale = pow10(mode == 3 ? uniform(0.0, 2.0) : uniform(-3.0, 1.0)) / n;
      double b[kMaxDim][kMaxDim];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i][j] = normal_(rng_);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double dot = 0;
          for (int l = 0; l < n; ++l) dot += b[i][l] * b[j][l];
          a[i][j] += scale * dot;
        }
    }
    if (mode >= 2) {
      for (int i = 0; i < n; ++i)
        if (kinds_[i] == Coord::kink) a[i][i] -= pow10(uniform(-2.0, 3.0));
    }
    q.hessian = SymMatrix<double>(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) q.hessian.set(i, j, a[i][j]);
    return q;
  }

 private:
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  const Family<double>& fam_;
  const Point<double>& x_;
  std::mt19937_64 rng_;
  std::vector<Coord> kinds_;
  double value_ = 0;
  Vector<double> base_gradient_;
  Vector<double> base_curvature_;
  std::uniform_real_distribution<double> unit_{-1.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

bool has_cusp(const Family<double>& fam, const Point<double>& x) {
  for (int i = fam.index(); i < fam.dim(); ++i)
    if (x[i] == 0) return true;
  return false;
}

// Offsets a e_i + b e_j, the shape of every point in the sample set, so a
// quadratic is evaluated there in O(1). Single-axis offsets have b = 0.
struct SparseOffset {
  int i = 0, j = 0;
  double a = 0, b = 0;
};

std::vector<SparseOffset> sparsify(const std::vector<Vector<double>>& offsets) {
  std::vector<SparseOffset> out;
  out.reserve(offsets.size());
  for (const auto& o : offsets) {
    SparseOffset s;
    int found = 0;
    for (int i = 0; i < o.size(); ++i) {
      if (o[i] == 0) continue;
      if (found == 0) {
        s.i = s.j = i;
        s.a = o[i];
      } else if (found == 1) {
        s.j = i;
        s.b = o[i];
      } else {
        throw InvalidInput("sample offsets may have at most two nonzero entries");
      }
      ++found;
    }
    out.push_back(s);
  }
  return out;
}

double at_sparse_offset(const Quadratic& q, const SparseOffset& o) {
  const double linear = q.gradient[o.i] * o.a + q.gradient[o.j] * o.b;
  const double quad = q.hessian(o.i, o.i) * o.a * o.a + 2 * q.hessian(o.i, o.j) * o.a * o.b +
                      q.hessian(o.j, o.j) * o.b * o.b;
  return q.value + linear + 0.5 * quad;
}

// min over offsets of (q - target) for side above, (target - q) for below.
double touching_gap(const Quadratic& q, Side side, const std::vector<SparseOffset>& offsets,
                    const std::vector<double>& target_values) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    const double d = at_sparse_offset(q, offsets[j]) - target_values[j];
    gap = std::min(gap, side == Side::above ? d : -d);
  }
  return gap;
}

std::vector<double> sample_target(const std::vector<Vector<double>>& offsets,
                                  const Point<double>& x, auto&& target) {
  std::vector<double> values;
  values.reserve(offsets.size());
  for (const auto& o : offsets) values.push_back(target(Point<double>(x + o)));
  return values;
}

// -u_k(x) = 1/4 - sum_{j>k} |x_j| + sum_{j<=k} |x_j|^p / 2
double supersolution_expanded(const Family<double>& fam, const Point<double>& x) {
  double minus_u = 0.25;
  for (int j = 0; j < fam.dim(); ++j) {
    const double t = std::abs(x[j]);
    minus_u += j < fam.index() ? std::pow(t, fam.exponent()) / 2 : -t;
  }
  return -minus_u;
}

}  // namespace

double Quadratic::at_offset(const Vector<double>& offset) const {
  const auto& a = hessian.dense();
  const int n = static_cast<int>(offset.size());
  double linear = 0, quad = 0;
  for (int j = 0; j < n; ++j) {
    linear += gradient[j] * offset[j];
    double row = 0;
    for (int i = 0; i < n; ++i) row += a(i, j) * offset[i];
    quad += row * offset[j];
  }
  return value + linear + 0.5 * quad;
}

double Quadratic::operator()(const Point<double>& x) const {
  return at_offset(Vector<double>(x - center));
}

std::vector<Vector<double>> touching_offsets(int n, double radius) {
  std::vector<Vector<double>> out;
  const double radii[] = {radius / 2, radius};
  for (int i = 0; i < n; ++i)
    for (double r : radii)
      for (double s : {-1.0, 1.0}) {
        Vector<double> o = Vector<double>::Zero(n);
        o[i] = s * r;
        out.push_back(o);
      }
  const double diag = 1 / std::numbers::sqrt2;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (double r : radii)
        for (double si : {-1.0, 1.0})
          for (double sj : {-1.0, 1.0}) {
            Vector<double> o = Vector<double>::Zero(n);
            o[i] = si * r * diag;
            o[j] = sj * r * diag;
            out.push_back(o);
          }
  return out;
}

bool touches(const Quadratic& q, Side side, double target_at_center,
             const std::vector<Vector<double>>& offsets, const std::vector<double>& target_values) {
  if (q.value != target_at_center) return false;
  if (offsets.size() != target_values.size())
    throw DimensionMismatch("touches: one target value per offset");
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    const double d = q.at_offset(offsets[j]) - target_values[j];
    gap = std::min(gap, side == Side::above ? d : -d);
  }
  return gap >= -kTouchTolerance;
}

std::optional<double> subsolution_certificate(const Family<double>& fam, const Point<double>& x) {
  fam.require_dim(x);
  if (has_cusp(fam, x)) return std::nullopt;
  double bound = 0;
  for (int i = 0; i < fam.dim(); ++i) {
    if (i < fam.index()) {
      if (x[i] == 0) bound -= kHalfPi;
    } else {
      bound += phase_term(fam, x[i]);
    }
  }
  return bound - phase(fam, x).value();
}

std::optional<double> interlacing_lower_bound(const Family<double>& fam, const Point<double>& x,
                                              const SymMatrix<double>& hess, double tol) {
  fam.require_dim(x);
  if (hess.dim() != fam.dim()) throw DimensionMismatch("interlacing_lower_bound: Hessian size");
  if (has_cusp(fam, x)) return std::nullopt;

  int smooth[kMaxDim];
  int m = 0;
  for (int i = 0; i < fam.dim(); ++i)
    if (classify(fam, x, i) != Coord::kink) smooth[m++] = i;
  const int free_count = fam.dim() - m;
  double bound = -free_count * kHalfPi;
  if (m == 0) return bound;

  Matrix<double> block(m, m);
  Vector<double> d(m);
  for (int r = 0; r < m; ++r) {
    const int i = smooth[r];
    d[r] = classify(fam, x, i) == Coord::power
               ? fam.coefficient() * std::pow(std::abs(x[i]), fam.exponent() - 2)
               : 0.0;
    for (int c = 0; c < m; ++c) block(r, c) = hess(i, smooth[c]);
  }
  // D <= A_SS in the Loewner order, tested as a Cholesky factorization of
  // A_SS - D + tol I.
  block.diagonal() -= d;
  block.diagonal().array() += tol;
  if (block.llt().info() != Eigen::Success) return std::nullopt;
  for (int j = 0; j < m; ++j) bound += std::atan(d[j]);
  return bound;
}

std::optional<NoTouchWitness> no_touching_witness(const Family<double>& fam, const Quadratic& q,
                                                  double radius) {
  const Point<double>& x = q.center;
  fam.require_dim(x);
  for (int i = fam.index(); i < fam.dim(); ++i) {
    if (x[i] != 0) continue;
    const double g = q.gradient[i];
    const double a = q.hessian(i, i);
    const double p = fam.exponent();
    // |t|^p / 2 > a t^2 / 2 as soon as |t|^(p-2) > a.
    double s = radius;
    if (a > 0) s = std::min(radius, 0.5 * std::pow(a, -1 / (2 - p)));
    const double t = g > 0 ? -s : s;  // so that g t <= 0
    NoTouchWitness w;
    w.axis = i;
    w.t = t;
    // Along x + t e_i with x_i = 0 the subsolution changes by exactly |t|^p/2.
    w.excess = std::pow(s, p) / 2 - (g * t + a * t * t / 2);
    return w;
  }
  return std::nullopt;
}

void VerificationRecord::merge(const VerificationRecord& other) {
  points += other.points;
  trials += other.trials;
  touching += other.touching;
  witnessed += other.witnessed;
  min_margin = std::min(min_margin, other.min_margin);
  if (other.certificate)
    certificate = certificate ? std::min(*certificate, *other.certificate) : *other.certificate;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

VerificationRecord probe_subsolution(const Family<double>& fam, const Point<double>& x,
                                     const ProbeOptions& options) {
  fam.require_dim(x);
  VerificationRecord rec;
  rec.points = 1;
  rec.certificate = subsolution_certificate(fam, x);
  if (options.trials == 0) return rec;

  CandidateGenerator gen(fam, x, options.seed);
  const bool vacuous = has_cusp(fam, x);
  const auto offsets = touching_offsets(fam.dim(), options.radius);
  std::vector<double> target;
  if (!vacuous)
    target = sample_target(offsets, x, [&](const Point<double>& y) { return subsolution(fam, y); });
  const auto sparse = sparsify(offsets);
  const double f = phase(fam, x).value();
  const double v = subsolution(fam, x);

  for (std::size_t t = 0; t < options.trials; ++t) {
    const Quadratic q = gen.next(t);
    ++rec.trials;
    if (vacuous) {
      const auto w = no_touching_witness(fam, q, options.radius);
      if (w && w->excess > 0 && std::abs(w->t) <= options.radius) {
        ++rec.witnessed;
      } else {
        rec.violations.push_back({x, w ? w->excess : 0.0, "no-touching witness failed"});
      }
      continue;
    }
    if (q.value != v || !(touching_gap(q, Side::above, sparse, target) >= -kTouchTolerance))
      continue;
    ++rec.touching;
    const double value = special_lagrangian(q.hessian).value();
    const double margin = value - f;
    rec.min_margin = std::min(rec.min_margin, margin);
    if (margin < -options.slack)
      rec.violations.push_back({x, margin, "F(H phi) < f_k at a touching quadratic"});
    if (const auto bound = interlacing_lower_bound(fam, x, q.hessian)) {
      if (value < *bound - options.slack)
        rec.violations.push_back({x, value - *bound, "F(H phi) below the interlacing bound"});
    }
  }
  return rec;
}

VerificationRecord supersolution_by_symmetry(const Family<double>& fam, const Point<double>& x,
                                             const ProbeOptions& options) {
  fam.require_dim(x);
  const Family<double> dual = fam.dual();
  const Point<double> y = reflect(x);
  const auto j = exchange_matrix<double>(fam.dim());

  VerificationRecord rec;
  rec.points = 1;
  rec.certificate = subsolution_certificate(dual, y);
  if (options.trials == 0) return rec;

  CandidateGenerator gen(dual, y, options.seed);
  const bool vacuous = has_cusp(dual, y);
  const auto offsets = touching_offsets(fam.dim(), options.radius);
  std::vector<double> u_target, v_target;
  if (!vacuous) {
    u_target =
        sample_target(offsets, x, [&](const Point<double>& z) { return supersolution(fam, z); });
    v_target =
        sample_target(offsets, y, [&](const Point<double>& z) { return subsolution(dual, z); });
  }
  const auto sparse = sparsify(offsets);
  const double f = phase(fam, x).value();
  const double u = supersolution(fam, x);

  for (std::size_t t = 0; t < options.trials; ++t) {
    const Quadratic phi = gen.next(t);
    ++rec.trials;
    if (vacuous) {
      const auto w = no_touching_witness(dual, phi, options.radius);
      if (w && w->excess > 0) {
        ++rec.witnessed;
      } else {
        rec.violations.push_back({x, w ? w->excess : 0.0, "no-touching witness failed"});
      }
      continue;
    }

    // psi(z) = -phi(Jz)
    Quadratic psi;
    psi.center = x;
    psi.value = -phi.value;
    psi.gradient = -phi.gradient.reverse();
    // J X J reverses rows and columns.
    psi.hessian = -SymMatrix<double>::from_upper(phi.hessian.dense().reverse());

    const double psi_gap = touching_gap(psi, Side::below, sparse, u_target);
    if (t == 0) {
      // The sample set is invariant under J, so both gaps are the same
      // numbers up to summation order.
      const double phi_gap = touching_gap(phi, Side::above, sparse, v_target);
      if (std::abs(psi_gap - phi_gap) > 1e-12)
        rec.violations.push_back({x, psi_gap - phi_gap, "reflection changed the touching gap"});
    }
    if (psi.value != u || !(psi_gap >= -kTouchTolerance)) continue;
    ++rec.touching;

    // Spot checks on the first touching quadratic of the point: H of
    // z -> -psi(Jz) is -J Hpsi J, which must give back Hphi exactly, and F is
    // odd under the transport.
    const double f_psi = special_lagrangian(psi.hessian).value();
    if (rec.touching == 1) {
      const auto back = -conjugate(psi.hessian, j);
      if ((back.dense() - phi.hessian.dense()).cwiseAbs().maxCoeff() != 0)
        rec.violations.push_back({x, 0.0, "Hessian transport -J H J is not exact"});
      const double f_phi = special_lagrangian(phi.hessian).value();
      if (std::abs(f_psi + f_phi) > options.slack)
        rec.violations.push_back({x, f_psi + f_phi, "F(-J X J) != -F(X)"});
    }

    const double margin = f - f_psi;
    rec.min_margin = std::min(rec.min_margin, margin);
    if (margin < -options.slack)
      rec.violations.push_back({x, margin, "F(H psi) > f_k at a touching quadratic"});
  }
  return rec;
}

bool VerificationReport::passed() const {
  if (!violations.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<Point<double>> box_grid(int n, int grid, std::size_t max_points, std::uint64_t seed) {
  detail::check_dim(n);
  if (grid < 2) throw InvalidInput("box_grid: need at least 2 nodes per side");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<std::size_t>(grid);
    if (total > (std::size_t{1} << 40)) throw InvalidInput("box_grid: grid too large");
  }

  std::vector<std::size_t> indices;
  if (total <= max_points) {
    indices.resize(total);
    for (std::size_t i = 0; i < total; ++i) indices[i] = i;
  } else {
    // Floyd's sampling of max_points distinct indices, then sorted.
    std::mt19937_64 rng(mix_seed(seed, total));
    std::vector<std::size_t> chosen;
    std::vector<char> taken(total, 0);
    for (std::size_t r = total - max_points; r < total; ++r) {
      const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, r)(rng);
      const std::size_t idx = taken[pick] ? r : pick;
      taken[idx] = 1;
      chosen.push_back(idx);
    }
    std::sort(chosen.begin(), chosen.end());
    indices = std::move(chosen);
  }

  std::vector<Point<double>> points;
  points.reserve(indices.size());
  for (std::size_t idx : indices) {
    Point<double> x(n);
    std::size_t rest = idx;
    for (int i = 0; i < n; ++i) {
      const int node = static_cast<int>(rest % grid);
      rest /= grid;
      // Integer numerator keeps the grid exactly symmetric about 0 with
      // exact endpoints +-1.
      x[i] = static_cast<double>(2 * node - (grid - 1)) / (grid - 1);
    }
    points.push_back(x);
  }
  return points;
}

VerificationReport verify_proposition(const Family<double>& fam, const SweepOptions& options) {
  const auto points = box_grid(fam.dim(), options.grid, options.max_points, options.probe.seed);
  const unsigned threads = options.threads ? options.threads : worker_threads();
  const std::size_t chunks = chunk_count(points.size(), threads);

  struct Partial {
    double min_certificate = std::numeric_limits<double>::infinity();
    std::size_t admissible = 0;
    VerificationRecord sub, super;
    std::vector<Violation> violations;
  };
  std::vector<Partial> partials(chunks);

  parallel_chunks(points.size(), threads, [&](std::size_t c, std::size_t begin, std::size_t end) {
    Partial& part = partials[c];
    for (std::size_t i = begin; i < end; ++i) {
      const Point<double>& x = points[i];
      ProbeOptions probe = options.probe;
      probe.seed = mix_seed(options.probe.seed, i);

      if (const auto cert = subsolution_certificate(fam, x)) {
        ++part.admissible;
        part.min_certificate = std::min(part.min_certificate, *cert);
        if (*cert < -1e-12)
          part.violations.push_back({x, *cert, "subsolution certificate below zero"});
      }
      auto sub = probe_subsolution(fam, x, probe);
      probe.seed = mix_seed(probe.seed, 1);
      auto super = supersolution_by_symmetry(fam, x, probe);
      part.violations.insert(part.violations.end(), sub.violations.begin(), sub.violations.end());
      part.violations.insert(part.violations.end(), super.violations.begin(),
                             super.violations.end());
      sub.violations.clear();
      super.violations.clear();
      part.sub.merge(sub);
      part.super.merge(super);
    }
  });

  VerificationReport report;
  report.n = fam.dim();
  report.k = fam.index();
  report.p = fam.exponent();
  report.grid = options.grid;
  report.points_checked = points.size();
  VerificationRecord sub, super;
  std::size_t admissible = 0;
  for (auto& part : partials) {
    report.min_margin = std::min(report.min_margin, part.min_certificate);
    admissible += part.admissible;
    sub.merge(part.sub);
    super.merge(part.super);
    report.violations.insert(report.violations.end(), part.violations.begin(),
                             part.violations.end());
  }
  report.probe_min_margin = std::min(sub.min_margin, super.min_margin);
  report.probe_trials = sub.trials + super.trials;
  report.probe_touching = sub.touching + super.touching;
  report.probe_witnessed = sub.witnessed + super.witnessed;

  report.checks.push_back({"subsolution_certificate", admissible, report.min_margin,
                           !(report.min_margin < -1e-12)});
  const bool probes_clean = report.violations.empty();
  report.checks.push_back(
      {"touching_probes", report.probe_trials, report.probe_min_margin, probes_clean});
  return report;
}

VerificationReport verify_family(const Family<double>& fam, const SweepOptions& options) {
  const int n = fam.dim();
  VerificationReport report;
  report.n = n;
  report.k = fam.index();
  report.p = fam.exponent();
  report.grid = options.grid;

  using Check = VerificationReport::Check;
  auto add = [&](Check c) { report.checks.push_back(std::move(c)); };

  const Point<double> origin = Point<double>::Zero(n);
  {
    const double err = std::abs(phase(fam, origin).value() -
                                special_phase<double>(n, fam.index()).value());
    add({"phase_at_origin", 1, err, err <= 1e-12});
  }
  {
    const double d0 = difference(fam, origin);
    add({"difference_at_origin", 1, d0, d0 == 0.5});
  }

  const auto points = box_grid(n, options.grid, options.max_points, options.probe.seed);
  {
    Check boundary{"boundary_sign", 0, -std::numeric_limits<double>::infinity(), true};
    Check interior{"isolated_maximum", 0, -std::numeric_limits<double>::infinity(), true};
    for (const auto& x : points) {
      const double d = difference(fam, x);
      if (x.cwiseAbs().maxCoeff() == 1.0) {
        ++boundary.count;
        boundary.worst = std::max(boundary.worst, d);
        if (d > 1e-12) {
          boundary.passed = false;
          report.violations.push_back({x, d, "v - u > 0 on the boundary"});
        }
      }
      if (!x.isZero()) {
        ++interior.count;
        interior.worst = std::max(interior.worst, d);
        if (!(d < 0.5)) {
          interior.passed = false;
          report.violations.push_back({x, d, "v - u >= 1/2 away from the origin"});
        }
      }
    }
    add(boundary);
    add(interior);
  }

  std::mt19937_64 rng(mix_seed(options.probe.seed, 0x5eed));
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  auto random_point = [&] {
    Point<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = coord(rng);
    return x;
  };

  Check kindep{"k_independence", 0, 0, true};
  Check sup_reflect{"supersolution_reflection", 0, 0, true};
  Check sup_expanded{"supersolution_expanded", 0, 0, true};
  Check phase_reflect{"phase_reflection", 0, 0, true};
  Check gap{"subsolution_gap", 0, 0, true};
  Check continuity{"phase_continuity", 0, 0, true};
  const Family<double> dual = fam.dual();

  // Distance to the axis at which c(t) is within 5e-7 of pi/2, capped at 1e-14.
  const double approach =
      std::min(1e-14, std::pow(2e6 / fam.coefficient(), -1 / (2 - fam.exponent())));

  for (std::size_t s = 0; s < options.symmetry_points; ++s) {
    const Point<double> x = random_point();

    const double d = difference(fam, x);
    for (int kk = 0; kk <= n; ++kk) {
      const double e = std::abs(difference(Family<double>(n, kk, fam.exponent()), x) - d);
      kindep.worst = std::max(kindep.worst, e);
    }
    ++kindep.count;

    const double u = supersolution(fam, x);
    sup_reflect.worst = std::max(sup_reflect.worst, std::abs(u + subsolution(dual, reflect(x))));
    ++sup_reflect.count;
    sup_expanded.worst = std::max(sup_expanded.worst, std::abs(u - supersolution_expanded(fam, x)));
    ++sup_expanded.count;

    const double pr = std::abs(phase(fam, x).value() + phase(dual, reflect(x)).value());
    phase_reflect.worst = std::max(phase_reflect.worst, pr);
    ++phase_reflect.count;

    // Random points are off the axes with probability one.
    double expected = 0;
    for (int i = 0; i < fam.index(); ++i) expected += phase_term(fam, x[i]);
    const double g =
        special_lagrangian(subsolution_hessian(fam, x)).value() - phase(fam, x).value();
    gap.worst = std::max(gap.worst, std::abs(g - expected));
    if (g < -1e-10) gap.passed = false;
    ++gap.count;

    const int axis = static_cast<int>(s % static_cast<std::size_t>(n));
    Point<double> on = x, near = x;
    on[axis] = 0;
    near[axis] = std::copysign(approach, x[axis]);
    const double jump = std::abs(phase(fam, near).value() - phase(fam, on).value());
    continuity.worst = std::max(continuity.worst, jump);
    ++continuity.count;
  }
  kindep.passed = kindep.worst <= 1e-12;
  sup_reflect.passed = sup_reflect.worst == 0;
  sup_expanded.passed = sup_expanded.worst <= 1e-12;
  phase_reflect.passed = phase_reflect.worst <= 1e-12;
  gap.passed = gap.passed && gap.worst <= 1e-10;
  continuity.passed = continuity.worst <= 1e-6;
  for (auto* c : {&kindep, &sup_reflect, &sup_expanded, &phase_reflect, &gap, &continuity}) add(*c);

  report.points_checked = points.size();
  return report;
}

VerificationReport verify_all(const Family<double>& fam, const SweepOptions& options) {
  VerificationReport report = verify_family(fam, options);
  const VerificationReport prop = verify_proposition(fam, options);
  report.points_checked = prop.points_checked;
  report.min_margin = prop.min_margin;
  report.probe_min_margin = prop.probe_min_margin;
  report.probe_trials = prop.probe_trials;
  report.probe_touching = prop.probe_touching;
  report.probe_witnessed = prop.probe_witnessed;
  report.checks.insert(report.checks.end(), prop.checks.begin(), prop.checks.end());
  report.violations.insert(report.violations.end(), prop.violations.begin(),
                           prop.violations.end());
  return report;
}

}  // namespace sllab
