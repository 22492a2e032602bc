#include "syz/amoeba.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace syz {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// c = unit * exp(log_mag) with |unit| = 1, or a zero coefficient.
struct LogCoeff {
  double log_mag = -std::numeric_limits<double>::infinity();
  Complex unit{0, 0};
  bool zero() const { return unit == Complex(0, 0); }
};

LogCoeff to_log(Complex c) {
  if (c == Complex(0, 0)) return {};
  return {std::log(std::abs(c)), c / std::abs(c)};
}

// sum_k c_k * exp(log_y * k) * z^k / exp(shift), term by term.
std::vector<Complex> scaled(const std::vector<LogCoeff>& c, double log_r) {
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!c[k].zero()) shift = std::max(shift, c[k].log_mag + static_cast<double>(k) * log_r);
  std::vector<Complex> out(c.size(), Complex(0, 0));
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!c[k].zero()) out[k] = c[k].unit * std::exp(c[k].log_mag + static_cast<double>(k) * log_r - shift);
  return out;
}

Complex horner(const std::vector<Complex>& q, Complex z, Complex* derivative) {
  Complex v(0, 0), d(0, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    d = d * z + v;
    v = v * z + q[k];
  }
  if (derivative) *derivative = d;
  return v;
}

double scaled_residual(const std::vector<Complex>& q, Complex z) {
  double scale = 0, az = std::abs(z), p = 1;
  for (const auto& c : q) {
    scale += std::abs(c) * p;
    p *= az;
  }
  return scale == 0 ? 0 : std::abs(horner(q, z, nullptr)) / scale;
}

struct LogRoot {
  double log_abs;
  double arg;
  double residual;
};

// Roots of sum c_k y^k (nonzero ones), as log|y| and arg y.
std::vector<LogRoot> log_roots(std::vector<LogCoeff> c) {
  while (!c.empty() && c.back().zero()) c.pop_back();
  std::vector<int> support;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!c[k].zero()) support.push_back(static_cast<int>(k));
  std::vector<LogRoot> out;
  if (support.size() < 2) return out;

  // Upper hull of (k, log|c_k|): each edge is a cluster of roots of equal
  // order of magnitude.
  std::vector<int> hull;
  for (int k : support) {
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2], j = hull.back();
      const double cross = (j - i) * (c[static_cast<std::size_t>(k)].log_mag - c[static_cast<std::size_t>(i)].log_mag) -
                           (k - i) * (c[static_cast<std::size_t>(j)].log_mag - c[static_cast<std::size_t>(i)].log_mag);
      if (cross >= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }
  // Neighbouring clusters whose scales differ by less than kMergeGap (in
  // log units) are solved together; otherwise Newton steps from one cluster
  // can drift into the other.
  constexpr double kMergeGap = 4.0;
  std::vector<double> slopes;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e)
    slopes.push_back((c[static_cast<std::size_t>(hull[e])].log_mag - c[static_cast<std::size_t>(hull[e + 1])].log_mag) /
                     (hull[e + 1] - hull[e]));
  for (std::size_t e = 0; e < slopes.size();) {
    std::size_t f = e + 1;
    while (f < slopes.size() && std::abs(slopes[f] - slopes[f - 1]) < kMergeGap) ++f;
    const int b1 = hull[e], b2 = hull[f], deg = b2 - b1;
    double log_r = 0;
    for (std::size_t g = e; g < f; ++g) log_r += slopes[g] * (hull[g + 1] - hull[g]);
    log_r /= deg;
    e = f;

    const auto q = scaled(c, log_r);
    // Companion of the band b1..b2 only; the other terms are negligible on
    // this scale and are restored by the Newton polish.
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    const Complex lead = q[static_cast<std::size_t>(b2)];
    for (int i = 0; i < deg; ++i) {
      companion(0, i) = -q[static_cast<std::size_t>(b2 - 1 - i)] / lead;
      if (i + 1 < deg) companion(i + 1, i) = 1;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    for (int i = 0; i < deg; ++i) {
      const Complex z0 = solver.eigenvalues()(i);
      Complex z = z0;
      for (int it = 0; it < 50; ++it) {
        Complex d;
        const Complex v = horner(q, z, &d);
        if (d == Complex(0, 0)) break;
        const Complex step = v / d;
        z -= step;
        if (std::abs(step) <= 1e-15 * std::abs(z)) break;
      }
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || scaled_residual(q, z) > scaled_residual(q, z0))
        z = z0;
      if (z == Complex(0, 0)) continue;
      out.push_back({log_r + std::log(std::abs(z)), std::arg(z), scaled_residual(q, z)});
    }
  }
  return out;
}

}  // namespace

CurveSpec CurveSpec::from_weights(const ChartWeights& w, double t, std::vector<double> phases) {
  CurveSpec c;
  c.points = w.points;
  for (const auto& v : w.values) c.weights.push_back(v.get_d());
  c.phases = phases.empty() ? std::vector<double>(c.points.size(), 0.0) : std::move(phases);
  if (c.phases.size() != c.points.size()) throw std::invalid_argument("one phase per monomial expected");
  if (!(t > 0 && t < 1)) throw std::invalid_argument("t must lie in (0, 1)");
  c.t = t;
  return c;
}

std::vector<Complex> CurveSpec::coefficients() const {
  std::vector<Complex> a;
  for (std::size_t i = 0; i < points.size(); ++i)
    a.push_back(std::pow(t, weights[i]) * std::polar(1.0, kTwoPi * (phases.empty() ? 0.0 : phases[i])));
  return a;
}

Point2 moment_map_2d(const CurveSpec& c, double log_abs_x1, double log_abs_x2) {
  const double lt = std::log(c.t);
  std::vector<double> e(c.points.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    e[i] = 2 * (c.weights[i] * lt + c.points[i][0] * log_abs_x1 + c.points[i][1] * log_abs_x2);
    top = std::max(top, e[i]);
  }
  double total = 0;
  Point2 p{0, 0};
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const double s = std::exp(e[i] - top);
    total += s;
    p[0] += s * c.points[i][0];
    p[1] += s * c.points[i][1];
  }
  return {p[0] / total, p[1] / total};
}

Point2 moment_map_2d(const CurveSpec& c, Complex x1, Complex x2) {
  if (x1 == Complex(0, 0) || x2 == Complex(0, 0)) throw std::invalid_argument("moment map evaluated off the torus");
  return moment_map_2d(c, std::log(std::abs(x1)), std::log(std::abs(x2)));
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
  std::vector<LogCoeff> c;
  for (const auto& x : coeffs) c.push_back(to_log(x));
  std::vector<Complex> out;
  for (const auto& r : log_roots(c)) out.push_back(std::polar(std::exp(r.log_abs), r.arg));
  return out;
}

double relative_residual(const std::vector<Complex>& coeffs, Complex y) { return scaled_residual(coeffs, y); }

AmoebaCloud sample_curve(const CurveSpec& spec, const SampleGrid& grid) {
  AmoebaCloud cloud;
  cloud.grid = grid;
  if (grid.moduli <= 0 || grid.phases <= 0 || grid.repeats <= 0 || spec.points.empty()) return cloud;
  if (spec.weights.size() != spec.points.size() || (!spec.phases.empty() && spec.phases.size() != spec.points.size()))
    throw std::invalid_argument("curve spec needs one weight and one phase per monomial");

  // Remove the affine part through the corners when the support has them.
  CurveSpec c = spec;
  if (c.phases.empty()) c.phases.assign(c.points.size(), 0.0);
  auto index_of = [&](int a, int b) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < c.points.size(); ++i)
      if (c.points[i] == ChartPoint{a, b}) return i;
    return std::nullopt;
  };
  const auto i00 = index_of(0, 0), i50 = index_of(5, 0), i05 = index_of(0, 5);
  if (i00 && i50 && i05) {
    const double w00 = spec.weights[*i00], w50 = spec.weights[*i50], w05 = spec.weights[*i05];
    for (std::size_t i = 0; i < c.points.size(); ++i)
      c.weights[i] -= w00 + (w50 - w00) * c.points[i][0] / 5 + (w05 - w00) * c.points[i][1] / 5;
  }
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : c.weights) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double lt = std::log(c.t);
  cloud.log_range = (hi - lo + 1) * std::abs(lt) + 5;

  std::vector<LogCoeff> a;
  for (std::size_t i = 0; i < c.points.size(); ++i)
    a.push_back({c.weights[i] * lt, std::polar(1.0, kTwoPi * c.phases[i])});

  std::mt19937_64 rng(grid.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < grid.repeats; ++rep) {
    for (int i = 0; i < grid.moduli; ++i)
      for (int j = 0; j < grid.phases; ++j) {
        const double ju = rep == 0 ? 0.5 : unit(rng), jv = rep == 0 ? 0.5 : unit(rng);
        const double rho = -cloud.log_range + 2 * cloud.log_range * (i + ju) / grid.moduli;
        const double theta = kTwoPi * (j + jv) / grid.phases;
        for (int axis = 0; axis < 2; ++axis) {
          // Fix coordinate `axis` at exp(rho + i theta), solve for the other.
          std::vector<std::vector<std::pair<double, Complex>>> terms(6);
          for (std::size_t k = 0; k < c.points.size(); ++k) {
            const int fixed = c.points[k][static_cast<std::size_t>(axis)];
            const int free = c.points[k][static_cast<std::size_t>(1 - axis)];
            terms[static_cast<std::size_t>(free)].push_back(
                {a[k].log_mag + fixed * rho, a[k].unit * std::polar(1.0, fixed * theta)});
          }
          std::vector<LogCoeff> slice;
          for (const auto& group : terms) {
            double top = -std::numeric_limits<double>::infinity();
            for (const auto& [lm, u] : group) top = std::max(top, lm);
            Complex s(0, 0);
            for (const auto& [lm, u] : group) s += u * std::exp(lm - top);
            slice.push_back(s == Complex(0, 0) ? LogCoeff{} : LogCoeff{top + std::log(std::abs(s)), s / std::abs(s)});
          }
          ++cloud.slices;
          for (const auto& r : log_roots(slice)) {
            cloud.max_residual = std::max(cloud.max_residual, r.residual);
            cloud.points.push_back(axis == 0 ? moment_map_2d(c, rho, r.log_abs) : moment_map_2d(c, r.log_abs, rho));
          }
        }
      }
  }
  return cloud;
}

std::vector<Segment2> graph_segments(const LocusGraph& g) {
  std::vector<Segment2> out;
  auto add = [&](const std::vector<RationalVector>& pl) {
    for (std::size_t i = 0; i + 1 < pl.size(); ++i)
      out.push_back({{pl[i][0].get_d(), pl[i][1].get_d()}, {pl[i + 1][0].get_d(), pl[i + 1][1].get_d()}});
  };
  for (const auto& e : g.edges) add(e.polyline);
  for (const auto& l : g.legs) add(l.polyline);
  return out;
}

double distance_to_segment(const Point2& p, const Segment2& s) {
  const double dx = s.b[0] - s.a[0], dy = s.b[1] - s.a[1];
  const double len2 = dx * dx + dy * dy;
  double u = len2 == 0 ? 0 : ((p[0] - s.a[0]) * dx + (p[1] - s.a[1]) * dy) / len2;
  u = std::clamp(u, 0.0, 1.0);
  return std::hypot(p[0] - s.a[0] - u * dx, p[1] - s.a[1] - u * dy);
}

int HausdorffReport::covered_count() const { return static_cast<int>(std::count(covered.begin(), covered.end(), true)); }

HausdorffReport hausdorff_to_graph(const AmoebaCloud& cloud, const std::vector<Segment2>& graph, double delta,
                                   int samples) {
  if (cloud.points.empty()) throw std::invalid_argument("empty cloud");
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  HausdorffReport r;
  r.covered.assign(graph.size(), false);
  for (const auto& p : cloud.points) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < graph.size(); ++k) {
      const double d = distance_to_segment(p, graph[k]);
      best = std::min(best, d);
      if (d <= delta) r.covered[k] = true;
    }
    r.sup_distance = std::max(r.sup_distance, best);
  }
  if (samples <= 0) return r;

  // Bucket the cloud on a delta grid for the coverage queries.
  auto key = [delta](double x, double y) {
    return (static_cast<std::int64_t>(std::floor(x / delta)) << 32) ^
           static_cast<std::uint32_t>(static_cast<std::int32_t>(std::floor(y / delta)));
  };
  std::unordered_map<std::int64_t, std::vector<Point2>> buckets;
  for (const auto& p : cloud.points) buckets[key(p[0], p[1])].push_back(p);
  auto near = [&](const Point2& q) {
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        const auto it = buckets.find(key(q[0] + dx * delta, q[1] + dy * delta));
        if (it == buckets.end()) continue;
        for (const auto& p : it->second)
          if (std::hypot(p[0] - q[0], p[1] - q[1]) <= delta) return true;
      }
    return false;
  };
  for (std::size_t k = 0; k < graph.size(); ++k) {
    const auto& s = graph[k];
    bool ok = true;
    for (int i = 0; ok && i < samples; ++i) {
      const double u = samples == 1 ? 0.5 : static_cast<double>(i) / (samples - 1);
      ok = near({s.a[0] + u * (s.b[0] - s.a[0]), s.a[1] + u * (s.b[1] - s.a[1])});
    }
    r.covered[k] = ok;
  }
  return r;
}

}  // namespace syz
