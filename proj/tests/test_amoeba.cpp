#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "syz/amoeba.hpp"
#include "syz/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace syz;

namespace {

// Direct evaluation of the weighted moment map, no log-space tricks.
Point2 naive_moment(const CurveSpec& c, Complex x1, Complex x2) {
  double total = 0, px = 0, py = 0;
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const double s = std::pow(c.t, 2 * c.weights[i]) * std::pow(std::abs(x1), 2 * c.points[i][0]) *
                     std::pow(std::abs(x2), 2 * c.points[i][1]);
    total += s;
    px += s * c.points[i][0];
    py += s * c.points[i][1];
  }
  return {px / total, py / total};
}

double dist(const Point2& a, const Point2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

bool inside_triangle(const Point2& p, double side, double eps = 1e-12) {
  return p[0] >= -eps && p[1] >= -eps && p[0] + p[1] <= side + eps;
}

CurveSpec standard_face_curve(double t) {
  const auto cw = standard_weights().restrict_to(two_faces()[9]);
  return CurveSpec::from_weights(cw, t);
}

CurveSpec line_curve() {
  CurveSpec c;
  c.points = {{0, 0}, {1, 0}, {0, 1}};
  c.weights = {0, 0, 0};
  c.phases = {0, 0, 0};
  c.t = 0.5;
  return c;
}

}  // namespace

TEST_CASE("coefficients have modulus t^w") {
  const auto c = standard_face_curve(0.1);
  const auto a = c.coefficients();
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(std::abs(a[i]) - std::pow(0.1, c.weights[i])) <= 1e-12 * std::abs(a[i]));
  CHECK_THROWS_AS(CurveSpec::from_weights(standard_weights().restrict_to(two_faces()[0]), 1.5), std::invalid_argument);
}

TEST_CASE("moment map with zero weights on the unit torus is the centroid") {
  CurveSpec c;
  for (const auto& p : standard_triangle_points()) c.points.push_back(p);
  c.weights.assign(c.points.size(), 0.0);
  c.t = 0.1;
  double sx = 0, sy = 0;
  for (const auto& p : c.points) {
    sx += p[0];
    sy += p[1];
  }
  const Point2 centroid{sx / 21, sy / 21};
  CHECK(dist(moment_map_2d(c, Complex(1, 0), Complex(0, 1)), centroid) < 1e-14);
  CHECK(dist(centroid, {5.0 / 3, 5.0 / 3}) < 1e-14);
}

TEST_CASE("large |x1| pushes the image to the vertex (5,0)") {
  const auto c = standard_face_curve(0.1);
  double prev = 1e9;
  for (double r : {10.0, 20.0, 40.0, 80.0}) {
    const double d = dist(moment_map_2d(c, r, 0.0), {5, 0});
    CHECK(d <= prev);
    prev = d;
  }
  CHECK(prev < 1e-12);
}

TEST_CASE("log-space evaluation agrees with direct evaluation") {
  const auto c = standard_face_curve(0.3);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 50; ++k) {
    const Complex x1 = std::polar(std::exp(u(rng)), u(rng)), x2 = std::polar(std::exp(u(rng)), u(rng));
    CHECK(dist(moment_map_2d(c, x1, x2), naive_moment(c, x1, x2)) < 1e-10);
  }
  CHECK_THROWS_AS(moment_map_2d(c, Complex(0, 0), Complex(1, 0)), std::invalid_argument);
}

TEST_CASE("moment map is continuous along log-radial paths") {
  const auto c = standard_face_curve(0.01);
  // |dF/drho| is twice a variance of points in the triangle, at most 2 * 25.
  const double h = 1e-3;
  Point2 prev = moment_map_2d(c, -40.0, 3.0);
  for (double rho = -40 + h; rho <= 40; rho += h) {
    const Point2 p = moment_map_2d(c, rho, 3.0);
    REQUIRE(dist(p, prev) <= 50 * h * std::sqrt(2.0));
    prev = p;
  }
}

TEST_CASE("torus action does not move the image") {
  const auto c = standard_face_curve(0.01);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3), ang(0, 2 * std::numbers::pi);
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    const Complex x1 = std::polar(std::exp(u(rng)), ang(rng)), x2 = std::polar(std::exp(u(rng)), ang(rng));
    const Complex r1 = std::polar(1.0, ang(rng)), r2 = std::polar(1.0, ang(rng));
    worst = std::max(worst, dist(moment_map_2d(c, x1, x2), moment_map_2d(c, r1 * x1, r2 * x2)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("polynomial roots on widely separated scales") {
  const std::vector<Complex> roots{1e-8, Complex(0, 1), -3.0, 1e7};
  std::vector<Complex> coeffs{1};
  for (const auto& r : roots) {
    std::vector<Complex> next(coeffs.size() + 1, 0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k + 1] += coeffs[k];
      next[k] -= r * coeffs[k];
    }
    coeffs = next;
  }
  const auto found = polynomial_roots(coeffs);
  REQUIRE(found.size() == roots.size());
  for (const auto& r : roots) {
    double best = 1e300;
    for (const auto& f : found) best = std::min(best, std::abs(f - r) / std::abs(r));
    CHECK(best < 1e-9);
  }
  for (const auto& f : found) CHECK(relative_residual(coeffs, f) <= 1e-8);
}

TEST_CASE("zero roots and constant polynomials") {
  CHECK(polynomial_roots({0, 0, 1}).empty());
  CHECK(polynomial_roots({3}).empty());
  const auto r = polynomial_roots({0, -2, 1});
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0] - 2.0) < 1e-14);
}

TEST_CASE("empty grid gives an empty cloud") {
  const auto c = standard_face_curve(0.1);
  const auto cloud = sample_curve(c, {0, 10, 1, 0});
  CHECK(cloud.points.empty());
  CHECK(sample_curve(c, {10, 0, 1, 0}).points.empty());
  CHECK_THROWS_AS(hausdorff_to_graph(cloud, {}, 0.25), std::invalid_argument);
}

TEST_CASE("hausdorff on trivial clouds") {
  const Segment2 s1{{0, 0}, {1, 0}}, s2{{1, 0}, {1, 1}};
  AmoebaCloud cloud;
  cloud.points = {{0, 0}, {1, 0}, {1, 1}};
  auto r = hausdorff_to_graph(cloud, {s1, s2}, 1e-6);
  CHECK(r.sup_distance == 0);
  CHECK(r.covered_count() == 2);

  cloud.points.push_back({0.5, -2.5});
  r = hausdorff_to_graph(cloud, {s1, s2}, 1e-6);
  CHECK(r.sup_distance == doctest::Approx(2.5).epsilon(1e-15));

  AmoebaCloud far;
  far.points = {{5, 5}};
  r = hausdorff_to_graph(far, {s1, s2}, 0.5);
  CHECK(r.covered_count() == 0);
}

TEST_CASE("strict coverage needs the whole segment") {
  const Segment2 s{{0, 0}, {2, 0}};
  AmoebaCloud ends;
  ends.points = {{0, 0}, {2, 0}};
  CHECK(hausdorff_to_graph(ends, {s}, 0.5).covered_count() == 1);
  CHECK(hausdorff_to_graph(ends, {s}, 0.5, 11).covered_count() == 0);
  for (int k = 0; k <= 20; ++k) ends.points.push_back({0.1 * k, 0.0});
  CHECK(hausdorff_to_graph(ends, {s}, 0.5, 11).covered_count() == 1);
}

TEST_CASE("amoeba of a line has the Y shape") {
  const auto c = line_curve();
  const auto cloud = sample_curve(c, {80, 24, 1, 0});
  REQUIRE(!cloud.points.empty());
  CHECK(cloud.max_residual <= 1e-8);

  // Oracle: parametrize the line as x2 = -1 - x1 and push through the
  // direct moment map.
  std::vector<Point2> oracle;
  for (int i = 0; i < 600; ++i)
    for (int j = 0; j < 192; ++j) {
      const Complex x1 = std::polar(std::exp(-12 + 24.0 * (i + 0.5) / 600), 2 * std::numbers::pi * (j + 0.5) / 192);
      const Complex x2 = -1.0 - x1;
      if (std::abs(x2) < 1e-300) continue;
      oracle.push_back(naive_moment(c, x1, x2));
    }
  double worst = 0;
  for (const auto& p : cloud.points) {
    CHECK(inside_triangle(p, 1.0));
    double best = 1e9;
    for (const auto& q : oracle) best = std::min(best, dist(p, q));
    worst = std::max(worst, best);
  }
  CHECK(worst < 0.02);

  // Spine: barycenter to the three edge midpoints. The tentacles end at the
  // midpoints, the images of the three points where the line meets the
  // coordinate axes.
  const Point2 o{1.0 / 3, 1.0 / 3};
  const std::vector<Segment2> y{{o, {0.5, 0}}, {o, {0, 0.5}}, {o, {0.5, 0.5}}};
  const auto rep = hausdorff_to_graph(cloud, y, 0.05);
  CHECK(rep.covered_count() == 3);
  // The fattening has a fixed positive width: the oracle image reaches
  // about 0.25 from the spine, and the sampled cloud stays inside it.
  double oracle_sup = 0;
  for (const auto& q : oracle) {
    double best = 1e9;
    for (const auto& seg : y) best = std::min(best, distance_to_segment(q, seg));
    oracle_sup = std::max(oracle_sup, best);
  }
  CHECK(oracle_sup > 0.25);
  CHECK(rep.sup_distance <= oracle_sup + 0.01);
  for (const Point2 v : {Point2{0.5, 0}, Point2{0, 0.5}, Point2{0.5, 0.5}}) {
    double best = 1e9;
    for (const auto& p : cloud.points) best = std::min(best, dist(p, v));
    CHECK(best < 0.01);
  }
}

TEST_CASE("standard face: accurate roots, image inside the triangle, deterministic") {
  const auto c = standard_face_curve(0.1);
  const SampleGrid grid{40, 16, 2, 7};
  const auto a = sample_curve(c, grid);
  const auto b = sample_curve(c, grid);
  REQUIRE(a.points.size() == b.points.size());
  CHECK(std::equal(a.points.begin(), a.points.end(), b.points.begin()));
  CHECK(a.max_residual <= 1e-8);
  CHECK(a.slices == 2u * 40 * 16 * 2);
  for (const auto& p : a.points) REQUIRE(inside_triangle(p, 5.0));

  const auto other = sample_curve(c, {40, 16, 2, 8});
  CHECK(!std::equal(a.points.begin(), a.points.end(), other.points.begin()));

  const auto segs = graph_segments(face_graph(regular_subdivision(standard_weights().restrict_to(two_faces()[9]))));
  CHECK(segs.size() == 75);
  const auto rep = hausdorff_to_graph(a, segs, 0.25);
  CHECK(rep.covered_count() == 75);
  CHECK(rep.sup_distance < 0.3);
}

TEST_CASE("rescaling the weights by an affine function leaves the image unchanged") {
  auto c = standard_face_curve(0.1);
  auto shifted = c;
  for (std::size_t i = 0; i < c.points.size(); ++i) shifted.weights[i] += 3 - 0.7 * c.points[i][0] + 1.1 * c.points[i][1];
  const SampleGrid grid{20, 8, 1, 0};
  const auto a = sample_curve(c, grid), b = sample_curve(shifted, grid);
  REQUIRE(a.points.size() == b.points.size());
  double worst = 0;
  for (std::size_t i = 0; i < a.points.size(); ++i) worst = std::max(worst, dist(a.points[i], b.points[i]));
  CHECK(worst < 1e-9);
}
