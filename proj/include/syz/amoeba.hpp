#pragma once

// Numerical images of plane quintic curves under the weighted moment map,
// compared with the graph Gamma_w of the induced subdivision.

#include "syz/locus.hpp"
#include "syz/subdivision.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace syz {

using Point2 = std::array<double, 2>;
using Complex = std::complex<double>;

/// p(x1, x2) = sum a_m x1^a x2^b over the 21 points m = (a, b) of the
/// degree-5 triangle, with a_m = t^{w_m} e^{2 pi i eta_m}.
struct CurveSpec {
  std::vector<ChartPoint> points;
  std::vector<double> weights;
  std::vector<double> phases;  // eta_m, default 0
  double t = 0.1;

  static CurveSpec from_weights(const ChartWeights& w, double t, std::vector<double> phases = {});
  std::vector<Complex> coefficients() const;
};

/// Weighted moment map F_{t^w}(x) = sum |t^{w_m} x^m|^2 m / sum |t^{w_m} x^m|^2,
/// evaluated from log|x1|, log|x2| with the largest exponent subtracted.
Point2 moment_map_2d(const CurveSpec& c, double log_abs_x1, double log_abs_x2);
Point2 moment_map_2d(const CurveSpec& c, Complex x1, Complex x2);

/// Roots of sum_k c_k y^k. Each cluster of the Newton polygon is solved on
/// its own scale by companion-matrix eigenvalues and then polished with
/// Newton steps on the full polynomial. Zero roots are dropped.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

/// |p(y)| / sum |c_k| |y|^k.
double relative_residual(const std::vector<Complex>& coeffs, Complex y);

struct SampleGrid {
  int moduli = 0;   // log-modulus samples
  int phases = 0;   // phase samples
  int repeats = 1;  // seeded jittered copies of the grid
  std::uint64_t seed = 0;
};

struct AmoebaCloud {
  std::vector<Point2> points;
  SampleGrid grid;
  double log_range = 0;        // |log x| sampled up to this bound
  double max_residual = 0;     // worst relative residual of accepted roots
  std::size_t slices = 0;
};

/// Slices the curve along both coordinate directions: for every grid value
/// of one coordinate the other is solved for, and each root pair is pushed
/// through the moment map. When the support contains the corners of the
/// degree-5 triangle the weights are first reduced by the affine function
/// through the three corner values; this is a torus rescaling of the curve
/// and leaves its image unchanged.
AmoebaCloud sample_curve(const CurveSpec& c, const SampleGrid& grid);

struct Segment2 {
  Point2 a, b;
};

/// The polyline pieces of a face graph in chart coordinates.
std::vector<Segment2> graph_segments(const LocusGraph& g);

double distance_to_segment(const Point2& p, const Segment2& s);

struct HausdorffReport {
  double sup_distance = 0;          // max over cloud points of the distance to the graph
  std::vector<bool> covered;        // per segment
  int covered_count() const;
};

/// A segment is covered when some cloud point lies within `delta` of it.
/// With `samples` > 0 the test is strict instead: each of `samples` evenly
/// spaced points of the segment needs a cloud point within `delta`.
/// Throws std::invalid_argument for an empty cloud.
HausdorffReport hausdorff_to_graph(const AmoebaCloud& cloud, const std::vector<Segment2>& graph, double delta,
                                   int samples = 0);

}  // namespace syz
