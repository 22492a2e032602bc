#pragma once

// Weight functions, convexity, regular subdivisions and chambers.
//
// Convention: a weight lifts each point up to height w_m and subdivisions
// come from the lower hull, so a supporting function n satisfies
// n(m') = w_{m'} and n(m) <= w_m elsewhere.

#include "syz/lattice.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace syz {

using ChartPoint = std::array<int, 2>;

/// Weights on a planar point set (usually the 21 points of a face chart).
struct ChartWeights {
  std::vector<ChartPoint> points;
  RationalVector values;
};

/// n(a,b) = c + x a + y b.
struct AffineFunction2D {
  Rational c, x, y;
  Rational operator()(const ChartPoint& p) const { return c + x * p[0] + y * p[1]; }
};

struct ConvexityReport2D {
  bool convex = false;
  std::optional<int> violator;                  // first unsupported point
  std::vector<AffineFunction2D> certificates;   // per point, filled when convex
};

/// Exact convexity test on the 21 points of the standard triangle, in the
/// order of standard_triangle_points(). Throws std::invalid_argument for any
/// other domain.
ConvexityReport2D is_convex_2d(const ChartWeights& w);

struct Triangulation {
  std::vector<ChartPoint> points;
  std::vector<std::vector<int>> cells;          // point indices, ascending
  std::vector<AffineFunction2D> certificates;   // support function per cell

  bool simplicial() const;
  std::vector<int> unused_points() const;
  bool generic() const { return simplicial() && unused_points().empty(); }
  /// Interior edges and boundary edges of a simplicial subdivision.
  std::vector<std::array<int, 2>> edges() const;
};

/// Lower-hull subdivision of an arbitrary planar point set. Cells are the
/// maximal sets of points on a common lower supporting plane; flat cells
/// with more than three points are returned as such.
Triangulation lower_hull(const ChartWeights& w);

/// Regular subdivision of the standard triangle; throws
/// std::domain_error naming the violating point when w is not convex.
Triangulation regular_subdivision(const ChartWeights& w);

/// Twice the signed area of the triangle (p,q,r).
long orientation(const ChartPoint& p, const ChartPoint& q, const ChartPoint& r);

// ---------------------------------------------------------------------------

/// Weights on a set of M-points in degree form, optionally with a value at
/// the center m0.
class WeightFunction {
 public:
  WeightFunction() = default;
  WeightFunction(std::vector<LatticePointM> points, RationalVector values,
                 std::optional<Rational> w_m0 = std::nullopt);

  /// Tabulates f on the 105 points of the 2-skeleton.
  static WeightFunction on_skeleton(const std::function<Rational(const LatticePointM&)>& f,
                                    std::optional<Rational> w_m0 = std::nullopt);

  const std::vector<LatticePointM>& points() const { return points_; }
  const RationalVector& values() const { return values_; }
  const std::optional<Rational>& w_m0() const { return w_m0_; }
  bool has(const LatticePointM& m) const;
  const Rational& operator()(const LatticePointM& m) const;

  bool on_skeleton_domain() const;

  /// Restriction to a 2-face, in chart order.
  ChartWeights restrict_to(const DeltaFace& face) const;

  /// w' = w - w_{m0}, returned as a weight on the same points.
  WeightFunction relative_to_center(const Rational& w_m0) const;

  WeightFunction scaled(const Rational& s) const;
  /// Adds the linear function m -> <m - m0, n> (n in N, 4-coordinate chart).
  WeightFunction plus_linear(const RationalVector& n) const;

 private:
  std::vector<LatticePointM> points_;
  RationalVector values_;
  std::optional<Rational> w_m0_;
  bool skeleton_order_ = false;
};

/// w(m) = sum m_i^2 on the 2-skeleton; restricts to 2(a^2+ab+b^2) plus an
/// affine function on every face chart, value 25 at the vertices of Delta.
WeightFunction standard_weights();

/// Standard weights with two diagonal flips on the face {m4 = m5 = 0}.
WeightFunction figure4_weights();

/// Standard weights plus seeded random perturbations k/100, |k| <= spread,
/// at the non-vertex points. Rejects and redraws until every face is generic.
WeightFunction random_generic_weights(std::uint64_t seed, int spread = 100);

/// Subdivision induced on the whole 2-skeleton.
struct GlobalSubdivision {
  std::vector<DeltaFace> faces;                 // the ten 2-faces
  std::vector<Triangulation> per_face;
  std::vector<std::array<int, 3>> cells;        // skeleton indices, sorted
};

class NonGenericError : public std::domain_error {
 public:
  NonGenericError(DeltaFace face, std::vector<int> cell, const std::string& what)
      : std::domain_error(what), face_(face), cell_(std::move(cell)) {}
  DeltaFace face() const { return face_; }
  const std::vector<int>& cell() const { return cell_; }

 private:
  DeltaFace face_;
  std::vector<int> cell_;
};

/// Throws NonGenericError on a flat cell or an unused point, and
/// std::domain_error when some face weight is not convex.
GlobalSubdivision subdivide(const WeightFunction& w);

bool same_chamber(const WeightFunction& w1, const WeightFunction& w2);

// ---------------------------------------------------------------------------

struct ConvexityReportSkeleton {
  bool convex = false;
  std::optional<int> violator;
  std::vector<RationalVector> certificates;     // n in the N chart, per point
};

/// Convexity of w' with respect to the 2-skeleton: for every m' a linear
/// function n with <m'-m0, n> = w'_{m'} and <m-m0, n> <= w'_m. The domain
/// must be exactly the 105 skeleton points.
ConvexityReportSkeleton is_convex_rel_skeleton(const WeightFunction& w_prime);

struct ThresholdError : std::domain_error {
  ThresholdError(DeltaFace f, const std::string& what) : std::domain_error(what), face(f) {}
  DeltaFace face;
};

/// A value W such that w - w_{m0} is convex with respect to the 2-skeleton
/// for every w_{m0} <= W, built from the face certificates. Throws
/// ThresholdError naming a non-convex face.
Rational lemma_threshold(const WeightFunction& w);

}  // namespace syz
