#pragma once

// The mirror-side polytope Delta_w, its dual, the face map pi onto
// Delta^vee, and the identification of the two singular loci.

#include "syz/locus.hpp"
#include "syz/polytope.hpp"
#include "syz/subdivision.hpp"

#include <optional>
#include <string>
#include <vector>

namespace syz {

struct DeltaW {
  FaceLattice polytope;                         // in N, 4-coordinate chart
  std::vector<LatticePointM> monomials;         // constraint order (degree form)
  RationalVector weights;                       // w'_m, same order
  std::vector<int> facet_of_monomial;           // -1 for a redundant constraint
  std::vector<std::vector<int>> monomials_of_facet;
  Rational w0;

  /// S_F: indices into `monomials` of the facets containing face f.
  std::vector<int> facet_monomials(int f) const;
  int redundant_count() const;
};

/// Delta_w = {n : <m - m0, n> >= -w'_m for all m}. `w_prime` must equal w0 at
/// the five vertices of Delta. Throws std::invalid_argument when the
/// weights violate that normalization or cut out a degenerate region.
DeltaW build_delta_w(const WeightFunction& w_prime, const Rational& w0);

/// Shifts w by a center value w_m0 and builds Delta_w; w0 becomes the
/// common vertex value of w minus w_m0.
DeltaW build_delta_w_centered(const WeightFunction& w, const Rational& w_m0);

struct DeltaWDual {
  FaceLattice polytope;                         // in M, 4-coordinate chart
  std::vector<int> vertex_monomial;             // vertex -> index into DeltaW::monomials
};

DeltaWDual dual_of(const DeltaW& dw);

/// A map between face posets, extended over barycentric subdivisions.
/// Entries for faces outside the domain are -1 / empty.
struct PLMap {
  std::vector<int> face_image;
  std::vector<RationalVector> source_barycenter;  // lifted 5-tuples
  std::vector<std::optional<RationalVector>> image_barycenter;
  bool order_reversing = false;

  bool defined(int f) const { return image_barycenter.at(static_cast<std::size_t>(f)).has_value(); }
  /// Image of a point that is a barycenter of a source face in the domain.
  std::optional<RationalVector> apply(const RationalVector& source_point) const;
};

/// pi: faces(Delta_w) -> faces(Delta^vee), F -> (minimal face of Delta
/// containing S_F)^*. Total; the empty face goes to the empty face.
PLMap face_map_pi(const DeltaW& dw, const FaceLattice& delta_dual);

/// alpha -> alpha^* on the boundary of p. `dual` must be p.dual().
PLMap pl_dual_homeo(const FaceLattice& p, const FaceLattice& dual);

/// h: boundary of Delta (2-skeleton, subdivided by Z) -> boundary of Delta_w^vee.
struct HMap {
  std::vector<LatticePointM> points;            // the skeleton points
  std::vector<RationalVector> image;            // (m - m0)/w'_m, 4-chart
  std::vector<int> vertex_of_point;             // vertex of Delta_w^vee
  std::vector<std::array<int, 3>> cells;        // Z cells as point indices
  std::vector<int> cell_face;                   // their 2-faces of Delta_w^vee

  /// Affine image of a reduced M point (5-tuple) lying on some Z cell.
  RationalVector apply(const RationalVector& reduced) const;
};

/// Throws std::domain_error naming a Z cell whose image is not a 2-face.
HMap map_h(const DeltaW& dw, const DeltaWDual& dual, const GlobalSubdivision& z);

/// s = h^-1 o (alpha -> alpha^*) on the faces of Delta_w whose dual face lies
/// on an h-image of a Z cell; images are reduced M 5-tuples.
PLMap base_identification_s(const DeltaW& dw, const DeltaWDual& dual, const HMap& h);

struct LocusMatch {
  bool ok = false;
  int matched_vertices = 0;
  int matched_edges = 0;
  std::vector<int> vertex_map;                  // Gamma' vertex -> Gamma vertex
  std::string mismatch;                         // first failure, empty if ok
};

/// Pushes Gamma' through s and compares with Gamma: vertices by exact
/// coordinates with II/III swapped, edges by their polylines.
LocusMatch verify_locus_match(const LocusGraph& mirror, const LocusGraph& gamma, const PLMap& s);

}  // namespace syz
