#pragma once

// Singular-locus graphs: Gamma_w on one face chart, the assembled Gamma_Z on
// the 2-skeleton of Delta, and the mirror-side Gamma' on the boundary of
// Delta_w.

#include "syz/polytope.hpp"
#include "syz/subdivision.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace syz {

enum class SiteKind { II, III };

std::string to_string(SiteKind k);

struct LocusVertex {
  RationalVector coords;
  SiteKind kind = SiteKind::II;
  std::string host;
  /// Zero set of the Delta face carrying the site (a 2-face for II-sites,
  /// an edge for III-sites); unused on the mirror side.
  std::uint8_t host_mask = 0;
  /// Lattice points of the hosting cell: triangle corners for II-sites,
  /// the unit segment for III-sites (degree form).
  std::vector<LatticePointM> host_points;
  /// Face of the hosting polytope (mirror side), or -1.
  int host_face = -1;
};

struct LocusEdge {
  int a = -1, b = -1;
  std::vector<RationalVector> polyline;  // from vertex a to vertex b
};

/// A boundary leg of a face fragment, open at its far end.
struct LocusLeg {
  int vertex = -1;
  std::vector<RationalVector> polyline;  // from the vertex to the open end
};

struct LocusGraph {
  std::vector<LocusVertex> vertices;
  std::vector<LocusEdge> edges;
  std::vector<LocusLeg> legs;

  int count(SiteKind k) const;
  std::vector<int> degrees() const;
};

/// Graph of one simplicial subdivision in chart coordinates: II-sites at
/// triangle barycenters, edges through interior-edge midpoints, legs to
/// boundary-edge midpoints. Throws std::domain_error for non-generic input.
LocusGraph face_graph(const Triangulation& t);

/// Number of connected components of (polygon minus graph), computed on the
/// barycentric subdivision; also checks each region holds exactly one
/// lattice point and throws std::logic_error otherwise.
int region_count(const Triangulation& t, const LocusGraph& g);

struct FaceFragment {
  DeltaFace face;
  LocusGraph graph;  // reduced M coordinates (5 entries)
};

FaceFragment face_fragment(const DeltaFace& face, const Triangulation& t);

/// Joins legs meeting at common unit-segment midpoints of Delta edges into
/// III-sites. Throws std::domain_error when legs do not meet in triples.
LocusGraph assemble_global(const std::vector<FaceFragment>& fragments);

/// Gamma_Z for a generic weight (all ten faces).
LocusGraph singular_locus(const WeightFunction& w);
LocusGraph singular_locus(const GlobalSubdivision& z);

/// Gamma' on the boundary of Delta_w (N coordinates): barycenters of 1- and
/// 2-faces whose pi image is not a vertex of Delta^vee, joined along
/// incidences, 2-valent vertices suppressed. `pi[f]` is the face of
/// `delta_dual` assigned to face f of `dw`. Kinds: image an edge of
/// Delta^vee -> III, image a 2-face -> II.
LocusGraph mirror_locus(const FaceLattice& dw, const FaceLattice& delta_dual, const std::vector<int>& pi);

}  // namespace syz
