#pragma once

// Exact convex polytopes in Q^4 with both representations and the full face
// poset. Halfspaces are written <normal, x> >= rhs. The ambient lattice is
// tagged M or N so that normals (which live in the other lattice) can be
// written back as canonical 5-tuples.

#include "syz/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace syz {

enum class Space { M, N };

struct Halfspace {
  RationalVector normal;
  Rational rhs;

  bool operator==(const Halfspace&) const = default;
};

struct Face {
  int dim = -1;
  std::vector<int> vertices;  // ascending
  std::vector<int> facets;    // ascending; all facets for the empty face
};

class FaceLattice {
 public:
  FaceLattice() = default;

  /// Convex hull of `points` (duplicates and non-vertices allowed). Throws
  /// std::invalid_argument when the points do not span Q^d.
  static FaceLattice from_points(Space space, const std::vector<RationalVector>& points);

  /// Polytope cut out by `halfspaces`. `facet_of_input`, when given, receives
  /// for every input halfspace the index of the facet it defines, or -1 for
  /// a redundant constraint. Throws std::invalid_argument when the
  /// intersection is empty, unbounded or lower-dimensional.
  static FaceLattice from_halfspaces(Space space, const std::vector<Halfspace>& halfspaces,
                                     std::vector<int>* facet_of_input = nullptr);

  /// Trusted V/H pair, kept in the given order (used for the simplices).
  static FaceLattice from_pair(Space space, std::vector<RationalVector> vertices,
                               std::vector<Halfspace> facets);

  Space space() const { return space_; }
  int ambient_dimension() const { return dim_; }
  const std::vector<RationalVector>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int i) const { return faces_.at(static_cast<std::size_t>(i)); }

  /// Face indices of a given dimension, in lattice order.
  std::vector<int> faces_of_dimension(int d) const;
  int empty_face() const { return 0; }
  int whole() const { return static_cast<int>(faces_.size()) - 1; }

  std::optional<int> find_by_vertices(const std::vector<int>& vertices) const;
  std::optional<int> find_by_facets(const std::vector<int>& facets) const;

  /// Smallest face containing all given vertices.
  int face_spanned_by(const std::vector<int>& vertices) const;

  bool is_subface(int f, int g) const;

  bool contains(const RationalVector& x) const;
  bool origin_in_interior() const;

  /// Polar dual {y : <x,y> >= -1 for x in P}, with vertex i of the dual the
  /// rescaled normal of facet i and facet j of the dual coming from vertex j.
  /// Throws std::logic_error when 0 is not an interior point.
  FaceLattice dual() const;

  /// Index in `dual` of the dual face (vertex set = facet set of face f).
  int dual_face(int f, const FaceLattice& dual) const;

  RationalVector barycenter(int f) const;

  /// Canonical 5-tuple of a point or normal according to its lattice.
  static RationalVector lift(Space space, const RationalVector& coords);

 private:
  void build_faces();

  Space space_ = Space::M;
  int dim_ = 4;
  std::vector<RationalVector> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<Face> faces_;
  std::map<std::vector<int>, int> by_vertices_;
  std::map<std::vector<int>, int> by_facets_;
};

inline Space other(Space s) { return s == Space::M ? Space::N : Space::M; }

/// Delta (vertices m^i = 5e_i - m0 in M) and Delta^vee (vertices n^i in N),
/// with facet i of each opposite vertex i.
std::pair<FaceLattice, FaceLattice> dual_simplex();

/// Extreme rays of the pointed cone {y : A y >= 0} in Z^k, as primitive
/// integer vectors (double description method). Rows of A must span.
std::vector<std::vector<Integer>> extreme_rays(const std::vector<std::vector<Integer>>& rows);

}  // namespace syz
