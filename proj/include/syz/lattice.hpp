#pragma once

// The monomial lattice M of quintics, its dual N, the Newton simplex Delta
// and its 2-skeleton, face charts, and integer linear algebra.
//
// Coordinates. An M-point is a 5-tuple tagged either as a monomial
// exponent vector (component sum 5) or as its reduced form m - m0
// (component sum 0). An N-point is a class of Z^5 modulo n0 = (1,1,1,1,1),
// stored with its fifth coordinate normalized to 0. With those
// normalizations the pairing of a reduced M-point and an N-point equals the
// ordinary dot product of their first four coordinates, which is how the
// polytope code sees both lattices (as Q^4 with the standard pairing).

#include "syz/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace syz {

inline constexpr int kDegree = 5;
inline constexpr int kRank = 4;  // rank of M and N

using Exponents = std::array<int, 5>;

enum class MForm { Degree, Reduced };

class LatticePointM {
 public:
  LatticePointM() = default;
  /// Throws std::invalid_argument if the component sum does not match `form`.
  LatticePointM(const Exponents& coords, MForm form);

  static LatticePointM monomial(const Exponents& exps) { return {exps, MForm::Degree}; }
  static LatticePointM reduced_point(const Exponents& coords) { return {coords, MForm::Reduced}; }

  MForm form() const { return form_; }
  const Exponents& coords() const { return coords_; }
  int operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

  LatticePointM to_reduced() const;
  LatticePointM to_degree() const;

  /// First four reduced coordinates as rationals (the Q^4 chart of M).
  RationalVector reduced_chart() const;

  /// Coordinates (0-based) equal to zero in degree form.
  std::vector<int> zero_set() const;

  std::string str() const;

  auto operator<=>(const LatticePointM&) const = default;

 private:
  Exponents coords_{};
  MForm form_ = MForm::Degree;
};

class LatticePointN {
 public:
  LatticePointN() = default;
  /// Any representative; normalized so the fifth coordinate is 0.
  explicit LatticePointN(const Exponents& raw);

  /// The class [e^i] (0-based i).
  static LatticePointN basis(int i);

  const Exponents& coords() const { return coords_; }
  int operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  RationalVector chart() const;
  std::string str() const;

  LatticePointN operator+(const LatticePointN& o) const;
  LatticePointN operator-(const LatticePointN& o) const;
  LatticePointN operator*(int k) const;

  auto operator<=>(const LatticePointN&) const = default;

 private:
  Exponents coords_{};
};

/// Sum of m_i n_i. Throws std::invalid_argument for degree-form m because
/// the value would depend on the representative of n.
long pairing(const LatticePointM& m, const LatticePointN& n);

/// The center m0 = (1,1,1,1,1).
LatticePointM center();

/// All degree-5 exponent vectors in ascending lexicographic order (126).
std::vector<LatticePointM> enumerate_delta_points();

/// Points of Delta with at least two zero exponents (the 2-skeleton minus
/// nothing else; m0 has none), ascending lexicographic order (105).
std::vector<LatticePointM> two_skeleton_points();

bool on_two_skeleton(const LatticePointM& m);

/// Index of a degree-form point in two_skeleton_points(), if present.
std::optional<int> two_skeleton_index(const LatticePointM& m);

/// Vertex m^i = 5 e_i of Delta in degree form (0-based i).
LatticePointM delta_vertex(int i);

/// A face of the simplex Delta, identified by the set of coordinates that
/// vanish on it (a bitmask over 5 bits). The mask with all five bits set is
/// the empty face; mask 0 is Delta itself. dim = 4 - popcount.
struct DeltaFace {
  std::uint8_t zero_mask = 0;

  int dimension() const;
  bool contains(const LatticePointM& m) const;
  std::vector<int> zeros() const;
  /// Dual face of Delta^vee: conv{n^i : i in zero set}, as a vertex mask.
  std::uint8_t dual_vertex_mask() const { return zero_mask; }
  std::string str() const;

  auto operator<=>(const DeltaFace&) const = default;
};

/// Smallest face of Delta containing all points of `points` (degree form).
/// The empty set yields the empty face.
DeltaFace minimal_face(const std::vector<LatticePointM>& points);

/// The ten 2-faces Delta_I, I = {i < j} ordered lexicographically.
std::vector<DeltaFace> two_faces();

/// The ten edges of Delta (three zero coordinates), lexicographic.
std::vector<DeltaFace> delta_edges();

/// Unimodular chart of a 2-face onto the standard triangle
/// {(a,b) : a,b >= 0, a+b <= 5}: drop the two zero coordinates and keep the
/// first two of the remaining three.
class FaceChart2D {
 public:
  explicit FaceChart2D(const DeltaFace& face);

  const DeltaFace& face() const { return face_; }
  std::array<int, 2> to_chart(const LatticePointM& m) const;
  LatticePointM from_chart(const std::array<int, 2>& ab) const;
  /// Rational chart point to reduced ambient coordinates (5 entries).
  RationalVector to_ambient(const RationalVector& ab) const;
  /// Coordinates kept by the chart (first two) and the eliminated one.
  const std::array<int, 3>& free_coordinates() const { return free_; }
  /// Determinant of the linear part with respect to the lattice basis of
  /// the face's direction lattice; always +-1.
  int linear_determinant() const;

 private:
  DeltaFace face_;
  std::array<int, 3> free_{};
};

/// Lattice points {(a,b) : a,b >= 0, a+b <= degree} in lexicographic order.
std::vector<std::array<int, 2>> standard_triangle_points(int degree = kDegree);

// ---------------------------------------------------------------------------
// Integer linear algebra

using IntMatrix = std::vector<std::vector<Integer>>;

/// Elementary divisors d1 | d2 | ... of the cokernel of `matrix`
/// (one entry per row; zero entries mark free summands), from the Smith
/// normal form.
std::vector<Integer> smith_divisors(const IntMatrix& matrix);

/// Cokernel divisors of a matrix given with rational entries; throws
/// std::invalid_argument on a non-integer entry.
std::vector<Integer> smith_quotient(const std::vector<RationalVector>& matrix);

/// Matrix of the map N -> M, n^i -> m^i, in the bases
/// {n^1..n^4} of N and {e_k - e_5} of M.
IntMatrix quotient_map_matrix();

}  // namespace syz
