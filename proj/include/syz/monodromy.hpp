#pragma once

// Fiber lattices N_n = N/Zn over the regions of the base, the transfer
// maps between neighbouring charts and the monodromy of closed paths.

#include "syz/lattice.hpp"
#include "syz/locus.hpp"

#include <array>
#include <string>
#include <vector>

namespace syz {

using Matrix3 = std::array<std::array<long, 3>, 3>;

Matrix3 identity3();
Matrix3 operator*(const Matrix3& a, const Matrix3& b);
Matrix3 transpose(const Matrix3& a);
long det(const Matrix3& a);
/// Inverse of a determinant +-1 matrix; throws std::domain_error otherwise.
Matrix3 inverse_unimodular(const Matrix3& a);
std::string to_string(const Matrix3& a);

/// N_{n^i} = N / Z e^i with basis the classes of e^a, e^b, e^c for the three
/// smallest indices other than i. The fourth index d is eliminated using
/// sum_k e^k = 0, so the class of x has coordinates x_a - x_d, x_b - x_d,
/// x_c - x_d.
class QuotientLattice {
 public:
  explicit QuotientLattice(int vertex);  // 0-based index of n^i

  int vertex() const { return vertex_; }
  const std::array<int, 3>& basis_indices() const { return basis_; }
  int eliminated() const { return eliminated_; }

  std::array<long, 3> coordinates(const LatticePointN& x) const;
  LatticePointN representative(const std::array<long, 3>& c) const;
  /// Dual basis of n^perp in M (reduced form): e_a - e_d, e_b - e_d, e_c - e_d.
  std::array<LatticePointM, 3> dual_basis() const;
  /// The 3x5 matrix sending a representative to its coordinates, so that
  /// its Smith form certifies the basis.
  IntMatrix projection_matrix() const;

 private:
  int vertex_;
  std::array<int, 3> basis_{};
  int eliminated_;
};

/// <m - m0, n> for a degree-form or reduced m.
long pair_reduced(const LatticePointM& m, const LatticePointN& n);

/// A closed path n_0, m_1, n_1, ..., m_k, n_k = n_0 through the regions of
/// the base: n_j is a vertex of Delta^vee (0-based) and m_j a lattice point.
struct Loop {
  std::vector<int> n;
  std::vector<LatticePointM> m;

  std::string str() const;
};

/// Each step needs <m_j, n_{j-1}> = <m_j, n_j> = -1.
bool loop_valid(const Loop& loop);
bool path_valid(int n, const LatticePointM& m, int n2, const LatticePointM& m2);

/// x -> x + <m, x> n; requires <m, n> = -1.
LatticePointN transfer(const LatticePointN& x, const LatticePointM& m, int n);

struct MonodromyOperator {
  QuotientLattice lattice{0};
  Matrix3 matrix{};
  Loop loop;
};

MonodromyOperator loop_monodromy(const Loop& loop);
/// The loop n, m, n2, m2, n: [x] -> [x] + <m2 - m, x>[n2].
MonodromyOperator monodromy(int n, const LatticePointM& m, int n2, const LatticePointM& m2);

/// (T^T)^-1, the operator on the dual lattice in the dual basis.
Matrix3 dual_monodromy(const Matrix3& t);

bool unipotent(const Matrix3& t);

enum class TripleClass { II, III, Degenerate, Invalid };
std::string to_string(TripleClass c);

/// II: T_i - I share their column space (common vanishing covector form
/// I + u v_i^T); III: they share their row space. Invalid when some T_i - I
/// is not of rank one or the product T1 T2 T3 is not the identity.
TripleClass classify_triple(const std::array<Matrix3, 3>& t);

struct SiteMonodromy {
  int vertex = -1;
  SiteKind kind = SiteKind::II;
  std::array<MonodromyOperator, 3> ops;
  TripleClass cls = TripleClass::Invalid;
};

/// Three small loops around each 3-valent site of Gamma_Z. For a II-site on
/// the face {m_i = m_j = 0} over the triangle (a, b, c), counterclockwise in
/// the face chart: (n_i, a, n_j, b), (n_i, b, n_j, c), (n_i, c, n_j, a). For
/// a III-site on the edge {m_i = m_j = m_k = 0} over the unit segment
/// [m, m']: (n_i, m, n_j, m'), (n_i, m, n_j, m, n_k, m', n_j, m),
/// (n_i, m', n_k, m).
std::vector<SiteMonodromy> site_monodromies(const LocusGraph& gamma);

}  // namespace syz
