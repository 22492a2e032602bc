#pragma once

// Singular fiber types and stratified Euler characteristic accounting.

#include "syz/locus.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace syz {

struct FiberType {
  enum class Tag { Smooth, I, II, IItilde, III };
  Tag tag = Tag::Smooth;
  int n = 0;
  int m = 0;

  static FiberType smooth() { return {}; }
  static FiberType type_I(int n) { return {Tag::I, n, 0}; }
  static FiberType type_II(int n, int m) { return {Tag::II, n, m}; }
  static FiberType type_IItilde(int n, int m) { return {Tag::IItilde, n, m}; }
  static FiberType type_III(int n) { return {Tag::III, n, 0}; }

  std::string str() const;
  auto operator<=>(const FiberType&) const = default;
};

long euler_of_fiber(const FiberType& t);

enum class Stratum { Complement, Gamma1, Gamma2, Gamma3 };
std::string to_string(Stratum s);

enum class Side { Quintic, Mirror };

struct FibrationSummary {
  std::map<std::pair<Stratum, FiberType>, long> counts;

  /// Throws std::invalid_argument for type IItilde, which no construction
  /// here produces.
  void add(Stratum s, const FiberType& t, long count = 1);
  long sites(SiteKind k) const;
};

/// Fiber over the same site of the mirror fibration: II_{nxm} <-> III_{nm}
/// up to the choice II_{nx1} for the dual of III_n; I_n is self-dual.
FiberType dual_type(const FiberType& t);

/// Gamma^1 -> I_1, Gamma^2 (II-sites) -> II_{1x1}, Gamma^3 (III-sites) ->
/// III_1 on the quintic side; the mirror side exchanges II and III at the
/// sites. Throws std::invalid_argument when some site is not 3-valent or
/// the graph still has open legs.
FibrationSummary assign_fibers(const LocusGraph& g, Side side);

long euler_characteristic(const FibrationSummary& s);

/// Coarse Fermat-quotient model: I_5 over the thirty arcs, ten II_{5x5}
/// fibers over the triangle sites and ten III_5 over the edge sites; the
/// mirror side takes dual types.
FibrationSummary fermat_model(Side side);

/// Cell counts c_0, c_1, ... of a finite CW complex.
struct CellCounts {
  std::vector<long> cells;
  long euler() const;
};

CellCounts product(const CellCounts& a, const CellCounts& b);

/// Explicit CW models of the fibers: I_n = S^1 x (cycle of n spheres);
/// III_n = T^3 with n parallel 2-tori each collapsed to a point;
/// II_{nxm} = S^1 x T^2 with the circles over the 1-skeleton of an n x m
/// grid on T^2 collapsed.
CellCounts cell_model(const FiberType& t);

}  // namespace syz
