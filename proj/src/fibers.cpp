#include "syz/fibers.hpp"

#include <algorithm>

namespace syz {

std::string FiberType::str() const {
  switch (tag) {
    case Tag::Smooth: return "smooth";
    case Tag::I: return "I_" + std::to_string(n);
    case Tag::II: return "II_" + std::to_string(n) + "x" + std::to_string(m);
    case Tag::IItilde: return "IItilde_" + std::to_string(n) + "x" + std::to_string(m);
    case Tag::III: return "III_" + std::to_string(n);
  }
  return "?";
}

long euler_of_fiber(const FiberType& t) {
  switch (t.tag) {
    case FiberType::Tag::Smooth:
    case FiberType::Tag::I: return 0;
    case FiberType::Tag::II:
    case FiberType::Tag::IItilde: return -static_cast<long>(t.n) * t.m;
    case FiberType::Tag::III: return t.n;
  }
  return 0;
}

std::string to_string(Stratum s) {
  switch (s) {
    case Stratum::Complement: return "complement";
    case Stratum::Gamma1: return "Gamma1";
    case Stratum::Gamma2: return "Gamma2";
    case Stratum::Gamma3: return "Gamma3";
  }
  return "?";
}

void FibrationSummary::add(Stratum s, const FiberType& t, long count) {
  if (t.tag == FiberType::Tag::IItilde)
    throw std::invalid_argument("type IItilde is not produced by the quintic fibrations; refusing to assign " + t.str());
  counts[{s, t}] += count;
}

long FibrationSummary::sites(SiteKind k) const {
  long total = 0;
  const auto want = k == SiteKind::II ? FiberType::Tag::II : FiberType::Tag::III;
  for (const auto& [key, c] : counts)
    if ((key.first == Stratum::Gamma2 || key.first == Stratum::Gamma3) && key.second.tag == want) total += c;
  return total;
}

FibrationSummary assign_fibers(const LocusGraph& g, Side side) {
  if (!g.legs.empty()) throw std::invalid_argument("graph has open legs; assemble all faces first");
  for (int d : g.degrees())
    if (d != 3) throw std::invalid_argument("graph is not stratified: a site has valence " + std::to_string(d));
  FibrationSummary s;
  s.add(Stratum::Complement, FiberType::smooth(), 1);
  if (!g.edges.empty()) s.add(Stratum::Gamma1, FiberType::type_I(1), static_cast<long>(g.edges.size()));
  for (const auto& v : g.vertices) {
    const FiberType t = v.kind == SiteKind::II ? FiberType::type_II(1, 1) : FiberType::type_III(1);
    s.add(v.kind == SiteKind::II ? Stratum::Gamma2 : Stratum::Gamma3, side == Side::Mirror ? dual_type(t) : t);
  }
  return s;
}

long euler_characteristic(const FibrationSummary& s) {
  long chi = 0;
  for (const auto& [key, c] : s.counts) chi += c * euler_of_fiber(key.second);
  return chi;
}

FiberType dual_type(const FiberType& t) {
  switch (t.tag) {
    case FiberType::Tag::II:
    case FiberType::Tag::IItilde: return FiberType::type_III(t.n * t.m);
    case FiberType::Tag::III: return FiberType::type_II(t.n, 1);
    default: return t;
  }
}

FibrationSummary fermat_model(Side side) {
  FibrationSummary s;
  auto on = [side](const FiberType& t) { return side == Side::Mirror ? dual_type(t) : t; };
  s.add(Stratum::Gamma1, on(FiberType::type_I(5)), 30);
  s.add(Stratum::Gamma2, on(FiberType::type_II(5, 5)), 10);
  s.add(Stratum::Gamma3, on(FiberType::type_III(5)), 10);
  return s;
}

long CellCounts::euler() const {
  long chi = 0;
  for (std::size_t d = 0; d < cells.size(); ++d) chi += (d % 2 ? -1 : 1) * cells[d];
  return chi;
}

CellCounts product(const CellCounts& a, const CellCounts& b) {
  CellCounts c;
  c.cells.assign(a.cells.size() + b.cells.size() - 1, 0);
  for (std::size_t i = 0; i < a.cells.size(); ++i)
    for (std::size_t j = 0; j < b.cells.size(); ++j) c.cells[i + j] += a.cells[i] * b.cells[j];
  return c;
}

namespace {

CellCounts minus(CellCounts a, const CellCounts& b) {
  a.cells.resize(std::max(a.cells.size(), b.cells.size()), 0);
  for (std::size_t d = 0; d < b.cells.size(); ++d) {
    a.cells[d] -= b.cells[d];
    if (a.cells[d] < 0) throw std::logic_error("removing cells that are not there");
  }
  return a;
}

CellCounts plus(CellCounts a, const CellCounts& b) {
  a.cells.resize(std::max(a.cells.size(), b.cells.size()), 0);
  for (std::size_t d = 0; d < b.cells.size(); ++d) a.cells[d] += b.cells[d];
  return a;
}

// Replaces the subcomplex `sub` by its image `image` under a cellular
// collapse.
CellCounts collapse(const CellCounts& x, const CellCounts& sub, const CellCounts& image) {
  return plus(minus(x, sub), image);
}

}  // namespace

CellCounts cell_model(const FiberType& t) {
  const CellCounts circle{{1, 1}};
  const CellCounts point{{1}};
  switch (t.tag) {
    case FiberType::Tag::Smooth: return product(circle, product(circle, circle));
    case FiberType::Tag::I: {
      // n spheres, each with two marked points, glued in a cycle.
      const CellCounts kodaira{{t.n, t.n, t.n}};
      return product(circle, kodaira);
    }
    case FiberType::Tag::III: {
      const CellCounts torus2 = product(circle, circle);
      const CellCounts subdivided_circle{{t.n, t.n}};
      const CellCounts x = product(torus2, subdivided_circle);
      CellCounts slices{{0}};
      for (int k = 0; k < t.n; ++k) slices = plus(slices, torus2);
      CellCounts points{{t.n}};
      return collapse(x, slices, points);
    }
    case FiberType::Tag::II:
    case FiberType::Tag::IItilde: {
      const long nm = static_cast<long>(t.n) * t.m;
      const CellCounts grid{{nm, 2 * nm, nm}};
      const CellCounts skeleton{{nm, 2 * nm}};
      return collapse(product(circle, grid), product(circle, skeleton), skeleton);
    }
  }
  return point;
}

}  // namespace syz
