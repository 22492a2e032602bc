#include "syz/monodromy.hpp"

#include "syz/subdivision.hpp"

#include <stdexcept>

namespace syz {

Matrix3 identity3() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
  Matrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Matrix3 transpose(const Matrix3& a) {
  Matrix3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
  return t;
}

long det(const Matrix3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Matrix3 inverse_unimodular(const Matrix3& a) {
  const long d = det(a);
  if (d != 1 && d != -1) throw std::domain_error("matrix is not unimodular: det " + std::to_string(d));
  Matrix3 inv{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv[i][j] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) * d;
    }
  return inv;
}

std::string to_string(const Matrix3& a) {
  std::string s = "[";
  for (int i = 0; i < 3; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < 3; ++j) s += (j ? "," : "") + std::to_string(a[i][j]);
    s += "]";
  }
  return s + "]";
}

QuotientLattice::QuotientLattice(int vertex) : vertex_(vertex) {
  if (vertex < 0 || vertex > 4) throw std::invalid_argument("n^" + std::to_string(vertex + 1) + " is not a vertex of Delta^vee");
  int k = 0;
  for (int j = 0; j < 5 && k < 3; ++j)
    if (j != vertex) basis_[static_cast<std::size_t>(k++)] = j;
  eliminated_ = vertex == 4 ? 3 : 4;
}

std::array<long, 3> QuotientLattice::coordinates(const LatticePointN& x) const {
  std::array<long, 3> c{};
  for (std::size_t k = 0; k < 3; ++k) c[k] = x[basis_[k]] - x[eliminated_];
  return c;
}

LatticePointN QuotientLattice::representative(const std::array<long, 3>& c) const {
  Exponents raw{};
  for (std::size_t k = 0; k < 3; ++k) raw[static_cast<std::size_t>(basis_[k])] = static_cast<int>(c[k]);
  return LatticePointN(raw);
}

std::array<LatticePointM, 3> QuotientLattice::dual_basis() const {
  std::array<LatticePointM, 3> out;
  for (std::size_t k = 0; k < 3; ++k) {
    Exponents r{};
    r[static_cast<std::size_t>(basis_[k])] = 1;
    r[static_cast<std::size_t>(eliminated_)] = -1;
    out[k] = LatticePointM::reduced_point(r);
  }
  return out;
}

IntMatrix QuotientLattice::projection_matrix() const {
  IntMatrix p(3, std::vector<Integer>(5, 0));
  for (std::size_t k = 0; k < 3; ++k) {
    p[k][static_cast<std::size_t>(basis_[k])] = 1;
    p[k][static_cast<std::size_t>(eliminated_)] = -1;
  }
  return p;
}

long pair_reduced(const LatticePointM& m, const LatticePointN& n) {
  return pairing(m.form() == MForm::Reduced ? m : m.to_reduced(), n);
}

std::string Loop::str() const {
  std::string s = "n" + std::to_string(n.at(0) + 1);
  for (std::size_t j = 0; j < m.size(); ++j) s += " " + m[j].str() + " n" + std::to_string(n[j + 1] + 1);
  return s;
}

bool loop_valid(const Loop& loop) {
  if (loop.n.size() != loop.m.size() + 1 || loop.m.empty() || loop.n.front() != loop.n.back()) return false;
  for (int v : loop.n)
    if (v < 0 || v > 4) return false;
  for (std::size_t j = 0; j < loop.m.size(); ++j)
    if (pair_reduced(loop.m[j], LatticePointN::basis(loop.n[j])) != -1 ||
        pair_reduced(loop.m[j], LatticePointN::basis(loop.n[j + 1])) != -1)
      return false;
  return true;
}

bool path_valid(int n, const LatticePointM& m, int n2, const LatticePointM& m2) {
  return loop_valid({{n, n2, n}, {m, m2}});
}

LatticePointN transfer(const LatticePointN& x, const LatticePointM& m, int n) {
  const auto nn = LatticePointN::basis(n);
  if (pair_reduced(m, nn) != -1) throw std::invalid_argument("transfer through " + m.str() + " needs <m, n> = -1");
  return x + nn * static_cast<int>(pair_reduced(m, x));
}

MonodromyOperator loop_monodromy(const Loop& loop) {
  if (!loop_valid(loop)) throw std::invalid_argument("invalid loop " + loop.str());
  MonodromyOperator op;
  op.lattice = QuotientLattice(loop.n.front());
  op.loop = loop;
  for (std::size_t col = 0; col < 3; ++col) {
    std::array<long, 3> e{};
    e[col] = 1;
    LatticePointN y = op.lattice.representative(e);
    for (std::size_t j = 0; j < loop.m.size(); ++j) y = transfer(y, loop.m[j], loop.n[j]);
    const auto c = op.lattice.coordinates(y);
    for (std::size_t row = 0; row < 3; ++row) op.matrix[row][col] = c[row];
  }
  return op;
}

MonodromyOperator monodromy(int n, const LatticePointM& m, int n2, const LatticePointM& m2) {
  return loop_monodromy({{n, n2, n}, {m, m2}});
}

Matrix3 dual_monodromy(const Matrix3& t) { return inverse_unimodular(transpose(t)); }

bool unipotent(const Matrix3& t) {
  Matrix3 d = t;
  for (int i = 0; i < 3; ++i) d[i][i] -= 1;
  return d * d == Matrix3{};
}

std::string to_string(TripleClass c) {
  switch (c) {
    case TripleClass::II: return "II";
    case TripleClass::III: return "III";
    case TripleClass::Degenerate: return "degenerate";
    default: return "invalid";
  }
}

TripleClass classify_triple(const std::array<Matrix3, 3>& t) {
  if (t[0] * t[1] * t[2] != identity3()) return TripleClass::Invalid;
  std::vector<RationalVector> rows, cols;
  for (const auto& m : t) {
    std::vector<RationalVector> d(3, RationalVector(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) d[i][j] = m[i][j] - (i == j ? 1 : 0);
    if (rank(d) != 1) return TripleClass::Invalid;
    for (int i = 0; i < 3; ++i) {
      rows.push_back(d[i]);
      cols.push_back({d[0][i], d[1][i], d[2][i]});
    }
  }
  const bool common_column = rank(cols) == 1, common_row = rank(rows) == 1;
  if (common_column && common_row) return TripleClass::Degenerate;
  if (common_column) return TripleClass::II;
  if (common_row) return TripleClass::III;
  return TripleClass::Invalid;
}

std::vector<SiteMonodromy> site_monodromies(const LocusGraph& gamma) {
  std::vector<SiteMonodromy> out;
  for (std::size_t v = 0; v < gamma.vertices.size(); ++v) {
    const auto& site = gamma.vertices[v];
    const DeltaFace host{site.host_mask};
    const auto z = host.zeros();
    std::array<Loop, 3> loops;
    if (site.kind == SiteKind::II) {
      if (z.size() != 2 || site.host_points.size() != 3) throw std::invalid_argument("II-site without a host triangle");
      const FaceChart2D chart(host);
      auto p = site.host_points;
      if (orientation(chart.to_chart(p[0]), chart.to_chart(p[1]), chart.to_chart(p[2])) < 0) std::swap(p[1], p[2]);
      for (std::size_t k = 0; k < 3; ++k) loops[k] = {{z[0], z[1], z[0]}, {p[k], p[(k + 1) % 3]}};
    } else {
      if (z.size() != 3 || site.host_points.size() != 2) throw std::invalid_argument("III-site without a host segment");
      const auto &m = site.host_points[0], &m2 = site.host_points[1];
      const int i = z[0], j = z[1], k = z[2];
      loops[0] = {{i, j, i}, {m, m2}};
      loops[1] = {{i, j, k, j, i}, {m, m, m2, m}};
      loops[2] = {{i, k, i}, {m2, m}};
    }
    SiteMonodromy sm;
    sm.vertex = static_cast<int>(v);
    sm.kind = site.kind;
    std::array<Matrix3, 3> mats;
    for (std::size_t k = 0; k < 3; ++k) {
      sm.ops[k] = loop_monodromy(loops[k]);
      mats[k] = sm.ops[k].matrix;
    }
    sm.cls = classify_triple(mats);
    out.push_back(std::move(sm));
  }
  return out;
}

}  // namespace syz
