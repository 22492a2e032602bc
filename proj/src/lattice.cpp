#include "syz/lattice.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace syz {

namespace {

int component_sum(const Exponents& c) { return std::accumulate(c.begin(), c.end(), 0); }

std::string tuple_str(const Exponents& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

}  // namespace

LatticePointM::LatticePointM(const Exponents& coords, MForm form) : coords_(coords), form_(form) {
  const int expected = form == MForm::Degree ? kDegree : 0;
  if (component_sum(coords) != expected)
    throw std::invalid_argument("M-point " + tuple_str(coords) + " has component sum " +
                                std::to_string(component_sum(coords)) + ", expected " +
                                std::to_string(expected));
}

LatticePointM LatticePointM::to_reduced() const {
  if (form_ == MForm::Reduced) return *this;
  Exponents c = coords_;
  for (auto& x : c) x -= 1;
  return {c, MForm::Reduced};
}

LatticePointM LatticePointM::to_degree() const {
  if (form_ == MForm::Degree) return *this;
  Exponents c = coords_;
  for (auto& x : c) x += 1;
  return {c, MForm::Degree};
}

RationalVector LatticePointM::reduced_chart() const {
  const auto r = to_reduced();
  return {Rational(r[0]), Rational(r[1]), Rational(r[2]), Rational(r[3])};
}

std::vector<int> LatticePointM::zero_set() const {
  const auto d = to_degree();
  std::vector<int> z;
  for (int i = 0; i < 5; ++i)
    if (d[i] == 0) z.push_back(i);
  return z;
}

std::string LatticePointM::str() const { return tuple_str(coords_); }

LatticePointN::LatticePointN(const Exponents& raw) : coords_(raw) {
  const int shift = raw[4];
  for (auto& x : coords_) x -= shift;
}

LatticePointN LatticePointN::basis(int i) {
  if (i < 0 || i > 4) throw std::out_of_range("N basis index out of range");
  Exponents e{};
  e[static_cast<std::size_t>(i)] = 1;
  return LatticePointN(e);
}

RationalVector LatticePointN::chart() const {
  return {Rational(coords_[0]), Rational(coords_[1]), Rational(coords_[2]), Rational(coords_[3])};
}

std::string LatticePointN::str() const { return "[" + tuple_str(coords_) + "]"; }

LatticePointN LatticePointN::operator+(const LatticePointN& o) const {
  Exponents c{};
  for (std::size_t i = 0; i < 5; ++i) c[i] = coords_[i] + o.coords_[i];
  return LatticePointN(c);
}

LatticePointN LatticePointN::operator-(const LatticePointN& o) const {
  Exponents c{};
  for (std::size_t i = 0; i < 5; ++i) c[i] = coords_[i] - o.coords_[i];
  return LatticePointN(c);
}

LatticePointN LatticePointN::operator*(int k) const {
  Exponents c{};
  for (std::size_t i = 0; i < 5; ++i) c[i] = coords_[i] * k;
  return LatticePointN(c);
}

long pairing(const LatticePointM& m, const LatticePointN& n) {
  if (m.form() != MForm::Reduced)
    throw std::invalid_argument("pairing needs a reduced-form M-point, got degree form " +
                                m.str());
  long s = 0;
  for (int i = 0; i < 5; ++i) s += static_cast<long>(m[i]) * n[i];
  return s;
}

LatticePointM center() { return LatticePointM::monomial({1, 1, 1, 1, 1}); }

std::vector<LatticePointM> enumerate_delta_points() {
  std::vector<LatticePointM> out;
  out.reserve(126);
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; a + b <= 5; ++b)
      for (int c = 0; a + b + c <= 5; ++c)
        for (int d = 0; a + b + c + d <= 5; ++d)
          out.push_back(LatticePointM::monomial({a, b, c, d, 5 - a - b - c - d}));
  return out;
}

bool on_two_skeleton(const LatticePointM& m) { return m.zero_set().size() >= 2; }

std::vector<LatticePointM> two_skeleton_points() {
  std::vector<LatticePointM> out;
  for (const auto& m : enumerate_delta_points())
    if (on_two_skeleton(m)) out.push_back(m);
  return out;
}

std::optional<int> two_skeleton_index(const LatticePointM& m) {
  static const std::vector<LatticePointM> points = two_skeleton_points();
  const auto d = m.to_degree();
  const auto it = std::lower_bound(points.begin(), points.end(), d);
  if (it == points.end() || *it != d) return std::nullopt;
  return static_cast<int>(it - points.begin());
}

LatticePointM delta_vertex(int i) {
  if (i < 0 || i > 4) throw std::out_of_range("Delta vertex index out of range");
  Exponents e{};
  e[static_cast<std::size_t>(i)] = 5;
  return LatticePointM::monomial(e);
}

int DeltaFace::dimension() const { return 4 - std::popcount(static_cast<unsigned>(zero_mask)); }

bool DeltaFace::contains(const LatticePointM& m) const {
  const auto d = m.to_degree();
  for (int i = 0; i < 5; ++i)
    if ((zero_mask >> i & 1) && d[i] != 0) return false;
  return zero_mask != 0x1f;
}

std::vector<int> DeltaFace::zeros() const {
  std::vector<int> z;
  for (int i = 0; i < 5; ++i)
    if (zero_mask >> i & 1) z.push_back(i);
  return z;
}

std::string DeltaFace::str() const {
  std::string s = "{";
  bool first = true;
  for (int i : zeros()) {
    if (!first) s += ",";
    s += "m" + std::to_string(i + 1);
    first = false;
  }
  return s + "=0}";
}

DeltaFace minimal_face(const std::vector<LatticePointM>& points) {
  std::uint8_t mask = 0x1f;
  for (const auto& p : points) {
    const auto d = p.to_degree();
    for (int i = 0; i < 5; ++i)
      if (d[i] != 0) mask = static_cast<std::uint8_t>(mask & ~(1u << i));
  }
  return DeltaFace{mask};
}

std::vector<DeltaFace> two_faces() {
  std::vector<DeltaFace> out;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) out.push_back(DeltaFace{static_cast<std::uint8_t>(1u << i | 1u << j)});
  return out;
}

std::vector<DeltaFace> delta_edges() {
  std::vector<DeltaFace> out;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = j + 1; k < 5; ++k)
        out.push_back(DeltaFace{static_cast<std::uint8_t>(1u << i | 1u << j | 1u << k)});
  return out;
}

FaceChart2D::FaceChart2D(const DeltaFace& face) : face_(face) {
  if (face.dimension() != 2)
    throw std::invalid_argument("face chart requested for " + face.str() + " of dimension " +
                                std::to_string(face.dimension()));
  std::size_t k = 0;
  for (int i = 0; i < 5; ++i)
    if (!(face.zero_mask >> i & 1)) free_[k++] = i;
}

std::array<int, 2> FaceChart2D::to_chart(const LatticePointM& m) const {
  const auto d = m.to_degree();
  if (!face_.contains(d)) throw std::invalid_argument(d.str() + " is not on face " + face_.str());
  return {d[free_[0]], d[free_[1]]};
}

LatticePointM FaceChart2D::from_chart(const std::array<int, 2>& ab) const {
  if (ab[0] < 0 || ab[1] < 0 || ab[0] + ab[1] > kDegree)
    throw std::invalid_argument("chart point outside the standard triangle");
  Exponents e{};
  e[static_cast<std::size_t>(free_[0])] = ab[0];
  e[static_cast<std::size_t>(free_[1])] = ab[1];
  e[static_cast<std::size_t>(free_[2])] = kDegree - ab[0] - ab[1];
  return LatticePointM::monomial(e);
}

RationalVector FaceChart2D::to_ambient(const RationalVector& ab) const {
  RationalVector r(5, Rational(-1));
  r[static_cast<std::size_t>(free_[0])] += ab[0];
  r[static_cast<std::size_t>(free_[1])] += ab[1];
  r[static_cast<std::size_t>(free_[2])] += Rational(kDegree) - ab[0] - ab[1];
  return r;
}

int FaceChart2D::linear_determinant() const {
  // Direction lattice basis e_{r1} - e_{r3}, e_{r2} - e_{r3}; compare chart
  // images of base point and translates.
  const auto base = from_chart({1, 1});
  auto shifted = [&](int which) {
    Exponents e = base.coords();
    e[static_cast<std::size_t>(free_[static_cast<std::size_t>(which)])] += 1;
    e[static_cast<std::size_t>(free_[2])] -= 1;
    const auto c = to_chart(LatticePointM::monomial(e));
    const auto c0 = to_chart(base);
    return std::array<int, 2>{c[0] - c0[0], c[1] - c0[1]};
  };
  const auto u = shifted(0), v = shifted(1);
  return u[0] * v[1] - u[1] * v[0];
}

std::vector<std::array<int, 2>> standard_triangle_points(int degree) {
  std::vector<std::array<int, 2>> out;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) out.push_back({a, b});
  return out;
}

std::vector<Integer> smith_divisors(const IntMatrix& matrix) {
  IntMatrix a = matrix;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<Integer> diag;
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // Pivot: smallest nonzero absolute value in the remaining block.
    bool found = false;
    std::size_t pr = t, pc = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (!found || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
          found = true;
        }
    if (!found) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // Enforce divisibility of the rest of the block by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  while (diag.size() < rows) diag.emplace_back(0);
  return diag;
}

std::vector<Integer> smith_quotient(const std::vector<RationalVector>& matrix) {
  IntMatrix m;
  for (const auto& row : matrix) {
    std::vector<Integer> r;
    for (const auto& x : row) {
      if (x.get_den() != 1)
        throw std::invalid_argument("smith_quotient: non-integer entry " + to_string(x));
      r.push_back(x.get_num());
    }
    m.push_back(std::move(r));
  }
  return smith_divisors(m);
}

IntMatrix quotient_map_matrix() {
  IntMatrix q(4, std::vector<Integer>(4));
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i) q[k][i] = (k == i ? 5 : 0) - 1;
  return q;
}

}  // namespace syz
