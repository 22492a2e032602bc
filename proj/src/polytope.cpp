#include "syz/polytope.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace syz {

namespace {

using Bits = boost::dynamic_bitset<>;
using IntVec = std::vector<Integer>;

Integer idot(const IntVec& a, const IntVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void make_primitive(IntVec& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

IntVec primitive_from_rational(const RationalVector& v) {
  const Integer den = common_denominator(v);
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) {
    Rational y = x * den;
    out.push_back(y.get_num());
  }
  make_primitive(out);
  return out;
}

int affine_rank(const std::vector<RationalVector>& pts) {
  if (pts.empty()) return -1;
  std::vector<RationalVector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RationalVector d(pts[i].size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = pts[i][k] - pts[0][k];
    diffs.push_back(std::move(d));
  }
  return diffs.empty() ? 0 : rank(diffs);
}

std::vector<int> bits_to_list(const Bits& b) {
  std::vector<int> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(static_cast<int>(i));
  return out;
}

Rational eval(const Halfspace& h, const RationalVector& x) { return dot(h.normal, x) - h.rhs; }

}  // namespace

std::vector<std::vector<Integer>> extreme_rays(const std::vector<std::vector<Integer>>& rows) {
  if (rows.empty()) throw std::invalid_argument("extreme_rays: no constraints");
  const std::size_t k = rows[0].size();
  const std::size_t nrows = rows.size();

  // Greedy choice of k independent rows.
  std::vector<std::size_t> basis_rows;
  std::vector<RationalVector> chosen;
  for (std::size_t i = 0; i < nrows && basis_rows.size() < k; ++i) {
    RationalVector r(rows[i].begin(), rows[i].end());
    chosen.push_back(r);
    if (rank(chosen) == static_cast<int>(chosen.size())) {
      basis_rows.push_back(i);
    } else {
      chosen.pop_back();
    }
  }
  if (basis_rows.size() < k) throw std::invalid_argument("extreme_rays: cone is not pointed");

  std::vector<IntVec> rays;
  std::vector<Bits> zeros;
  Bits processed(nrows);
  for (std::size_t i : basis_rows) processed.set(i);
  for (std::size_t c = 0; c < k; ++c) {
    RationalVector e(k, Rational(0)), x;
    e[c] = 1;
    solve(chosen, e, x);
    IntVec ray = primitive_from_rational(x);
    Bits z(nrows);
    for (std::size_t j = 0; j < k; ++j)
      if (j != c) z.set(basis_rows[j]);
    rays.push_back(std::move(ray));
    zeros.push_back(std::move(z));
  }

  for (std::size_t r = 0; r < nrows; ++r) {
    if (processed.test(r)) continue;
    const IntVec& a = rows[r];
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = idot(a, rays[i]);
      const int s = sgn(val[i]);
      (s > 0 ? pos : s < 0 ? neg : zer).push_back(i);
    }
    processed.set(r);
    if (neg.empty()) {
      for (std::size_t i : zer) zeros[i].set(r);
      continue;
    }
    std::vector<IntVec> next_rays;
    std::vector<Bits> next_zeros;
    for (std::size_t i : pos) {
      next_rays.push_back(rays[i]);
      next_zeros.push_back(zeros[i]);
    }
    for (std::size_t i : zer) {
      next_rays.push_back(rays[i]);
      next_zeros.push_back(zeros[i]);
      next_zeros.back().set(r);
    }
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        Bits common = zeros[p] & zeros[n];
        if (common.count() + 2 < k) continue;
        bool adjacent = true;
        for (std::size_t q = 0; q < rays.size() && adjacent; ++q) {
          if (q == p || q == n) continue;
          if (common.is_subset_of(zeros[q])) adjacent = false;
        }
        if (!adjacent) continue;
        IntVec ray(k);
        for (std::size_t c = 0; c < k; ++c) ray[c] = val[p] * rays[n][c] - val[n] * rays[p][c];
        make_primitive(ray);
        common.set(r);
        next_rays.push_back(std::move(ray));
        next_zeros.push_back(std::move(common));
      }
    }
    rays = std::move(next_rays);
    zeros = std::move(next_zeros);
  }
  return rays;
}

RationalVector FaceLattice::lift(Space space, const RationalVector& coords) {
  RationalVector out = coords;
  Rational s = 0;
  for (const auto& x : coords) s += x;
  out.push_back(space == Space::M ? Rational(-s) : Rational(0));
  return out;
}

FaceLattice FaceLattice::from_pair(Space space, std::vector<RationalVector> vertices,
                                   std::vector<Halfspace> facets) {
  FaceLattice p;
  p.space_ = space;
  p.dim_ = vertices.empty() ? 0 : static_cast<int>(vertices[0].size());
  p.vertices_ = std::move(vertices);
  p.facets_ = std::move(facets);
  p.build_faces();
  return p;
}

FaceLattice FaceLattice::from_halfspaces(Space space, const std::vector<Halfspace>& halfspaces,
                                         std::vector<int>* facet_of_input) {
  if (halfspaces.empty()) throw std::invalid_argument("no halfspaces given");
  const std::size_t d = halfspaces[0].normal.size();
  std::vector<IntVec> rows;
  for (const auto& h : halfspaces) {
    RationalVector r = h.normal;
    r.push_back(-h.rhs);
    rows.push_back(primitive_from_rational(r));
  }
  IntVec lambda(d + 1, Integer(0));
  lambda[d] = 1;
  rows.push_back(lambda);

  std::vector<IntVec> rays;
  try {
    rays = extreme_rays(rows);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("halfspaces do not bound a polytope");
  }
  std::vector<RationalVector> verts;
  for (const auto& ray : rays) {
    if (ray[d] == 0) throw std::invalid_argument("halfspaces define an unbounded region");
    RationalVector v(d);
    for (std::size_t c = 0; c < d; ++c) v[c] = make_rational(ray[c], ray[d]);
    verts.push_back(std::move(v));
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (affine_rank(verts) != static_cast<int>(d))
    throw std::invalid_argument("halfspaces define an empty or lower-dimensional polytope");

  std::vector<Halfspace> facets;
  std::map<std::vector<int>, int> seen;
  std::vector<int> index(halfspaces.size(), -1);
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    std::vector<int> tight;
    std::vector<RationalVector> tight_pts;
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (eval(halfspaces[i], verts[v]) == 0) {
        tight.push_back(static_cast<int>(v));
        tight_pts.push_back(verts[v]);
      }
    if (affine_rank(tight_pts) != static_cast<int>(d) - 1) continue;
    auto [it, inserted] = seen.emplace(tight, static_cast<int>(facets.size()));
    if (inserted) facets.push_back(halfspaces[i]);
    index[i] = it->second;
  }
  if (facet_of_input) *facet_of_input = std::move(index);
  return from_pair(space, std::move(verts), std::move(facets));
}

FaceLattice FaceLattice::from_points(Space space, const std::vector<RationalVector>& points) {
  if (points.empty()) throw std::invalid_argument("convex hull of no points");
  std::vector<RationalVector> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t d = pts[0].size();
  if (affine_rank(pts) != static_cast<int>(d))
    throw std::invalid_argument("points do not span a full-dimensional polytope");

  RationalVector c(d, Rational(0));
  for (const auto& p : pts)
    for (std::size_t k = 0; k < d; ++k) c[k] += p[k];
  for (auto& x : c) x /= static_cast<long>(pts.size());

  std::vector<IntVec> rows;
  for (const auto& p : pts) {
    RationalVector r(d + 1);
    for (std::size_t k = 0; k < d; ++k) r[k] = p[k] - c[k];
    r[d] = 1;
    rows.push_back(primitive_from_rational(r));
  }
  IntVec mu(d + 1, Integer(0));
  mu[d] = 1;
  rows.push_back(mu);

  std::vector<Halfspace> facets;
  for (const auto& ray : extreme_rays(rows)) {
    if (ray[d] == 0) throw std::logic_error("polar of a polytope around an interior point is unbounded");
    // <y, x - c> >= -1 with y = ray/mu, scaled to a primitive normal.
    RationalVector y(d);
    for (std::size_t k = 0; k < d; ++k) y[k] = make_rational(ray[k], ray[d]);
    IntVec g = primitive_from_rational(y);
    Halfspace h;
    for (const auto& x : g) h.normal.emplace_back(x);
    const Rational scale = h.normal[0] != 0 ? h.normal[0] / y[0]
                           : h.normal[1] != 0 ? h.normal[1] / y[1]
                           : h.normal[2] != 0 ? h.normal[2] / y[2]
                                              : h.normal[3] / y[3];
    h.rhs = dot(h.normal, c) - scale;
    facets.push_back(std::move(h));
  }
  std::sort(facets.begin(), facets.end(), [](const Halfspace& a, const Halfspace& b) {
    return a.normal != b.normal ? a.normal < b.normal : a.rhs < b.rhs;
  });

  std::vector<RationalVector> verts;
  for (const auto& p : pts) {
    std::vector<RationalVector> normals;
    for (const auto& f : facets)
      if (eval(f, p) == 0) normals.push_back(f.normal);
    if (!normals.empty() && rank(normals) == static_cast<int>(d)) verts.push_back(p);
  }
  return from_pair(space, std::move(verts), std::move(facets));
}

void FaceLattice::build_faces() {
  const std::size_t nv = vertices_.size();
  const std::size_t nf = facets_.size();
  std::vector<Bits> facet_bits(nf, Bits(nv));
  for (std::size_t f = 0; f < nf; ++f)
    for (std::size_t v = 0; v < nv; ++v)
      if (eval(facets_[f], vertices_[v]) == 0) facet_bits[f].set(v);
      else if (eval(facets_[f], vertices_[v]) < 0)
        throw std::logic_error("vertex violates a facet inequality");

  std::set<Bits> found;
  std::vector<Bits> queue;
  Bits all(nv);
  all.set();
  found.insert(all);
  queue.push_back(all);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Bits current = queue[q];
    for (const auto& fb : facet_bits) {
      Bits next = current & fb;
      if (next == current) continue;
      if (found.insert(next).second) queue.push_back(next);
    }
  }

  faces_.clear();
  for (const auto& b : found) {
    Face face;
    face.vertices = bits_to_list(b);
    std::vector<RationalVector> normals;
    for (std::size_t f = 0; f < nf; ++f)
      if (b.is_subset_of(facet_bits[f])) {
        face.facets.push_back(static_cast<int>(f));
        normals.push_back(facets_[f].normal);
      }
    face.dim = face.vertices.empty() ? -1 : dim_ - (normals.empty() ? 0 : rank(normals));
    faces_.push_back(std::move(face));
  }
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
  });
  by_vertices_.clear();
  by_facets_.clear();
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    by_vertices_[faces_[i].vertices] = static_cast<int>(i);
    by_facets_[faces_[i].facets] = static_cast<int>(i);
  }
}

std::vector<int> FaceLattice::faces_of_dimension(int d) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].dim == d) out.push_back(static_cast<int>(i));
  return out;
}

std::optional<int> FaceLattice::find_by_vertices(const std::vector<int>& vertices) const {
  auto it = by_vertices_.find(vertices);
  if (it == by_vertices_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FaceLattice::find_by_facets(const std::vector<int>& facets) const {
  auto it = by_facets_.find(facets);
  if (it == by_facets_.end()) return std::nullopt;
  return it->second;
}

int FaceLattice::face_spanned_by(const std::vector<int>& vertices) const {
  if (vertices.empty()) return empty_face();
  std::vector<int> common;
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    bool all = true;
    for (int v : vertices)
      if (eval(facets_[f], vertices_.at(static_cast<std::size_t>(v))) != 0) {
        all = false;
        break;
      }
    if (all) common.push_back(static_cast<int>(f));
  }
  auto idx = find_by_facets(common);
  if (!idx) throw std::logic_error("facet set of a vertex set is not a face");
  return *idx;
}

bool FaceLattice::is_subface(int f, int g) const {
  const auto& a = face(f).vertices;
  const auto& b = face(g).vertices;
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool FaceLattice::contains(const RationalVector& x) const {
  for (const auto& h : facets_)
    if (eval(h, x) < 0) return false;
  return true;
}

bool FaceLattice::origin_in_interior() const {
  for (const auto& h : facets_)
    if (h.rhs >= 0) return false;
  return true;
}

FaceLattice FaceLattice::dual() const {
  if (!origin_in_interior()) throw std::logic_error("dual polytope needs 0 in the interior");
  std::vector<RationalVector> verts;
  for (const auto& h : facets_) {
    RationalVector v = h.normal;
    for (auto& x : v) x /= -h.rhs;
    verts.push_back(std::move(v));
  }
  std::vector<Halfspace> facets;
  for (const auto& v : vertices_) facets.push_back(Halfspace{v, Rational(-1)});
  return from_pair(other(space_), std::move(verts), std::move(facets));
}

int FaceLattice::dual_face(int f, const FaceLattice& dual) const {
  auto idx = dual.find_by_vertices(face(f).facets);
  if (!idx) throw std::logic_error("dual face not found; is `dual` the polar of this polytope?");
  return *idx;
}

RationalVector FaceLattice::barycenter(int f) const {
  const auto& vs = face(f).vertices;
  if (vs.empty()) throw std::invalid_argument("barycenter of the empty face");
  RationalVector b(static_cast<std::size_t>(dim_), Rational(0));
  for (int v : vs)
    for (std::size_t k = 0; k < b.size(); ++k) b[k] += vertices_[static_cast<std::size_t>(v)][k];
  for (auto& x : b) x /= static_cast<long>(vs.size());
  return b;
}

std::pair<FaceLattice, FaceLattice> dual_simplex() {
  std::vector<RationalVector> m_vertices, n_vertices;
  for (int i = 0; i < 5; ++i) {
    RationalVector m(4), n(4);
    for (int k = 0; k < 4; ++k) {
      m[k] = (k == i ? 5 : 0) - 1;
      n[k] = i == 4 ? -1 : (k == i ? 1 : 0);
    }
    m_vertices.push_back(m);
    n_vertices.push_back(n);
  }
  std::vector<Halfspace> delta_facets, dual_facets;
  for (int i = 0; i < 5; ++i) {
    delta_facets.push_back({n_vertices[static_cast<std::size_t>(i)], Rational(-1)});
    dual_facets.push_back({m_vertices[static_cast<std::size_t>(i)], Rational(-1)});
  }
  return {FaceLattice::from_pair(Space::M, m_vertices, delta_facets),
          FaceLattice::from_pair(Space::N, n_vertices, dual_facets)};
}

}  // namespace syz
