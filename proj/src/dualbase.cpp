#include "syz/dualbase.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace syz {

namespace {

RationalVector reduced5(const LatticePointM& m) {
  const auto r = m.to_reduced();
  RationalVector out;
  for (int x : r.coords()) out.emplace_back(x);
  return out;
}

RationalVector average(const std::vector<RationalVector>& pts) {
  RationalVector out(pts.at(0).size(), Rational(0));
  for (const auto& p : pts)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += p[k];
  for (auto& x : out) x /= static_cast<long>(pts.size());
  return out;
}

std::string vec_str(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

bool is_vertex_of_delta(const LatticePointM& m) {
  return std::count(m.coords().begin(), m.coords().end(), 0) == 4;
}

}  // namespace

std::vector<int> DeltaW::facet_monomials(int f) const {
  std::vector<int> out;
  for (int facet : polytope.face(f).facets)
    for (int m : monomials_of_facet[static_cast<std::size_t>(facet)]) out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

int DeltaW::redundant_count() const {
  return static_cast<int>(std::count(facet_of_monomial.begin(), facet_of_monomial.end(), -1));
}

DeltaW build_delta_w(const WeightFunction& w_prime, const Rational& w0) {
  DeltaW dw;
  dw.monomials = w_prime.points();
  dw.weights = w_prime.values();
  dw.w0 = w0;
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < dw.monomials.size(); ++i) {
    const auto& m = dw.monomials[i];
    if (m == center()) throw std::invalid_argument("the center m0 carries no constraint");
    if (is_vertex_of_delta(m) && dw.weights[i] != w0)
      throw std::invalid_argument("weight at vertex " + m.str() + " is " + to_string(dw.weights[i]) +
                                  ", expected w0 = " + to_string(w0));
    hs.push_back({m.reduced_chart(), -dw.weights[i]});
  }
  dw.polytope = FaceLattice::from_halfspaces(Space::N, hs, &dw.facet_of_monomial);
  dw.monomials_of_facet.assign(dw.polytope.facets().size(), {});
  for (std::size_t i = 0; i < dw.facet_of_monomial.size(); ++i)
    if (dw.facet_of_monomial[i] >= 0)
      dw.monomials_of_facet[static_cast<std::size_t>(dw.facet_of_monomial[i])].push_back(static_cast<int>(i));
  return dw;
}

DeltaW build_delta_w_centered(const WeightFunction& w, const Rational& w_m0) {
  const Rational w0 = w(delta_vertex(0)) - w_m0;
  return build_delta_w(w.relative_to_center(w_m0), w0);
}

DeltaWDual dual_of(const DeltaW& dw) {
  DeltaWDual d;
  d.polytope = dw.polytope.dual();
  for (const auto& ms : dw.monomials_of_facet) {
    if (ms.size() != 1)
      throw std::domain_error("facet of Delta_w defined by " + std::to_string(ms.size()) + " monomials");
    d.vertex_monomial.push_back(ms[0]);
  }
  return d;
}

std::optional<RationalVector> PLMap::apply(const RationalVector& source_point) const {
  for (std::size_t f = 0; f < source_barycenter.size(); ++f)
    if (source_barycenter[f] == source_point) return image_barycenter[f];
  return std::nullopt;
}

PLMap face_map_pi(const DeltaW& dw, const FaceLattice& delta_dual) {
  PLMap pi;
  const auto& faces = dw.polytope.faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    std::vector<LatticePointM> s;
    for (int i : dw.facet_monomials(static_cast<int>(f))) s.push_back(dw.monomials[static_cast<std::size_t>(i)]);
    const auto zeros = minimal_face(s).zeros();
    const auto target = delta_dual.find_by_vertices(zeros);
    if (!target) throw std::logic_error("no face of Delta^vee with vertices " + minimal_face(s).str());
    pi.face_image.push_back(*target);
    pi.source_barycenter.push_back(f == 0 ? RationalVector{} : FaceLattice::lift(Space::N, dw.polytope.barycenter(static_cast<int>(f))));
    if (*target == delta_dual.empty_face())
      pi.image_barycenter.push_back(std::nullopt);
    else
      pi.image_barycenter.push_back(FaceLattice::lift(Space::N, delta_dual.barycenter(*target)));
  }
  return pi;
}

PLMap pl_dual_homeo(const FaceLattice& p, const FaceLattice& dual) {
  PLMap m;
  m.order_reversing = true;
  const Space target = other(p.space());
  for (std::size_t f = 0; f < p.faces().size(); ++f) {
    const int g = p.dual_face(static_cast<int>(f), dual);
    m.face_image.push_back(g);
    const bool boundary = static_cast<int>(f) != p.empty_face() && static_cast<int>(f) != p.whole();
    m.source_barycenter.push_back(boundary ? FaceLattice::lift(p.space(), p.barycenter(static_cast<int>(f)))
                                           : RationalVector{});
    if (boundary)
      m.image_barycenter.push_back(FaceLattice::lift(target, dual.barycenter(g)));
    else
      m.image_barycenter.push_back(std::nullopt);
  }
  return m;
}

RationalVector HMap::apply(const RationalVector& reduced) const {
  if (reduced.size() != 5) throw std::invalid_argument("h expects a reduced 5-tuple");
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::array<RationalVector, 3> p;
    for (std::size_t k = 0; k < 3; ++k) p[k] = reduced5(points[static_cast<std::size_t>(cells[c][k])]);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j) {
        std::vector<RationalVector> a = {{p[0][i], p[1][i], p[2][i]}, {p[0][j], p[1][j], p[2][j]}, {1, 1, 1}};
        RationalVector lambda;
        if (!solve(a, {reduced[i], reduced[j], 1}, lambda)) continue;
        bool inside = std::all_of(lambda.begin(), lambda.end(), [](const Rational& l) { return l >= 0; });
        for (std::size_t k = 0; inside && k < 5; ++k)
          inside = lambda[0] * p[0][k] + lambda[1] * p[1][k] + lambda[2] * p[2][k] == reduced[k];
        if (!inside) break;
        RationalVector out(4, Rational(0));
        for (std::size_t v = 0; v < 3; ++v)
          for (std::size_t k = 0; k < 4; ++k)
            out[k] += lambda[v] * image[static_cast<std::size_t>(cells[c][v])][k];
        return out;
      }
  }
  throw std::domain_error("point " + vec_str(reduced) + " lies on no Z cell");
}

HMap map_h(const DeltaW& dw, const DeltaWDual& dual, const GlobalSubdivision& z) {
  HMap h;
  h.points = dw.monomials;
  std::map<RationalVector, int> vertex_at;
  for (std::size_t v = 0; v < dual.polytope.vertices().size(); ++v)
    vertex_at[dual.polytope.vertices()[v]] = static_cast<int>(v);
  for (std::size_t i = 0; i < h.points.size(); ++i) {
    RationalVector x = h.points[i].reduced_chart();
    for (auto& c : x) c /= dw.weights[i];
    const auto it = vertex_at.find(x);
    if (it == vertex_at.end())
      throw std::domain_error("h(" + h.points[i].str() + ") is not a vertex of Delta_w^vee");
    h.image.push_back(std::move(x));
    h.vertex_of_point.push_back(it->second);
  }
  if (std::set<int>(h.vertex_of_point.begin(), h.vertex_of_point.end()).size() != vertex_at.size())
    throw std::domain_error("h is not a bijection onto the vertices of Delta_w^vee");

  std::map<LatticePointM, int> index_of;
  for (std::size_t i = 0; i < h.points.size(); ++i) index_of[h.points[i]] = static_cast<int>(i);
  const auto skeleton = two_skeleton_points();
  for (const auto& cell : z.cells) {
    std::array<int, 3> idx{};
    std::vector<int> verts;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto it = index_of.find(skeleton[static_cast<std::size_t>(cell[k])]);
      if (it == index_of.end()) throw std::invalid_argument("Z uses a point outside the weight domain");
      idx[k] = it->second;
      verts.push_back(h.vertex_of_point[static_cast<std::size_t>(it->second)]);
    }
    std::sort(verts.begin(), verts.end());
    const auto f = dual.polytope.find_by_vertices(verts);
    if (!f || dual.polytope.face(*f).dim != 2) {
      std::string name;
      for (int i : idx) name += " " + h.points[static_cast<std::size_t>(i)].str();
      throw std::domain_error("image of Z cell" + name + " is not a 2-face of Delta_w^vee");
    }
    h.cells.push_back(idx);
    h.cell_face.push_back(*f);
  }
  return h;
}

PLMap base_identification_s(const DeltaW& dw, const DeltaWDual& dual, const HMap& h) {
  const PLMap star = pl_dual_homeo(dw.polytope, dual.polytope);
  std::vector<int> point_of_vertex(dual.polytope.vertices().size(), -1);
  for (std::size_t i = 0; i < h.vertex_of_point.size(); ++i)
    point_of_vertex[static_cast<std::size_t>(h.vertex_of_point[i])] = static_cast<int>(i);
  std::vector<std::set<int>> cell_sets;
  for (const auto& c : h.cells) cell_sets.emplace_back(c.begin(), c.end());

  PLMap s;
  s.order_reversing = true;
  s.source_barycenter = star.source_barycenter;
  for (std::size_t f = 0; f < dw.polytope.faces().size(); ++f) {
    s.face_image.push_back(-1);
    s.image_barycenter.push_back(std::nullopt);
    if (!star.defined(static_cast<int>(f))) continue;
    std::vector<int> pts;
    for (int v : dual.polytope.face(star.face_image[f]).vertices)
      pts.push_back(point_of_vertex[static_cast<std::size_t>(v)]);
    // h is affine on each Z cell, so h^-1 of the barycenter of a face of an
    // image triangle is the barycenter of the corresponding lattice points.
    const bool on_cell = std::any_of(cell_sets.begin(), cell_sets.end(), [&](const std::set<int>& c) {
      return std::all_of(pts.begin(), pts.end(), [&](int p) { return c.count(p) > 0; });
    });
    if (!on_cell) continue;
    std::vector<RationalVector> coords;
    for (int p : pts) coords.push_back(reduced5(h.points[static_cast<std::size_t>(p)]));
    s.image_barycenter.back() = average(coords);
  }
  return s;
}

LocusMatch verify_locus_match(const LocusGraph& mirror, const LocusGraph& gamma, const PLMap& s) {
  LocusMatch out;
  std::map<RationalVector, int> gamma_vertex;
  for (std::size_t v = 0; v < gamma.vertices.size(); ++v) gamma_vertex[gamma.vertices[v].coords] = static_cast<int>(v);
  if (mirror.vertices.size() != gamma.vertices.size())
    out.mismatch = "vertex counts differ: " + std::to_string(mirror.vertices.size()) + " vs " +
                   std::to_string(gamma.vertices.size());

  std::vector<bool> hit(gamma.vertices.size(), false);
  for (std::size_t v = 0; v < mirror.vertices.size() && out.mismatch.empty(); ++v) {
    const auto img = s.apply(mirror.vertices[v].coords);
    if (!img) {
      out.mismatch = "s undefined at mirror vertex " + std::to_string(v);
      break;
    }
    const auto it = gamma_vertex.find(*img);
    if (it == gamma_vertex.end()) {
      out.mismatch = "mirror vertex " + std::to_string(v) + " maps to " + vec_str(*img) + ", not a site";
      break;
    }
    const auto& target = gamma.vertices[static_cast<std::size_t>(it->second)];
    if (target.kind == mirror.vertices[v].kind) {
      out.mismatch = "mirror vertex " + std::to_string(v) + " and site " + std::to_string(it->second) +
                     " carry the same kind " + to_string(target.kind);
      break;
    }
    if (hit[static_cast<std::size_t>(it->second)]) {
      out.mismatch = "site " + std::to_string(it->second) + " hit twice";
      break;
    }
    hit[static_cast<std::size_t>(it->second)] = true;
    out.vertex_map.push_back(it->second);
    ++out.matched_vertices;
  }
  if (!out.mismatch.empty()) return out;

  std::map<std::vector<RationalVector>, int> gamma_edge;
  for (std::size_t e = 0; e < gamma.edges.size(); ++e) {
    auto pl = gamma.edges[e].polyline;
    auto rev = pl;
    std::reverse(rev.begin(), rev.end());
    gamma_edge[std::min(pl, rev)] = static_cast<int>(e);
  }
  std::vector<bool> edge_hit(gamma.edges.size(), false);
  for (std::size_t e = 0; e < mirror.edges.size(); ++e) {
    const auto& me = mirror.edges[e];
    std::vector<RationalVector> pl;
    for (const auto& p : me.polyline) {
      const auto img = s.apply(p);
      if (!img) {
        out.mismatch = "s undefined on mirror edge " + std::to_string(e);
        return out;
      }
      pl.push_back(*img);
    }
    auto rev = pl;
    std::reverse(rev.begin(), rev.end());
    const auto it = gamma_edge.find(std::min(pl, rev));
    if (it == gamma_edge.end()) {
      out.mismatch = "mirror edge " + std::to_string(e) + " maps to no edge of Gamma";
      return out;
    }
    const auto& ge = gamma.edges[static_cast<std::size_t>(it->second)];
    const std::set<int> ends = {out.vertex_map[static_cast<std::size_t>(me.a)], out.vertex_map[static_cast<std::size_t>(me.b)]};
    if (ends != std::set<int>{ge.a, ge.b} || edge_hit[static_cast<std::size_t>(it->second)]) {
      out.mismatch = "mirror edge " + std::to_string(e) + " is not compatible with the vertex bijection";
      return out;
    }
    edge_hit[static_cast<std::size_t>(it->second)] = true;
    ++out.matched_edges;
  }
  for (std::size_t e = 0; e < gamma.edges.size(); ++e)
    if (!edge_hit[e]) {
      out.mismatch = "edge " + std::to_string(e) + " of Gamma from " + vec_str(gamma.edges[e].polyline.front()) +
                     " to " + vec_str(gamma.edges[e].polyline.back()) + " has no mirror partner";
      return out;
    }
  out.ok = true;
  return out;
}

}  // namespace syz
