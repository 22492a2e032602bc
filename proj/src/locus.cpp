#include "syz/locus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace syz {

namespace {

using Point = RationalVector;
using Segment = std::pair<Point, Point>;

Point chart_point(const ChartPoint& p) { return {Rational(p[0]), Rational(p[1])}; }

Point average(const std::vector<Point>& pts) {
  Point out(pts.at(0).size(), Rational(0));
  for (const auto& p : pts)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += p[k];
  for (auto& x : out) x /= static_cast<long>(pts.size());
  return out;
}

Segment segment(Point a, Point b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

std::string chart_str(const ChartPoint& p) { return "(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + ")"; }

}  // namespace

std::string to_string(SiteKind k) { return k == SiteKind::II ? "II" : "III"; }

int LocusGraph::count(SiteKind k) const {
  return static_cast<int>(std::count_if(vertices.begin(), vertices.end(), [k](const auto& v) { return v.kind == k; }));
}

std::vector<int> LocusGraph::degrees() const {
  std::vector<int> d(vertices.size(), 0);
  for (const auto& e : edges) {
    ++d[static_cast<std::size_t>(e.a)];
    ++d[static_cast<std::size_t>(e.b)];
  }
  for (const auto& l : legs) ++d[static_cast<std::size_t>(l.vertex)];
  return d;
}

LocusGraph face_graph(const Triangulation& t) {
  if (!t.generic()) throw std::domain_error("face_graph needs a simplicial subdivision using every point");
  LocusGraph g;
  std::map<std::array<int, 2>, std::vector<int>> edge_cells;
  for (std::size_t c = 0; c < t.cells.size(); ++c) {
    const auto& cell = t.cells[c];
    std::vector<Point> corners;
    std::string host = "triangle";
    for (int i : cell) {
      corners.push_back(chart_point(t.points[static_cast<std::size_t>(i)]));
      host += " " + chart_str(t.points[static_cast<std::size_t>(i)]);
    }
    LocusVertex v;
    v.coords = average(corners);
    v.kind = SiteKind::II;
    v.host = host;
    g.vertices.push_back(std::move(v));
    edge_cells[{cell[0], cell[1]}].push_back(static_cast<int>(c));
    edge_cells[{cell[0], cell[2]}].push_back(static_cast<int>(c));
    edge_cells[{cell[1], cell[2]}].push_back(static_cast<int>(c));
  }
  for (const auto& [edge, cells] : edge_cells) {
    const Point mid = average({chart_point(t.points[static_cast<std::size_t>(edge[0])]),
                               chart_point(t.points[static_cast<std::size_t>(edge[1])])});
    if (cells.size() == 2) {
      LocusEdge e;
      e.a = cells[0];
      e.b = cells[1];
      e.polyline = {g.vertices[static_cast<std::size_t>(e.a)].coords, mid, g.vertices[static_cast<std::size_t>(e.b)].coords};
      g.edges.push_back(std::move(e));
    } else if (cells.size() == 1) {
      LocusLeg l;
      l.vertex = cells[0];
      l.polyline = {g.vertices[static_cast<std::size_t>(l.vertex)].coords, mid};
      g.legs.push_back(std::move(l));
    } else {
      throw std::logic_error("edge shared by more than two triangles");
    }
  }
  return g;
}

int region_count(const Triangulation& t, const LocusGraph& g) {
  std::set<Segment> graph_segments;
  auto add_polyline = [&](const std::vector<Point>& pl) {
    for (std::size_t i = 0; i + 1 < pl.size(); ++i) graph_segments.insert(segment(pl[i], pl[i + 1]));
  };
  for (const auto& e : g.edges) add_polyline(e.polyline);
  for (const auto& l : g.legs) add_polyline(l.polyline);

  // Small triangles (corner, edge midpoint, barycenter) of the barycentric
  // subdivision, glued along sides not covered by the graph.
  std::vector<int> corner_of;
  std::map<Segment, std::vector<int>> sides;
  for (const auto& cell : t.cells) {
    std::vector<Point> c;
    for (int i : cell) c.push_back(chart_point(t.points[static_cast<std::size_t>(i)]));
    const Point bary = average(c);
    for (std::size_t v = 0; v < c.size(); ++v)
      for (std::size_t w = 0; w < c.size(); ++w) {
        if (v == w) continue;
        const Point mid = average({c[v], c[w]});
        const int id = static_cast<int>(corner_of.size());
        corner_of.push_back(cell[v]);
        sides[segment(c[v], mid)].push_back(id);
        sides[segment(mid, bary)].push_back(id);
        sides[segment(c[v], bary)].push_back(id);
      }
  }
  UnionFind uf(corner_of.size());
  for (const auto& [side, ids] : sides) {
    if (graph_segments.count(side)) continue;
    for (std::size_t i = 1; i < ids.size(); ++i) uf.unite(ids[0], ids[i]);
  }
  std::map<int, std::set<int>> regions;
  for (std::size_t i = 0; i < corner_of.size(); ++i) regions[uf.find(static_cast<int>(i))].insert(corner_of[i]);
  for (const auto& [root, corners] : regions)
    if (corners.size() != 1) throw std::logic_error("a region of the face graph holds several lattice points");
  return static_cast<int>(regions.size());
}

FaceFragment face_fragment(const DeltaFace& face, const Triangulation& t) {
  const FaceChart2D chart(face);
  LocusGraph g = face_graph(t);
  auto to_ambient = [&](const Point& p) { return chart.to_ambient(p); };
  for (std::size_t c = 0; c < g.vertices.size(); ++c) {
    auto& v = g.vertices[c];
    v.coords = to_ambient(v.coords);
    v.host_mask = face.zero_mask;
    v.host = "face " + face.str() + " triangle";
    for (int i : t.cells[c]) {
      v.host_points.push_back(chart.from_chart(t.points[static_cast<std::size_t>(i)]));
      v.host += " " + v.host_points.back().str();
    }
  }
  for (auto& e : g.edges)
    for (auto& p : e.polyline) p = to_ambient(p);
  for (auto& l : g.legs)
    for (auto& p : l.polyline) p = to_ambient(p);
  return {face, std::move(g)};
}

LocusGraph assemble_global(const std::vector<FaceFragment>& fragments) {
  LocusGraph g;
  std::map<Point, std::vector<std::pair<int, std::vector<Point>>>> open_ends;
  for (const auto& frag : fragments) {
    const int offset = static_cast<int>(g.vertices.size());
    for (const auto& v : frag.graph.vertices) g.vertices.push_back(v);
    for (auto e : frag.graph.edges) {
      e.a += offset;
      e.b += offset;
      g.edges.push_back(std::move(e));
    }
    for (const auto& l : frag.graph.legs) open_ends[l.polyline.back()].push_back({l.vertex + offset, l.polyline});
  }
  for (const auto& [end, legs] : open_ends) {
    if (legs.size() != 3) {
      std::string where;
      for (const auto& x : end) where += to_string(x) + " ";
      throw std::domain_error("dangling legs: " + std::to_string(legs.size()) + " leg(s) end at (" + where +
                              ") instead of 3");
    }
    // end = m0-reduced midpoint of a unit segment on an edge of Delta.
    LocusVertex site;
    site.coords = end;
    site.kind = SiteKind::III;
    Exponents twice{};
    for (std::size_t k = 0; k < 5; ++k) {
      const Rational d = (end[k] + 1) * 2;
      twice[k] = static_cast<int>(d.get_num().get_si());
    }
    std::uint8_t mask = 0;
    Exponents lo{}, hi{};
    bool low_done = false;
    for (std::size_t k = 0; k < 5; ++k) {
      if (twice[k] == 0) mask = static_cast<std::uint8_t>(mask | 1u << k);
      lo[k] = hi[k] = twice[k] / 2;
      if (twice[k] % 2) {
        if (!low_done) {
          lo[k] = twice[k] / 2 + 1;
          hi[k] = twice[k] / 2;
          low_done = true;
        } else {
          lo[k] = twice[k] / 2;
          hi[k] = twice[k] / 2 + 1;
        }
      }
    }
    site.host_mask = mask;
    site.host_points = {LatticePointM::monomial(lo), LatticePointM::monomial(hi)};
    site.host = "edge " + DeltaFace{mask}.str() + " segment " + site.host_points[0].str() + " " +
                site.host_points[1].str();
    const int id = static_cast<int>(g.vertices.size());
    g.vertices.push_back(std::move(site));
    for (const auto& [vertex, polyline] : legs) g.edges.push_back({vertex, id, polyline});
  }
  return g;
}

LocusGraph singular_locus(const GlobalSubdivision& z) {
  std::vector<FaceFragment> frags;
  for (std::size_t f = 0; f < z.faces.size(); ++f) frags.push_back(face_fragment(z.faces[f], z.per_face[f]));
  return assemble_global(frags);
}

LocusGraph singular_locus(const WeightFunction& w) { return singular_locus(subdivide(w)); }

LocusGraph mirror_locus(const FaceLattice& dw, const FaceLattice& delta_dual, const std::vector<int>& pi) {
  if (pi.size() != dw.faces().size())
    throw std::invalid_argument("face map covers " + std::to_string(pi.size()) + " of " +
                                std::to_string(dw.faces().size()) + " faces");
  std::vector<int> candidates;
  std::map<int, int> local;
  for (std::size_t f = 0; f < dw.faces().size(); ++f) {
    const int d = dw.face(static_cast<int>(f)).dim;
    if (d != 1 && d != 2) continue;
    if (pi[f] < 0) throw std::invalid_argument("face map missing for face " + std::to_string(f));
    if (delta_dual.face(pi[f]).dim < 1) continue;
    local[static_cast<int>(f)] = static_cast<int>(candidates.size());
    candidates.push_back(static_cast<int>(f));
  }
  std::vector<std::vector<int>> adj(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (dw.face(candidates[i]).dim != 1) continue;
    for (std::size_t j = 0; j < candidates.size(); ++j)
      if (dw.face(candidates[j]).dim == 2 && dw.is_subface(candidates[i], candidates[j])) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
  }
  auto point_of = [&](int c) { return FaceLattice::lift(Space::N, dw.barycenter(candidates[static_cast<std::size_t>(c)])); };

  LocusGraph g;
  std::vector<int> vertex_of(candidates.size(), -1);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (adj[c].size() == 2) continue;
    LocusVertex v;
    v.coords = point_of(static_cast<int>(c));
    const int image_dim = delta_dual.face(pi[static_cast<std::size_t>(candidates[c])]).dim;
    v.kind = image_dim == 1 ? SiteKind::III : SiteKind::II;
    v.host_face = candidates[c];
    v.host = "face " + std::to_string(candidates[c]) + " (dim " + std::to_string(dw.face(candidates[c]).dim) +
             ") of Delta_w";
    vertex_of[c] = static_cast<int>(g.vertices.size());
    g.vertices.push_back(std::move(v));
  }
  std::set<std::pair<int, int>> used;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (vertex_of[c] < 0) continue;
    for (int next : adj[c]) {
      int prev = static_cast<int>(c), cur = next;
      if (used.count({prev, cur})) continue;
      LocusEdge e;
      e.a = vertex_of[c];
      e.polyline = {point_of(prev)};
      used.insert({prev, cur});
      while (vertex_of[static_cast<std::size_t>(cur)] < 0) {
        e.polyline.push_back(point_of(cur));
        const auto& nb = adj[static_cast<std::size_t>(cur)];
        const int step = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = step;
        used.insert({prev, cur});
      }
      used.insert({cur, prev});
      e.polyline.push_back(point_of(cur));
      e.b = vertex_of[static_cast<std::size_t>(cur)];
      g.edges.push_back(std::move(e));
    }
  }
  return g;
}

}  // namespace syz
