#include "syz/subdivision.hpp"

#include "syz/polytope.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace syz {

namespace {

std::string point_str(const ChartPoint& p) {
  return "(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + ")";
}

std::vector<Integer> integer_row(const RationalVector& v) {
  const Integer den = common_denominator(v);
  std::vector<Integer> out;
  for (const auto& x : v) out.push_back(Rational(x * den).get_num());
  return out;
}

}  // namespace

long orientation(const ChartPoint& p, const ChartPoint& q, const ChartPoint& r) {
  return static_cast<long>(q[0] - p[0]) * (r[1] - p[1]) - static_cast<long>(q[1] - p[1]) * (r[0] - p[0]);
}

bool Triangulation::simplicial() const {
  return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.size() == 3; });
}

std::vector<int> Triangulation::unused_points() const {
  std::vector<bool> used(points.size(), false);
  for (const auto& c : cells)
    for (int i : c) used[static_cast<std::size_t>(i)] = true;
  std::vector<int> out;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<std::array<int, 2>> Triangulation::edges() const {
  std::set<std::array<int, 2>> e;
  for (const auto& c : cells) {
    if (c.size() != 3) throw std::logic_error("edges of a non-simplicial subdivision");
    e.insert({c[0], c[1]});
    e.insert({c[0], c[2]});
    e.insert({c[1], c[2]});
  }
  return {e.begin(), e.end()};
}

Triangulation lower_hull(const ChartWeights& w) {
  if (w.points.size() != w.values.size()) throw std::invalid_argument("weights and points differ in size");
  const std::size_t n = w.points.size();
  Triangulation t;
  t.points = w.points;
  std::set<std::vector<int>> seen;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto &p = w.points[i], &q = w.points[j], &r = w.points[k];
        if (orientation(p, q, r) == 0) continue;
        std::vector<RationalVector> a = {{1, p[0], p[1]}, {1, q[0], q[1]}, {1, r[0], r[1]}};
        RationalVector sol;
        solve(a, {w.values[i], w.values[j], w.values[k]}, sol);
        const AffineFunction2D plane{sol[0], sol[1], sol[2]};
        std::vector<int> tight;
        bool below = true;
        for (std::size_t s = 0; s < n && below; ++s) {
          const Rational v = plane(w.points[s]);
          if (v > w.values[s]) below = false;
          else if (v == w.values[s]) tight.push_back(static_cast<int>(s));
        }
        if (!below || !seen.insert(tight).second) continue;
        t.cells.push_back(tight);
        t.certificates.push_back(plane);
      }
  // Deterministic order.
  std::vector<std::size_t> order(t.cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return t.cells[a] < t.cells[b]; });
  Triangulation sorted;
  sorted.points = t.points;
  for (auto i : order) {
    sorted.cells.push_back(t.cells[i]);
    sorted.certificates.push_back(t.certificates[i]);
  }
  return sorted;
}

ConvexityReport2D is_convex_2d(const ChartWeights& w) {
  if (w.points != standard_triangle_points() || w.values.size() != w.points.size())
    throw std::invalid_argument("is_convex_2d expects the 21 points of the standard triangle, got " +
                                std::to_string(w.points.size()) + " points");
  const Triangulation t = lower_hull(w);
  ConvexityReport2D report;
  report.certificates.resize(w.points.size());
  std::vector<bool> supported(w.points.size(), false);
  for (std::size_t c = 0; c < t.cells.size(); ++c)
    for (int i : t.cells[c])
      if (!supported[static_cast<std::size_t>(i)]) {
        supported[static_cast<std::size_t>(i)] = true;
        report.certificates[static_cast<std::size_t>(i)] = t.certificates[c];
      }
  for (std::size_t i = 0; i < supported.size(); ++i)
    if (!supported[i]) {
      report.violator = static_cast<int>(i);
      report.certificates.clear();
      return report;
    }
  report.convex = true;
  return report;
}

Triangulation regular_subdivision(const ChartWeights& w) {
  Triangulation t = lower_hull(w);
  const auto unused = t.unused_points();
  if (!unused.empty())
    throw std::domain_error("weight is not convex: point " +
                            point_str(w.points[static_cast<std::size_t>(unused[0])]) +
                            " lies above the lower hull");
  return t;
}

// ---------------------------------------------------------------------------

WeightFunction::WeightFunction(std::vector<LatticePointM> points, RationalVector values,
                               std::optional<Rational> w_m0)
    : points_(std::move(points)), values_(std::move(values)), w_m0_(std::move(w_m0)) {
  if (points_.size() != values_.size())
    throw std::invalid_argument("weight function: " + std::to_string(points_.size()) + " points but " +
                                std::to_string(values_.size()) + " values");
  for (auto& p : points_) p = p.to_degree();
  std::set<LatticePointM> unique(points_.begin(), points_.end());
  if (unique.size() != points_.size()) throw std::invalid_argument("weight function: repeated point");
  skeleton_order_ = points_ == two_skeleton_points();
}

WeightFunction WeightFunction::on_skeleton(const std::function<Rational(const LatticePointM&)>& f,
                                           std::optional<Rational> w_m0) {
  auto pts = two_skeleton_points();
  RationalVector vals;
  for (const auto& p : pts) vals.push_back(f(p));
  return {std::move(pts), std::move(vals), std::move(w_m0)};
}

bool WeightFunction::has(const LatticePointM& m) const {
  return std::find(points_.begin(), points_.end(), m.to_degree()) != points_.end();
}

const Rational& WeightFunction::operator()(const LatticePointM& m) const {
  const auto d = m.to_degree();
  if (skeleton_order_) {
    if (auto idx = two_skeleton_index(d)) return values_[static_cast<std::size_t>(*idx)];
  }
  const auto it = std::find(points_.begin(), points_.end(), d);
  if (it == points_.end()) throw std::out_of_range("no weight at " + d.str());
  return values_[static_cast<std::size_t>(it - points_.begin())];
}

bool WeightFunction::on_skeleton_domain() const {
  if (points_.size() != 105) return false;
  std::vector<LatticePointM> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  return sorted == two_skeleton_points();
}

ChartWeights WeightFunction::restrict_to(const DeltaFace& face) const {
  FaceChart2D chart(face);
  ChartWeights cw;
  cw.points = standard_triangle_points();
  for (const auto& p : cw.points) cw.values.push_back((*this)(chart.from_chart(p)));
  return cw;
}

WeightFunction WeightFunction::relative_to_center(const Rational& w_m0) const {
  RationalVector v = values_;
  for (auto& x : v) x -= w_m0;
  return {points_, std::move(v), w_m0};
}

WeightFunction WeightFunction::scaled(const Rational& s) const {
  RationalVector v = values_;
  for (auto& x : v) x *= s;
  std::optional<Rational> c;
  if (w_m0_) c = *w_m0_ * s;
  return {points_, std::move(v), c};
}

WeightFunction WeightFunction::plus_linear(const RationalVector& n) const {
  RationalVector v = values_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += dot(points_[i].reduced_chart(), n);
  return {points_, std::move(v), w_m0_};
}

WeightFunction standard_weights() {
  return WeightFunction::on_skeleton([](const LatticePointM& m) -> Rational {
    long s = 0;
    for (int i = 0; i < 5; ++i) s += static_cast<long>(m[i]) * m[i];
    return Rational(s);
  });
}

WeightFunction figure4_weights() {
  const std::map<Exponents, Rational> bump = {
      {{0, 4, 1, 0, 0}, Rational(-1)},
      {{1, 2, 2, 0, 0}, Rational(1)},
      {{1, 4, 0, 0, 0}, Rational(3, 2)},
      {{2, 2, 1, 0, 0}, Rational(3, 2)},
  };
  const auto base = standard_weights();
  return WeightFunction::on_skeleton([&](const LatticePointM& m) -> Rational {
    auto it = bump.find(m.coords());
    return base(m) + (it == bump.end() ? Rational(0) : it->second);
  });
}

WeightFunction random_generic_weights(std::uint64_t seed, int spread) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-spread, spread);
  const auto base = standard_weights();
  for (;;) {
    RationalVector vals;
    for (const auto& m : base.points()) {
      const bool vertex = std::count(m.coords().begin(), m.coords().end(), 0) == 4;
      vals.push_back(base(m) + (vertex ? Rational(0) : make_rational(dist(rng), 100)));
    }
    WeightFunction w(base.points(), std::move(vals));
    try {
      subdivide(w);
      return w;
    } catch (const std::domain_error&) {
    }
  }
}

GlobalSubdivision subdivide(const WeightFunction& w) {
  GlobalSubdivision g;
  std::set<std::array<int, 3>> cells;
  for (const auto& face : two_faces()) {
    const ChartWeights cw = w.restrict_to(face);
    Triangulation t = lower_hull(cw);
    const FaceChart2D chart(face);
    const auto unused = t.unused_points();
    if (!unused.empty())
      throw NonGenericError(face, unused,
                            "weight is not convex on face " + face.str() + ": point " +
                                chart.from_chart(cw.points[static_cast<std::size_t>(unused[0])]).str() +
                                " is not on the lower hull");
    for (const auto& c : t.cells)
      if (c.size() != 3) {
        std::string pts;
        for (int i : c) pts += chart.from_chart(cw.points[static_cast<std::size_t>(i)]).str() + " ";
        throw NonGenericError(face, c, "non-generic weight on face " + face.str() + ": flat cell " + pts);
      }
    for (const auto& c : t.cells) {
      std::array<int, 3> cell{};
      for (std::size_t k = 0; k < 3; ++k)
        cell[k] = *two_skeleton_index(chart.from_chart(cw.points[static_cast<std::size_t>(c[k])]));
      std::sort(cell.begin(), cell.end());
      cells.insert(cell);
    }
    g.faces.push_back(face);
    g.per_face.push_back(std::move(t));
  }
  g.cells.assign(cells.begin(), cells.end());
  return g;
}

bool same_chamber(const WeightFunction& w1, const WeightFunction& w2) {
  return subdivide(w1).cells == subdivide(w2).cells;
}

// ---------------------------------------------------------------------------

ConvexityReportSkeleton is_convex_rel_skeleton(const WeightFunction& w_prime) {
  if (!w_prime.on_skeleton_domain())
    throw std::invalid_argument("is_convex_rel_skeleton expects the 105 points of the 2-skeleton, got " +
                                std::to_string(w_prime.points().size()) + " points");
  // Vertices of Q = {n : <m - m0, n> <= w'_m}, from the homogenized cone.
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < w_prime.points().size(); ++i) {
    const auto m = w_prime.points()[i].reduced_chart();
    rows.push_back(integer_row({-m[0], -m[1], -m[2], -m[3], w_prime.values()[i]}));
  }
  rows.push_back({0, 0, 0, 0, 1});
  std::vector<RationalVector> verts;
  for (const auto& ray : extreme_rays(rows)) {
    if (ray[4] <= 0) continue;
    RationalVector v(4);
    for (std::size_t k = 0; k < 4; ++k) v[k] = make_rational(ray[k], ray[4]);
    verts.push_back(std::move(v));
  }
  ConvexityReportSkeleton report;
  for (std::size_t i = 0; i < w_prime.points().size(); ++i) {
    const auto m = w_prime.points()[i].reduced_chart();
    const RationalVector* best = nullptr;
    for (const auto& v : verts)
      if (dot(m, v) == w_prime.values()[i]) {
        best = &v;
        break;
      }
    if (!best) {
      report.violator = static_cast<int>(i);
      report.certificates.clear();
      return report;
    }
    report.certificates.push_back(*best);
  }
  report.convex = true;
  return report;
}

Rational lemma_threshold(const WeightFunction& w) {
  const auto faces = two_faces();
  std::vector<ConvexityReport2D> reports;
  for (const auto& f : faces) {
    auto r = is_convex_2d(w.restrict_to(f));
    if (!r.convex) {
      const auto p = standard_triangle_points()[static_cast<std::size_t>(*r.violator)];
      throw ThresholdError(f, "face " + f.str() + " weight is not convex at " +
                                  FaceChart2D(f).from_chart(p).str());
    }
    reports.push_back(std::move(r));
  }
  const auto skeleton = two_skeleton_points();
  std::optional<Rational> threshold;
  for (const auto& mp : skeleton) {
    const DeltaFace beta = minimal_face({mp});
    std::size_t fi = 0;
    while ((faces[fi].zero_mask & beta.zero_mask) != faces[fi].zero_mask) ++fi;
    const FaceChart2D chart(faces[fi]);
    const auto tri = standard_triangle_points();
    const auto pos = std::find(tri.begin(), tri.end(), chart.to_chart(mp)) - tri.begin();
    const AffineFunction2D& cert = reports[fi].certificates[static_cast<std::size_t>(pos)];
    // Linear extension: values at the vertices of Delta, the two vertices
    // off the face sharing the remainder so the values sum to zero.
    std::array<Rational, 5> at_vertex;
    Rational on_face = 0;
    for (int k : chart.free_coordinates()) {
      at_vertex[static_cast<std::size_t>(k)] = cert(chart.to_chart(delta_vertex(k)));
      on_face += at_vertex[static_cast<std::size_t>(k)];
    }
    for (int k : faces[fi].zeros()) at_vertex[static_cast<std::size_t>(k)] = -on_face / 2;
    const auto zeros = beta.zeros();
    for (const auto& m : skeleton) {
      Rational n_beta = 0;
      for (int i : zeros) n_beta += m[i] - 1;
      n_beta /= static_cast<long>(zeros.size());
      if (n_beta == -1) continue;
      Rational n_prime = 0;
      for (int k = 0; k < 5; ++k) n_prime += make_rational(m[k], 5) * at_vertex[static_cast<std::size_t>(k)];
      const Rational bound = -(n_prime - w(m)) / (1 + n_beta);
      if (!threshold || bound < *threshold) threshold = bound;
    }
  }
  return *threshold;
}

}  // namespace syz
