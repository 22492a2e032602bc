#include "syz/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace syz {

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw IoError(where + ": expected a rational string \"p/q\"");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return make_rational(Integer(s));
    return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw IoError(where + ": cannot parse \"" + s + "\" as a rational");
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << contents;
  if (!out) throw IoError("write failed for " + path);
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw IoError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

namespace {

Json rational_array(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(rational_to_string(q));
  return a;
}

Json exponent_array(const Exponents& m) {
  Json a = Json::array();
  for (int e : m) a.push_back(e);
  return a;
}

Exponents parse_exponents(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 5) throw IoError(where + ": expected an array of 5 integers");
  Exponents m{};
  for (std::size_t i = 0; i < 5; ++i) {
    if (!j[i].is_number_integer()) throw IoError(where + "[" + std::to_string(i) + "]: expected an integer");
    m[i] = j[i].get<int>();
  }
  return m;
}

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) throw IoError(where + ": missing field \"" + name + "\"");
  return j.at(name);
}

Exponents parse_key(const std::string& key, const std::string& where) {
  Exponents m{};
  std::stringstream ss(key);
  std::string part;
  std::size_t i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= 5) throw IoError(where + ": key \"" + key + "\" has more than 5 exponents");
    try {
      std::size_t used = 0;
      m[i] = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw IoError(where + ": key \"" + key + "\" is not a list of integers");
    }
    ++i;
  }
  if (i != 5) throw IoError(where + ": key \"" + key + "\" needs 5 exponents");
  return m;
}

double parse_double(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      const std::string s = j.get<std::string>();
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw IoError(where + ": expected a number");
}

}  // namespace

Json polytope_to_json(const FaceLattice& p) {
  Json out;
  Json hrep = Json::array();
  for (const auto& h : p.facets()) {
    RationalVector lifted = FaceLattice::lift(other(p.space()), h.normal);
    lifted.push_back(h.rhs);
    // Clear denominators, then remove the content of the normal.
    const Integer den = common_denominator(lifted);
    std::vector<Integer> ints;
    for (const auto& q : lifted) ints.push_back(Integer(q * den));
    Integer g = 0;
    for (std::size_t i = 0; i < 5; ++i) g = gcd(g, ints[i]);
    if (g == 0) g = 1;
    Json normal = Json::array();
    for (std::size_t i = 0; i < 5; ++i) normal.push_back(Integer(ints[i] / g).get_si());
    hrep.push_back({{"normal", normal}, {"rhs", rational_to_string(make_rational(ints[5], g))}});
  }
  out["hrep"] = hrep;
  Json vrep = Json::array();
  for (const auto& v : p.vertices()) vrep.push_back(rational_array(FaceLattice::lift(p.space(), v)));
  out["vrep"] = vrep;
  return out;
}

Json weights_to_json(const WeightFunction& w) {
  Json out;
  Json pts = Json::array(), vals = Json::array();
  for (std::size_t i = 0; i < w.points().size(); ++i) {
    pts.push_back(exponent_array(w.points()[i].coords()));
    vals.push_back(rational_to_string(w.values()[i]));
  }
  out["points"] = pts;
  out["weights"] = vals;
  if (w.w_m0()) out["w_m0"] = rational_to_string(*w.w_m0());
  return out;
}

WeightFunction weights_from_json(const Json& j) {
  const Json& pts = field(j, "points", "weights file");
  const Json& vals = field(j, "weights", "weights file");
  if (!pts.is_array()) throw IoError("points: expected an array");
  if (!vals.is_array()) throw IoError("weights: expected an array");
  if (pts.size() != vals.size())
    throw IoError("weights: " + std::to_string(vals.size()) + " values for " + std::to_string(pts.size()) + " points");
  std::vector<LatticePointM> points;
  RationalVector values;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string where = "points[" + std::to_string(i) + "]";
    const Exponents m = parse_exponents(pts[i], where);
    try {
      points.push_back(LatticePointM::monomial(m));
    } catch (const std::invalid_argument& e) {
      throw IoError(where + ": " + e.what());
    }
    values.push_back(parse_rational(vals[i], "weights[" + std::to_string(i) + "]"));
  }
  std::optional<Rational> w_m0;
  if (j.contains("w_m0")) w_m0 = parse_rational(j.at("w_m0"), "w_m0");
  try {
    return WeightFunction(std::move(points), std::move(values), w_m0);
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("weights file: ") + e.what());
  }
}

std::vector<double> phases_from_json(const Json& j, const WeightFunction& w) {
  std::vector<double> out(w.points().size(), 0.0);
  if (!j.contains("phases")) return out;
  const Json& ph = j.at("phases");
  if (!ph.is_object()) throw IoError("phases: expected an object keyed by \"m1,m2,m3,m4,m5\"");
  for (const auto& [key, value] : ph.items()) {
    const std::string where = "phases[\"" + key + "\"]";
    const Exponents m = parse_key(key, where);
    bool found = false;
    for (std::size_t i = 0; i < w.points().size(); ++i)
      if (w.points()[i].coords() == m) {
        out[i] = parse_double(value, where);
        found = true;
      }
    if (!found) throw IoError(where + ": no weight at this point");
  }
  return out;
}

Json subdivision_to_json(const GlobalSubdivision& z) {
  Json out;
  Json pts = Json::array();
  for (const auto& m : two_skeleton_points()) pts.push_back(exponent_array(m.coords()));
  out["points"] = pts;
  Json cells = Json::array();
  for (const auto& c : z.cells) cells.push_back({c[0], c[1], c[2]});
  out["cells"] = cells;
  Json faces = Json::array();
  for (std::size_t f = 0; f < z.faces.size(); ++f) {
    Json face;
    face["zeros"] = z.faces[f].zeros();
    Json fc = Json::array();
    for (const auto& c : z.per_face[f].cells) fc.push_back(c);
    face["cells"] = fc;
    faces.push_back(face);
  }
  out["faces"] = faces;
  return out;
}

Json graph_to_json(const LocusGraph& g) {
  Json out;
  Json verts = Json::array();
  for (const auto& v : g.vertices) {
    Json jv;
    jv["coords"] = rational_array(v.coords);
    jv["kind"] = to_string(v.kind);
    jv["host"] = v.host;
    verts.push_back(jv);
  }
  out["vertices"] = verts;
  Json edges = Json::array(), polylines = Json::array();
  for (const auto& e : g.edges) {
    edges.push_back({e.a, e.b});
    Json pl = Json::array();
    for (const auto& p : e.polyline) pl.push_back(rational_array(p));
    polylines.push_back(pl);
  }
  out["edges"] = edges;
  out["polylines"] = polylines;
  out["legs"] = g.legs.size();
  return out;
}

Json delta_w_to_json(const DeltaW& dw, const FaceLattice& delta_dual, const std::vector<int>& pi) {
  Json out = polytope_to_json(dw.polytope);
  Json index = Json::object();
  for (std::size_t f = 0; f < dw.monomials_of_facet.size(); ++f) {
    Json ms = Json::array();
    for (int i : dw.monomials_of_facet[f]) ms.push_back(exponent_array(dw.monomials[static_cast<std::size_t>(i)].coords()));
    index["facet_" + std::to_string(f)] = ms;
  }
  out["facet_index"] = index;
  out["redundant"] = dw.redundant_count();
  out["w0"] = rational_to_string(dw.w0);
  Json pairs = Json::array();
  for (std::size_t f = 0; f < pi.size(); ++f) {
    const int g = pi[f];
    pairs.push_back({{"face", f},
                     {"dim", dw.polytope.face(static_cast<int>(f)).dim},
                     {"image", g},
                     {"image_dim", g < 0 ? -1 : delta_dual.face(g).dim}});
  }
  out["pi"] = pairs;
  return out;
}

Json operator_to_json(const MonodromyOperator& op) {
  Json out;
  Json basis = Json::array();
  for (int i : op.lattice.basis_indices()) basis.push_back("e^" + std::to_string(i + 1));
  out["basis"] = basis;
  Json matrix = Json::array();
  for (const auto& row : op.matrix) matrix.push_back({row[0], row[1], row[2]});
  out["matrix"] = matrix;
  if (op.loop.n.size() == 3 && op.loop.m.size() == 2) {
    out["path"] = {{"n", op.loop.n[0] + 1},
                   {"m", exponent_array(op.loop.m[0].to_degree().coords())},
                   {"n2", op.loop.n[1] + 1},
                   {"m2", exponent_array(op.loop.m[1].to_degree().coords())}};
  } else {
    out["loop"] = op.loop.str();
  }
  return out;
}

Json summary_to_json(const FibrationSummary& s) {
  Json out;
  out["sites"] = {{"II", s.sites(SiteKind::II)}, {"III", s.sites(SiteKind::III)}};
  out["chi"] = euler_characteristic(s);
  Json counts = Json::array();
  for (const auto& [key, c] : s.counts)
    counts.push_back({{"stratum", to_string(key.first)}, {"fiber", key.second.str()}, {"count", c}});
  out["strata"] = counts;
  return out;
}

std::string exponent_key(const Exponents& m) {
  std::string s;
  for (std::size_t i = 0; i < 5; ++i) s += (i ? "," : "") + std::to_string(m[i]);
  return s;
}

Json polynomial_to_json(const QuinticPolynomial& p) {
  Json coeffs = Json::object();
  const auto& pts = QuinticPolynomial::monomials();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Complex a = p.coeffs()[i];
    if (a == Complex(0, 0)) continue;
    coeffs[exponent_key(pts[i].coords())] = {format_double(a.real()), format_double(a.imag())};
  }
  Json out;
  out["coeffs"] = coeffs;
  return out;
}

QuinticPolynomial polynomial_from_json(const Json& j) {
  const Json& coeffs = field(j, "coeffs", "polynomial");
  if (!coeffs.is_object()) throw IoError("coeffs: expected an object keyed by \"m1,m2,m3,m4,m5\"");
  QuinticPolynomial p;
  for (const auto& [key, value] : coeffs.items()) {
    const std::string where = "coeffs[\"" + key + "\"]";
    const Exponents m = parse_key(key, where);
    if (!value.is_array() || value.size() != 2) throw IoError(where + ": expected [\"re\", \"im\"]");
    try {
      p[m] = Complex(parse_double(value[0], where + "[0]"), parse_double(value[1], where + "[1]"));
    } catch (const std::invalid_argument& e) {
      throw IoError(where + ": " + e.what());
    }
  }
  if (!p.finite()) throw IoError("coeffs: non-finite coefficient");
  return p;
}

std::string cloud_to_csv(const AmoebaCloud& cloud) {
  std::string out = "x,y\n";
  for (const auto& p : cloud.points) out += format_double(p[0]) + "," + format_double(p[1]) + "\n";
  return out;
}

namespace {

constexpr double kPanel = 240, kScale = 40, kMargin = 20;

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string panels_to_svg(const std::vector<FacePanel>& panels) {
  const std::size_t cols = std::min<std::size_t>(5, std::max<std::size_t>(1, panels.size()));
  const std::size_t rows = (panels.size() + cols - 1) / cols;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(static_cast<double>(cols) * kPanel) << "\" height=\""
    << px(static_cast<double>(rows) * kPanel) << "\">\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const double ox = static_cast<double>(k % cols) * kPanel, oy = static_cast<double>(k / cols) * kPanel;
    auto X = [&](const Point2& p) { return px(ox + kMargin + kScale * p[0]); };
    auto Y = [&](const Point2& p) { return px(oy + kPanel - kMargin - kScale * p[1]); };
    const auto& panel = panels[k];
    s << "<g>\n<text x=\"" << px(ox + kPanel / 2) << "\" y=\"" << px(oy + 16) << "\" font-size=\"12\">" << panel.title
      << "</text>\n";
    for (const auto& c : panel.cloud)
      s << "<circle cx=\"" << X(c) << "\" cy=\"" << Y(c) << "\" r=\"0.6\" fill=\"#4477aa\"/>\n";
    for (const auto& cell : panel.cells)
      s << "<polygon points=\"" << X(cell[0]) << "," << Y(cell[0]) << " " << X(cell[1]) << "," << Y(cell[1]) << " "
        << X(cell[2]) << "," << Y(cell[2]) << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
    const Point2 a{0, 0}, b{5, 0}, c{0, 5};
    s << "<polygon points=\"" << X(a) << "," << Y(a) << " " << X(b) << "," << Y(b) << " " << X(c) << "," << Y(c)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (const auto& seg : panel.graph)
      s << "<line x1=\"" << X(seg.a) << "\" y1=\"" << Y(seg.a) << "\" x2=\"" << X(seg.b) << "\" y2=\"" << Y(seg.b)
        << "\" stroke=\"#cc3311\" stroke-width=\"1.5\"/>\n";
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<FacePanel> face_panels(const GlobalSubdivision& z, bool with_graph) {
  std::vector<FacePanel> out;
  for (std::size_t f = 0; f < z.faces.size(); ++f) {
    FacePanel panel;
    panel.title = "face " + z.faces[f].str();
    const auto& t = z.per_face[f];
    for (const auto& cell : t.cells) {
      if (cell.size() != 3) continue;
      std::array<Point2, 3> tri;
      for (std::size_t k = 0; k < 3; ++k) {
        const auto& p = t.points[static_cast<std::size_t>(cell[k])];
        tri[k] = {static_cast<double>(p[0]), static_cast<double>(p[1])};
      }
      panel.cells.push_back(tri);
    }
    if (with_graph) panel.graph = graph_segments(face_graph(t));
    out.push_back(std::move(panel));
  }
  return out;
}

}  // namespace syz
