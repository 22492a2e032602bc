#pragma once

// Serialization of the toolkit's objects: JSON documents, CSV point clouds
// and SVG renderings of per-face charts.

#include "syz/amoeba.hpp"
#include "syz/dualbase.hpp"
#include "syz/fibers.hpp"
#include "syz/moduli.hpp"
#include "syz/monodromy.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace syz {

using Json = nlohmann::ordered_json;

/// Malformed input or unreadable/unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string rational_to_string(const Rational& q);
/// Accepts "p/q", "p" or an integer JSON number. Throws IoError naming `where`.
Rational parse_rational(const Json& j, const std::string& where);
std::string format_double(double x);  // 17 significant digits

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);
/// Parses JSON text; syntax errors are reported with line and column.
Json parse_json(const std::string& text, const std::string& source);

Json polytope_to_json(const FaceLattice& p);

Json weights_to_json(const WeightFunction& w);
WeightFunction weights_from_json(const Json& j);

/// Per-point phases keyed like polynomial coefficients ("m1,m2,m3,m4,m5"),
/// in the order of w.points(); missing entries are 0.
std::vector<double> phases_from_json(const Json& j, const WeightFunction& w);

Json subdivision_to_json(const GlobalSubdivision& z);
Json graph_to_json(const LocusGraph& g);
Json delta_w_to_json(const DeltaW& dw, const FaceLattice& delta_dual, const std::vector<int>& pi);
Json operator_to_json(const MonodromyOperator& op);
Json summary_to_json(const FibrationSummary& s);

std::string exponent_key(const Exponents& m);
Json polynomial_to_json(const QuinticPolynomial& p);
QuinticPolynomial polynomial_from_json(const Json& j);

std::string cloud_to_csv(const AmoebaCloud& cloud);

/// One panel per face: chart triangle, optional subdivision cells, graph
/// segments and cloud points.
struct FacePanel {
  std::string title;
  std::vector<std::array<Point2, 3>> cells;
  std::vector<Segment2> graph;
  std::vector<Point2> cloud;
};
std::string panels_to_svg(const std::vector<FacePanel>& panels);

/// Panels of the ten face charts for a subdivision and its graph.
std::vector<FacePanel> face_panels(const GlobalSubdivision& z, bool with_graph);

}  // namespace syz
