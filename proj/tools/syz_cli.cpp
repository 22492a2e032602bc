// syz: command-line front end to the toolkit.
//
// Exit codes: 0 success, 1 domain error reported by a module, 2 I/O error
// or bad arguments.

#include "syz/io.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

using namespace syz;

namespace {

struct RunConfig {
  std::string weights_file;
  std::string preset = "standard";
  std::string poly_file;
  std::string phases_file;
  std::string out;
  std::string format = "json";
  double t = 0.1;
  std::string grid = "200x200x5";
  double tol = 1e-12;
  double delta = 0.25;
  std::uint64_t seed = 0;
  std::string w0;
  int face = 9;
  int samples = 0;
  double psi = 10;
  int max_iter = 100;
  // monodromy path, 1-based n
  int n = 0, n2 = 0;
  std::string m, m2;
  bool inverse = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_file(cfg.out, text);
  }
}

void emit_json(const RunConfig& cfg, const Json& j) { emit(cfg, j.dump(2) + "\n"); }

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (cfg.format == f) return;
  throw UsageError("--format " + cfg.format + " is not available for this command");
}

WeightFunction load_weights(const RunConfig& cfg) {
  if (!cfg.weights_file.empty())
    return weights_from_json(parse_json(read_file(cfg.weights_file), cfg.weights_file));
  if (cfg.preset == "standard") return standard_weights();
  if (cfg.preset == "figure4") return figure4_weights();
  if (cfg.preset == "random") return random_generic_weights(cfg.seed);
  throw UsageError("unknown preset " + cfg.preset);
}

Rational parse_w0(const std::string& s) { return parse_rational(Json(s), "--w0"); }

Exponents parse_m(const std::string& s, const char* flag) {
  Exponents m{};
  std::stringstream ss(s);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k == 5) throw UsageError(std::string(flag) + ": expected five comma-separated integers");
    try {
      std::size_t used = 0;
      m[k++] = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": cannot parse \"" + item + "\"");
    }
  }
  if (k != 5) throw UsageError(std::string(flag) + ": expected five comma-separated integers");
  return m;
}

SampleGrid parse_grid(const std::string& s, std::uint64_t seed) {
  int a = 0, b = 0, c = 0;
  char x1 = 0, x2 = 0, extra = 0;
  if (std::sscanf(s.c_str(), "%d%c%d%c%d%c", &a, &x1, &b, &x2, &c, &extra) != 5 || x1 != 'x' || x2 != 'x' ||
      a <= 0 || b <= 0 || c <= 0)
    throw UsageError("--grid: expected AxBxC with positive integers, got " + s);
  return {a, b, c, seed};
}

int cmd_points(const RunConfig& cfg) {
  require_format(cfg, {"json"});
  Json j;
  Json all = Json::array(), skel = Json::array();
  for (const auto& m : enumerate_delta_points()) all.push_back(exponent_key(m.coords()));
  for (const auto& m : two_skeleton_points()) skel.push_back(exponent_key(m.coords()));
  j["counts"] = {{"delta", all.size()},
                 {"skeleton", skel.size()},
                 {"per_face", standard_triangle_points().size()},
                 {"per_edge", kDegree + 1}};
  j["center"] = exponent_key(center().coords());
  j["delta"] = all;
  j["skeleton"] = skel;
  emit_json(cfg, j);
  return 0;
}

int cmd_subdivide(const RunConfig& cfg) {
  require_format(cfg, {"json", "svg"});
  const auto z = subdivide(load_weights(cfg));
  if (cfg.format == "svg")
    emit(cfg, panels_to_svg(face_panels(z, false)));
  else
    emit_json(cfg, subdivision_to_json(z));
  return 0;
}

int cmd_locus(const RunConfig& cfg) {
  require_format(cfg, {"json", "svg"});
  const auto z = subdivide(load_weights(cfg));
  if (cfg.format == "svg") {
    emit(cfg, panels_to_svg(face_panels(z, true)));
    return 0;
  }
  emit_json(cfg, graph_to_json(singular_locus(z)));
  return 0;
}

int cmd_dualbase(const RunConfig& cfg) {
  require_format(cfg, {"json"});
  const auto w = load_weights(cfg);
  const auto z = subdivide(w);
  const Rational w_m0 = !cfg.w0.empty() ? parse_w0(cfg.w0) : w.w_m0() ? *w.w_m0() : lemma_threshold(w);
  const auto [delta, delta_dual] = dual_simplex();
  const auto dw = build_delta_w_centered(w, w_m0);
  const auto pi = face_map_pi(dw, delta_dual);
  const auto mirror = mirror_locus(dw.polytope, delta_dual, pi.face_image);
  const auto dual = dual_of(dw);
  const auto s = base_identification_s(dw, dual, map_h(dw, dual, z));
  const auto cert = verify_locus_match(mirror, singular_locus(z), s);
  Json j = delta_w_to_json(dw, delta_dual, pi.face_image);
  j["w_m0"] = rational_to_string(w_m0);
  j["locus_match"] = {{"ok", cert.ok},
                      {"matched_vertices", cert.matched_vertices},
                      {"matched_edges", cert.matched_edges},
                      {"mismatch", cert.mismatch}};
  emit_json(cfg, j);
  return cert.ok ? 0 : 1;
}

int cmd_monodromy(const RunConfig& cfg) {
  require_format(cfg, {"json"});
  if (!cfg.m.empty() || !cfg.m2.empty()) {
    if (cfg.m.empty() || cfg.m2.empty() || cfg.n < 1 || cfg.n > 5 || cfg.n2 < 1 || cfg.n2 > 5)
      throw UsageError("a path needs --n, --m, --n2, --m2 with n, n2 in 1..5");
    const auto op = monodromy(cfg.n - 1, LatticePointM::monomial(parse_m(cfg.m, "--m")), cfg.n2 - 1,
                              LatticePointM::monomial(parse_m(cfg.m2, "--m2")));
    if (cfg.out.empty()) {
      std::cout << to_string(op.matrix) << '\n';
    } else {
      emit_json(cfg, operator_to_json(op));
    }
    return 0;
  }
  const auto sites = site_monodromies(singular_locus(subdivide(load_weights(cfg))));
  Json list = Json::array();
  for (const auto& site : sites) {
    Json ops = Json::array();
    for (const auto& op : site.ops) ops.push_back(operator_to_json(op));
    list.push_back({{"vertex", site.vertex},
                    {"kind", to_string(site.kind)},
                    {"class", to_string(site.cls)},
                    {"operators", ops}});
  }
  emit_json(cfg, {{"sites", list}});
  return 0;
}

int cmd_euler(const RunConfig& cfg) {
  require_format(cfg, {"json"});
  const auto g = singular_locus(subdivide(load_weights(cfg)));
  const auto quintic = assign_fibers(g, Side::Quintic);
  if (!cfg.out.empty()) {
    emit_json(cfg, {{"quintic", summary_to_json(quintic)},
                    {"mirror", summary_to_json(assign_fibers(g, Side::Mirror))}});
    return 0;
  }
  std::cout << "chi=" << euler_characteristic(quintic) << " (sites II=" << quintic.sites(SiteKind::II)
            << " III=" << quintic.sites(SiteKind::III) << ")\n";
  return 0;
}

int cmd_amoeba(const RunConfig& cfg) {
  require_format(cfg, {"json", "csv", "svg"});
  if (!(cfg.t > 0 && cfg.t < 1)) throw UsageError("--t must lie in (0, 1)");
  if (!(cfg.delta > 0)) throw UsageError("--delta must be positive");
  const auto faces = two_faces();
  if (cfg.face < 0 || cfg.face >= static_cast<int>(faces.size())) throw UsageError("--face must be in 0..9");
  const auto face = faces[static_cast<std::size_t>(cfg.face)];
  const auto cw = load_weights(cfg).restrict_to(face);
  const auto grid = parse_grid(cfg.grid, cfg.seed);

  const auto start = std::chrono::steady_clock::now();
  const auto cloud = sample_curve(CurveSpec::from_weights(cw, cfg.t), grid);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto segs = graph_segments(face_graph(regular_subdivision(cw)));

  if (cfg.format == "csv") {
    emit(cfg, cloud_to_csv(cloud));
    return 0;
  }
  if (cfg.format == "svg") {
    FacePanel panel;
    panel.title = "face " + face.str() + " t=" + format_double(cfg.t);
    panel.graph = segs;
    panel.cloud = cloud.points;
    emit(cfg, panels_to_svg({panel}));
    return 0;
  }
  const auto report = hausdorff_to_graph(cloud, segs, cfg.delta, cfg.samples);
  Json covered = Json::array();
  for (bool c : report.covered) covered.push_back(c);
  emit_json(cfg, {{"face", face.str()},
                  {"t", cfg.t},
                  {"grid", cfg.grid},
                  {"seed", cfg.seed},
                  {"points", cloud.points.size()},
                  {"slices", cloud.slices},
                  {"log_range", cloud.log_range},
                  {"max_residual", cloud.max_residual},
                  {"delta", cfg.delta},
                  {"sup_distance", report.sup_distance},
                  {"segments", segs.size()},
                  {"covered", report.covered_count()},
                  {"covered_by_segment", covered},
                  {"seconds", seconds}});
  return 0;
}

std::string complex_pair(Complex c) { return "[" + format_double(c.real()) + ", " + format_double(c.imag()) + "]"; }

QuinticPolynomial sample_fermat(double psi_abs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  QuinticPolynomial p;
  for (const auto& m : QuinticPolynomial::monomials()) {
    int zeros = 0;
    for (int e : m.coords()) zeros += e == 0;
    if (zeros == 4 || zeros == 1) p[m.coords()] = std::polar(1.0, angle(rng));
  }
  p[center().coords()] = std::polar(psi_abs, angle(rng));
  return p;
}

int cmd_slice(const RunConfig& cfg) {
  require_format(cfg, {"json"});
  if (!(cfg.tol > 0)) throw UsageError("--tol must be positive");
  if (cfg.max_iter <= 0) throw UsageError("--max-iter must be positive");
  const QuinticPolynomial p = !cfg.poly_file.empty()
                                  ? polynomial_from_json(parse_json(read_file(cfg.poly_file), cfg.poly_file))
                                  : sample_fermat(cfg.psi, cfg.seed);
  SliceOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  const auto r = reduce_to_slice(p, opts);
  Json L = Json::array();
  for (int i = 0; i < 5; ++i) {
    Json row = Json::array();
    for (int k = 0; k < 5; ++k)
      row.push_back({format_double(r.L_total(i, k).real()), format_double(r.L_total(i, k).imag())});
    L.push_back(row);
  }
  Json history = Json::array();
  for (double h : r.history) history.push_back(format_double(h));
  Json j;
  j["status"] = to_string(r.status);
  j["iterations"] = r.iterations;
  j["below_threshold"] = r.below_threshold;
  j["residual"] = format_double(r.p0.off_slice_norm());
  j["c"] = {format_double(r.c.real()), format_double(r.c.imag())};
  j["history"] = history;
  j["L_total"] = L;
  j["p0"] = polynomial_to_json(r.p0);
  emit_json(cfg, j);
  if (r.status != SliceStatus::Converged) {
    std::cerr << "slice: " << to_string(r.status) << " after " << r.iterations
              << " iterations, off-slice norm " << format_double(r.p0.off_slice_norm()) << ", c = " << complex_pair(r.c)
              << (r.below_threshold ? " (|psi| below threshold)" : "") << '\n';
    return 1;
  }
  return 0;
}

int cmd_mirrormap(const RunConfig& cfg) {
  require_format(cfg, {"json"});
  if (cfg.inverse) {
    if (cfg.poly_file.empty()) throw UsageError("--inverse needs --poly FILE");
    const auto p = polynomial_from_json(parse_json(read_file(cfg.poly_file), cfg.poly_file));
    emit_json(cfg, weights_to_json(kahler_weights(p)));
    return 0;
  }
  WeightFunction w = load_weights(cfg);
  if (!cfg.w0.empty()) w = WeightFunction(w.points(), w.values(), parse_w0(cfg.w0));
  std::vector<double> phases;
  if (!cfg.phases_file.empty()) phases = phases_from_json(parse_json(read_file(cfg.phases_file), cfg.phases_file), w);
  emit_json(cfg, polynomial_to_json(monomial_divisor_map(phases, w)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toolkit for the combinatorics of torus fibrations on the quintic and its mirror"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool weights) {
    sub->add_option("--out", cfg.out, "Output path (default: standard output)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "svg"}));
    sub->add_option("--seed", cfg.seed, "Seed for random presets and sampling");
    if (weights) {
      sub->add_option("--weights", cfg.weights_file, "Weight function JSON");
      sub->add_option("--preset", cfg.preset, "Built-in weights")
          ->check(CLI::IsMember({"standard", "figure4", "random"}));
    }
  };

  auto* points = app.add_subcommand("points", "Lattice points of Delta and its 2-skeleton");
  common(points, false);
  auto* subdiv = app.add_subcommand("subdivide", "Regular subdivision of the 2-skeleton");
  common(subdiv, true);
  auto* locus = app.add_subcommand("locus", "Singular locus graph");
  common(locus, true);
  auto* dualbase = app.add_subcommand("dualbase", "Delta_w, the face map and the locus identification");
  common(dualbase, true);
  dualbase->add_option("--w0", cfg.w0, "Center weight w_m0 as p/q (default: lemma threshold)");
  auto* mono = app.add_subcommand("monodromy", "Monodromy of a path, or of every site");
  common(mono, true);
  mono->add_option("--n", cfg.n, "First vertex of Delta^vee (1..5)");
  mono->add_option("--m", cfg.m, "First lattice point, five comma-separated exponents");
  mono->add_option("--n2", cfg.n2, "Second vertex of Delta^vee (1..5)");
  mono->add_option("--m2", cfg.m2, "Second lattice point");
  auto* euler = app.add_subcommand("euler", "Fiber assignment and Euler characteristic");
  common(euler, true);
  auto* amoeba = app.add_subcommand("amoeba", "Sampled amoeba of one face curve");
  common(amoeba, true);
  amoeba->add_option("--t", cfg.t, "Degeneration parameter in (0, 1)");
  amoeba->add_option("--grid", cfg.grid, "Samples as moduli x phases x repeats");
  amoeba->add_option("--delta", cfg.delta, "Coverage radius in chart units");
  amoeba->add_option("--face", cfg.face, "Index of the 2-face (0..9)");
  amoeba->add_option("--samples", cfg.samples, "Points per segment for strict coverage (0: any point)");
  auto* slice = app.add_subcommand("slice", "Reduce a quintic to the slice");
  common(slice, false);
  slice->add_option("--poly", cfg.poly_file, "Polynomial JSON (default: a seeded sample)");
  slice->add_option("--psi", cfg.psi, "|psi| of the seeded sample");
  slice->add_option("--tol", cfg.tol, "Off-slice tolerance");
  slice->add_option("--max-iter", cfg.max_iter, "Iteration cap");
  auto* mirror = app.add_subcommand("mirrormap", "Monomial-divisor map and its inverse on moduli");
  common(mirror, true);
  mirror->add_option("--w0", cfg.w0, "Center weight w_m0 as p/q");
  mirror->add_option("--phases", cfg.phases_file, "Phases JSON {\"phases\": {\"m1,...,m5\": eta}}");
  mirror->add_option("--poly", cfg.poly_file, "Polynomial JSON for --inverse");
  mirror->add_flag("--inverse", cfg.inverse, "Recover rounded weights from a polynomial");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (points->parsed()) return cmd_points(cfg);
    if (subdiv->parsed()) return cmd_subdivide(cfg);
    if (locus->parsed()) return cmd_locus(cfg);
    if (dualbase->parsed()) return cmd_dualbase(cfg);
    if (mono->parsed()) return cmd_monodromy(cfg);
    if (euler->parsed()) return cmd_euler(cfg);
    if (amoeba->parsed()) return cmd_amoeba(cfg);
    if (slice->parsed()) return cmd_slice(cfg);
    if (mirror->parsed()) return cmd_mirrormap(cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
