#include "syz/moduli.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace syz {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr int kCodes = 6 * 6 * 6 * 6 * 6;

int code(const Exponents& m) {
  int c = 0;
  for (int i = 4; i >= 0; --i) c = c * 6 + m[static_cast<std::size_t>(i)];
  return c;
}

const std::vector<int>& index_table() {
  static const std::vector<int> table = [] {
    std::vector<int> t(kCodes, -1);
    const auto& pts = QuinticPolynomial::monomials();
    for (std::size_t i = 0; i < pts.size(); ++i) t[static_cast<std::size_t>(code(pts[i].coords()))] = static_cast<int>(i);
    return t;
  }();
  return table;
}

// Homogeneous polynomial in five variables, sparse over exponent codes.
using Sparse = std::vector<std::pair<int, Complex>>;

Sparse multiply(const Sparse& a, const Sparse& b, std::vector<Complex>& scratch, std::vector<int>& touched) {
  touched.clear();
  for (const auto& [ca, va] : a)
    for (const auto& [cb, vb] : b) {
      const int c = ca + cb;
      if (scratch[static_cast<std::size_t>(c)] == Complex(0, 0)) touched.push_back(c);
      scratch[static_cast<std::size_t>(c)] += va * vb;
    }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  Sparse out;
  out.reserve(touched.size());
  for (int c : touched) {
    out.push_back({c, scratch[static_cast<std::size_t>(c)]});
    scratch[static_cast<std::size_t>(c)] = 0;
  }
  return out;
}

const Exponents kCenter{1, 1, 1, 1, 1};

}  // namespace

QuinticPolynomial::QuinticPolynomial() : coeffs_(monomials().size(), Complex(0, 0)) {}

QuinticPolynomial::QuinticPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != monomials().size())
    throw std::invalid_argument("a quintic has 126 coefficients, got " + std::to_string(coeffs_.size()));
}

const std::vector<LatticePointM>& QuinticPolynomial::monomials() {
  static const std::vector<LatticePointM> pts = enumerate_delta_points();
  return pts;
}

std::size_t QuinticPolynomial::index_of(const Exponents& m) {
  int sum = 0;
  for (int e : m) {
    if (e < 0 || e > kDegree) throw std::invalid_argument("exponent out of range");
    sum += e;
  }
  if (sum != kDegree) throw std::invalid_argument("exponents must sum to 5");
  return static_cast<std::size_t>(index_table()[static_cast<std::size_t>(code(m))]);
}

const std::vector<std::size_t>& QuinticPolynomial::off_slice_indices() {
  static const std::vector<std::size_t> idx = [] {
    std::vector<std::size_t> out;
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        if (j == k) continue;
        Exponents m = kCenter;
        --m[static_cast<std::size_t>(j)];
        ++m[static_cast<std::size_t>(k)];
        out.push_back(index_of(m));
      }
    return out;
  }();
  return idx;
}

Complex QuinticPolynomial::psi() const { return coeffs_[index_of(kCenter)]; }

Complex QuinticPolynomial::evaluate(const ComplexPoint5& z) const {
  std::array<std::array<Complex, kDegree + 1>, 5> powers;
  for (std::size_t i = 0; i < 5; ++i) {
    powers[i][0] = 1;
    for (std::size_t e = 1; e <= kDegree; ++e) powers[i][e] = powers[i][e - 1] * z[i];
  }
  Complex v(0, 0);
  const auto& pts = monomials();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (coeffs_[i] == Complex(0, 0)) continue;
    Complex term = coeffs_[i];
    for (std::size_t k = 0; k < 5; ++k) term *= powers[k][static_cast<std::size_t>(pts[i].coords()[k])];
    v += term;
  }
  return v;
}

double QuinticPolynomial::off_slice_norm() const {
  double n = 0;
  for (std::size_t i : off_slice_indices()) n = std::max(n, std::abs(coeffs_[i]));
  return n;
}

bool QuinticPolynomial::finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

QuinticPolynomial apply_linear_change(const QuinticPolynomial& p, const LinearChange& L) {
  Eigen::FullPivLU<LinearChange> lu(L);
  if (!lu.isInvertible()) throw std::domain_error("linear change is singular");

  std::vector<Complex> scratch(kCodes, Complex(0, 0));
  std::vector<int> touched;
  // powers[j][e] = (sum_k L_jk z_k)^e
  std::array<std::array<Sparse, kDegree + 1>, 5> powers;
  for (int j = 0; j < 5; ++j) {
    Sparse linear;
    for (int k = 0; k < 5; ++k) {
      if (L(j, k) == Complex(0, 0)) continue;
      Exponents e{};
      e[static_cast<std::size_t>(k)] = 1;
      linear.push_back({code(e), L(j, k)});
    }
    auto& row = powers[static_cast<std::size_t>(j)];
    row[0] = {{0, Complex(1, 0)}};
    for (std::size_t e = 1; e <= kDegree; ++e) row[e] = multiply(row[e - 1], linear, scratch, touched);
  }

  std::vector<Complex> out(kCodes, Complex(0, 0));
  const auto& pts = QuinticPolynomial::monomials();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Complex a = p.coeffs()[i];
    if (a == Complex(0, 0)) continue;
    Sparse acc{{0, a}};
    for (std::size_t j = 0; j < 5; ++j) {
      const int e = pts[i].coords()[j];
      if (e > 0) acc = multiply(acc, powers[j][static_cast<std::size_t>(e)], scratch, touched);
    }
    for (const auto& [c, v] : acc) out[static_cast<std::size_t>(c)] += v;
  }
  std::vector<Complex> coeffs(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) coeffs[i] = out[static_cast<std::size_t>(code(pts[i].coords()))];
  return QuinticPolynomial(std::move(coeffs));
}

SliceStep slice_step(const QuinticPolynomial& p) {
  const Complex psi = p.psi();
  if (psi == Complex(0, 0)) throw std::domain_error("psi = 0: the slicing iteration needs a nonzero a_{m0}");
  LinearChange B = LinearChange::Zero();
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k) {
      if (j == k) continue;
      Exponents m = kCenter;
      --m[static_cast<std::size_t>(j)];
      ++m[static_cast<std::size_t>(k)];
      B(j, k) = p[m];
    }
  SliceStep s;
  s.L = LinearChange::Identity() - B / psi;
  QuinticPolynomial q = apply_linear_change(p, s.L);
  if (q.psi() == Complex(0, 0)) throw std::domain_error("a_{m0} vanished after a slicing step");
  s.scale = psi / q.psi();
  std::vector<Complex> c = q.coeffs();
  for (auto& x : c) x *= s.scale;
  c[QuinticPolynomial::index_of(kCenter)] = psi;
  s.p = QuinticPolynomial(std::move(c));
  return s;
}

std::string to_string(SliceStatus s) {
  switch (s) {
    case SliceStatus::Converged: return "converged";
    case SliceStatus::Diverged: return "diverged";
    case SliceStatus::MaxIterations: return "max-iterations";
  }
  return "?";
}

SliceResult reduce_to_slice(const QuinticPolynomial& p, const SliceOptions& opts) {
  if (p.psi() == Complex(0, 0)) throw std::domain_error("psi = 0: the slicing iteration needs a nonzero a_{m0}");
  SliceResult r;
  r.L_total = LinearChange::Identity();
  r.p0 = p;
  double others = 0;
  const std::size_t center = QuinticPolynomial::index_of(kCenter);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    if (i != center) others = std::max(others, std::abs(p.coeffs()[i]));
  r.below_threshold = others > 0 && std::abs(p.psi()) < (1 - 1e-9) * opts.psi_threshold * others;

  r.history.push_back(p.off_slice_norm());
  if (r.history.back() < opts.tol) {
    r.status = SliceStatus::Converged;
    return r;
  }
  int increases = 0;
  while (r.iterations < opts.max_iter) {
    const SliceStep s = slice_step(r.p0);
    ++r.iterations;
    r.L_total = r.L_total * s.L;
    r.c /= s.scale;
    r.p0 = s.p;
    const double norm = r.p0.off_slice_norm();
    r.history.push_back(norm);
    if (!std::isfinite(norm) || !r.p0.finite()) {
      r.status = SliceStatus::Diverged;
      return r;
    }
    if (norm < opts.tol) {
      r.status = SliceStatus::Converged;
      return r;
    }
    if (norm > r.history[r.history.size() - 2] && ++increases >= 2) {
      r.status = SliceStatus::Diverged;
      return r;
    }
  }
  r.status = SliceStatus::MaxIterations;
  return r;
}

QuinticPolynomial torus_rescale(const QuinticPolynomial& p, const ComplexPoint5& lambda) {
  std::vector<Complex> c = p.coeffs();
  const auto& pts = QuinticPolynomial::monomials();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t k = 0; k < 5; ++k) c[i] *= std::pow(lambda[k], pts[i].coords()[k]);
  return QuinticPolynomial(std::move(c));
}

QuinticPolynomial permute_variables(const QuinticPolynomial& p, const std::array<int, 5>& sigma) {
  std::array<bool, 5> seen{};
  for (int s : sigma) {
    if (s < 0 || s > 4 || seen[static_cast<std::size_t>(s)]) throw std::invalid_argument("not a permutation of 0..4");
    seen[static_cast<std::size_t>(s)] = true;
  }
  QuinticPolynomial out;
  const auto& pts = QuinticPolynomial::monomials();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Exponents m{};
    for (std::size_t k = 0; k < 5; ++k) m[static_cast<std::size_t>(sigma[k])] = pts[i].coords()[k];
    out[m] = p.coeffs()[i];
  }
  return out;
}

QuinticPolynomial monomial_divisor_map(const std::vector<double>& phases, const WeightFunction& w) {
  if (!w.on_skeleton_domain()) throw std::invalid_argument("mirror map weights must live on the 105 skeleton points");
  const auto& pts = w.points();
  if (!phases.empty() && phases.size() != pts.size())
    throw std::invalid_argument("expected one phase per skeleton point");
  const Rational w_m0 = w.w_m0() ? *w.w_m0() : lemma_threshold(w);
  const WeightFunction rel = w.relative_to_center(w_m0);
  const auto conv = is_convex_rel_skeleton(rel);
  if (!conv.convex)
    throw std::domain_error("weights lie outside the Kahler cone: convexity fails at " + pts[static_cast<std::size_t>(*conv.violator)].str());
  QuinticPolynomial p;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double eta = phases.empty() ? 0.0 : phases[i];
    p[pts[i].coords()] = std::polar(std::exp(-kTwoPi * rel.values()[i].get_d()), kTwoPi * eta);
  }
  p[kCenter] = 1;
  return p;
}

WeightFunction kahler_weights(const QuinticPolynomial& p, long denominator) {
  auto to_weight = [denominator](Complex a) -> Rational {
    if (a == Complex(0, 0)) throw std::domain_error("zero coefficient has no weight");
    const double w = -std::log(std::abs(a)) / kTwoPi;
    return make_rational(Integer(std::to_string(std::llround(w * static_cast<double>(denominator)))), Integer(denominator));
  };
  const auto pts = two_skeleton_points();
  RationalVector values;
  for (const auto& m : pts) values.push_back(to_weight(p[m.coords()]));
  return WeightFunction(pts, values, to_weight(p.psi()));
}

}  // namespace syz
