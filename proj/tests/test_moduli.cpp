#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "syz/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace syz;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
const Exponents kM0{1, 1, 1, 1, 1};

Complex unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  return std::polar(1.0, kTwoPi * u(rng));
}

ComplexPoint5 random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0, 1);
  ComplexPoint5 z;
  for (auto& x : z) x = std::polar(radius * std::sqrt(u(rng)), kTwoPi * u(rng));
  return z;
}

ComplexPoint5 apply(const LinearChange& L, const ComplexPoint5& z) {
  ComplexPoint5 out{};
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k) out[static_cast<std::size_t>(j)] += L(j, k) * z[static_cast<std::size_t>(k)];
  return out;
}

int zero_count(const Exponents& m) { return static_cast<int>(std::count(m.begin(), m.end(), 0)); }

// Fermat-type quintic near the large complex limit: unit coefficients at
// the vertices, psi z^{m0}, and a unit-modulus perturbation on every
// off-slice monomial.
QuinticPolynomial fermat_ensemble(std::mt19937_64& rng, double psi_abs) {
  QuinticPolynomial p;
  for (const auto& m : QuinticPolynomial::monomials()) {
    const auto& c = m.coords();
    if (zero_count(c) == 4 || zero_count(c) == 1) p[c] = unit(rng);
  }
  p[kM0] = psi_abs * unit(rng);
  return p;
}

// Every coefficient of unit modulus, psi aside.
QuinticPolynomial dense_ensemble(std::mt19937_64& rng, Complex psi) {
  QuinticPolynomial p;
  for (const auto& m : QuinticPolynomial::monomials()) p[m.coords()] = unit(rng);
  p[kM0] = psi;
  return p;
}

double max_coeff_diff(const QuinticPolynomial& a, const QuinticPolynomial& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) d = std::max(d, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return d;
}

LinearChange random_change(std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  LinearChange L = LinearChange::Identity();
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k) L(j, k) += Complex(u(rng), u(rng));
  return L;
}

}  // namespace

TEST_CASE("monomial indexing") {
  CHECK(QuinticPolynomial::monomials().size() == 126);
  for (std::size_t i = 0; i < 126; ++i) CHECK(QuinticPolynomial::index_of(QuinticPolynomial::monomials()[i].coords()) == i);
  CHECK_THROWS_AS(QuinticPolynomial::index_of({1, 1, 1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(QuinticPolynomial(std::vector<Complex>(5)), std::invalid_argument);
}

TEST_CASE("off-slice monomials are the points with exactly one zero exponent") {
  std::vector<std::size_t> brute;
  for (std::size_t i = 0; i < 126; ++i) {
    const auto& m = QuinticPolynomial::monomials()[i];
    if (!on_two_skeleton(m) && m.coords() != kM0) brute.push_back(i);
  }
  auto idx = QuinticPolynomial::off_slice_indices();
  std::sort(idx.begin(), idx.end());
  CHECK(idx == brute);
  CHECK(idx.size() == 20);
  for (std::size_t i : idx) CHECK(zero_count(QuinticPolynomial::monomials()[i].coords()) == 1);
}

TEST_CASE("linear change: identity and scaling") {
  std::mt19937_64 rng(1);
  const auto p = dense_ensemble(rng, 3.0);
  CHECK(max_coeff_diff(apply_linear_change(p, LinearChange::Identity()), p) == 0);

  QuinticPolynomial z1;
  z1[{5, 0, 0, 0, 0}] = 1;
  LinearChange D = LinearChange::Identity();
  D(0, 0) = 2;
  const auto q = apply_linear_change(z1, D);
  CHECK(std::abs(q[{5, 0, 0, 0, 0}] - Complex(32, 0)) < 1e-14);
  CHECK(std::abs(q.evaluate({1, 1, 1, 1, 1}) - Complex(32, 0)) < 1e-12);
}

TEST_CASE("linear change matches evaluation at random points") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = dense_ensemble(rng, unit(rng) * 2.0);
    const auto L = random_change(rng, 0.5);
    const auto q = apply_linear_change(p, L);
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
      const auto z = random_point(rng, 1.0);
      const Complex direct = p.evaluate(apply(L, z));
      worst = std::max(worst, std::abs(q.evaluate(z) - direct) / std::max(1.0, std::abs(direct)));
    }
    CHECK(worst < 1e-9);
  }
  LinearChange S = LinearChange::Identity();
  S(4, 4) = 0;
  CHECK_THROWS_AS(apply_linear_change(fermat_ensemble(rng, 10), S), std::domain_error);
}

TEST_CASE("slice step leaves sliced polynomials alone") {
  std::mt19937_64 rng(3);
  QuinticPolynomial p;
  for (const auto& m : two_skeleton_points()) p[m.coords()] = unit(rng);
  p[kM0] = 10;
  CHECK(p.on_slice());
  const auto s = slice_step(p);
  CHECK(s.L == LinearChange::Identity());
  CHECK(max_coeff_diff(s.p, p) == 0);
}

TEST_CASE("slice step on Fermat plus one off-slice monomial") {
  // p = sum c_i z_i^5 + psi z^{m0} + eps z1^2 z2 z3 z4. Here b_{51} = eps is
  // the only nonzero entry of B, so z5 -> z5 - (eps/psi) z1 and nothing else
  // moves. Binomial expansion gives the new coefficients directly.
  const Complex psi(7, 3), eps(0.4, -0.2);
  const std::array<Complex, 5> c{Complex(1, 0), Complex(0.5, 0.5), Complex(-1, 0.2), Complex(0.3, -0.9), Complex(0.8, 0.1)};
  QuinticPolynomial p;
  for (int i = 0; i < 5; ++i) {
    Exponents e{};
    e[static_cast<std::size_t>(i)] = 5;
    p[e] = c[static_cast<std::size_t>(i)];
  }
  p[kM0] = psi;
  p[{2, 1, 1, 1, 0}] = eps;

  const auto s = slice_step(p);
  CHECK(std::abs(s.scale - Complex(1, 0)) < 1e-14);
  QuinticPolynomial expected;
  for (int i = 0; i < 4; ++i) {
    Exponents e{};
    e[static_cast<std::size_t>(i)] = 5;
    expected[e] = c[static_cast<std::size_t>(i)];
  }
  expected[kM0] = psi;
  const double binom[6] = {1, 5, 10, 10, 5, 1};
  for (int k = 0; k <= 5; ++k) expected[{k, 0, 0, 0, 5 - k}] += c[4] * binom[k] * std::pow(-eps / psi, k);
  CHECK(max_coeff_diff(s.p, expected) < 1e-14);
  CHECK(s.p.off_slice_norm() < 1e-15);
}

TEST_CASE("one slice step shrinks the off-slice part like 1/psi") {
  std::mt19937_64 rng(4);
  const auto base = dense_ensemble(rng, 1.0);
  std::vector<double> ratios;
  for (double psi : {1e2, 1e3, 1e4}) {
    auto p = base;
    p[kM0] = psi;
    const auto s = slice_step(p);
    ratios.push_back(s.p.off_slice_norm() / p.off_slice_norm());
  }
  CHECK(ratios[0] < 1);
  for (std::size_t i = 1; i < ratios.size(); ++i) CHECK(ratios[i - 1] / ratios[i] == doctest::Approx(10).epsilon(0.2));

  for (int trial = 0; trial < 10; ++trial) {
    const auto p = fermat_ensemble(rng, 10);
    CHECK(slice_step(p).p.off_slice_norm() < p.off_slice_norm());
  }
}

TEST_CASE("psi = 0 is rejected") {
  QuinticPolynomial p;
  p[{5, 0, 0, 0, 0}] = 1;
  CHECK_THROWS_AS(slice_step(p), std::domain_error);
  CHECK_THROWS_AS(reduce_to_slice(p), std::domain_error);
}

TEST_CASE("already sliced polynomial takes zero iterations") {
  QuinticPolynomial p;
  p[{5, 0, 0, 0, 0}] = 1;
  p[kM0] = 10;
  const auto r = reduce_to_slice(p);
  CHECK(r.status == SliceStatus::Converged);
  CHECK(r.iterations == 0);
  CHECK(r.L_total == LinearChange::Identity());
}

TEST_CASE("reduction of random quintics with |psi| = 10") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    CAPTURE(trial);
    const auto p = fermat_ensemble(rng, 10);
    const auto r = reduce_to_slice(p, {1e-12, 40, 10});
    REQUIRE(r.status == SliceStatus::Converged);
    CHECK(r.iterations <= 40);
    CHECK(r.p0.off_slice_norm() < 1e-12);
    CHECK(!r.below_threshold);
    for (std::size_t k = 1; k < r.history.size(); ++k) CHECK(r.history[k] < r.history[k - 1]);
    CHECK(r.p0.psi() == p.psi());
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      const auto z = random_point(rng, 0.5);
      worst = std::max(worst, std::abs(p.evaluate(apply(r.L_total, z)) - r.c * r.p0.evaluate(z)));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("small psi is reported as divergent") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const auto r = reduce_to_slice(fermat_ensemble(rng, 0.1));
    CHECK(r.status == SliceStatus::Diverged);
    CHECK(r.below_threshold);
    CHECK(r.iterations >= 2);
  }
}

TEST_CASE("residual after step l scales like |psi|^-l") {
  std::mt19937_64 rng(7);
  const Complex phase = unit(rng);
  const auto base = dense_ensemble(rng, 1.0);
  const std::vector<double> psis{300, 1000, 3000};
  std::vector<std::vector<double>> logs(3);
  for (double psi : psis) {
    auto p = base;
    p[kM0] = psi * phase;
    const auto r = reduce_to_slice(p, {0, 3, 10});
    REQUIRE(r.history.size() == 4);
    for (int l = 1; l <= 3; ++l) logs[static_cast<std::size_t>(l - 1)].push_back(std::log(r.history[static_cast<std::size_t>(l)]));
  }
  for (int l = 1; l <= 3; ++l) {
    // least-squares slope of log r_l against log |psi|
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < psis.size(); ++i) {
      const double x = std::log(psis[i]), y = logs[static_cast<std::size_t>(l - 1)][i];
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(psis.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CAPTURE(l);
    CHECK(slope == doctest::Approx(-l).epsilon(0.2));
  }
}

TEST_CASE("reduction commutes with the torus action") {
  std::mt19937_64 rng(8);
  const auto p = fermat_ensemble(rng, 10);
  const ComplexPoint5 lambda{std::polar(1.1, 0.3), std::polar(0.9, -1.2), std::polar(1.05, 2.0), std::polar(0.95, 0.1),
                             std::polar(1.0, -0.4)};
  const auto r = reduce_to_slice(p);
  const auto rl = reduce_to_slice(torus_rescale(p, lambda));
  REQUIRE(r.status == SliceStatus::Converged);
  REQUIRE(rl.status == SliceStatus::Converged);
  CHECK(torus_rescale(r.p0, lambda).on_slice(1e-11));
  CHECK(max_coeff_diff(rl.p0, torus_rescale(r.p0, lambda)) < 1e-10);
}

TEST_CASE("S5 acts by permuting variables") {
  std::mt19937_64 rng(9);
  const auto p = fermat_ensemble(rng, 10);
  const std::array<int, 5> sigma{2, 0, 4, 1, 3};
  const auto q = permute_variables(p, sigma);
  for (int k = 0; k < 10; ++k) {
    const auto z = random_point(rng, 1.0);
    ComplexPoint5 zs;
    for (std::size_t i = 0; i < 5; ++i) zs[i] = z[static_cast<std::size_t>(sigma[i])];
    CHECK(std::abs(q.evaluate(z) - p.evaluate(zs)) < 1e-12);
  }
  CHECK(q.psi() == p.psi());
  CHECK(q.off_slice_norm() == p.off_slice_norm());
  const auto r = reduce_to_slice(p), rq = reduce_to_slice(q);
  CHECK(max_coeff_diff(rq.p0, permute_variables(r.p0, sigma)) < 1e-10);
  CHECK_THROWS_AS(permute_variables(p, {0, 0, 1, 2, 3}), std::invalid_argument);
}

TEST_CASE("mirror map: zero data gives all-ones coefficients") {
  const auto w = WeightFunction::on_skeleton([](const LatticePointM&) { return Rational(0); }, Rational(0));
  const auto p = monomial_divisor_map({}, w);
  for (const auto& m : QuinticPolynomial::monomials()) {
    const Complex expected = on_two_skeleton(m) || m.coords() == kM0 ? 1.0 : 0.0;
    CHECK(std::abs(p[m.coords()] - expected) < 1e-15);
  }
}

TEST_CASE("mirror map: standard weights") {
  const auto w = standard_weights();
  const auto p = monomial_divisor_map({}, w);
  const Rational w0 = lemma_threshold(w);
  for (const auto& m : two_skeleton_points()) {
    const auto a = p[m.coords()];
    CHECK(a.imag() == 0);
    CHECK(a.real() > 0);
    CHECK(a.real() == doctest::Approx(std::exp(-kTwoPi * Rational(w(m) - w0).get_d())).epsilon(1e-12));
  }
  CHECK(p.psi() == Complex(1, 0));
  CHECK(same_chamber(kahler_weights(p), w));
  CHECK(!same_chamber(kahler_weights(p), figure4_weights()));
}

TEST_CASE("mirror map: a half phase negates one coefficient") {
  const auto w = standard_weights();
  std::vector<double> eta(105, 0.0);
  eta[17] = 0.5;
  const auto p = monomial_divisor_map({}, w), q = monomial_divisor_map(eta, w);
  const auto pts = two_skeleton_points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto a = p[pts[i].coords()], b = q[pts[i].coords()];
    CHECK(std::abs(std::abs(a) - std::abs(b)) <= 1e-15 * std::abs(a));
    if (i == 17)
      CHECK(std::abs(b + a) <= 1e-12 * std::abs(a));
    else
      CHECK(a == b);
  }
}

TEST_CASE("mirror map rejects weights outside the Kahler cone") {
  auto w = standard_weights();
  const WeightFunction high(w.points(), w.values(), Rational(100));
  CHECK_THROWS_AS(monomial_divisor_map({}, high), std::domain_error);
  const auto concave = WeightFunction::on_skeleton([](const LatticePointM& m) {
    Rational s = 0;
    for (int i = 0; i < 5; ++i) s -= m[i] * m[i];
    return s;
  });
  CHECK_THROWS_AS(monomial_divisor_map({}, concave), std::domain_error);
  CHECK_THROWS_AS(monomial_divisor_map(std::vector<double>(3), w), std::invalid_argument);
}

TEST_CASE("mirror map preserves the chamber of random generic weights") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CAPTURE(seed);
    const auto w = random_generic_weights(seed);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> eta(105);
    for (auto& e : eta) e = u(rng);
    const auto p = monomial_divisor_map(eta, w);
    const auto back = kahler_weights(p);
    CHECK(same_chamber(back, w));
    const Rational w0 = lemma_threshold(w);
    double worst = 0;
    for (std::size_t i = 0; i < 105; ++i) worst = std::max(worst, std::abs(Rational(back.values()[i] - (w.values()[i] - w0)).get_d()));
    CHECK(worst < 1e-8);
  }
}
