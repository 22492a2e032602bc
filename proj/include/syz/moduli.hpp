#pragma once

// Complex moduli of quintics near the large complex limit: reduction to the
// slice Q0 = m0 + Span(Delta^0) and the monomial-divisor mirror map.

#include "syz/lattice.hpp"
#include "syz/subdivision.hpp"

#include <Eigen/Core>

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace syz {

using Complex = std::complex<double>;
using LinearChange = Eigen::Matrix<Complex, 5, 5>;
using ComplexPoint5 = std::array<Complex, 5>;

/// p(z) = sum a_m z^m over the 126 exponent vectors of Delta, stored in the
/// order of enumerate_delta_points().
class QuinticPolynomial {
 public:
  QuinticPolynomial();
  explicit QuinticPolynomial(std::vector<Complex> coeffs);

  static std::size_t index_of(const Exponents& m);
  static const std::vector<LatticePointM>& monomials();
  /// The twenty exponents m0 - e_j + e_k (j != k); these are exactly the
  /// points of Delta outside Delta^0 and m0.
  static const std::vector<std::size_t>& off_slice_indices();

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex& operator[](const Exponents& m) { return coeffs_[index_of(m)]; }
  const Complex& operator[](const Exponents& m) const { return coeffs_[index_of(m)]; }
  Complex psi() const;

  Complex evaluate(const ComplexPoint5& z) const;
  /// Largest |a_m| over the off-slice monomials.
  double off_slice_norm() const;
  bool on_slice(double tol = 0) const { return off_slice_norm() <= tol; }
  bool finite() const;

 private:
  std::vector<Complex> coeffs_;
};

/// Coefficients of z -> p(L z). Throws std::domain_error for singular L.
QuinticPolynomial apply_linear_change(const QuinticPolynomial& p, const LinearChange& L);

struct SliceStep {
  LinearChange L;
  QuinticPolynomial p;   // (psi / psi') * p(L z), so that a_{m0} is unchanged
  Complex scale;         // psi / psi'
};

/// One step z -> (I - B/psi) z with b_jk = a_{m0 - e_j + e_k}, b_jj = 0.
/// Throws std::domain_error when psi = 0.
SliceStep slice_step(const QuinticPolynomial& p);

enum class SliceStatus { Converged, Diverged, MaxIterations };
std::string to_string(SliceStatus s);

struct SliceOptions {
  double tol = 1e-12;
  int max_iter = 100;
  /// |psi| over the largest other coefficient; smaller ratios are flagged.
  double psi_threshold = 10;
};

struct SliceResult {
  SliceStatus status = SliceStatus::MaxIterations;
  LinearChange L_total;
  QuinticPolynomial p0;
  std::vector<double> history;  // off-slice norm before the first step and after each step
  int iterations = 0;
  /// p(L_total z) = c * p0(z).
  Complex c{1, 0};
  bool below_threshold = false;
};

/// Iterates slice_step until the off-slice norm drops below tol. Two
/// increases of the norm end the run as Diverged with the last iterate.
/// Throws std::domain_error when psi = 0.
SliceResult reduce_to_slice(const QuinticPolynomial& p, const SliceOptions& opts = {});

/// z -> (lambda_1 z_1, ..., lambda_5 z_5) acting on coefficients.
QuinticPolynomial torus_rescale(const QuinticPolynomial& p, const ComplexPoint5& lambda);

/// (sigma p)(z) = p(z_{sigma(1)}, ..., z_{sigma(5)}), sigma a permutation of 0..4.
QuinticPolynomial permute_variables(const QuinticPolynomial& p, const std::array<int, 5>& sigma);

/// p_u(z) = sum_{Delta^0} e^{2 pi i eta_m} e^{-2 pi w'_m} z^m + z^{m0} with
/// w' = w - w_{m0}. When w carries no value at m0 the lemma threshold is
/// used. `phases` is empty or has one entry per skeleton point. Throws
/// std::domain_error when w' is not convex with respect to the 2-skeleton.
QuinticPolynomial monomial_divisor_map(const std::vector<double>& phases, const WeightFunction& w);

/// Inverse on moduli: w_m = -ln|a_m| / 2 pi on the 105 skeleton points,
/// with w_{m0} from a_{m0}, rounded to multiples of 1/denominator. Throws
/// std::domain_error when some skeleton coefficient vanishes.
WeightFunction kahler_weights(const QuinticPolynomial& p, long denominator = 1000000000);

}  // namespace syz
