#pragma once

// Exact rational arithmetic used by every combinatorial module.
//
// Rational is GMP's mpq_class: arbitrary precision, always canonical
// (lowest terms, positive denominator) after construction through the
// helpers below.

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace syz {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// Builds p/q in lowest terms. Throws std::invalid_argument when q == 0.
Rational make_rational(const Integer& p, const Integer& q = 1);

/// Parses "p/q", "p" or a decimal literal such as "-0.25" exactly.
Rational parse_rational(std::string_view text);

/// Formats as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

RationalVector to_rational_vector(std::span<const long> values);

/// Least common multiple of the denominators of `values` (1 for empty input).
Integer common_denominator(std::span<const Rational> values);

/// Exact rank of a dense rational matrix given as rows.
int rank(std::vector<RationalVector> rows);

/// Exact determinant of a square rational matrix.
Rational determinant(std::vector<RationalVector> rows);

/// Solves A x = b exactly; returns false when A is singular.
bool solve(std::vector<RationalVector> a, RationalVector b, RationalVector& x);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace syz
