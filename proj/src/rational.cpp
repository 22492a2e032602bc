#include "syz/rational.hpp"

#include <stdexcept>

namespace syz {

Rational make_rational(const Integer& p, const Integer& q) {
  if (q == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  // trim
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw std::invalid_argument("empty rational literal");
  s = s.substr(first, last - first + 1);

  auto parse_int = [&](const std::string& digits) {
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("malformed rational literal '" + s + "'");
    std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
    for (std::size_t i = start; i < digits.size(); ++i)
      if (digits[i] < '0' || digits[i] > '9')
        throw std::invalid_argument("malformed rational literal '" + s + "'");
    return Integer(digits[0] == '+' ? digits.substr(1) : digits, 10);
  };

  if (const auto slash = s.find('/'); slash != std::string::npos) {
    return make_rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    const bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer w = parse_int(whole);
    Integer f = frac.empty() ? Integer(0) : parse_int(frac);
    if (negative || w < 0) f = -f;
    return make_rational(w * scale + f, scale);
  }
  return make_rational(parse_int(s), 1);
}

std::string to_string(const Rational& input) {
  Rational value = input;
  value.canonicalize();
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

RationalVector to_rational_vector(std::span<const long> values) {
  RationalVector out;
  out.reserve(values.size());
  for (long v : values) out.emplace_back(v);
  return out;
}

Integer common_denominator(std::span<const Rational> values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

namespace {

// Row echelon form in place; returns rank and the sign-adjusted
// product of pivots when the matrix is square.
int eliminate(std::vector<RationalVector>& m, Rational* det) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  Rational d = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) {
      d = 0;
      continue;
    }
    if (p != r) {
      std::swap(m[p], m[r]);
      d = -d;
    }
    d *= m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  if (det) *det = (r == rows && rows == cols) ? d : Rational(0);
  return static_cast<int>(r);
}

}  // namespace

int rank(std::vector<RationalVector> rows) { return eliminate(rows, nullptr); }

Rational determinant(std::vector<RationalVector> rows) {
  if (!rows.empty() && rows.size() != rows[0].size())
    throw std::invalid_argument("determinant of a non-square matrix");
  Rational d;
  eliminate(rows, &d);
  return d;
}

bool solve(std::vector<RationalVector> a, RationalVector b, RationalVector& x) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return false;
    std::swap(a[p], a[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  x.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return true;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot product of mismatched vectors");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace syz
