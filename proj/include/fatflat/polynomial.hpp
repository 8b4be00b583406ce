#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace fatflat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Univariate polynomial in t with exact rational coefficients, lowest degree
/// first. Named for what it models (Hilbert polynomials, which are
/// integer-valued on the integers) rather than its coefficient ring.
class IntegerPolynomial {
 public:
  IntegerPolynomial() = default;
  explicit IntegerPolynomial(std::vector<Rational> coefficients);

  static IntegerPolynomial constant(Rational c);
  /// The polynomial t.
  static IntegerPolynomial variable();
  /// binom(t + shift, k) as a polynomial in t, k >= 0.
  static IntegerPolynomial binomial_in_t(long shift, long k);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int power) const;

  Rational evaluate(const Rational& t) const;
  /// Value at an integer point; throws DomainError if it is not an integer.
  Integer evaluate_integer(long t) const;

  IntegerPolynomial& operator+=(const IntegerPolynomial& other);
  IntegerPolynomial& operator-=(const IntegerPolynomial& other);
  IntegerPolynomial& operator*=(const Rational& scalar);
  friend IntegerPolynomial operator+(IntegerPolynomial a, const IntegerPolynomial& b) { return a += b; }
  friend IntegerPolynomial operator-(IntegerPolynomial a, const IntegerPolynomial& b) { return a -= b; }
  friend IntegerPolynomial operator*(IntegerPolynomial a, const Rational& s) { return a *= s; }
  friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b);
  friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;

  /// Human-readable form such as "10t^3 - 1480t + 4506" or "5/3t^3 + 10/3t + 1".
  std::string to_string(const std::string& var = "t") const;

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

}  // namespace fatflat
