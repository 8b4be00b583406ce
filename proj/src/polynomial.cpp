#include "fatflat/polynomial.hpp"

#include <sstream>

#include "fatflat/errors.hpp"

namespace fatflat {

IntegerPolynomial::IntegerPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  normalize();
}

IntegerPolynomial IntegerPolynomial::constant(Rational c) { return IntegerPolynomial({std::move(c)}); }

IntegerPolynomial IntegerPolynomial::variable() { return IntegerPolynomial({Rational(0), Rational(1)}); }

IntegerPolynomial IntegerPolynomial::binomial_in_t(long shift, long k) {
  if (k < 0) throw DomainError("binomial_in_t with negative k");
  // (t+shift)(t+shift-1)...(t+shift-k+1) / k!
  IntegerPolynomial result = constant(1);
  Integer factorial = 1;
  for (long i = 0; i < k; ++i) {
    result = result * IntegerPolynomial({Rational(shift - i), Rational(1)});
    factorial *= (i + 1);
  }
  return result * Rational(1, factorial);
}

void IntegerPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational IntegerPolynomial::coefficient(int power) const {
  if (power < 0 || power >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[power];
}

Rational IntegerPolynomial::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Integer IntegerPolynomial::evaluate_integer(long t) const {
  const Rational v = evaluate(Rational(t));
  if (boost::multiprecision::denominator(v) != 1) {
    throw DomainError("polynomial " + to_string() + " is not integral at t=" + std::to_string(t));
  }
  return boost::multiprecision::numerator(v);
}

IntegerPolynomial& IntegerPolynomial::operator+=(const IntegerPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  normalize();
  return *this;
}

IntegerPolynomial& IntegerPolynomial::operator-=(const IntegerPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  normalize();
  return *this;
}

IntegerPolynomial& IntegerPolynomial::operator*=(const Rational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  normalize();
  return *this;
}

IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntegerPolynomial(std::move(out));
}

std::string IntegerPolynomial::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) os << mag;
    if (k >= 1) os << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

}  // namespace fatflat
