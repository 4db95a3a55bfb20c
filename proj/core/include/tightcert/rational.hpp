#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <vector>

#include "tightcert/errors.hpp"

namespace tightcert {

// Arbitrary-precision integer used throughout; no intermediate result in the
// calculus is safe to bound a priori (continued-fraction numerators and
// Smith-form entries grow fast).
using Int = boost::multiprecision::cpp_int;

// Exact rational, always reduced, denominator always positive.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int n) : num_(n), den_(1) {}            // NOLINT(runtime/explicit)
  Rational(const Int& n) : num_(n), den_(1) {}     // NOLINT(runtime/explicit)
  Rational(Int num, Int den);

  // Parses "p/q" or "p".  Throws input_error on malformed text or q = 0.
  static Rational parse(const std::string& text);
  // "p/q", or "p" when the denominator is 1.
  std::string str() const;

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

  Int floor() const;
  Int ceil() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);  // throws input_error on /0

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void normalize();
  Int num_, den_;
};

// 1/r.  Throws input_error when r = 0.
Rational inverse(const Rational& r);

// Exact solution x of a*x = b by Gaussian elimination.
// Throws input_error when a is singular.
std::vector<Rational> solve_linear_system(const std::vector<std::vector<Int>>& a,
                                          const std::vector<Int>& b);

}  // namespace tightcert
