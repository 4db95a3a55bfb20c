#include "tightcert/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>

namespace tightcert {

namespace {

Int parse_int(const std::string& text) {
  require(!text.empty(), "empty integer literal");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  require(i < text.size(), "sign without digits in integer literal");
  for (std::size_t j = i; j < text.size(); ++j)
    require(std::isdigit(static_cast<unsigned char>(text[j])) != 0,
            "invalid digit in integer literal: " + text);
  return Int(text);
}

}  // namespace

Rational::Rational(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) {
  require(den_ != 0, "rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  Int g = boost::multiprecision::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rational::str() const {
  std::string s = num_.str();
  if (den_ != 1) s += "/" + den_.str();
  return s;
}

Int Rational::floor() const {
  Int q = num_ / den_;
  if (num_ < 0 && q * den_ != num_) --q;
  return q;
}

Int Rational::ceil() const {
  Int q = num_ / den_;
  if (num_ > 0 && q * den_ != num_) ++q;
  return q;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  require(o.num_ != 0, "division by zero rational");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Int lhs = a.num_ * b.den_;
  Int rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational inverse(const Rational& r) {
  require(!r.is_zero(), "inverse of zero");
  return Rational(r.den(), r.num());
}

std::vector<Rational> solve_linear_system(const std::vector<std::vector<Int>>& a,
                                          const std::vector<Int>& b) {
  const std::size_t n = a.size();
  require(b.size() == n, "system dimensions disagree");
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  std::vector<Rational> rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(a[i].size() == n, "system matrix is not square");
    rhs[i] = Rational(b[i]);
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t row = col; row < n; ++row)
      if (!m[row][col].is_zero()) {
        pivot = row;
        break;
      }
    require(pivot < n, "singular matrix");
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      Rational f = m[row][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
      rhs[row] -= f * rhs[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

}  // namespace tightcert
