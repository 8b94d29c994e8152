#include "tranche/rational.hpp"

#include <algorithm>

#include "tranche/errors.hpp"

namespace tranche {

namespace {

using Int = Rational::Int;

Int abs128(Int v) { return v < 0 ? -v : v; }

Int gcd128(Int a, Int b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int mul_checked(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw ConstructionError("rational overflow");
  return r;
}

Int add_checked(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw ConstructionError("rational overflow");
  return r;
}

}  // namespace

Rational::Rational(Int n, Int d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const Int g = gcd128(n, d);
  num_ = g == 0 ? 0 : n / g;
  den_ = g == 0 ? 1 : d / g;
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::to_string() const {
  auto str = [](Int v) {
    if (v == 0) return std::string("0");
    bool neg = v < 0;
    std::string s;
    for (Int x = abs128(v); x > 0; x /= 10) s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
  };
  return den_ == 1 ? str(num_) : str(num_) + "/" + str(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const Int g = gcd128(a.den_, b.den_);
  const Int da = a.den_ / g;
  return Rational(add_checked(mul_checked(a.num_, b.den_ / g), mul_checked(b.num_, da)),
                  mul_checked(a.den_, b.den_ / g));
}

Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num_, b.den_); }

Rational operator*(const Rational& a, const Rational& b) {
  const Int g1 = gcd128(a.num_, b.den_);
  const Int g2 = gcd128(b.num_, a.den_);
  const Int n1 = g1 ? a.num_ / g1 : a.num_, d2 = g1 ? b.den_ / g1 : b.den_;
  const Int n2 = g2 ? b.num_ / g2 : b.num_, d1 = g2 ? a.den_ / g2 : a.den_;
  return Rational(mul_checked(n1, n2), mul_checked(d1, d2));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw DomainError("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  const Int l = mul_checked(a.num_, b.den_);
  const Int r = mul_checked(b.num_, a.den_);
  return l <=> r;
}

}  // namespace tranche
