#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace tranche {

// Exact rational with 128-bit numerator and denominator, always reduced,
// denominator positive. Overflow throws ConstructionError.
class Rational {
 public:
  __extension__ typedef __int128 Int;

  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Int n, Int d);

  Int num() const { return num_; }
  Int den() const { return den_; }
  double to_double() const;
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  Int num_ = 0;
  Int den_ = 1;
};

}  // namespace tranche
