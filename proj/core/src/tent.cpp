#include "tranche/tent.hpp"

#include <algorithm>
#include <cmath>

#include "tranche/errors.hpp"

namespace tranche {
namespace tent {

double endpoint(int k) {
  if (k <= 0) {
    const double d = static_cast<double>(2 - k);
    return 1.0 / (d * d);
  }
  const double d = static_cast<double>(k + 1);
  return 1.0 - 1.0 / (d * d);
}

Rational endpoint_exact(int k) {
  if (k <= 0) {
    const long long d = 2 - k;
    return Rational(1, d * d);
  }
  const long long d = k + 1;
  return Rational(d * d - 1, d * d);
}

Interval interval(int n) { return {endpoint(n), endpoint(n + 1)}; }

double slope(int n) { return 2.0 / interval(n).length(); }

int interval_of(double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("tent::interval_of: x outside (0,1)");
  int n;
  if (x < 0.25) {
    // a_{-k} = 1/(k+2)^2 <= x  <=>  k >= 1/sqrt(x) - 2
    n = -static_cast<int>(std::ceil(1.0 / std::sqrt(x) - 2.0));
  } else if (x < 0.75) {
    return 0;
  } else {
    // a_k = 1 - 1/(k+1)^2 <= x  <=>  k <= 1/sqrt(1-x) - 1
    n = static_cast<int>(std::floor(1.0 / std::sqrt(1.0 - x) - 1.0));
  }
  while (endpoint(n) > x) --n;
  while (endpoint(n + 1) <= x) ++n;
  return n;
}

double value(double x) {
  const int n = interval_of(x);
  const Interval I = interval(n);
  const double v = slope(n) * std::min(x - I.lo, I.hi - x);
  return std::clamp(v, 0.0, 1.0);
}

void preimages(int n, double v, double& left, double& right) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("tent::preimages: value outside [0,1]");
  const Interval I = interval(n);
  const double half = 0.5 * I.length() * v;
  left = I.lo + half;
  right = I.hi - half;
  if (v == 1.0) left = right = I.mid();
}

void preimages_exact(int n, const Rational& v, Rational& left, Rational& right) {
  const Rational lo = endpoint_exact(n), hi = endpoint_exact(n + 1);
  const Rational half = (hi - lo) * v * Rational(1, 2);
  left = lo + half;
  right = hi - half;
}

int materialized_bound(double floor) {
  int k = 0;
  while (interval(-(k + 1)).length() >= floor) ++k;
  return k;
}

std::vector<int> materialized(double floor) {
  const int k = materialized_bound(floor);
  std::vector<int> out;
  for (int n = -k; n <= k; ++n) out.push_back(n);
  return out;
}

}  // namespace tent

bool tent_relation(double x, double y, double tol) {
  if (!(x >= -tol && x <= 1.0 + tol && y >= -tol && y <= 1.0 + tol))
    throw DomainError("tent_relation: arguments outside [0,1]");
  if (x <= tol || x >= 1.0 - tol) return true;
  return std::fabs(y - tent::value(x)) <= tol;
}

}  // namespace tranche
