#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace tranche {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double t, double tol = 0.0) const { return t >= lo - tol && t <= hi + tol; }
};

// Continuous real map on an interval.
struct Map1D {
  std::function<double(double)> eval;
  Interval domain{0.0, 1.0};
  std::string name;
  double operator()(double t) const { return eval(t); }
};

// 0.5((1-t) sin(1/t) + 1) on (0, 0.7], affine on [0.7, 1] with f(1) = 1.
double warsaw_f(double t);
// (sin(pi/t) + 1 + 3t)/4 on (0, 1/2], 5/4 - 5t/4 on [1/2, 1].
double depth_f(double t);

Map1D warsaw_map();
Map1D depth_map();

// Maximal monotone subintervals found by a derivative sign scan with step `step`.
std::vector<Interval> monotone_laps(const Map1D& f, double step = 1e-5);

// Local extrema of depth_f indexed from t = 1 downward.
// z(n): n-th local maximum, y(n): n-th local minimum, y(1) = 1.
class ExtremaTable {
 public:
  ExtremaTable(std::vector<double> maxima, std::vector<double> minima);
  std::size_t count() const { return z_.size(); }
  double z(std::size_t n) const;
  double y(std::size_t n) const;  // valid for 1 <= n <= count() + 1
  std::string to_csv() const;

 private:
  std::vector<double> z_;
  std::vector<double> y_;
};

// First `count` maxima and count+1 minima (y(1) = 1 included).
// Throws ResolutionError when the laps become narrower than ten grid steps.
ExtremaTable find_extrema(const Map1D& f, std::size_t count, double grid = 1e-5);

// Shared table for depth_f; grows on demand and is safe to call concurrently.
const ExtremaTable& depth_extrema(std::size_t count);

// f_i: depth_f on [y(i+1), 1], the chord through the origin below it.
double truncated_f(const ExtremaTable& ex, std::size_t i, double t);
double truncated_f(std::size_t i, double t);

// Unique t in `lap` with f(t) = v; f must be strictly monotone on `lap`.
double lap_invert(const Map1D& f, Interval lap, double v);
double lap_invert(const std::function<double(double)>& f, Interval lap, double v);

}  // namespace tranche
