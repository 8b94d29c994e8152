#include "tranche/curves.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "tranche/errors.hpp"

namespace tranche {

double warsaw_f(double t) {
  if (!(t > 0.0) || t > 1.0) throw DomainError("warsaw_f: t outside (0,1]");
  constexpr double kKnee = 0.7;
  if (t <= kKnee) return 0.5 * ((1.0 - t) * std::sin(1.0 / t) + 1.0);
  const double at_knee = 0.5 * ((1.0 - kKnee) * std::sin(1.0 / kKnee) + 1.0);
  return at_knee + (1.0 - at_knee) * (t - kKnee) / (1.0 - kKnee);
}

double depth_f(double t) {
  if (!(t > 0.0) || t > 1.0) throw DomainError("depth_f: t outside (0,1]");
  if (t <= 0.5) return 0.25 * (std::sin(std::numbers::pi / t) + 1.0 + 3.0 * t);
  return 1.25 - 1.25 * t;
}

Map1D warsaw_map() { return Map1D{warsaw_f, {0.0, 1.0}, "warsaw_f"}; }
Map1D depth_map() { return Map1D{depth_f, {0.0, 1.0}, "depth_f"}; }

namespace {

// Sign of a central difference; 0 when flat at working precision.
int slope_sign(const Map1D& f, double t, double h) {
  const double lo = std::max(t - h, f.domain.lo + 1e-300);
  const double hi = std::min(t + h, f.domain.hi);
  const double d = f(hi) - f(lo);
  return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
}

double refine_sign_change(const Map1D& f, double a, double b, int sign_at_a) {
  constexpr double kDerivStep = 1e-8;
  for (int it = 0; it < 200 && b - a > 1e-10 * 0.5; ++it) {
    const double m = 0.5 * (a + b);
    if (slope_sign(f, m, kDerivStep) == sign_at_a)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<Interval> monotone_laps(const Map1D& f, double step) {
  std::vector<Interval> laps;
  const double lo = f.domain.lo + step;
  const double hi = f.domain.hi;
  double start = lo;
  int prev = slope_sign(f, lo, step * 0.25);
  for (double t = lo + step; t <= hi + 0.5 * step; t += step) {
    const double tt = std::min(t, hi);
    const int s = slope_sign(f, tt, step * 0.25);
    if (s != 0 && prev != 0 && s != prev) {
      const double c = refine_sign_change(f, tt - step, tt, prev);
      laps.push_back({start, c});
      start = c;
    }
    if (s != 0) prev = s;
  }
  laps.push_back({start, hi});
  return laps;
}

ExtremaTable::ExtremaTable(std::vector<double> maxima, std::vector<double> minima)
    : z_(std::move(maxima)), y_(std::move(minima)) {
  if (y_.size() != z_.size() + 1) throw ConstructionError("extrema table: need count+1 minima");
  for (std::size_t n = 1; n <= z_.size(); ++n)
    if (!(y_[n] < z_[n - 1] && z_[n - 1] < y_[n - 1]))
      throw ConstructionError("extrema table: interleaving violated at index " + std::to_string(n));
}

double ExtremaTable::z(std::size_t n) const {
  if (n < 1 || n > z_.size()) throw DomainError("extrema index out of range");
  return z_[n - 1];
}

double ExtremaTable::y(std::size_t n) const {
  if (n < 1 || n > y_.size()) throw DomainError("extrema index out of range");
  return y_[n - 1];
}

std::string ExtremaTable::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "index,y,z\n";
  for (std::size_t n = 1; n <= y_.size(); ++n) {
    out << n << ',' << y_[n - 1] << ',';
    if (n <= z_.size()) out << z_[n - 1];
    out << '\n';
  }
  return out.str();
}

ExtremaTable find_extrema(const Map1D& f, std::size_t count, double grid) {
  if (count < 1) throw DomainError("find_extrema: count must be positive");
  std::vector<double> maxima, minima{f.domain.hi};
  const double floor_t = f.domain.lo + 2.0 * grid;
  double t = f.domain.hi - grid;
  int prev = slope_sign(f, t, grid * 0.25);
  double last = f.domain.hi;
  while (maxima.size() < count || minima.size() < count + 1) {
    const double next = t - grid;
    if (next <= floor_t)
      throw ResolutionError("find_extrema: scan reached the domain floor");
    const int s = slope_sign(f, next, grid * 0.25);
    if (s != 0 && prev != 0 && s != prev) {
      // Scanning downward: - to + is a maximum, + to - a minimum.
      const double c = refine_sign_change(f, next, t, s);
      if (last - c < 10.0 * grid)
        throw ResolutionError("find_extrema: laps narrower than ten grid steps");
      if (prev < 0)
        maxima.push_back(c);
      else
        minima.push_back(c);
      last = c;
    }
    if (s != 0) prev = s;
    t = next;
  }
  return ExtremaTable(std::move(maxima), std::move(minima));
}

namespace {

// Newton on 4 f'(t) = 3 - pi cos(pi/t) / t^2, valid on (0, 1/2].
double newton_extremum(double t) {
  constexpr double pi = std::numbers::pi;
  for (int k = 0; k < 50; ++k) {
    const double a = pi / t;
    const double g = 3.0 - pi * std::cos(a) / (t * t);
    const double dg = -pi * pi * std::sin(a) / (t * t * t * t) + 2.0 * pi * std::cos(a) / (t * t * t);
    const double step = g / dg;
    t -= step;
    if (std::fabs(step) < 1e-17 * t) break;
  }
  return t;
}

// Scanning resolves the first laps; deeper extrema sit near 1/(2i + 1/2) (maxima)
// and 1/(2i - 1/2) (minima) and are found by Newton from there.
ExtremaTable depth_extrema_table(std::size_t count) {
  constexpr std::size_t kScanned = 32;
  // Always scan the same prefix so every table agrees on shared entries.
  static const ExtremaTable scanned = find_extrema(depth_map(), kScanned);
  const std::size_t head = std::min(count, kScanned);
  std::vector<double> z, y;
  const auto polish = [](double t) {
    if (t > 0.5) return t;
    const double r = newton_extremum(t);
    return std::fabs(r - t) < 1e-6 * t ? r : t;
  };
  for (std::size_t i = 1; i <= head; ++i) z.push_back(polish(scanned.z(i)));
  for (std::size_t i = 1; i <= head + 1; ++i) y.push_back(polish(scanned.y(i)));
  for (std::size_t i = head + 1; i <= count; ++i) {
    const double k = static_cast<double>(i);
    z.push_back(newton_extremum(1.0 / (2.0 * k + 0.5)));
    y.push_back(newton_extremum(1.0 / (2.0 * k + 1.5)));
    if (!(z.back() < z[z.size() - 2] && y.back() < z.back() && z.back() < y[y.size() - 2]))
      throw ResolutionError("depth_extrema: Newton left the expected lap");
  }
  return ExtremaTable(std::move(z), std::move(y));
}

}  // namespace

const ExtremaTable& depth_extrema(std::size_t count) {
  static std::mutex mutex;
  static std::vector<std::unique_ptr<ExtremaTable>> tables;
  std::lock_guard lock(mutex);
  for (const auto& t : tables)
    if (t->count() >= count) return *t;
  const std::size_t want = std::max<std::size_t>(count, tables.empty() ? 24 : tables.back()->count() * 2);
  tables.push_back(std::make_unique<ExtremaTable>(depth_extrema_table(want)));
  return *tables.back();
}

double truncated_f(const ExtremaTable& ex, std::size_t i, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("truncated_f: t outside [0,1]");
  const double cut = ex.y(i + 1);
  if (t >= cut) return depth_f(t);
  return depth_f(cut) / cut * t;
}

double truncated_f(std::size_t i, double t) { return truncated_f(depth_extrema(i), i, t); }

double lap_invert(const std::function<double(double)>& f, Interval lap, double v) {
  double a = lap.lo, b = lap.hi;
  const double fa = f(a), fb = f(b);
  const bool increasing = fb > fa;
  const double vmin = std::min(fa, fb), vmax = std::max(fa, fb);
  const double tol = 1e-12 * std::max(1.0, std::fabs(vmax));
  if (v < vmin - tol || v > vmax + tol) throw RangeError("lap_invert: value outside the lap image");
  if (v <= vmin) return increasing ? a : b;
  if (v >= vmax) return increasing ? b : a;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if ((fm < v) == increasing)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

double lap_invert(const Map1D& f, Interval lap, double v) { return lap_invert(f.eval, lap, v); }

}  // namespace tranche
