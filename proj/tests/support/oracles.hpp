#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond the Cloud container.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "tranche/hilbert.hpp"

namespace oracle {

inline double metric(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::max(x.size(), y.size());
  double s = 0.0, w = 0.5;
  for (std::size_t k = 0; k < n; ++k, w *= 0.5) {
    const double a = k < x.size() ? x[k] : 0.0;
    const double b = k < y.size() ? y[k] : 0.0;
    s += w * std::fabs(a - b);
  }
  return s;
}

inline std::vector<double> row(const tranche::Cloud& c, std::size_t i) {
  auto p = c[i];
  return {p.begin(), p.end()};
}

// Plain double loop over clouds of equal dimension.
inline double directed(const tranche::Cloud& a, const tranche::Cloud& b) {
  const std::size_t d = a.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double* p = a.data().data() + i * d;
    double best = INFINITY;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double* q = b.data().data() + j * d;
      double s = 0.0, w = 0.5;
      for (std::size_t k = 0; k < d; ++k, w *= 0.5) s += w * std::fabs(p[k] - q[k]);
      best = std::min(best, s);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

inline double hausdorff(const tranche::Cloud& a, const tranche::Cloud& b) {
  return std::max(directed(a, b), directed(b, a));
}

inline tranche::Cloud random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> c(n * dim);
  for (auto& v : c) v = u(rng);
  return tranche::Cloud("random", 0.0, dim, std::move(c));
}

// Tent map on the repaired decomposition, from the closed-form endpoints.
inline double endpoint(int k) {
  if (k <= 0) return 1.0 / ((2.0 - k) * (2.0 - k));
  return 1.0 - 1.0 / ((k + 1.0) * (k + 1.0));
}

inline double tent(double x) {
  int k = 0;
  if (x < endpoint(0)) {
    while (x < endpoint(k)) --k;
  } else {
    while (x >= endpoint(k + 1)) ++k;
  }
  const double lo = endpoint(k), hi = endpoint(k + 1), mid = 0.5 * (lo + hi);
  return x <= mid ? (x - lo) / (mid - lo) : (hi - x) / (hi - mid);
}

inline bool related(double x, double y, double tol = 1e-9) {
  if (x <= tol || x >= 1.0 - tol) return y >= -tol && y <= 1.0 + tol;
  return std::fabs(tent(x) - y) <= tol;
}

inline bool admissible(const std::vector<double>& x, double tol = 1e-9) {
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!related(x[i - 1], x[i], tol)) return false;
  return true;
}

// min over arcs [s, e) of the family of max(h1, h2), by enumeration.
inline double best_arc(const tranche::Cloud& cloud, const tranche::Cloud& y0, const std::vector<std::size_t>& seq,
                       const std::vector<std::size_t>& bounds, std::size_t max_span) {
  double best = INFINITY;
  const std::size_t nb = bounds.size();
  for (std::size_t s = 0; s + 1 < nb; ++s) {
    for (std::size_t e = s + 1; e < nb; ++e) {
      if (max_span && e - s > max_span) break;
      if (bounds[e] == bounds[s]) continue;
      std::vector<std::size_t> pts(seq.begin() + static_cast<std::ptrdiff_t>(bounds[s]),
                                   seq.begin() + static_cast<std::ptrdiff_t>(bounds[e]));
      double h1 = 0.0, h2 = 0.0;
      for (std::size_t p : pts) {
        double m = INFINITY;
        for (std::size_t j = 0; j < y0.size(); ++j) m = std::min(m, metric(row(cloud, p), row(y0, j)));
        h1 = std::max(h1, m);
      }
      for (std::size_t j = 0; j < y0.size(); ++j) {
        double m = INFINITY;
        for (std::size_t p : pts) m = std::min(m, metric(row(cloud, p), row(y0, j)));
        h2 = std::max(h2, m);
      }
      best = std::min(best, std::max(h1, h2));
    }
  }
  return best;
}

}  // namespace oracle
