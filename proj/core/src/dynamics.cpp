#include "tranche/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tranche/errors.hpp"
#include "tranche/mahavier.hpp"
#include "tranche/parallel.hpp"
#include "tranche/tent.hpp"

namespace tranche {

std::vector<HPoint> sigma_orbit(const HPoint& x, std::size_t n) {
  if (!admissible(x.coords())) throw DomainError("sigma_orbit: point is not admissible");
  std::vector<HPoint> orbit{x};
  orbit.reserve(n + 1);
  for (std::size_t k = 0; k < n; ++k) orbit.push_back(left_shift(orbit.back()));
  return orbit;
}

HPoint realize_itinerary(const std::vector<int>& word, std::size_t D) {
  if (word.size() > D) throw DomainError("realize_itinerary: word longer than the dimension");
  std::vector<double> c(D, 0.0);
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] != 0 && word[i] != 1) throw DomainError("realize_itinerary: symbols are 0 and 1");
    c[i] = word[i];
  }
  return HPoint(std::move(c));
}

HPoint random_admissible(std::uint64_t seed, std::size_t D) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> c(D);
  double x = u(rng);
  for (std::size_t i = 0; i < D; ++i) {
    c[i] = x;
    x = (x <= 0.0 || x >= 1.0) ? u(rng) : tent::value(x);
    if (x < 1e-12) x = 0.0;
    if (x > 1.0 - 1e-12) x = 1.0;
  }
  return HPoint(std::move(c));
}

double bowen_distance(const HPoint& x, const HPoint& y, std::size_t n) {
  const auto a = x.coords(), b = y.coords();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = std::max(a.size(), b.size());
    double d = 0.0, w = 0.5;
    for (std::size_t k = i; k < len; ++k, w *= 0.5) {
      const double xa = k < a.size() ? a[k] : 0.0, xb = k < b.size() ? b[k] : 0.0;
      d += w * std::abs(xa - xb);
    }
    best = std::max(best, d);
  }
  return best;
}

EntropyReport entropy_lower_bound(std::size_t n, double eps, std::size_t budget, std::uint64_t seed,
                                  std::size_t D) {
  if (n == 0) throw DomainError("entropy_lower_bound: n must be positive");
  if (n > 20) throw DomainError("entropy_lower_bound: n above 20 is not supported");
  if (D == 0) D = n + kDefaultDim;
  EntropyReport rep;
  rep.n = n;
  rep.eps = eps;

  const std::size_t words = std::size_t{1} << n;
  const std::size_t n_words = std::min(words, budget);
  const std::size_t n_random = budget - n_words;
  std::vector<HPoint> cand(n_words + n_random);
  parallel_for(cand.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t c = b; c < e; ++c) {
      if (c < n_words) {
        std::vector<int> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<int>((c >> (n - 1 - i)) & 1U);
        cand[c] = realize_itinerary(w, D);
      } else {
        cand[c] = random_admissible(seed * 0x9E3779B97F4A7C15ULL + c, D);
      }
    }
  });
  rep.candidates = cand.size();

  std::vector<const HPoint*> kept;
  for (std::size_t c = 0; c < cand.size(); ++c) {
    const bool sep = std::all_of(kept.begin(), kept.end(),
                                 [&](const HPoint* k) { return bowen_distance(cand[c], *k, n) >= eps; });
    if (!sep) continue;
    kept.push_back(&cand[c]);
    if (c < n_words) ++rep.from_itineraries;
  }
  rep.separated = kept.size();
  rep.bound = std::log(static_cast<double>(rep.separated)) / static_cast<double>(n);
  return rep;
}

ExactnessReport exactness_witness(const Cloud& u, const Cloud& xhat, std::size_t max_n) {
  ExactnessReport rep;
  const double mesh = std::max(u.mesh(), xhat.mesh());
  rep.threshold = 3.0 * mesh;
  rep.best = INFINITY;
  Cloud cur = u;
  for (std::size_t k = 1; k <= max_n && k < u.dim() && k < xhat.dim(); ++k) {
    cur = left_shift(cur);
    const std::size_t d = std::min(cur.dim(), xhat.dim() - k);
    const double h = hausdorff(cur.with_dim(d), xhat.with_dim(d));
    rep.distances.push_back(h);
    rep.best = std::min(rep.best, h);
    if (h <= rep.threshold) {
      rep.found = true;
      rep.n = k;
      break;
    }
  }
  return rep;
}

Cloud prefixed_copy(const std::vector<double>& prefix, const Cloud& xhat) {
  const std::size_t k = prefix.size(), d = xhat.dim() + k;
  std::vector<double> c;
  c.reserve(xhat.size() * d);
  for (std::size_t i = 0; i < xhat.size(); ++i) {
    c.insert(c.end(), prefix.begin(), prefix.end());
    const auto p = xhat[i];
    c.insert(c.end(), p.begin(), p.end());
  }
  return Cloud(xhat.label() + "+prefix", xhat.mesh(), d, std::move(c));
}

}  // namespace tranche
