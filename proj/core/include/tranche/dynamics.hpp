#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tranche/hilbert.hpp"

namespace tranche {

// (x, sigma x, ..., sigma^n x). Throws DomainError if x is not admissible.
std::vector<HPoint> sigma_orbit(const HPoint& x, std::size_t n);

// x_i = word[i] for i < |word|, zero up to dimension D. Requires |word| <= D.
HPoint realize_itinerary(const std::vector<int>& word, std::size_t D);

// Random admissible point of dimension D: forward tent orbit, restarted
// uniformly after each visit to 0 or 1.
HPoint random_admissible(std::uint64_t seed, std::size_t D);

// max_{0 <= i < n} d(sigma^i x, sigma^i y)
double bowen_distance(const HPoint& x, const HPoint& y, std::size_t n);

struct EntropyReport {
  std::size_t n = 0;
  double eps = 0.0;
  std::size_t candidates = 0;
  std::size_t separated = 0;
  std::size_t from_itineraries = 0;
  double bound = 0.0;  // log(separated) / n
};

// Greedy (n, eps)-separated set over the 2^n itinerary points (lexicographic)
// followed by random admissible points; at most `budget` candidates are examined.
EntropyReport entropy_lower_bound(std::size_t n, double eps, std::size_t budget = 4096,
                                  std::uint64_t seed = 1, std::size_t D = 0);

struct ExactnessReport {
  bool found = false;
  std::size_t n = 0;
  double threshold = 0.0;
  double best = 0.0;
  std::vector<double> distances;  // d_H(sigma^k U, X-hat truncation), k = 1..
};

// Smallest n <= max_n with d_H(sigma^n U, xhat restricted to dim - n) <= 3 mesh.
ExactnessReport exactness_witness(const Cloud& u, const Cloud& xhat, std::size_t max_n);

// {prefix} x xhat: the points (p_0, ..., p_{k-1}, x) for x in xhat.
Cloud prefixed_copy(const std::vector<double>& prefix, const Cloud& xhat);

}  // namespace tranche
