#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tranche/hilbert.hpp"
#include "tranche/rational.hpp"

namespace tranche {

// ---- Orbit-curve space A (iterates of warsaw_f) ----------------------------

// A_n = {(x, f(x), ..., f^n(x), 0, ...)} u theta(A_{n-1}), A_0 = [0,1] x {0}.
// All builds with the same `samples` share one parameter set, so dropping the
// last coordinate of A_{n+1} gives A_n exactly.
Cloud build_A_n(std::size_t n, std::size_t samples);
// Depth-D truncation of A = union of theta^n(orbit curves) u {0}.
Cloud build_A(std::size_t D, std::size_t samples);
// Parameter set used by the A builders.
const std::vector<double>& orbit_parameters(std::size_t samples);

// ---- Tent Mahavier product X-hat --------------------------------------------

struct XhatOptions {
  double floor = 1.0 / 400.0;    // materialization floor for tent intervals
  std::size_t base_levels = 5;   // tranche base levels seeded explicitly
  std::size_t branch_budget = 64;  // samples per vertical-segment branch, halved per depth
};

// Admissible tuples of depth n: (x_{i-1}, x_i) in the tent closure for all i.
Cloud build_X_n(std::size_t n, std::size_t samples, const XhatOptions& opt = {});
// X_n read as the depth-D truncation of X-hat.
Cloud build_Xhat(std::size_t D, std::size_t samples, const XhatOptions& opt = {});

bool admissible(std::span<const double> x, double tol = 1e-9);

// Bases y whose level-`level` fiber is nondegenerate: iterated tent preimages
// of {0,1} through the materialized intervals, exact.
std::vector<Rational> tranche_bases_exact(std::size_t level, double floor = 1.0 / 400.0);
std::vector<double> tranche_bases(std::size_t level, double floor = 1.0 / 400.0);

struct GapReport {
  Rational longest;
  Rational left, right;  // an interval attaining the longest gap
  Rational tail_low;     // [0, a_-K], excluded for level >= 2
  Rational tail_high;    // [a_{K+1}, 1], excluded for level >= 2
  std::size_t bases = 0;
};
GapReport longest_tranche_gap(std::size_t level, double floor = 1.0 / 400.0);

// Slab fiber {x in cloud : |x_0 - y| <= delta}; throws DomainError when empty.
Cloud fiber(const Cloud& cloud, double y, double delta);

}  // namespace tranche
