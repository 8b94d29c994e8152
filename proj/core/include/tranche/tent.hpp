#pragma once

#include <vector>

#include "tranche/curves.hpp"
#include "tranche/rational.hpp"

namespace tranche {

// Tent family on the decomposition (0,1) = union of I_n = [a_n, a_{n+1}], n in Z:
// a_{-k} = 1/(k+2)^2 (k >= 0, so a_0 = 1/4), a_k = 1 - 1/(k+1)^2 (k >= 1).
// T_n vanishes at both ends of I_n and peaks at 1 in the middle, slope 2/|I_n|.
namespace tent {

double endpoint(int k);
Rational endpoint_exact(int k);
Interval interval(int n);
double slope(int n);
// n with x in [a_n, a_{n+1}); requires 0 < x < 1.
int interval_of(double x);
// T(x) for 0 < x < 1, any interval index.
double value(double x);
// The two preimages of v in I_n (equal when v = 1).
void preimages(int n, double v, double& left, double& right);
void preimages_exact(int n, const Rational& v, Rational& left, Rational& right);

// Interval indices with |I_n| >= floor (symmetric range -K..K).
std::vector<int> materialized(double floor = 1.0 / 400.0);
int materialized_bound(double floor = 1.0 / 400.0);

}  // namespace tent

// Membership of (x, y) in the closure of the tent graphs: the graph over (0,1)
// together with the vertical segments {0}x[0,1] and {1}x[0,1].
bool tent_relation(double x, double y, double tol = 1e-9);

}  // namespace tranche
