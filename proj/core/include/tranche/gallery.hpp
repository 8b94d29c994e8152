#pragma once

// Sampled models of the named examples: Warsaw circle, the two approximation
// counterexamples, the positive star example, and the comb pair.
//
// Each model is a quasi-arc (a track in parameter order) plus its limit set and
// connecting pieces, with a chart on the quotient graph. Clouds live in [0,1]^3
// (or [0,1]^2) embedded in the first coordinates of the Hilbert cube.

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tranche/decomposition.hpp"

namespace tranche {

struct LabeledCloud {
  std::string label;
  Cloud cloud;
};

struct GalleryModel {
  std::string name;
  SampledSpace space;
  std::vector<LabeledCloud> y0;   // declared Y0 family
  std::size_t search_from = 0;    // first track position used by the arc search
  std::size_t max_span = 0;       // longest searched sub-arc in samples (0: unlimited)
  double tail_offset = 0.0;       // distance bound of the unsampled tail to the limit set
};

GalleryModel warsaw_model(std::size_t samples = 20000);
Cloud warsaw_circle(std::size_t samples = 20000);

// Star with centre (1/2,1/2) and tips E1..E4 = (0.9,0.5), (0.5,0.9), (0.1,0.5), (0.5,0.1).
Cloud star_edges(const std::vector<int>& edges, std::size_t per_edge = 64);
// Union of the centre segments of relative lengths r[0..3] along E1..E4.
Cloud center_star(const std::array<double, 4>& r, std::size_t per_edge = 64);
Cloud sub_edge(int edge, double a, double b, std::size_t count = 64);

// Each oscillation follows tip_{o1} -> c -> tip_{o2} -> c -> tip_{o3} -> c -> tip_{o4} -> c -> tip_{o1}
// at a height that halves every oscillation. `order` is a permutation of {1,2,3,4}.
GalleryModel star4_route_model(std::size_t samples = 20000, std::array<int, 4> order = {1, 2, 3, 4});
// Blocks enumerate all sub-edges with endpoints on the 1/8 grid (via edge blocks)
// and all centre-stars with radii in {0,1/2,1}; the enumeration repeats at lower heights.
GalleryModel star4_good_model(std::size_t samples = 60000);
// Radius 1 + 1/(1+t) around the circle, angle sweeping back and forth over a full turn.
GalleryModel circle_spiral_model(std::size_t samples = 20000);

// Arc search of the model's track against Y0 (boundaries every `stride` samples).
ApproximationResult approximate(const GalleryModel& m, const Cloud& y0, double eps, std::size_t stride = 1);

// ---- Comb pair -------------------------------------------------------------

struct CombPair {
  Cloud x1{"empty", 0.0, 1, {0.0}};  // closure of G u L1 u L2, coordinates (u, v)
  Cloud x{"empty", 0.0, 1, {0.0}};   // (X1 x {0}) u K u A, coordinates (u, v, w)
  SampledSpace space;       // model of x with its quotient chart
  Track l1, l2, k;          // tracks: l1/l2 index into x1, k into x
  std::vector<std::string> discrepancies;
};

// Normalization (x, y, h) -> (x + 1, (y + 3/2)/3, h).
std::array<double, 2> comb_normalize(double x, double y);
CombPair comb_pair(std::size_t samples = 20000);

// d_H(tail closure of L1, tail closures of L1 and L2 and the G part in the limit
// component) for parameters s >= s_cut.
double comb_failure_witness(const CombPair& c, double s_cut);
// Directed distance from the tail of K (t >= t_cut) to X1 x {0}.
double comb_k_tail_distance(const CombPair& c, double t_cut);

std::string model_metadata_json(const SampledSpace& s);

}  // namespace tranche
