#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tranche/graph.hpp"
#include "tranche/hilbert.hpp"

namespace tranche {

// Projection of each cloud point to a one-dimensional base (a parameter of
// the quotient graph). Points of one fiber carry identical base values.
struct Chart {
  std::vector<double> base;
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;

  static Chart coordinate(const Cloud& c, std::size_t k = 0);
};

// Samples of one quasi-arc in parameter order.
struct Track {
  std::vector<std::size_t> indices;
  std::vector<double> params;
};

// A sampled continuum together with the structure its builder knows.
struct SampledSpace {
  Cloud cloud{"empty", 0.0, 1, {0.0}};
  Chart chart;
  TopoGraph quotient;
  std::size_t declared_tranches = 0;
  bool arcwise_connected = true;
  std::vector<Track> arcs;
  std::vector<std::string> notes;
};

struct FiberProfile {
  std::vector<double> grid;        // cell centres
  double step = 0.0;
  std::vector<double> diameter;    // largest exact-fiber diameter inside each cell
  std::vector<double> fiber_base;  // base value of that fiber
  double threshold = 0.0;
  std::vector<std::size_t> flagged;  // cells above threshold
  std::vector<double> detected;      // one base per maximal run of flagged cells
  std::vector<std::pair<double, double>> degenerate_fraction;  // (eps, fraction of cells)
};

struct ProfileOptions {
  double threshold = -1.0;  // default 10 * (step + mesh)
  std::vector<double> eps_ladder{0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625};
};

// Fiber diameters over a uniform grid of `cells` cells on [chart.lo, chart.hi].
// Throws ResolutionError when the grid step is below half the cloud mesh.
FiberProfile fiber_profile(const Cloud& cloud, const Chart& chart, std::size_t cells,
                           const ProfileOptions& opt = {});

// Candidate arcs: a point sequence split at boundary positions; an arc is the
// run of points between two boundaries.
struct ArcFamily {
  std::vector<std::size_t> sequence;
  std::vector<std::size_t> boundaries;  // positions into `sequence`, increasing
  std::vector<double> keys;             // key value at each boundary (for reporting)
  std::size_t max_span = 0;             // 0: unlimited, else at most this many boundary steps

  bool empty() const { return boundaries.size() < 2; }
};

// Arcs [a,b] of the base: uniform grid of `cells` cells; periodic charts wrap.
ArcFamily base_arcs(const Chart& chart, std::size_t cells);
// Sub-arcs of a quasi-arc track, boundaries every `stride` samples.
ArcFamily parameter_arcs(const Track& track, std::size_t stride);

struct ApproximationResult {
  double min = 0.0;
  double a = 0.0;
  double b = 0.0;
  bool success = false;
  std::size_t arcs_tested = 0;
};

// Best Hausdorff distance between Y0 and the sample points of an arc of the family.
ApproximationResult approximation_test(const Cloud& cloud, const Cloud& y0, const ArcFamily& family,
                                       double eps);

struct TrancheBoundReport {
  std::size_t tranches = 0;
  std::size_t betti = 0;
  bool holds = false;
  std::string to_json() const;
};

// Detected tranche count against b1 of the quotient; the model must be arcwise connected.
TrancheBoundReport tranche_bound_check(const Cloud& cloud, const Chart& chart, const TopoGraph& quotient,
                                       std::size_t cells);
TrancheBoundReport tranche_bound_check(const SampledSpace& space, std::size_t cells);

// Maximum spread of base values over the points of each detected tranche fiber.
double tranche_collapse_spread(const Cloud& cloud, const Chart& chart, const FiberProfile& profile);

std::string profile_to_json(const FiberProfile& p);

}  // namespace tranche
