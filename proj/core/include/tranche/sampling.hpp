#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tranche {

// Parametrized curve t -> point in [0,1]^dim (writes `dim` coordinates to out).
using CurveFn = std::function<void(double t, double* out)>;

struct SampledCurve {
  std::size_t dim = 0;
  std::vector<double> params;  // increasing
  std::vector<double> coords;  // params.size() * dim, same order
  double fineness = 0.0;       // max over final segments of d(a,m) + d(m,b)

  std::size_t size() const { return params.size(); }
};

struct SamplingOptions {
  double target = 1e-3;         // refine while a segment's length estimate exceeds this
  std::size_t budget = 200000;  // maximum number of samples
  double min_width = 1e-12;     // parameter width below which segments are not split
  std::size_t initial = 64;     // uniform initial segments
};

// Adaptive refinement by largest length estimate first.
SampledCurve sample_curve(const CurveFn& f, std::size_t dim, double t0, double t1,
                          const SamplingOptions& opt = {});

// Samples at prescribed parameters.
SampledCurve sample_at(const CurveFn& f, std::size_t dim, const std::vector<double>& params);

}  // namespace tranche
