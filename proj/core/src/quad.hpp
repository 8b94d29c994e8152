#pragma once

// Quad-precision versions of the depth_f lap machinery. The composite maps g
// have derivatives near 1e12 at the deepest materialized level, so endpoints
// and compositions are carried in binary128 and rounded at the end.

#include <quadmath.h>

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "tranche/depth.hpp"

namespace tranche::quad {

using Q = __float128;

struct QInterval {
  Q lo = 0;
  Q hi = 0;
};

Q depth_f(Q t);
Q extremum_max(std::size_t i);  // z(i)
Q extremum_min(std::size_t i);  // y(i), y(1) = 1
QInterval lap_P0(std::size_t i);

struct QAffine {
  Q scale = 1;
  Q shift = 0;
  Q operator()(Q v) const { return scale * v + shift; }
};
QAffine affine_h(std::size_t i);
Q truncated_f(std::size_t i, Q t);

// Table with the same index ranges as LapTable, cached per (index_max, level_max).
const std::map<IndexSeq, QInterval>& table(std::size_t index_max, std::size_t level_max);

// g_seq(t); the chain is not clamped.
Q g_eval(const IndexSeq& seq, Q t);

}  // namespace tranche::quad
