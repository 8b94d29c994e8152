#include "tranche/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>

#include "json.hpp"
#include "tranche/errors.hpp"
#include "tranche/parallel.hpp"

namespace tranche {

Chart Chart::coordinate(const Cloud& c, std::size_t k) {
  Chart ch;
  ch.base.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) ch.base[i] = k < c.dim() ? c[i][k] : 0.0;
  return ch;
}

namespace {

std::vector<std::size_t> sorted_by_base(const Chart& chart) {
  std::vector<std::size_t> order(chart.base.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return chart.base[a] < chart.base[b]; });
  return order;
}

}  // namespace

FiberProfile fiber_profile(const Cloud& cloud, const Chart& chart, std::size_t cells,
                           const ProfileOptions& opt) {
  if (chart.base.size() != cloud.size()) throw DomainError("fiber_profile: chart does not match cloud");
  if (cells == 0) throw DomainError("fiber_profile: empty grid");
  FiberProfile prof;
  prof.step = (chart.hi - chart.lo) / static_cast<double>(cells);
  if (prof.step < 0.5 * cloud.mesh())
    throw ResolutionError("fiber_profile: grid step below the sampling mesh");
  prof.threshold = opt.threshold > 0.0 ? opt.threshold : 10.0 * (prof.step + cloud.mesh());

  const auto order = sorted_by_base(chart);
  std::vector<double> keys(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) keys[r] = chart.base[order[r]];

  prof.grid.resize(cells);
  prof.diameter.assign(cells, 0.0);
  prof.fiber_base.assign(cells, std::numeric_limits<double>::quiet_NaN());
  parallel_for(cells, [&](std::size_t begin, std::size_t end) {
    std::vector<double> buf;
    for (std::size_t c = begin; c < end; ++c) {
      const double lo = chart.lo + prof.step * static_cast<double>(c);
      const double hi = c + 1 == cells ? chart.hi : lo + prof.step;
      prof.grid[c] = lo + 0.5 * prof.step;
      auto first = std::lower_bound(keys.begin(), keys.end(), lo);
      auto last = c + 1 == cells ? std::upper_bound(keys.begin(), keys.end(), hi)
                                 : std::lower_bound(keys.begin(), keys.end(), hi);
      for (auto g = first; g != last;) {
        auto g_end = std::upper_bound(g, last, *g);
        if (g_end - g >= 2) {
          buf.clear();
          for (auto it = g; it != g_end; ++it) {
            auto p = cloud[order[static_cast<std::size_t>(it - keys.begin())]];
            buf.insert(buf.end(), p.begin(), p.end());
          }
          const double d = diameter_estimate(buf, cloud.dim());
          if (d > prof.diameter[c]) {
            prof.diameter[c] = d;
            prof.fiber_base[c] = *g;
          }
        } else if (std::isnan(prof.fiber_base[c])) {
          prof.fiber_base[c] = *g;
        }
        g = g_end;
      }
    }
  }, 8);

  for (std::size_t c = 0; c < cells; ++c)
    if (prof.diameter[c] > prof.threshold) prof.flagged.push_back(c);

  // Runs of consecutive flagged cells; a periodic chart joins the two ends.
  std::vector<std::vector<std::size_t>> runs;
  for (std::size_t c : prof.flagged) {
    if (!runs.empty() && runs.back().back() + 1 == c)
      runs.back().push_back(c);
    else
      runs.push_back({c});
  }
  if (chart.periodic && runs.size() >= 2 && runs.front().front() == 0 && runs.back().back() == cells - 1) {
    runs.front().insert(runs.front().end(), runs.back().begin(), runs.back().end());
    runs.pop_back();
  }
  for (const auto& run : runs) {
    std::size_t arg = run.front();
    for (std::size_t c : run)
      if (prof.diameter[c] > prof.diameter[arg]) arg = c;
    prof.detected.push_back(prof.fiber_base[arg]);
  }

  for (double eps : opt.eps_ladder) {
    std::size_t small = 0;
    for (double d : prof.diameter) small += d < eps;
    prof.degenerate_fraction.emplace_back(eps, static_cast<double>(small) / static_cast<double>(cells));
  }
  return prof;
}

ArcFamily base_arcs(const Chart& chart, std::size_t cells) {
  if (cells == 0) throw DomainError("base_arcs: empty grid");
  ArcFamily fam;
  const auto order = sorted_by_base(chart);
  std::vector<double> keys(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) keys[r] = chart.base[order[r]];
  const double step = (chart.hi - chart.lo) / static_cast<double>(cells);
  const std::size_t copies = chart.periodic ? 2 : 1;
  const std::size_t n = order.size();
  for (std::size_t k = 0; k < copies; ++k) fam.sequence.insert(fam.sequence.end(), order.begin(), order.end());
  for (std::size_t k = 0; k < copies; ++k) {
    for (std::size_t i = (k == 0 ? 0 : 1); i <= cells; ++i) {
      const double v = chart.lo + step * static_cast<double>(i);
      const std::size_t pos = i == cells ? n : static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), v) - keys.begin());
      fam.boundaries.push_back(k * n + pos);
      fam.keys.push_back(v + static_cast<double>(k) * (chart.hi - chart.lo));
    }
  }
  if (chart.periodic) fam.max_span = cells;
  return fam;
}

ArcFamily parameter_arcs(const Track& track, std::size_t stride) {
  if (stride == 0) throw DomainError("parameter_arcs: zero stride");
  ArcFamily fam;
  fam.sequence = track.indices;
  const std::size_t n = track.indices.size();
  for (std::size_t pos = 0; pos < n; pos += stride) {
    fam.boundaries.push_back(pos);
    fam.keys.push_back(track.params[pos]);
  }
  if (n > 0) {
    fam.boundaries.push_back(n);
    fam.keys.push_back(track.params[n - 1]);
  }
  return fam;
}

namespace {

// Arc = blocks s..e-1, block b holding sequence positions [boundaries[b], boundaries[b+1]).
// At threshold r an arc is feasible when every point lies within r of Y0 and every
// Y0 point lies within r of some arc point. Feasibility is monotone in r, and the
// minimum over arcs of max(h1, h2) is the least feasible pairwise distance.
class ArcSearch {
 public:
  ArcSearch(const Cloud& cloud, const Cloud& y0, const ArcFamily& family)
      : fam_(family), ny_(y0.size()), blocks_(family.boundaries.size() - 1) {
    const std::size_t first = family.boundaries.front(), last = family.boundaries.back();
    npts_ = last - first;
    dist_.resize(npts_ * ny_);
    to_y_.resize(npts_);
    parallel_for(npts_, [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) {
        auto q = cloud[family.sequence[first + k]];
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < ny_; ++j) {
          const double d = product_metric(q, y0[j]);
          dist_[k * ny_ + j] = d;
          best = std::min(best, d);
        }
        to_y_[k] = best;
      }
    });
    block_h1_.assign(blocks_, 0.0);
    for (std::size_t b = 0; b < blocks_; ++b)
      for (std::size_t pos = family.boundaries[b]; pos < family.boundaries[b + 1]; ++pos)
        block_h1_[b] = std::max(block_h1_[b], to_y_[pos - first]);
  }

  const std::vector<double>& distances() const { return dist_; }
  const std::vector<double>& to_y() const { return to_y_; }

  // First feasible arc (smallest start, then smallest end) at threshold r.
  bool feasible(double r, std::size_t* s_out = nullptr, std::size_t* e_out = nullptr) const {
    const std::size_t first = fam_.boundaries.front();
    const std::size_t span = fam_.max_span ? fam_.max_span : blocks_;
    std::vector<std::uint32_t> cnt(ny_, 0);
    std::size_t covered = 0;
    auto add_block = [&](std::size_t b, int sign) {
      for (std::size_t pos = fam_.boundaries[b]; pos < fam_.boundaries[b + 1]; ++pos) {
        const double* row = dist_.data() + (pos - first) * ny_;
        for (std::size_t j = 0; j < ny_; ++j) {
          if (row[j] > r) continue;
          if (sign > 0) {
            if (cnt[j]++ == 0) ++covered;
          } else if (--cnt[j] == 0) {
            --covered;
          }
        }
      }
    };
    std::size_t start = 0;
    for (std::size_t end = 0; end < blocks_; ++end) {
      if (block_h1_[end] > r) {
        for (std::size_t b = start; b < end; ++b) add_block(b, -1);
        start = end + 1;
        continue;
      }
      add_block(end, +1);
      while (end + 1 - start > span) add_block(start++, -1);
      if (covered == ny_ && points_in(start, end + 1) > 0) {
        // Shrink from the left while coverage holds, for the tightest witness.
        std::size_t s = start;
        if (s_out) {
          std::vector<std::uint32_t> c2(cnt);
          std::size_t cov = covered;
          while (s < end) {
            bool keeps = true;
            for (std::size_t pos = fam_.boundaries[s]; pos < fam_.boundaries[s + 1] && keeps; ++pos) {
              const double* row = dist_.data() + (pos - first) * ny_;
              for (std::size_t j = 0; j < ny_; ++j)
                if (row[j] <= r && c2[j] == 1) {
                  keeps = false;
                  break;
                }
            }
            if (!keeps) break;
            for (std::size_t pos = fam_.boundaries[s]; pos < fam_.boundaries[s + 1]; ++pos) {
              const double* row = dist_.data() + (pos - first) * ny_;
              for (std::size_t j = 0; j < ny_; ++j)
                if (row[j] <= r && --c2[j] == 0) --cov;
            }
            ++s;
          }
          *s_out = s;
          *e_out = end + 1;
        }
        return true;
      }
    }
    return false;
  }

  std::size_t arcs() const {
    std::size_t total = 0;
    const std::size_t span = fam_.max_span ? fam_.max_span : blocks_;
    for (std::size_t s = 0; s < blocks_; ++s) total += std::min(span, blocks_ - s);
    return total;
  }

 private:
  std::size_t points_in(std::size_t s, std::size_t e) const { return fam_.boundaries[e] - fam_.boundaries[s]; }

  const ArcFamily& fam_;
  std::size_t ny_;
  std::size_t blocks_;
  std::size_t npts_ = 0;
  std::vector<double> dist_;
  std::vector<double> to_y_;
  std::vector<double> block_h1_;
};

}  // namespace

ApproximationResult approximation_test(const Cloud& cloud, const Cloud& y0, const ArcFamily& family,
                                       double eps) {
  if (family.empty()) throw DomainError("approximation_test: empty arc family");
  if (family.boundaries.back() == family.boundaries.front())
    throw DomainError("approximation_test: arc family has no points");
  const ArcSearch search(cloud, y0, family);

  // Candidates: every pairwise distance. Halve the range with nth_element until
  // the least feasible value is isolated.
  std::vector<double> cand = search.distances();
  double lo_bound = 0.0;  // h2 of the whole track, a lower bound for every arc
  for (std::size_t j = 0; j < y0.size(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < search.to_y().size(); ++k) best = std::min(best, cand[k * y0.size() + j]);
    lo_bound = std::max(lo_bound, best);
  }
  std::erase_if(cand, [&](double v) { return v < lo_bound; });
  // cand holds the answer (the least feasible value); keep only values >= it.
  while (cand.size() > 1) {
    const std::size_t mid = (cand.size() - 1) / 2;
    std::nth_element(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(mid), cand.end());
    const double pivot = cand[mid];
    if (search.feasible(pivot)) {
      cand.resize(mid + 1);  // nth_element left the values <= pivot in front
    } else {
      std::erase_if(cand, [&](double v) { return v <= pivot; });
      if (cand.empty()) throw ConstructionError("approximation_test: no feasible arc");
    }
  }
  ApproximationResult r;
  r.min = cand.front();
  std::size_t s = 0, e = 0;
  if (!search.feasible(r.min, &s, &e)) throw ConstructionError("approximation_test: search inconsistency");
  r.a = family.keys[s];
  r.b = family.keys[e];
  r.arcs_tested = search.arcs();
  r.success = r.min < eps;
  return r;
}

std::string TrancheBoundReport::to_json() const {
  nlohmann::json j;
  j["tranches"] = tranches;
  j["betti1"] = betti;
  j["holds"] = holds;
  return j.dump();
}

TrancheBoundReport tranche_bound_check(const Cloud& cloud, const Chart& chart, const TopoGraph& quotient,
                                       std::size_t cells) {
  TrancheBoundReport r;
  r.tranches = fiber_profile(cloud, chart, cells).detected.size();
  r.betti = betti1(quotient);
  r.holds = r.tranches <= r.betti;
  return r;
}

TrancheBoundReport tranche_bound_check(const SampledSpace& space, std::size_t cells) {
  if (!space.arcwise_connected)
    throw DomainError("tranche_bound_check: model is not declared arcwise connected");
  return tranche_bound_check(space.cloud, space.chart, space.quotient, cells);
}

double tranche_collapse_spread(const Cloud& cloud, const Chart& chart, const FiberProfile& profile) {
  double spread = 0.0;
  for (double b : profile.detected) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      if (chart.base[i] != b) continue;
      lo = std::min(lo, chart.base[i]);
      hi = std::max(hi, chart.base[i]);
    }
    if (hi >= lo) spread = std::max(spread, hi - lo);
  }
  return spread;
}

std::string profile_to_json(const FiberProfile& p) {
  nlohmann::json j;
  j["tranches"] = p.detected;
  j["threshold"] = p.threshold;
  j["step"] = p.step;
  nlohmann::json df = nlohmann::json::object();
  for (const auto& [eps, frac] : p.degenerate_fraction) df[std::to_string(eps)] = frac;
  j["degenerateFraction"] = df;
  return j.dump();
}

}  // namespace tranche
