#include "tranche/sampling.hpp"

#include <algorithm>
#include <queue>

#include "tranche/errors.hpp"
#include "tranche/hilbert.hpp"

namespace tranche {

namespace {

struct Segment {
  double len;
  std::size_t a, m, b;  // indices into the node store
  bool operator<(const Segment& o) const { return len < o.len; }
};

}  // namespace

SampledCurve sample_curve(const CurveFn& f, std::size_t dim, double t0, double t1,
                          const SamplingOptions& opt) {
  if (!(t1 > t0)) throw DomainError("sample_curve: empty parameter range");
  std::vector<double> ts;
  std::vector<double> pts;
  auto add = [&](double t) {
    ts.push_back(t);
    pts.resize(pts.size() + dim);
    f(t, pts.data() + pts.size() - dim);
    return ts.size() - 1;
  };
  auto at = [&](std::size_t i) { return std::span<const double>(pts.data() + i * dim, dim); };
  auto make = [&](std::size_t a, std::size_t b) {
    const std::size_t m = add(0.5 * (ts[a] + ts[b]));
    return Segment{product_metric(at(a), at(m)) + product_metric(at(m), at(b)), a, m, b};
  };

  std::priority_queue<Segment> heap;
  std::vector<Segment> done;
  const std::size_t n0 = std::max<std::size_t>(opt.initial, 1);
  std::size_t prev = add(t0);
  for (std::size_t k = 1; k <= n0; ++k) {
    const double t = k == n0 ? t1 : t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n0);
    const std::size_t cur = add(t);
    heap.push(make(prev, cur));
    prev = cur;
  }
  while (!heap.empty()) {
    Segment s = heap.top();
    if (s.len <= opt.target || ts.size() + 2 > opt.budget) break;
    heap.pop();
    if (ts[s.b] - ts[s.a] < opt.min_width) {
      done.push_back(s);
      continue;
    }
    heap.push(make(s.a, s.m));
    heap.push(make(s.m, s.b));
  }
  SampledCurve out;
  out.dim = dim;
  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }
  std::vector<std::size_t> keep;
  keep.reserve(done.size() * 3);
  for (const auto& s : done) {
    out.fineness = std::max(out.fineness, s.len);
    keep.push_back(s.a);
    keep.push_back(s.m);
    keep.push_back(s.b);
  }
  std::sort(keep.begin(), keep.end(), [&](std::size_t x, std::size_t y) { return ts[x] < ts[y]; });
  keep.erase(std::unique(keep.begin(), keep.end(), [&](std::size_t x, std::size_t y) { return ts[x] == ts[y]; }),
             keep.end());
  out.params.reserve(keep.size());
  out.coords.reserve(keep.size() * dim);
  for (std::size_t i : keep) {
    out.params.push_back(ts[i]);
    auto p = at(i);
    out.coords.insert(out.coords.end(), p.begin(), p.end());
  }
  return out;
}

SampledCurve sample_at(const CurveFn& f, std::size_t dim, const std::vector<double>& params) {
  SampledCurve out;
  out.dim = dim;
  out.params = params;
  out.coords.resize(params.size() * dim);
  for (std::size_t i = 0; i < params.size(); ++i) f(params[i], out.coords.data() + i * dim);
  for (std::size_t i = 1; i < params.size(); ++i)
    out.fineness = std::max(out.fineness,
                            product_metric(std::span<const double>(out.coords.data() + (i - 1) * dim, dim),
                                           std::span<const double>(out.coords.data() + i * dim, dim)));
  return out;
}

}  // namespace tranche
