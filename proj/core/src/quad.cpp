#include "quad.hpp"

#include <memory>
#include <mutex>

#include "tranche/curves.hpp"
#include "tranche/errors.hpp"
#include "tranche/parallel.hpp"

namespace tranche::quad {

namespace {

const Q kPi = 4 * atanq(1);

// f'(t) * 4 - 3 = -pi cos(pi/t) / t^2 on (0, 1/2]
Q slope4(Q t) { return -kPi * cosq(kPi / t) / (t * t) + 3; }
Q slope4_prime(Q t) {
  const Q a = kPi / t;
  return -kPi * kPi * sinq(a) / (t * t * t * t) + 2 * kPi * cosq(a) / (t * t * t);
}

Q refine_extremum(double guess) {
  Q t = guess;
  for (int k = 0; k < 12; ++k) {
    const Q step = slope4(t) / slope4_prime(t);
    t -= step;
    if (fabsq(step) < 1e-33 * t) break;
  }
  return t;
}

struct Extrema {
  std::mutex m;
  std::vector<Q> z, y;
};

Extrema& extrema() {
  static Extrema e;
  return e;
}

void ensure(std::size_t count) {
  Extrema& e = extrema();
  if (e.z.size() >= count) return;
  const ExtremaTable& ex = depth_extrema(count + 1);
  e.z.clear();
  e.y.clear();
  for (std::size_t i = 1; i <= count; ++i) e.z.push_back(refine_extremum(ex.z(i)));
  e.y.push_back(1);
  for (std::size_t i = 2; i <= count + 1; ++i) e.y.push_back(refine_extremum(ex.y(i)));
}

// Bisection for m(t) = v on an increasing lap.
template <class F>
Q invert_increasing(const F& m, QInterval lap, Q v) {
  Q a = lap.lo, b = lap.hi;
  if (v <= m(a)) return a;
  if (v >= m(b)) return b;
  for (int it = 0; it < 130; ++it) {
    const Q mid = (a + b) / 2;
    if (mid <= a || mid >= b) break;
    if (m(mid) < v)
      a = mid;
    else
      b = mid;
  }
  return (a + b) / 2;
}

}  // namespace

Q depth_f(Q t) {
  if (t <= Q(0.5)) return (sinq(kPi / t) + 1 + 3 * t) / 4;
  return Q(1.25) - Q(1.25) * t;
}

Q extremum_max(std::size_t i) {
  std::lock_guard lock(extrema().m);
  ensure(i + 1);
  return extrema().z.at(i - 1);
}

Q extremum_min(std::size_t i) {
  std::lock_guard lock(extrema().m);
  ensure(i + 1);
  return extrema().y.at(i - 1);
}

QInterval lap_P0(std::size_t i) { return {extremum_min(i + 1), extremum_max(i)}; }

QAffine affine_h(std::size_t i) {
  const QInterval p = lap_P0(i);
  const Q lo = depth_f(p.lo), hi = depth_f(p.hi);
  const Q scale = 1 / (hi - lo);
  return {scale, -lo * scale};
}

Q truncated_f(std::size_t i, Q t) {
  const Q cut = extremum_min(i + 1);
  if (t >= cut) return depth_f(t);
  return depth_f(cut) / cut * t;
}

const std::map<IndexSeq, QInterval>& table(std::size_t index_max, std::size_t level_max) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<std::map<IndexSeq, QInterval>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{index_max, level_max}];
  if (slot) return *slot;
  auto entries = std::make_unique<std::map<IndexSeq, QInterval>>();
  std::vector<QInterval> p0(index_max + 1);
  std::vector<QAffine> h(index_max + 1);
  for (std::size_t i = 1; i <= index_max; ++i) {
    p0[i] = lap_P0(i);
    h[i] = affine_h(i);
    (*entries)[{i}] = p0[i];
  }
  std::vector<IndexSeq> level;
  for (std::size_t i = 1; i <= index_max; ++i) level.push_back({i});
  for (std::size_t n = 1; n <= level_max; ++n) {
    std::vector<IndexSeq> next;
    for (const auto& s : level)
      for (std::size_t i0 = s.front(); i0 <= index_max; ++i0) {
        IndexSeq q{i0};
        q.insert(q.end(), s.begin(), s.end());
        next.push_back(std::move(q));
      }
    std::vector<QInterval> vals(next.size());
    parallel_for(next.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) {
        const IndexSeq& q = next[k];
        const std::size_t i0 = q.front();
        const QInterval target = entries->at(IndexSeq(q.begin() + 1, q.end()));
        auto m = [&](Q t) { return h[i0](depth_f(t)); };
        vals[k] = {invert_increasing(m, p0[i0], target.lo), invert_increasing(m, p0[i0], target.hi)};
      }
    }, 16);
    for (std::size_t k = 0; k < next.size(); ++k) (*entries)[next[k]] = vals[k];
    level = std::move(next);
  }
  slot = std::move(entries);
  return *slot;
}

Q g_eval(const IndexSeq& seq, Q t) {
  Q v = depth_f(t);
  for (std::size_t i : seq) {
    const Q u = affine_h(i)(v);
    v = truncated_f(i, u < 0 ? Q(0) : (u > 1 ? Q(1) : u));
  }
  return v;
}

}  // namespace tranche::quad
