#include "tranche/mahavier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "tranche/curves.hpp"
#include "tranche/errors.hpp"
#include "tranche/parallel.hpp"
#include "tranche/sampling.hpp"
#include "tranche/tent.hpp"

namespace tranche {

// ---------------------------------------------------------------------------
// A_n

namespace {

constexpr std::size_t kRefineDepth = 3;  // refinement follows (t, f, f^2, f^3)

double orbit_floor(std::size_t samples) {
  return std::clamp(40.0 / static_cast<double>(samples), 1e-3, 0.05);
}

void orbit_point(double t, std::size_t m, double* out) {
  out[0] = t;
  for (std::size_t k = 1; k <= m; ++k) {
    const double prev = out[k - 1];
    out[k] = prev > 0.0 ? warsaw_f(prev) : 0.0;
  }
}

struct OrbitBlock {
  std::size_t m;
  std::vector<double> coords;  // params.size() * (m + 1)
  double chord = 0.0;
};

OrbitBlock orbit_block(const std::vector<double>& params, std::size_t m) {
  OrbitBlock b{m, std::vector<double>(params.size() * (m + 1)), 0.0};
  for (std::size_t i = 0; i < params.size(); ++i) orbit_point(params[i], m, b.coords.data() + i * (m + 1));
  for (std::size_t i = 1; i < params.size(); ++i) {
    std::span<const double> p(b.coords.data() + (i - 1) * (m + 1), m + 1);
    std::span<const double> q(b.coords.data() + i * (m + 1), m + 1);
    b.chord = std::max(b.chord, product_metric(p, q));
  }
  return b;
}

Cloud assemble_A(std::size_t n, std::size_t samples, const std::string& label) {
  const auto& params = orbit_parameters(samples);
  const std::size_t dim = n + 1;
  std::vector<double> coords;
  coords.reserve((params.size() * (n + 1) + 1) * dim);
  double mesh = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const OrbitBlock b = orbit_block(params, n - k);
    mesh = std::max(mesh, b.chord / std::ldexp(1.0, static_cast<int>(k)));
    for (std::size_t i = 0; i < params.size(); ++i) {
      coords.insert(coords.end(), k, 0.0);
      const double* p = b.coords.data() + i * (b.m + 1);
      coords.insert(coords.end(), p, p + b.m + 1);
    }
  }
  coords.insert(coords.end(), dim, 0.0);
  mesh += 0.5 * orbit_floor(samples);
  return Cloud(label, mesh, dim, std::move(coords));
}

}  // namespace

const std::vector<double>& orbit_parameters(std::size_t samples) {
  if (samples < 16) throw DomainError("orbit_parameters: need at least 16 samples");
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<std::vector<double>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[samples];
  if (!slot) {
    SamplingOptions opt;
    opt.target = 0.0;
    opt.budget = samples;
    opt.initial = std::max<std::size_t>(16, samples / 16);
    const auto curve = sample_curve([](double t, double* out) { orbit_point(t, kRefineDepth, out); },
                                    kRefineDepth + 1, orbit_floor(samples), 1.0, opt);
    slot = std::make_unique<std::vector<double>>(curve.params);
  }
  return *slot;
}

Cloud build_A_n(std::size_t n, std::size_t samples) {
  return assemble_A(n, samples, "A_" + std::to_string(n));
}

Cloud build_A(std::size_t D, std::size_t samples) {
  if (D + 1 > 64) throw DomainError("build_A: depth beyond the truncation dimension");
  return assemble_A(D, samples, "A");
}

// ---------------------------------------------------------------------------
// X-hat

bool admissible(std::span<const double> x, double tol) {
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!tent_relation(x[i - 1], x[i], tol)) return false;
  return true;
}

namespace {

constexpr double kSnap = 1e-12;

// Forward tent orbit of length up to `len`; stops at the first coordinate
// that reaches 0 or 1 (snapped). Returns the hit index or len.
std::size_t tent_orbit(double x, std::size_t len, std::vector<double>& out) {
  out.clear();
  for (std::size_t k = 0; k < len; ++k) {
    if (x <= kSnap) {
      out.push_back(0.0);
      return k;
    }
    if (x >= 1.0 - kSnap) {
      out.push_back(1.0);
      return k;
    }
    out.push_back(x);
    x = tent::value(x);
  }
  return len;
}

class XhatBuilder {
 public:
  XhatBuilder(std::size_t samples, const XhatOptions& opt) : opt_(opt) {
    const int K = tent::materialized_bound(opt.floor);
    lo_ = tent::endpoint(-K);
    hi_ = tent::endpoint(K + 1);
    cells_ = 1;
    while (cells_ < samples) cells_ *= 2;
    step_ = (hi_ - lo_) / static_cast<double>(cells_);
    seed_reps();
  }

  double step() const { return step_; }

  // Full sample of X_m: coordinates 0..m, flattened.
  const std::vector<double>& full(std::size_t m) {
    if (full_.size() > m) return full_[m];
    for (std::size_t d = full_.size(); d <= m; ++d) full_.push_back(build_full(d));
    return full_[m];
  }

 private:
  std::size_t budget(std::size_t j) const {
    return std::max<std::size_t>(4, opt_.branch_budget >> std::min<std::size_t>(j, 60));
  }

  double grid(std::size_t i) const {
    return i == cells_ ? hi_ : lo_ + step_ * static_cast<double>(i);
  }

  static void append(std::vector<double>& out, const std::vector<double>& prefix,
                     const std::vector<double>& tail, std::size_t tail_dim) {
    if (tail_dim == 0) {
      out.insert(out.end(), prefix.begin(), prefix.end());
      return;
    }
    for (std::size_t i = 0; i < tail.size(); i += tail_dim) {
      out.insert(out.end(), prefix.begin(), prefix.end());
      out.insert(out.end(), tail.begin() + static_cast<std::ptrdiff_t>(i),
                 tail.begin() + static_cast<std::ptrdiff_t>(i + tail_dim));
    }
  }

  static std::vector<double> alternating(double first, std::size_t len) {
    std::vector<double> v(len);
    for (std::size_t k = 0; k < len; ++k) v[k] = (k % 2 == 0) ? first : 1.0 - first;
    return v;
  }

  // Prefix ending in a hit at index j, continued to depth m by a copy of X_{m-1-j}.
  void continue_hit(std::vector<double>& out, const std::vector<double>& prefix, std::size_t m,
                    std::size_t b) {
    const std::size_t j = prefix.size() - 1;
    if (j >= m) {
      out.insert(out.end(), prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(m + 1));
      return;
    }
    const std::size_t rest = m - 1 - j;
    append(out, prefix, limited(rest, std::min(b, budget(j))), rest + 1);
  }

  void grid_seeds(std::vector<double>& out, std::size_t m, std::size_t stride, std::size_t b) {
    std::vector<double> orbit;
    for (std::size_t i = 0; i <= cells_; i += stride) {
      const std::size_t hit = tent_orbit(grid(i), m + 1, orbit);
      if (hit == m + 1)
        out.insert(out.end(), orbit.begin(), orbit.end());
      else
        continue_hit(out, orbit, m, b);
    }
  }

  const std::vector<double>& limited(std::size_t m, std::size_t b) {
    const auto key = std::make_pair(m, b);
    if (auto it = limited_.find(key); it != limited_.end()) return it->second;
    std::vector<double> out;
    const auto z = alternating(0.0, m + 1), o = alternating(1.0, m + 1);
    out.insert(out.end(), z.begin(), z.end());
    out.insert(out.end(), o.begin(), o.end());
    const std::size_t stride = std::max<std::size_t>(1, cells_ / std::max<std::size_t>(b, 1));
    grid_seeds(out, m, stride, b);
    return limited_.emplace(key, std::move(out)).first->second;
  }

  std::vector<double> build_full(std::size_t m) {
    std::vector<double> out;
    if (m == 0) {
      out = {0.0, 1.0};
      for (std::size_t i = 0; i <= cells_; ++i) out.push_back(grid(i));
      for (const auto& r : reps_) out.push_back(r.front());
      return out;
    }
    append(out, {0.0}, full(m - 1), m);
    append(out, {1.0}, limited(m - 1, budget(0)), m);
    grid_seeds(out, m, 1, opt_.branch_budget);
    for (const auto& r : reps_) continue_hit(out, r, m, opt_.branch_budget);
    return out;
  }

  // Orbit prefixes of tranche bases of levels 2..base_levels, ending exactly at 0 or 1.
  void seed_reps() {
    const auto ints = tent::materialized(opt_.floor);
    std::vector<std::vector<double>> frontier{{0.0}, {1.0}};
    std::set<double> taken;
    for (std::size_t level = 2; level <= opt_.base_levels; ++level) {
      std::vector<std::vector<double>> next;
      for (const auto& chain : frontier) {
        for (int n : ints) {
          double l, r;
          tent::preimages(n, chain.front(), l, r);
          for (double x : {l, r}) {
            std::vector<double> c{x};
            c.insert(c.end(), chain.begin(), chain.end());
            next.push_back(std::move(c));
            if (l == r) break;
          }
        }
      }
      std::sort(next.begin(), next.end());
      for (const auto& c : next) {
        const double x = c.front();
        auto it = taken.lower_bound(x - 0.5 * step_);
        if (it != taken.end() && *it <= x + 0.5 * step_) continue;
        taken.insert(x);
        reps_.push_back(c);
      }
      frontier = std::move(next);
    }
  }

  XhatOptions opt_;
  double lo_ = 0.0, hi_ = 1.0, step_ = 0.0;
  std::size_t cells_ = 1;
  std::vector<std::vector<double>> reps_;
  std::vector<std::vector<double>> full_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> limited_;
};

}  // namespace

Cloud build_X_n(std::size_t n, std::size_t samples, const XhatOptions& opt) {
  if (samples < 2) throw DomainError("build_X_n: need at least 2 samples");
  XhatBuilder b(samples, opt);
  std::vector<double> coords = b.full(n);
  return Cloud("X_" + std::to_string(n), b.step(), n + 1, std::move(coords));
}

Cloud build_Xhat(std::size_t D, std::size_t samples, const XhatOptions& opt) {
  if (D + 1 > 64) throw DomainError("build_Xhat: depth beyond the truncation dimension");
  return build_X_n(D, samples, opt).relabeled("Xhat");
}

// ---------------------------------------------------------------------------
// Tranche bases

std::vector<Rational> tranche_bases_exact(std::size_t level, double floor) {
  if (level < 1) throw DomainError("tranche_bases: level must be at least 1");
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, double>, std::vector<Rational>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({level, floor}); it != cache.end()) return it->second;
  }
  const auto ints = tent::materialized(floor);
  std::vector<Rational> all{Rational(0), Rational(1)};
  std::vector<Rational> fresh = all;
  for (std::size_t l = 2; l <= level; ++l) {
    std::vector<std::vector<Rational>> parts(fresh.size());
    parallel_for(fresh.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i)
        for (int n : ints) {
          Rational lft, rgt;
          tent::preimages_exact(n, fresh[i], lft, rgt);
          parts[i].push_back(lft);
          if (!(lft == rgt)) parts[i].push_back(rgt);
        }
    }, 64);
    std::vector<Rational> cand;
    for (auto& p : parts) cand.insert(cand.end(), p.begin(), p.end());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<Rational> merged;
    merged.reserve(all.size() + cand.size());
    std::merge(all.begin(), all.end(), cand.begin(), cand.end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    fresh.clear();
    std::set_difference(cand.begin(), cand.end(), all.begin(), all.end(), std::back_inserter(fresh));
    all = std::move(merged);
  }
  std::lock_guard lock(mutex);
  cache[{level, floor}] = all;
  return all;
}

std::vector<double> tranche_bases(std::size_t level, double floor) {
  const auto exact = tranche_bases_exact(level, floor);
  std::vector<double> out(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) out[i] = exact[i].to_double();
  return out;
}

GapReport longest_tranche_gap(std::size_t level, double floor) {
  const auto bases = tranche_bases_exact(level, floor);
  GapReport r;
  r.bases = bases.size();
  if (level == 1) {
    r.longest = Rational(1);
    r.left = Rational(0);
    r.right = Rational(1);
    return r;
  }
  const int K = tent::materialized_bound(floor);
  const Rational lo = tent::endpoint_exact(-K), hi = tent::endpoint_exact(K + 1);
  r.tail_low = lo;
  r.tail_high = Rational(1) - hi;
  for (std::size_t i = 1; i < bases.size(); ++i) {
    if (bases[i - 1] < lo || bases[i] > hi) continue;
    const Rational g = bases[i] - bases[i - 1];
    if (g > r.longest) {
      r.longest = g;
      r.left = bases[i - 1];
      r.right = bases[i];
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

Cloud fiber(const Cloud& cloud, double y, double delta) {
  if (!(delta >= 0.0)) throw DomainError("fiber: negative slab width");
  std::vector<double> coords;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud[i];
    if (std::fabs(p[0] - y) <= delta) coords.insert(coords.end(), p.begin(), p.end());
  }
  if (coords.empty()) throw DomainError("fiber: no samples within the slab");
  return Cloud(cloud.label() + "_fiber", cloud.mesh(), cloud.dim(), std::move(coords));
}

}  // namespace tranche
