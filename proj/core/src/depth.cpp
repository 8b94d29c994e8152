#include "tranche/depth.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "json.hpp"
#include "quad.hpp"
#include "tranche/errors.hpp"
#include "tranche/parallel.hpp"
#include "tranche/sampling.hpp"

namespace tranche {

namespace {

const ExtremaTable& extrema_for(std::size_t index) {
  return depth_extrema(std::max<std::size_t>(index + 1, 24));
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

IndexSeq tail_of(const IndexSeq& seq) { return IndexSeq(seq.begin() + 1, seq.end()); }

Interval interval_of_seq(const IndexSeq& seq) {
  const LapTable& t = lap_table();
  if (seq.size() <= t.level_max() + 1 && seq.front() <= t.index_max()) return t.at(seq);
  return build_Pn(seq);
}

// Index i <= cap with u in P0_i, or 0.
std::size_t lap_containing(double u, std::size_t cap) {
  const ExtremaTable& ex = extrema_for(cap);
  for (std::size_t i = 1; i <= cap; ++i) {
    if (u > ex.z(i)) return 0;
    if (u >= ex.y(i + 1)) return i;
  }
  return 0;
}

}  // namespace

void validate_seq(const IndexSeq& seq) {
  if (seq.empty()) throw DomainError("index sequence is empty");
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (seq[k] < 1) throw DomainError("index sequence entries start at 1");
    if (k > 0 && seq[k] > seq[k - 1]) throw DomainError("index sequence must be nonincreasing");
  }
}

Interval lap_P0(std::size_t i) {
  if (i < 1) throw DomainError("lap_P0: index starts at 1");
  const ExtremaTable& ex = extrema_for(i);
  return {ex.y(i + 1), ex.z(i)};
}

AffineMap affine_h(std::size_t i) {
  const Interval p = lap_P0(i);
  const double lo = depth_f(p.lo), hi = depth_f(p.hi);
  if (!(hi - lo > 0.0)) throw ConstructionError("affine_h: degenerate image interval");
  const double scale = 1.0 / (hi - lo);
  return {scale, -lo * scale};
}

Interval build_Pn(const IndexSeq& seq) {
  validate_seq(seq);
  const Interval p0 = lap_P0(seq.front());
  if (seq.size() == 1) return p0;
  const Interval target = interval_of_seq(tail_of(seq));
  const AffineMap h = affine_h(seq.front());
  auto m = [&](double t) { return h(depth_f(t)); };
  if (!(m(p0.hi) > m(p0.lo))) throw ResolutionError("build_Pn: lap is not increasing");
  return {lap_invert(m, p0, target.lo), lap_invert(m, p0, target.hi)};
}

LapTable::LapTable(std::size_t index_max, std::size_t level_max)
    : index_max_(index_max), level_max_(level_max) {
  extrema_for(index_max + 1);
  for (const auto& [seq, iv] : quad::table(index_max, level_max))
    entries_[seq] = {static_cast<double>(iv.lo), static_cast<double>(iv.hi)};
}

const Interval& LapTable::at(const IndexSeq& seq) const {
  auto it = entries_.find(seq);
  if (it == entries_.end()) throw DomainError("LapTable: sequence not materialized");
  return it->second;
}

const LapTable& lap_table() {
  static const LapTable table(kIndexMax, kLevelMax);
  return table;
}

double g_eval(const IndexSeq& seq, double t, double tol) {
  validate_seq(seq);
  const Interval p = interval_of_seq(seq);
  if (!p.contains(t, tol)) throw DomainError("g_eval: t outside P^n_seq");
  const LapTable& table = lap_table();
  const bool tabled = seq.size() <= table.level_max() + 1 && seq.front() <= table.index_max();
  const auto* exact = tabled ? &quad::table(table.index_max(), table.level_max()) : nullptr;
  quad::Q v = quad::depth_f(std::max(t, 1e-300));
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const quad::Q u = quad::affine_h(seq[k])(v);
    if (k + 1 < seq.size()) {
      const IndexSeq rest(seq.begin() + static_cast<std::ptrdiff_t>(k + 1), seq.end());
      quad::Q lo, hi;
      if (exact) {
        const quad::QInterval& q = exact->at(rest);
        lo = q.lo;
        hi = q.hi;
      } else {
        const Interval need = interval_of_seq(rest);
        lo = need.lo;
        hi = need.hi;
      }
      if (u < lo - tol || u > hi + tol)
        throw ConstructionError("g_eval: intermediate value leaves P^" + std::to_string(seq.size() - k - 2));
    } else if (u < -tol || u > 1 + tol) {
      throw ConstructionError("g_eval: final argument leaves [0,1]");
    }
    v = quad::truncated_f(seq[k], u < 0 ? quad::Q(0) : (u > 1 ? quad::Q(1) : u));
  }
  return static_cast<double>(v);
}

namespace {

// Shared chain for phi_eval and phi_sequence.
template <class Visit>
void phi_chain(std::size_t n, double t, std::size_t index_max, Visit&& visit) {
  if (!(t > 0.0) || t > 1.0) throw DomainError("phi: t outside (0,1]");
  const ExtremaTable& ex = extrema_for(index_max + 1);
  if (t < ex.y(index_max + 1)) throw DomainError("phi: t below the materialized laps");
  double loc = t, v = depth_f(t);
  std::size_t cap = index_max;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = lap_containing(loc, cap);
    if (i == 0) return;
    const double u = clamp01(affine_h(i)(v));
    v = truncated_f(ex, i, u);
    visit(k, i, v);
    loc = u;
    cap = i;
  }
}

}  // namespace

std::vector<double> phi_eval(std::size_t n, double t, std::size_t index_max) {
  std::vector<double> out(n + 2, 0.0);
  phi_chain(n, t, index_max, [&](std::size_t k, std::size_t, double g) {
    out[k + 2] = std::ldexp(g, -static_cast<int>(k + 1));
  });
  out[0] = t;
  out[1] = depth_f(t);
  return out;
}

IndexSeq phi_sequence(std::size_t n, double t, std::size_t index_max) {
  IndexSeq seq;
  phi_chain(n, t, index_max, [&](std::size_t, std::size_t i, double) { seq.push_back(i); });
  return seq;
}

namespace {

void add_uniform(std::vector<double>& ts, const Interval& iv, std::size_t count) {
  for (std::size_t k = 0; k < count; ++k)
    ts.push_back(iv.lo + iv.length() * static_cast<double>(k) / static_cast<double>(count - 1));
}

LiftedArc sample_phi(std::size_t n, std::size_t samples, double t0, double t1, std::size_t index_max) {
  const LapTable& table = lap_table();
  std::vector<double> ts;
  for (const auto& [seq, iv] : table.entries()) {
    const bool innermost = seq.size() == std::max<std::size_t>(n, 1);
    if (innermost && iv.hi >= t0 && iv.lo <= t1 && seq.front() <= index_max) add_uniform(ts, iv, 16);
  }
  SamplingOptions opt;
  opt.target = 0.0;
  opt.budget = samples;
  opt.initial = 256;
  const std::size_t dim = n + 2;
  auto curve = sample_curve(
      [&](double t, double* out) {
        const auto p = phi_eval(n, t, index_max);
        std::copy(p.begin(), p.end(), out);
      },
      dim, t0, t1, opt);
  ts.insert(ts.end(), curve.params.begin(), curve.params.end());
  std::erase_if(ts, [&](double t) { return t < t0 || t > t1; });
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  LiftedArc arc;
  arc.level = n;
  arc.params = ts;
  arc.coords.resize(ts.size() * dim);
  parallel_for(ts.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const auto p = phi_eval(n, ts[k], index_max);
      std::copy(p.begin(), p.end(), arc.coords.begin() + static_cast<std::ptrdiff_t>(k * dim));
    }
  });
  for (std::size_t k = 1; k < ts.size(); ++k)
    arc.chord = std::max(arc.chord, product_metric(std::span<const double>(arc.coords.data() + (k - 1) * dim, dim),
                                                   std::span<const double>(arc.coords.data() + k * dim, dim)));
  return arc;
}

constexpr std::size_t kGridG = 1024;
constexpr std::size_t kTailIndex = 160;

void append_G(std::vector<double>& coords, std::vector<double>& base, std::size_t dim) {
  for (std::size_t k = 0; k <= kGridG; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(kGridG);
    coords.push_back(s);
    coords.insert(coords.end(), dim - 1, 0.0);
    base.push_back(s);
  }
}

}  // namespace

LiftedArc build_phi(std::size_t n, std::size_t samples) {
  const double t0 = extrema_for(kIndexMax + 1).y(kIndexMax + 1);
  return sample_phi(n, samples, t0, 1.0, kIndexMax);
}

SampledSpace build_Xinf_space(std::size_t n, std::size_t samples) {
  const std::size_t dim = n + 2;
  SampledSpace sp{Cloud("X_inf", 0.0, 1, {0.0}), {}, TopoGraph::circle(), 1, true, {}, {}};
  std::vector<double> coords, base;
  append_G(coords, base, dim);

  const LiftedArc arc = build_phi(n, samples);
  Track track;
  for (std::size_t k = 0; k < arc.params.size(); ++k) {
    track.indices.push_back(base.size());
    track.params.push_back(arc.params[k]);
    coords.insert(coords.end(), arc.coords.begin() + static_cast<std::ptrdiff_t>(k * dim),
                  arc.coords.begin() + static_cast<std::ptrdiff_t>((k + 1) * dim));
    base.push_back(2.0 - arc.params[k]);
  }

  double sub_mesh = 0.0;
  std::vector<double> sub;
  std::size_t sub_dim = 1;
  if (n == 0) {
    std::vector<double> gb;
    append_G(sub, gb, 1);
  } else {
    const Cloud prev = build_Xinf(n - 1, samples);
    sub = prev.data();
    sub_dim = prev.dim();
    sub_mesh = prev.mesh();
  }
  for (std::size_t i = 0; i < sub.size(); i += sub_dim) {
    coords.push_back(0.0);
    for (std::size_t k = 0; k < sub_dim; ++k) coords.push_back(0.5 * sub[i + k]);
    base.push_back(0.0);
  }

  Cloud assembled("X_inf_" + std::to_string(n), 0.0, dim, coords);
  // Unmaterialized laps: distance from the next block of phi_n to the sample.
  const ExtremaTable& ex = extrema_for(kIndexMax + 2);
  const LiftedArc probe = sample_phi(n, 2048, ex.y(kIndexMax + 2), ex.y(kIndexMax + 1), kIndexMax + 1);
  Cloud probe_cloud("probe", 0.0, dim, probe.coords);
  const double probe_dist = directed_hausdorff(probe_cloud, assembled);
  const double mesh = std::max({arc.chord, 1.0 / static_cast<double>(kGridG), 0.25 * sub_mesh, probe_dist});

  sp.cloud = assembled.with_mesh(mesh);
  sp.chart.base = std::move(base);
  sp.chart.lo = 0.0;
  sp.chart.hi = 2.0;
  sp.chart.periodic = true;
  sp.arcs.push_back(std::move(track));
  sp.notes.push_back("probe distance " + std::to_string(probe_dist));
  return sp;
}

Cloud build_Xinf(std::size_t n, std::size_t samples) { return build_Xinf_space(n, samples).cloud; }

TailReport omega_tail(std::size_t n, std::size_t samples) {
  if (n == 0) throw DomainError("omega_tail: level must be positive");
  const Cloud target = half_shift(build_Xinf(n - 1, samples));
  const Cloud whole = build_Xinf(n, samples);
  // The tail runs through laps far below the materialized table.
  const double t_min = extrema_for(kTailIndex + 1).y(kTailIndex + 1);
  const LiftedArc arc = sample_phi(n, 4 * samples, t_min, 0.5, kTailIndex);
  const std::size_t dim = n + 2;
  TailReport rep;
  auto tail_distance = [&](double t_cut) {
    std::vector<double> c;
    for (std::size_t k = 0; k < arc.params.size() && arc.params[k] <= t_cut; ++k)
      c.insert(c.end(), arc.coords.begin() + static_cast<std::ptrdiff_t>(k * dim),
               arc.coords.begin() + static_cast<std::ptrdiff_t>((k + 1) * dim));
    return hausdorff(Cloud("tail", 0.0, dim, std::move(c)), target.with_dim(dim));
  };
  for (double t = 0.5; t > 2.0 * t_min; t *= 0.5) rep.ladder.emplace_back(t, tail_distance(t));
  if (rep.ladder.empty()) throw ResolutionError("omega_tail: no tail samples");
  const double mesh = whole.mesh();
  std::size_t pick = rep.ladder.size() - 1;
  for (std::size_t j = 0; j + 2 < rep.ladder.size(); ++j) {
    if (std::fabs(rep.ladder[j].second - rep.ladder[j + 1].second) <= mesh &&
        std::fabs(rep.ladder[j + 1].second - rep.ladder[j + 2].second) <= mesh) {
      pick = j + 2;
      break;
    }
  }
  rep.t_cut = rep.ladder[pick].first;
  rep.distance = rep.ladder[pick].second;
  return rep;
}

// ---------------------------------------------------------------------------
// Arcwise connectivity witness

namespace {

using Path = std::vector<std::vector<double>>;

void segment_G(Path& path, std::size_t dim, double from, double to) {
  const std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::fabs(to - from) * 1024)));
  for (std::size_t k = 0; k <= steps; ++k) {
    std::vector<double> p(dim, 0.0);
    p[0] = from + (to - from) * static_cast<double>(k) / static_cast<double>(steps);
    path.push_back(std::move(p));
  }
}

Path witness(const std::vector<double>& x, std::size_t n, double tol) {
  const std::size_t dim = n + 2;
  Path path;
  const double t_min = extrema_for(kIndexMax + 1).y(kIndexMax + 1);
  double rest = 0.0;
  for (std::size_t k = 1; k < dim; ++k) rest = std::max(rest, std::fabs(x[k]));
  const std::vector<double> on_g = [&] { std::vector<double> g(dim, 0.0); g[0] = x[0]; return g; }();
  const double dG = product_metric(x, on_g);

  if (x[0] > 0.0 && x[0] >= t_min) {
    const auto phi = phi_eval(n, x[0]);
    const double dL = product_metric(x, phi);
    if (std::min(dG, dL) > tol) throw DomainError("arcwise_witness: point not near G or L_n");
    if (dG <= dL) {
      segment_G(path, dim, x[0], 1.0);
    } else {
      const std::size_t steps = 4096;
      for (std::size_t k = 0; k <= steps; ++k) {
        const double t = x[0] + (1.0 - x[0]) * static_cast<double>(k) / static_cast<double>(steps);
        path.push_back(phi_eval(n, t));
      }
    }
    return path;
  }
  if (dG <= tol && rest <= tol) {
    segment_G(path, dim, x[0], 1.0);
    return path;
  }
  // Inside 1/2 theta(X_{n-1}) up to the first coordinate.
  if (x[0] > tol) throw DomainError("arcwise_witness: point in the unmaterialized tail of L_n");
  std::vector<double> inner(dim - 1);
  for (std::size_t k = 1; k < dim; ++k) inner[k - 1] = std::min(1.0, 2.0 * x[k]);
  Path sub;
  if (n == 0) {
    segment_G(sub, 1, inner[0], 1.0);
  } else {
    sub = witness(inner, n - 1, 4.0 * tol);
  }
  if (x[0] > 0.0) {
    std::vector<double> p(x);
    p[0] = 0.0;
    path.push_back(x);
    path.push_back(p);
  }
  for (const auto& q : sub) {
    std::vector<double> p(dim, 0.0);
    for (std::size_t k = 0; k < q.size(); ++k) p[k + 1] = 0.5 * q[k];
    path.push_back(std::move(p));
  }
  // Down 1/2 theta(G) from (0, 1/2, 0, ...) to the origin, then along G.
  for (std::size_t k = 0; k <= 512; ++k) {
    std::vector<double> p(dim, 0.0);
    p[1] = 0.5 * (1.0 - static_cast<double>(k) / 512.0);
    path.push_back(std::move(p));
  }
  segment_G(path, dim, 0.0, 1.0);
  return path;
}

}  // namespace

Cloud arcwise_witness(const HPoint& x, const Cloud& cloud) {
  if (cloud.dim() < 2) throw DomainError("arcwise_witness: cloud is not an X_n model");
  const std::size_t n = cloud.dim() - 2;
  const auto xp = x.resized(cloud.dim());
  std::vector<double> xs(xp.coords().begin(), xp.coords().end());
  const Path path = witness(xs, n, 2.0 * cloud.mesh());
  std::vector<double> coords;
  coords.reserve(path.size() * cloud.dim());
  for (const auto& p : path) coords.insert(coords.end(), p.begin(), p.end());
  return Cloud("witness", cloud.mesh(), cloud.dim(), std::move(coords));
}

// ---------------------------------------------------------------------------
// Verification

double glueing_residual(const LapTable& table) {
  const auto& exact = quad::table(table.index_max(), table.level_max());
  std::vector<std::pair<IndexSeq, quad::QInterval>> items(exact.begin(), exact.end());
  std::vector<double> worst(items.size(), 0.0);
  parallel_for(items.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      const auto& [seq, iv] = items[k];
      worst[k] = static_cast<double>(std::max(fabsq(quad::g_eval(seq, iv.lo)), fabsq(quad::g_eval(seq, iv.hi))));
    }
  }, 32);
  return *std::max_element(worst.begin(), worst.end());
}

double forward_image_residual(const LapTable& table) {
  const auto& exact = quad::table(table.index_max(), table.level_max());
  quad::Q worst = 0;
  for (const auto& [seq, iv] : exact) {
    if (seq.size() < 2) continue;
    const quad::QInterval& target = exact.at(tail_of(seq));
    const quad::QAffine h = quad::affine_h(seq.front());
    worst = std::max({worst, fabsq(h(quad::depth_f(iv.lo)) - target.lo), fabsq(h(quad::depth_f(iv.hi)) - target.hi)});
  }
  return static_cast<double>(worst);
}

std::size_t nesting_violations(const LapTable& table) {
  const auto& exact = quad::table(table.index_max(), table.level_max());
  std::size_t bad = 0;
  for (const auto& [seq, iv] : exact) {
    if (!(iv.lo <= iv.hi)) ++bad;
    if (seq.size() < 2) continue;
    const quad::QInterval& outer = exact.at(IndexSeq(seq.begin(), seq.end() - 1));
    if (iv.lo < outer.lo - 1e-30 || iv.hi > outer.hi + 1e-30) ++bad;
  }
  return bad;
}

double phi_step_distance(std::size_t n, std::size_t samples) {
  const LiftedArc next = build_phi(n + 1, samples);
  std::vector<double> worst(next.params.size(), 0.0);
  parallel_for(next.params.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      auto p = phi_eval(n, next.params[k]);
      p.push_back(0.0);
      worst[k] = product_metric(p, std::span<const double>(next.coords.data() + k * next.dim(), next.dim()));
    }
  });
  return *std::max_element(worst.begin(), worst.end());
}

std::vector<ConditionReport> verify_conditions(std::size_t n, std::size_t samples) {
  std::vector<ConditionReport> out;
  const LiftedArc arc = build_phi(n, samples);
  const std::size_t dim = arc.dim();
  const double mesh = build_Xinf(n, samples).mesh();

  {
    double bad = 0.0;
    for (std::size_t k = 0; k < arc.params.size(); ++k) {
      const double* p = arc.coords.data() + k * dim;
      if (!(p[0] > 0.0)) bad += 1.0;
      for (std::size_t j = 0; j < dim; ++j) bad += (p[j] < 0.0 || p[j] > 1.0) ? 1.0 : 0.0;
    }
    out.push_back({"A1", bad == 0.0, bad, "samples outside (0,1] x [0,1]^" + std::to_string(n + 1)});
  }
  {
    double worst = 0.0;
    for (std::size_t k = 0; k < arc.params.size(); ++k)
      worst = std::max(worst, std::fabs(arc.coords[k * dim] - arc.params[k]));
    out.push_back({"A5", worst == 0.0, worst, "first coordinate equals the parameter"});
  }
  if (n == 0) return out;
  {
    double worst = 0.0;
    for (std::size_t k = 0; k < arc.params.size(); ++k) {
      const auto prev = phi_eval(n - 1, arc.params[k]);
      worst = std::max(worst, product_metric(prev, std::span<const double>(arc.coords.data() + k * dim, dim - 1)));
    }
    out.push_back({"A7", worst == 0.0, worst, "dropping the last coordinate lands in L_{n-1}"});
  }
  {
    const TailReport tr = omega_tail(n, samples);
    out.push_back({"A8", tr.distance <= 5.0 * mesh, tr.distance,
                   "t_cut " + std::to_string(tr.t_cut) + ", mesh " + std::to_string(mesh)});
  }
  {
    // For a few (i1..in) and points s in P^{n-1}_{i1..in}: t(i0) in P^n_{i0,i1..in}
    // with (h_i0 o f)(t) = s approaches 1/2 theta(phi_{n-1}(s)).
    double worst = 0.0;
    bool decreasing = true;
    const LapTable& table = lap_table();
    for (const auto& [seq, iv] : table.entries()) {
      if (seq.size() != n || seq.front() > 3) continue;
      const double s = iv.mid();
      auto y = phi_eval(n - 1, s);
      y.insert(y.begin(), 0.0);
      for (std::size_t j = 1; j < y.size(); ++j) y[j] *= 0.5;
      double first = -1.0, last = 0.0;
      for (std::size_t i0 = seq.front(); i0 <= kTailIndex; i0 += (i0 < kIndexMax ? 1 : 4)) {
        const AffineMap h = affine_h(i0);
        const double t = lap_invert([&](double u) { return h(depth_f(u)); }, lap_P0(i0), s);
        last = product_metric(phi_eval(n, t, kTailIndex), y);
        if (first < 0.0) first = last;
      }
      worst = std::max(worst, last);
      decreasing = decreasing && last < first;
    }
    out.push_back({"A9", decreasing && worst <= 5.0 * mesh, worst, "distance at i0 = " + std::to_string(kTailIndex)});
  }
  {
    const LapTable& table = lap_table();
    std::vector<Interval> inner;
    double worst = 0.0;
    for (const auto& [seq, iv] : table.entries()) {
      if (seq.size() != n) continue;
      inner.push_back(iv);
      for (std::size_t k = 0; k <= 8; ++k) {
        const double t = iv.lo + iv.length() * static_cast<double>(k) / 8.0;
        const double expect = std::ldexp(g_eval(seq, t), -static_cast<int>(n));
        worst = std::max(worst, std::fabs(phi_eval(n, t)[n + 1] - expect));
      }
    }
    std::sort(inner.begin(), inner.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t k = 0; k < arc.params.size(); ++k) {
      const double t = arc.params[k];
      auto it = std::upper_bound(inner.begin(), inner.end(), t, [](double v, const Interval& iv) { return v < iv.lo; });
      const bool inside = it != inner.begin() && std::prev(it)->contains(t);
      if (!inside) worst = std::max(worst, std::fabs(arc.coords[k * dim + n + 1]));
    }
    out.push_back({"A10", worst <= 1e-9, worst, "last coordinate is 2^-n g on P^{n-1}, zero elsewhere"});
  }
  return out;
}

std::string reports_to_json(const std::vector<ConditionReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports)
    arr.push_back({{"condition", r.condition}, {"status", r.ok ? "pass" : "fail"}, {"residual", r.residual},
                   {"detail", r.detail}});
  return arr.dump(2);
}

}  // namespace tranche
