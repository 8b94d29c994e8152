#include "tranche/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "json.hpp"
#include "tranche/curves.hpp"
#include "tranche/errors.hpp"
#include "tranche/sampling.hpp"

namespace tranche {

namespace {

using Vec3 = std::array<double, 3>;

class Assembly {
 public:
  explicit Assembly(std::size_t dim) : dim_(dim) {}

  std::size_t add(const double* p, double u) {
    coords_.insert(coords_.end(), p, p + dim_);
    base_.push_back(u);
    return base_.size() - 1;
  }
  std::size_t add(std::initializer_list<double> p, double u) {
    std::vector<double> v(p);
    v.resize(dim_, 0.0);
    return add(v.data(), u);
  }
  // Segment a -> b with count+1 points, all at chart value u (or u(tau) when given).
  void segment(const std::vector<double>& a, const std::vector<double>& b, std::size_t count,
               const std::function<double(double)>& u) {
    std::vector<double> p(dim_);
    for (std::size_t k = 0; k <= count; ++k) {
      const double tau = static_cast<double>(k) / static_cast<double>(count);
      for (std::size_t j = 0; j < dim_; ++j) p[j] = a[j] + (b[j] - a[j]) * tau;
      add(p.data(), u(tau));
    }
  }
  double track(const SampledCurve& c, Track& t, const std::function<double(double)>& u) {
    double chord = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      t.indices.push_back(add(c.coords.data() + k * dim_, u(c.params[k])));
      t.params.push_back(c.params[k]);
      if (k > 0)
        chord = std::max(chord, product_metric(std::span<const double>(c.coords.data() + (k - 1) * dim_, dim_),
                                               std::span<const double>(c.coords.data() + k * dim_, dim_)));
    }
    return chord;
  }
  std::size_t size() const { return base_.size(); }
  Cloud cloud(const std::string& label, double mesh) const { return Cloud(label, mesh, dim_, coords_); }
  std::vector<double> take_base() { return std::move(base_); }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<double> base_;
};

double zero(double) { return 0.0; }

Cloud polyline_cloud(const std::string& label, const std::vector<std::vector<double>>& pts, std::size_t per_leg) {
  const std::size_t dim = pts.front().size();
  std::vector<double> coords;
  for (std::size_t l = 0; l + 1 < pts.size(); ++l)
    for (std::size_t k = 0; k <= per_leg; ++k) {
      const double tau = static_cast<double>(k) / static_cast<double>(per_leg);
      for (std::size_t j = 0; j < dim; ++j) coords.push_back(pts[l][j] + (pts[l + 1][j] - pts[l][j]) * tau);
    }
  return deduplicate(Cloud(label, 0.0, dim, std::move(coords)));
}

// ---- Star geometry ----

constexpr Vec3 kCentre{0.5, 0.5, 0.0};
constexpr std::array<Vec3, 4> kTips{{{0.9, 0.5, 0.0}, {0.5, 0.9, 0.0}, {0.1, 0.5, 0.0}, {0.5, 0.1, 0.0}}};

Vec3 along(int edge, double r) {
  const Vec3& e = kTips.at(static_cast<std::size_t>(edge - 1));
  return {kCentre[0] + r * (e[0] - kCentre[0]), kCentre[1] + r * (e[1] - kCentre[1]), 0.0};
}

double planar_metric(const Vec3& a, const Vec3& b) {
  return 0.5 * std::fabs(a[0] - b[0]) + 0.25 * std::fabs(a[1] - b[1]) + 0.125 * std::fabs(a[2] - b[2]);
}

// A piecewise linear quasi-arc: blocks of waypoints, height given as a function
// of the continuous block parameter s.
struct Route {
  std::vector<std::vector<Vec3>> blocks;
};

struct RouteSample {
  std::vector<double> coords;  // dim 3
  std::vector<double> params;  // block parameter s
  std::vector<std::size_t> block_start;
  double chord = 0.0;
};

RouteSample sample_route(const Route& route, double step, const std::function<double(double)>& height) {
  RouteSample out;
  const double nb = static_cast<double>(route.blocks.size());
  for (std::size_t b = 0; b < route.blocks.size(); ++b) {
    out.block_start.push_back(out.params.size());
    const auto& w = route.blocks[b];
    if (w.size() == 1) {
      for (std::size_t k = 0; k < 4; ++k) {
        const double s = static_cast<double>(b) + static_cast<double>(k) / 4.0;
        out.coords.insert(out.coords.end(), {w[0][0], w[0][1], height(s)});
        out.params.push_back(s);
      }
      continue;
    }
    double total = 0.0;
    for (std::size_t l = 0; l + 1 < w.size(); ++l) total += planar_metric(w[l], w[l + 1]);
    double acc = 0.0;
    for (std::size_t l = 0; l + 1 < w.size(); ++l) {
      const double len = planar_metric(w[l], w[l + 1]);
      const std::size_t m = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(len / step)));
      for (std::size_t k = 0; k < m; ++k) {
        const double tau = static_cast<double>(k) / static_cast<double>(m);
        const double s = static_cast<double>(b) + (acc + tau * len) / total;
        out.coords.insert(out.coords.end(), {w[l][0] + tau * (w[l + 1][0] - w[l][0]),
                                             w[l][1] + tau * (w[l + 1][1] - w[l][1]), height(s)});
        out.params.push_back(s);
      }
      acc += len;
    }
  }
  const auto& last = route.blocks.back().back();
  out.coords.insert(out.coords.end(), {last[0], last[1], height(nb)});
  out.params.push_back(nb);
  for (std::size_t k = 1; k < out.params.size(); ++k)
    out.chord = std::max(out.chord, product_metric(std::span<const double>(out.coords.data() + (k - 1) * 3, 3),
                                                   std::span<const double>(out.coords.data() + k * 3, 3)));
  return out;
}

double route_length(const Route& route) {
  double total = 0.0;
  for (const auto& w : route.blocks)
    for (std::size_t l = 0; l + 1 < w.size(); ++l) total += planar_metric(w[l], w[l + 1]);
  return total;
}

constexpr std::size_t kStarPerEdge = 256;

// Quasi-arc samples followed by the star at chart value 0; chart 1/(1+s) on the quasi-arc.
GalleryModel star_model(const std::string& name, const Route& route, std::size_t samples,
                        const std::function<double(double)>& height) {
  const double step = route_length(route) / static_cast<double>(samples);
  const RouteSample rs = sample_route(route, step, height);
  Assembly as(3);
  Track track;
  for (std::size_t k = 0; k < rs.params.size(); ++k) {
    track.indices.push_back(as.add(rs.coords.data() + 3 * k, 1.0 / (1.0 + rs.params[k])));
    track.params.push_back(rs.params[k]);
  }
  for (int e = 1; e <= 4; ++e) {
    const Vec3 t = along(e, 1.0);
    as.segment({kCentre[0], kCentre[1], 0.0}, {t[0], t[1], 0.0}, kStarPerEdge, zero);
  }
  GalleryModel m;
  m.name = name;
  m.tail_offset = height(static_cast<double>(route.blocks.size())) / 8.0;
  const double mesh = std::max({rs.chord, m.tail_offset, 0.2 / static_cast<double>(kStarPerEdge)});
  m.space.cloud = as.cloud(name, mesh);
  m.space.chart.base = as.take_base();
  m.space.chart.lo = 0.0;
  m.space.chart.hi = 1.0;
  m.space.quotient = TopoGraph::interval();
  m.space.declared_tranches = 1;
  m.space.arcwise_connected = false;
  m.space.arcs.push_back(std::move(track));
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

GalleryModel warsaw_model(std::size_t samples) {
  if (samples < 64) throw DomainError("warsaw_model: need at least 64 samples");
  const double t_min = 1.0 / std::sqrt(static_cast<double>(samples));
  SamplingOptions opt;
  opt.target = 0.0;
  opt.budget = samples;
  opt.initial = 256;
  const auto curve = sample_curve([](double t, double* out) { out[0] = t; out[1] = depth_f(t); }, 2, t_min, 1.0, opt);

  Assembly as(2);
  as.segment({0.0, 0.0}, {1.0, 0.0}, 1024, [](double tau) { return tau; });
  Track track;
  const double chord = as.track(curve, track, [](double t) { return 2.0 - t; });
  as.segment({0.0, 0.0}, {0.0, 0.5}, 512, zero);

  GalleryModel m;
  m.name = "warsaw";
  m.tail_offset = 0.5 * t_min;
  m.space.cloud = as.cloud("warsaw", std::max({chord, m.tail_offset, 1.0 / 1024.0}));
  m.space.chart.base = as.take_base();
  m.space.chart.lo = 0.0;
  m.space.chart.hi = 2.0;
  m.space.chart.periodic = true;
  m.space.quotient = TopoGraph::circle();
  m.space.declared_tranches = 1;
  m.space.arcs.push_back(std::move(track));
  m.space.notes.push_back("limit segment {0}x[0,1/2]");

  auto seg = [](double lo, double hi, std::size_t n) {
    return polyline_cloud("", {{0.0, lo}, {0.0, hi}}, n);
  };
  m.y0.push_back({"segment[0.2,0.4]", seg(0.2, 0.4, 64).relabeled("segment[0.2,0.4]")});
  m.y0.push_back({"segment[0,0.5]", seg(0.0, 0.5, 128).relabeled("segment[0,0.5]")});
  m.y0.push_back({"segment[0.3,0.32]", seg(0.3, 0.32, 8).relabeled("segment[0.3,0.32]")});
  m.y0.push_back({"point(0,0.25)", Cloud("point(0,0.25)", 0.0, 2, {0.0, 0.25})});
  return m;
}

Cloud warsaw_circle(std::size_t samples) { return warsaw_model(samples).space.cloud; }

Cloud star_edges(const std::vector<int>& edges, std::size_t per_edge) {
  std::vector<double> coords;
  for (int e : edges) {
    if (e < 1 || e > 4) throw DomainError("star_edges: edge index outside 1..4");
    const Cloud c = sub_edge(e, 0.0, 1.0, per_edge);
    coords.insert(coords.end(), c.data().begin(), c.data().end());
  }
  return deduplicate(Cloud("star_edges", 0.0, 3, std::move(coords)));
}

Cloud center_star(const std::array<double, 4>& r, std::size_t per_edge) {
  std::vector<double> coords{kCentre[0], kCentre[1], 0.0};
  for (int e = 1; e <= 4; ++e) {
    const double len = r[static_cast<std::size_t>(e - 1)];
    if (len <= 0.0) continue;
    const std::size_t n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(len * static_cast<double>(per_edge))));
    const Cloud c = sub_edge(e, 0.0, len, n);
    coords.insert(coords.end(), c.data().begin(), c.data().end());
  }
  return deduplicate(Cloud("center_star", 0.0, 3, std::move(coords)));
}

Cloud sub_edge(int edge, double a, double b, std::size_t count) {
  if (!(0.0 <= a && a <= b && b <= 1.0)) throw DomainError("sub_edge: need 0 <= a <= b <= 1");
  const Vec3 p = along(edge, a), q = along(edge, b);
  if (a == b) return Cloud("sub_edge", 0.0, 3, {p[0], p[1], 0.0});
  return polyline_cloud("sub_edge", {{p[0], p[1], 0.0}, {q[0], q[1], 0.0}}, std::max<std::size_t>(count, 1));
}

GalleryModel star4_route_model(std::size_t samples, std::array<int, 4> order) {
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 4>{1, 2, 3, 4}) throw DomainError("star4_route: order must permute 1..4");
  constexpr std::size_t kBlocks = 12;
  Route route;
  for (std::size_t b = 0; b < kBlocks; ++b) {
    std::vector<Vec3> w;
    for (int e : order) {
      w.push_back(along(e, 1.0));
      w.push_back(kCentre);
    }
    w.push_back(along(order[0], 1.0));
    route.blocks.push_back(std::move(w));
  }
  GalleryModel m = star_model("star4_route", route, samples, [](double s) { return 0.5 * std::exp2(-s); });
  // A sub-arc longer than one oscillation contains a full pass over the star.
  m.max_span = m.space.arcs.front().indices.size() * 5 / (4 * kBlocks);
  m.y0.push_back({"E1uE3", star_edges({order[0], order[2]}).relabeled("E1uE3")});
  m.y0.push_back({"E1", star_edges({order[0]}).relabeled("E1")});
  m.y0.push_back({"star", star_edges({1, 2, 3, 4}).relabeled("star")});
  return m;
}

GalleryModel star4_good_model(std::size_t samples) {
  constexpr std::size_t kCycles = 3;
  std::vector<std::vector<Vec3>> cycle;
  for (int e = 1; e <= 4; ++e) cycle.push_back({kCentre, along(e, 1.0), kCentre});
  std::vector<std::array<double, 4>> radii;
  for (int code = 0; code < 81; ++code) {
    std::array<double, 4> r{};
    int c = code;
    for (auto& v : r) {
      v = 0.5 * (c % 3);
      c /= 3;
    }
    radii.push_back(r);
    std::vector<Vec3> w{kCentre};
    for (int e = 1; e <= 4; ++e) {
      if (r[static_cast<std::size_t>(e - 1)] == 0.0) continue;
      w.push_back(along(e, r[static_cast<std::size_t>(e - 1)]));
      w.push_back(kCentre);
    }
    cycle.push_back(std::move(w));
  }
  Route route;
  for (std::size_t c = 0; c < kCycles; ++c) route.blocks.insert(route.blocks.end(), cycle.begin(), cycle.end());
  const double per_cycle = static_cast<double>(cycle.size());
  GalleryModel m = star_model("star4_good", route, samples,
                              [per_cycle](double s) { return 0.25 * std::pow(4.0, -s / per_cycle); });
  // Arcs of the last enumeration cycle are the closest ones.
  const auto& track = m.space.arcs.front();
  const double last_cycle = static_cast<double>(kCycles - 1) * per_cycle;
  m.search_from = static_cast<std::size_t>(
      std::lower_bound(track.params.begin(), track.params.end(), last_cycle) - track.params.begin());
  std::size_t longest = 0;
  for (std::size_t k = m.search_from, start = k; k < track.params.size(); ++k) {
    if (std::floor(track.params[k]) != std::floor(track.params[start])) start = k;
    longest = std::max(longest, k - start + 2);
  }
  m.max_span = longest;

  for (int e = 1; e <= 4; ++e)
    for (int a = 0; a <= 8; ++a)
      for (int b = a + 1; b <= 8; ++b) {
        const std::string label = "E" + std::to_string(e) + "[" + std::to_string(a) + "/8," + std::to_string(b) + "/8]";
        m.y0.push_back({label, sub_edge(e, a / 8.0, b / 8.0, static_cast<std::size_t>(8 * (b - a))).relabeled(label)});
      }
  for (const auto& r : radii) {
    std::string label = "S(";
    for (std::size_t k = 0; k < 4; ++k) label += (k ? "," : "") + std::to_string(r[k]).substr(0, 3);
    label += ")";
    m.y0.push_back({label, center_star(r).relabeled(label)});
  }
  return m;
}

GalleryModel circle_spiral_model(std::size_t samples) {
  constexpr double kR = 0.18;
  constexpr std::size_t kSweeps = 64;
  constexpr double kStart = std::numbers::pi / 4.0;
  auto point = [](double r, double a, double z) {
    return std::vector<double>{0.5 + kR * r * std::cos(a), 0.5 + kR * r * std::sin(a), z};
  };
  Assembly as(3);
  Track track;
  double chord = 0.0;
  std::vector<double> prev;
  const double T = static_cast<double>(kSweeps);
  for (std::size_t k = 0; k <= samples; ++k) {
    const double t = T * static_cast<double>(k) / static_cast<double>(samples);
    const double phase = std::fmod(t, 2.0);
    const double sweep = phase <= 1.0 ? phase : 2.0 - phase;
    const auto p = point(1.0 + 1.0 / (1.0 + t), kStart + 2.0 * std::numbers::pi * sweep, 0.0);
    track.indices.push_back(as.add(p.data(), 2.0 - 1.0 / (1.0 + t)));
    track.params.push_back(t);
    if (!prev.empty()) chord = std::max(chord, product_metric(prev, p));
    prev = p;
  }
  constexpr std::size_t kCircle = 1024;
  for (std::size_t k = 0; k < kCircle; ++k) {
    const auto p = point(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / kCircle, 0.0);
    as.add(p.data(), 0.0);
  }
  for (std::size_t k = 1; k < 256; ++k) {
    const double tau = static_cast<double>(k) / 256.0;
    const auto p = point(1.0 + tau, kStart, 0.25 * std::sin(std::numbers::pi * tau));
    as.add(p.data(), tau);
  }
  GalleryModel m;
  m.name = "circle_spiral";
  m.tail_offset = kR / (1.0 + T);
  m.space.cloud = as.cloud("circle_spiral", std::max({chord, m.tail_offset, kR * 2.0 * std::numbers::pi / kCircle}));
  m.space.chart.base = as.take_base();
  m.space.chart.lo = 0.0;
  m.space.chart.hi = 2.0;
  m.space.chart.periodic = true;
  m.space.quotient = TopoGraph::circle();
  m.space.declared_tranches = 1;
  m.space.arcs.push_back(std::move(track));
  m.max_span = 2 * samples / kSweeps + 2;

  std::vector<double> quarter, full;
  for (std::size_t k = 0; k <= 64; ++k) {
    const auto p = point(1.0, 0.5 * std::numbers::pi * static_cast<double>(k) / 64.0, 0.0);
    quarter.insert(quarter.end(), p.begin(), p.end());
  }
  for (std::size_t k = 0; k < 256; ++k) {
    const auto p = point(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / 256.0, 0.0);
    full.insert(full.end(), p.begin(), p.end());
  }
  m.y0.push_back({"quarter", Cloud("quarter", 0.0, 3, std::move(quarter))});
  m.y0.push_back({"circle", Cloud("circle", 0.0, 3, std::move(full))});
  return m;
}

ApproximationResult approximate(const GalleryModel& m, const Cloud& y0, double eps, std::size_t stride) {
  if (m.space.arcs.empty()) throw DomainError("approximate: model has no quasi-arc track");
  const Track& full = m.space.arcs.front();
  Track t;
  t.indices.assign(full.indices.begin() + static_cast<std::ptrdiff_t>(m.search_from), full.indices.end());
  t.params.assign(full.params.begin() + static_cast<std::ptrdiff_t>(m.search_from), full.params.end());
  ArcFamily fam = parameter_arcs(t, stride);
  if (m.max_span) fam.max_span = std::max<std::size_t>(1, (m.max_span + stride - 1) / stride);
  const Cloud target = y0.dim() == m.space.cloud.dim() ? y0 : y0.with_dim(m.space.cloud.dim());
  return approximation_test(m.space.cloud, target, fam, eps);
}

// ---------------------------------------------------------------------------
// Comb pair

std::array<double, 2> comb_normalize(double x, double y) { return {x + 1.0, (y + 1.5) / 3.0}; }

namespace {

constexpr double kCombL = 64.0;     // parameter range of L1, L2
constexpr std::size_t kCombCycles = 16;

std::array<double, 2> comb_phi(int which, double s) {
  const double x = -1.0 / (1.0 + s);
  const double y = 0.5 * std::sin(-std::numbers::pi / x) * (1.0 + x) + (which == 1 ? 1.0 : -1.0);
  return {x, y};
}

std::array<double, 2> comb_gamma(double s) {
  const double N = std::min(std::floor(s) + 1.0, static_cast<double>(kCombCycles));
  const double tau = std::clamp(s - (N - 1.0), 0.0, 1.0);
  const double six = 6.0 * tau;
  const int piece = std::min(5, static_cast<int>(six));
  const double r = six - piece;
  auto mix = [](std::array<double, 2> a, std::array<double, 2> b, double w) {
    return std::array<double, 2>{a[0] + w * (b[0] - a[0]), a[1] + w * (b[1] - a[1])};
  };
  switch (piece) {
    case 0: return comb_phi(1, N * r);
    case 1: return mix(comb_phi(1, N), comb_phi(2, N), r);
    case 2: return comb_phi(2, N - N * r);
    case 3: return comb_phi(2, N * r);
    case 4: return mix(comb_phi(2, N), comb_phi(1, N), r);
    default: return comb_phi(1, N - N * r);
  }
}

void comb_segment(std::vector<double>& out, double x0, double y0, double x1, double y1, std::size_t n) {
  for (std::size_t k = 0; k <= n; ++k) {
    const double tau = static_cast<double>(k) / static_cast<double>(n);
    const auto p = comb_normalize(x0 + tau * (x1 - x0), y0 + tau * (y1 - y0));
    out.insert(out.end(), p.begin(), p.end());
  }
}

std::vector<double> comb_limit(int which) {
  std::vector<double> out;
  if (which == 1)
    comb_segment(out, 0.0, 0.5, 0.0, 1.5, 256);
  else
    comb_segment(out, 0.0, -1.5, 0.0, -0.5, 256);
  return out;
}

}  // namespace

CombPair comb_pair(std::size_t samples) {
  CombPair c;
  SamplingOptions opt;
  opt.target = 0.0;
  opt.budget = samples / 2;
  opt.initial = 256;

  // X1: G, L1, L2 and their limit segments, coordinates (u, v).
  std::vector<double> x1;
  comb_segment(x1, -1.0, -0.5, -1.0, 1.0, 256);
  comb_segment(x1, -1.0, 1.0, 0.0, 1.0, 256);
  comb_segment(x1, 0.0, -1.0, 0.0, 1.0, 512);
  double chord = 0.0;
  for (int which : {1, 2}) {
    const auto curve = sample_curve(
        [which](double s, double* out) {
          const auto p = comb_phi(which, s);
          const auto q = comb_normalize(p[0], p[1]);
          out[0] = q[0];
          out[1] = q[1];
        },
        2, 0.0, kCombL, opt);
    Track& tr = which == 1 ? c.l1 : c.l2;
    for (std::size_t k = 0; k < curve.size(); ++k) {
      tr.indices.push_back(x1.size() / 2);
      tr.params.push_back(curve.params[k]);
      x1.insert(x1.end(), curve.coords.begin() + static_cast<std::ptrdiff_t>(2 * k),
                curve.coords.begin() + static_cast<std::ptrdiff_t>(2 * k + 2));
      if (k > 0)
        chord = std::max(chord, product_metric(std::span<const double>(curve.coords.data() + 2 * (k - 1), 2),
                                               std::span<const double>(curve.coords.data() + 2 * k, 2)));
    }
    const auto lim = comb_limit(which);
    x1.insert(x1.end(), lim.begin(), lim.end());
  }
  const double l_tail = 0.5 / (1.0 + kCombL);
  c.x1 = Cloud("comb_X1", std::max({chord, l_tail, 1.0 / 256.0}), 2, x1);

  // X: X1 x {0}, K and the arc A.
  Assembly as(3);
  for (std::size_t i = 0; i < c.x1.size(); ++i) as.add({c.x1[i][0], c.x1[i][1], 0.0}, 0.0);
  SamplingOptions kopt = opt;
  kopt.budget = samples;
  const auto kc = sample_curve(
      [](double s, double* out) {
        const auto g = comb_gamma(s);
        const auto q = comb_normalize(g[0], g[1]);
        out[0] = q[0];
        out[1] = q[1];
        out[2] = 1.0 / (s + 1.0);
      },
      3, 0.0, static_cast<double>(kCombCycles), kopt);
  const double kchord = as.track(kc, c.k, [](double s) { return 2.0 - 1.0 / (1.0 + s); });
  const auto a0 = comb_normalize(-1.0, 1.0);
  as.segment({a0[0], a0[1], 0.0}, {a0[0], a0[1], 1.0}, 256, [](double tau) { return tau; });
  const double k_tail = 1.0 / (8.0 * (1.0 + static_cast<double>(kCombCycles))) +
                        0.5 / (1.0 + static_cast<double>(kCombCycles));
  const double mesh = std::max({c.x1.mesh(), kchord, k_tail});
  c.x = as.cloud("comb_X", mesh);
  c.space.cloud = c.x;
  c.space.chart.base = as.take_base();
  c.space.chart.lo = 0.0;
  c.space.chart.hi = 2.0;
  c.space.chart.periodic = true;
  c.space.quotient = TopoGraph::circle();
  c.space.declared_tranches = 1;
  c.space.arcs.push_back(c.k);
  c.discrepancies = {
      "omega(L1) = {0}x[1/2,3/2] extends above G, which is capped at y = 1",
      "L2 starts at (-1,-1), which is not on G (left segment starts at y = -1/2)",
      "cross segments of gamma_N between phi1(N) and phi2(N) are not contained in X1",
      "gamma(Nt) = gamma_N(t) is read as gamma(s) = gamma_{floor(s)+1}(s - floor(s))",
  };
  c.space.notes = c.discrepancies;
  return c;
}

double comb_failure_witness(const CombPair& c, double s_cut) {
  auto tail = [&](const Track& t, int which) {
    std::vector<double> out;
    for (std::size_t k = 0; k < t.indices.size(); ++k)
      if (t.params[k] >= s_cut) out.insert(out.end(), c.x1[t.indices[k]].begin(), c.x1[t.indices[k]].end());
    const auto lim = comb_limit(which);
    out.insert(out.end(), lim.begin(), lim.end());
    return out;
  };
  const auto t1 = tail(c.l1, 1);
  auto all = t1;
  const auto t2 = tail(c.l2, 2);
  all.insert(all.end(), t2.begin(), t2.end());
  comb_segment(all, 0.0, -1.0, 0.0, 1.0, 512);
  return hausdorff(Cloud("L1_tail", 0.0, 2, t1), Cloud("limit_component", 0.0, 2, all));
}

double comb_k_tail_distance(const CombPair& c, double t_cut) {
  std::vector<double> tail;
  for (std::size_t k = 0; k < c.k.indices.size(); ++k)
    if (c.k.params[k] >= t_cut) tail.insert(tail.end(), c.x[c.k.indices[k]].begin(), c.x[c.k.indices[k]].end());
  if (tail.empty()) throw DomainError("comb_k_tail_distance: no samples beyond t_cut");
  return directed_hausdorff(Cloud("K_tail", 0.0, 3, std::move(tail)), c.x1.with_dim(3));
}

std::string model_metadata_json(const SampledSpace& s) {
  nlohmann::json j;
  j["tranches"] = s.declared_tranches;
  j["arcwiseConnected"] = s.arcwise_connected;
  j["quotient"] = nlohmann::json::parse(s.quotient.to_json());
  j["betti1"] = s.quotient.connected() ? static_cast<long long>(betti1(s.quotient)) : -1;
  j["notes"] = s.notes;
  return j.dump();
}

}  // namespace tranche
