#include "tranche/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>

#include "tranche/errors.hpp"
#include "tranche/parallel.hpp"

namespace tranche {

namespace {

double checked_coord(double v) {
  if (!(v >= -kCoordTolerance && v <= 1.0 + kCoordTolerance))
    throw DomainError("coordinate outside [0,1]: " + std::to_string(v));
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

HPoint::HPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double& v : coords_) v = checked_coord(v);
}

HPoint::HPoint(std::initializer_list<double> coords) : HPoint(std::vector<double>(coords)) {}

HPoint HPoint::resized(std::size_t d) const {
  std::vector<double> c(d, 0.0);
  std::copy_n(coords_.begin(), std::min(d, coords_.size()), c.begin());
  return HPoint(std::move(c));
}

double product_metric(std::span<const double> x, std::span<const double> y) {
  const std::size_t common = std::min(x.size(), y.size());
  double s = 0.0;
  double w = 0.5;
  std::size_t k = 0;
  for (; k < common; ++k, w *= 0.5) s += w * std::fabs(x[k] - y[k]);
  for (; k < x.size(); ++k, w *= 0.5) s += w * std::fabs(x[k]);
  for (; k < y.size(); ++k, w *= 0.5) s += w * std::fabs(y[k]);
  return s;
}

double product_metric(const HPoint& x, const HPoint& y) {
  return product_metric(x.coords(), y.coords());
}

HPoint right_shift(const HPoint& x) {
  std::vector<double> c;
  c.reserve(x.dim() + 1);
  c.push_back(0.0);
  c.insert(c.end(), x.coords().begin(), x.coords().end());
  return HPoint(std::move(c));
}

HPoint half_shift(const HPoint& x) {
  std::vector<double> c;
  c.reserve(x.dim() + 1);
  c.push_back(0.0);
  for (double v : x.coords()) c.push_back(0.5 * v);
  return HPoint(std::move(c));
}

HPoint left_shift(const HPoint& x) {
  if (x.dim() == 0) return x;
  return HPoint(std::vector<double>(x.coords().begin() + 1, x.coords().end()));
}

Cloud::Cloud(std::string label, double mesh, std::size_t dim, std::vector<double> coords)
    : label_(std::move(label)), mesh_(mesh), dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw DomainError("cloud dimension must be positive");
  if (coords_.empty() || coords_.size() % dim_ != 0)
    throw DomainError("cloud must be nonempty with whole points");
  if (!(mesh_ >= 0.0)) throw DomainError("cloud mesh must be nonnegative");
  for (double& v : coords_) v = checked_coord(v);
}

Cloud Cloud::from_points(std::string label, double mesh, const std::vector<HPoint>& pts,
                         std::size_t dim) {
  if (dim == 0)
    for (const auto& p : pts) dim = std::max(dim, p.dim());
  dim = std::max<std::size_t>(dim, 1);
  std::vector<double> flat(pts.size() * dim, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto c = pts[i].coords();
    if (c.size() > dim) {
      for (std::size_t k = dim; k < c.size(); ++k)
        if (c[k] != 0.0) throw DomainError("point has nonzero coordinates beyond cloud dimension");
    }
    std::copy_n(c.begin(), std::min(dim, c.size()), flat.begin() + i * dim);
  }
  return Cloud(std::move(label), mesh, dim, std::move(flat));
}

HPoint Cloud::point(std::size_t i) const {
  auto s = (*this)[i];
  return HPoint(std::vector<double>(s.begin(), s.end()));
}

Cloud Cloud::relabeled(std::string label) const {
  Cloud c = *this;
  c.label_ = std::move(label);
  return c;
}

Cloud Cloud::with_mesh(double mesh) const {
  if (!(mesh >= 0.0)) throw DomainError("cloud mesh must be nonnegative");
  Cloud c = *this;
  c.mesh_ = mesh;
  return c;
}

Cloud Cloud::with_dim(std::size_t dim) const {
  if (dim == dim_) return *this;
  if (dim == 0) throw DomainError("cloud dimension must be positive");
  std::vector<double> flat(size() * dim, 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    auto p = (*this)[i];
    std::copy_n(p.begin(), std::min(dim, dim_), flat.begin() + i * dim);
  }
  return Cloud(label_, mesh_, dim, std::move(flat));
}

Cloud right_shift(const Cloud& c) {
  const std::size_t d = c.dim() + 1;
  std::vector<double> flat(c.size() * d, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto p = c[i];
    std::copy(p.begin(), p.end(), flat.begin() + i * d + 1);
  }
  return Cloud(c.label(), c.mesh() * 0.5, d, std::move(flat));
}

Cloud half_shift(const Cloud& c) {
  const std::size_t d = c.dim() + 1;
  std::vector<double> flat(c.size() * d, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto p = c[i];
    for (std::size_t k = 0; k < p.size(); ++k) flat[i * d + 1 + k] = 0.5 * p[k];
  }
  return Cloud(c.label(), c.mesh() * 0.25, d, std::move(flat));
}

Cloud left_shift(const Cloud& c) {
  if (c.dim() == 1) return Cloud(c.label(), c.mesh() * 2.0, 1, std::vector<double>(c.size(), 0.0));
  const std::size_t d = c.dim() - 1;
  std::vector<double> flat(c.size() * d);
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto p = c[i];
    std::copy(p.begin() + 1, p.end(), flat.begin() + i * d);
  }
  return Cloud(c.label(), c.mesh() * 2.0, d, std::move(flat));
}

Cloud unite(std::string label, const std::vector<const Cloud*>& parts, double mesh) {
  if (parts.empty()) throw DomainError("unite: no parts");
  std::size_t d = 0;
  double m = 0.0;
  std::size_t total = 0;
  for (const Cloud* p : parts) {
    d = std::max(d, p->dim());
    m = std::max(m, p->mesh());
    total += p->size();
  }
  std::vector<double> flat(total * d, 0.0);
  std::size_t row = 0;
  for (const Cloud* p : parts) {
    for (std::size_t i = 0; i < p->size(); ++i, ++row) {
      auto q = (*p)[i];
      std::copy(q.begin(), q.end(), flat.begin() + row * d);
    }
  }
  return Cloud(std::move(label), mesh > 0.0 ? mesh : m, d, std::move(flat));
}

Cloud deduplicate(const Cloud& c) {
  const std::size_t d = c.dim();
  std::vector<std::size_t> idx(c.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    auto pa = c[a], pb = c[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::sort(idx.begin(), idx.end(), less);
  std::vector<double> flat;
  flat.reserve(c.data().size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (r > 0 && !less(idx[r - 1], idx[r])) continue;
    auto p = c[idx[r]];
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return Cloud(c.label(), c.mesh(), d, std::move(flat));
}

double diameter(std::span<const double> coords, std::size_t dim) {
  const std::size_t n = coords.size() / dim;
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      best = std::max(best, product_metric(coords.subspan(i * dim, dim), coords.subspan(j * dim, dim)));
  return best;
}

double diameter(const Cloud& c) { return diameter(std::span<const double>(c.data()), c.dim()); }

double diameter_estimate(std::span<const double> coords, std::size_t dim, std::size_t exact_limit) {
  const std::size_t n = coords.size() / dim;
  if (n <= exact_limit) return diameter(coords, dim);
  auto farthest = [&](std::size_t from, double& dist) {
    std::size_t arg = from;
    dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = product_metric(coords.subspan(from * dim, dim), coords.subspan(i * dim, dim));
      if (d > dist) {
        dist = d;
        arg = i;
      }
    }
    return arg;
  };
  double best = 0.0, d = 0.0;
  std::size_t cur = 0;
  for (int sweep = 0; sweep < 4; ++sweep) {
    cur = farthest(cur, d);
    best = std::max(best, d);
  }
  return best;
}

double nearest_distance(std::span<const double> p, const Cloud& c) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i) best = std::min(best, product_metric(p, c[i]));
  return best;
}

// ---------------------------------------------------------------------------
// Nearest-sample index.

namespace {

constexpr double kPruneSlack = 1e-12;

}  // namespace

// k-d tree over weighted coordinates w_k x_k, so that the L1 distance from a
// query to a node box is a lower bound for the product metric.
CloudIndex::CloudIndex(const Cloud& c) : cloud_(&c), dim_(c.dim()) {
  order_.resize(c.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  weights_.resize(dim_);
  double w = 0.5;
  for (auto& x : weights_) {
    x = w;
    w *= 0.5;
  }
  if (c.size() > 0) build(0, c.size());
}

std::size_t CloudIndex::build(std::size_t begin, std::size_t end) {
  const Cloud& c = *cloud_;
  const std::size_t id = nodes_.size();
  nodes_.push_back({begin, end, 0, 0});
  const std::size_t box = boxes_.size();
  boxes_.resize(box + 2 * dim_);
  double* lo = boxes_.data() + box;
  double* hi = lo + dim_;
  std::fill(lo, lo + dim_, std::numeric_limits<double>::infinity());
  std::fill(hi, hi + dim_, -std::numeric_limits<double>::infinity());
  for (std::size_t r = begin; r < end; ++r) {
    auto p = c[order_[r]];
    for (std::size_t k = 0; k < dim_; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  if (end - begin <= kLeafSize) return id;
  std::size_t split = 0;
  double widest = -1.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double e = weights_[k] * (hi[k] - lo[k]);
    if (e > widest) {
      widest = e;
      split = k;
    }
  }
  if (!(widest > 0.0)) return id;  // all points equal
  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin), order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) { return c[a][split] < c[b][split]; });
  const std::size_t left = build(begin, mid);
  const std::size_t right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

double CloudIndex::box_bound(std::size_t node, std::span<const double> p) const {
  const double* lo = boxes_.data() + node * 2 * dim_;
  const double* hi = lo + dim_;
  double s = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double v = k < p.size() ? p[k] : 0.0;
    if (v < lo[k])
      s += weights_[k] * (lo[k] - v);
    else if (v > hi[k])
      s += weights_[k] * (v - hi[k]);
  }
  for (std::size_t k = dim_; k < p.size(); ++k) s += std::ldexp(std::fabs(p[k]), -static_cast<int>(k + 1));
  return s;
}

double CloudIndex::nearest(std::span<const double> p, double stop_below) const {
  const Cloud& c = *cloud_;
  double best = std::numeric_limits<double>::infinity();
  if (nodes_.empty()) return best;
  bool done = false;
  auto visit = [&](auto&& self, std::size_t node) -> void {
    const Node& nd = nodes_[node];
    if (nd.left == 0) {
      for (std::size_t r = nd.begin; r < nd.end; ++r) {
        const double d = product_metric(p, c[order_[r]]);
        if (d < best) {
          best = d;
          if (best <= stop_below) {
            done = true;
            return;
          }
        }
      }
      return;
    }
    const double bl = box_bound(nd.left, p), br = box_bound(nd.right, p);
    const std::size_t first = bl <= br ? nd.left : nd.right;
    const std::size_t second = bl <= br ? nd.right : nd.left;
    const double b1 = std::min(bl, br), b2 = std::max(bl, br);
    if (b1 - kPruneSlack < best) self(self, first);
    if (done) return;
    if (b2 - kPruneSlack < best) self(self, second);
  };
  visit(visit, 0);
  return best;
}

// ---------------------------------------------------------------------------

namespace {

double directed_brute(const Cloud& a, const Cloud& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) best = std::min(best, product_metric(a[i], b[j]));
    out = std::max(out, best);
  }
  return out;
}

double directed_fast(const Cloud& a, const CloudIndex& index) {
  std::mutex m;
  std::vector<double> maxima;
  parallel_for(a.size(), [&](std::size_t begin, std::size_t end) {
    double cur = 0.0;
    for (std::size_t i = begin; i < end; ++i) cur = std::max(cur, index.nearest(a[i], cur));
    std::lock_guard lock(m);
    maxima.push_back(cur);
  }, 512);
  double out = 0.0;
  for (double v : maxima) out = std::max(out, v);
  return out;
}

}  // namespace

double directed_hausdorff(const Cloud& a, const Cloud& b, HausdorffMode mode) {
  if (mode == HausdorffMode::Auto)
    mode = (static_cast<double>(a.size()) * static_cast<double>(b.size()) < 4.0e4)
               ? HausdorffMode::Brute
               : HausdorffMode::Fast;
  if (mode == HausdorffMode::Brute) return directed_brute(a, b);
  CloudIndex index(b);
  return directed_fast(a, index);
}

double hausdorff(const Cloud& a, const Cloud& b, HausdorffMode mode) {
  return std::max(directed_hausdorff(a, b, mode), directed_hausdorff(b, a, mode));
}

double hausdorff_brute(const Cloud& a, const Cloud& b) {
  return hausdorff(a, b, HausdorffMode::Brute);
}

}  // namespace tranche
