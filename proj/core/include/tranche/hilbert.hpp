#pragma once

// Truncated Hilbert cube geometry: points, the weighted product metric,
// shift maps and Hausdorff distance between finite samples.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace tranche {

inline constexpr double kCoordTolerance = 1e-12;
inline constexpr std::size_t kDefaultDim = 12;

// A point of [0,1]^N with finitely many stored coordinates; the rest are zero.
class HPoint {
 public:
  HPoint() = default;
  explicit HPoint(std::vector<double> coords);
  HPoint(std::initializer_list<double> coords);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t k) const { return k < coords_.size() ? coords_[k] : 0.0; }
  std::span<const double> coords() const { return coords_; }

  // Same point stored with exactly `d` coordinates (pads or truncates).
  HPoint resized(std::size_t d) const;

 private:
  std::vector<double> coords_;
};

// Weighted product metric: coordinate k carries weight 2^-(k+1).
double product_metric(std::span<const double> x, std::span<const double> y);
double product_metric(const HPoint& x, const HPoint& y);

HPoint right_shift(const HPoint& x);  // theta: prepend 0
HPoint half_shift(const HPoint& x);   // 1/2 theta: prepend 0, halve coordinates
HPoint left_shift(const HPoint& x);   // sigma: drop the first coordinate

// Immutable finite sample of a continuum. Points are stored densely with a
// common dimension; shorter inputs are zero padded.
class Cloud {
 public:
  Cloud(std::string label, double mesh, std::size_t dim, std::vector<double> coords);
  static Cloud from_points(std::string label, double mesh, const std::vector<HPoint>& pts,
                           std::size_t dim = 0);

  const std::string& label() const { return label_; }
  double mesh() const { return mesh_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return coords_.size() / dim_; }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  HPoint point(std::size_t i) const;
  const std::vector<double>& data() const { return coords_; }

  Cloud relabeled(std::string label) const;
  Cloud with_mesh(double mesh) const;
  Cloud with_dim(std::size_t dim) const;

 private:
  std::string label_;
  double mesh_;
  std::size_t dim_;
  std::vector<double> coords_;
};

Cloud right_shift(const Cloud& c);
Cloud half_shift(const Cloud& c);
// Pointwise sigma; cardinality is preserved (duplicates are kept).
Cloud left_shift(const Cloud& c);
// Union of clouds; mesh is the maximum of the inputs unless given.
Cloud unite(std::string label, const std::vector<const Cloud*>& parts, double mesh = -1.0);
// Sorted copy with exact duplicates removed.
Cloud deduplicate(const Cloud& c);

double diameter(const Cloud& c);
double diameter(std::span<const double> coords, std::size_t dim);
// Exact below `exact_limit` points, otherwise a farthest-point sweep lower bound.
double diameter_estimate(std::span<const double> coords, std::size_t dim,
                         std::size_t exact_limit = 3000);

// Distance from a point to the nearest sample of `c`.
double nearest_distance(std::span<const double> p, const Cloud& c);

enum class HausdorffMode { Auto, Brute, Fast };

// Directed distance sup_{a in A} dist(a, B).
double directed_hausdorff(const Cloud& a, const Cloud& b, HausdorffMode mode = HausdorffMode::Auto);
double hausdorff(const Cloud& a, const Cloud& b, HausdorffMode mode = HausdorffMode::Auto);
double hausdorff_brute(const Cloud& a, const Cloud& b);

// k-d tree for repeated exact nearest-sample queries under the product metric.
class CloudIndex {
 public:
  explicit CloudIndex(const Cloud& c);
  // Exact nearest distance; stops early once the answer is known to be <= stop_below.
  double nearest(std::span<const double> p, double stop_below = -1.0) const;
  const Cloud& cloud() const { return *cloud_; }

 private:
  struct Node {
    std::size_t begin, end;
    std::size_t left, right;  // left == 0: leaf
  };
  static constexpr std::size_t kLeafSize = 16;

  std::size_t build(std::size_t begin, std::size_t end);
  double box_bound(std::size_t node, std::span<const double> p) const;

  const Cloud* cloud_;
  std::size_t dim_;
  std::vector<double> weights_;
  std::vector<Node> nodes_;
  std::vector<double> boxes_;  // per node: lo[dim], hi[dim]
  std::vector<std::size_t> order_;
};

// JSON {label, mesh, dim, points}; doubles round-trip exactly.
std::string cloud_to_json(const Cloud& c, const std::string& meta_json = "");
Cloud cloud_from_json(const std::string& text);
void save_cloud(const Cloud& c, const std::string& path, const std::string& meta_json = "");
Cloud load_cloud(const std::string& path);
// CSV of the chosen coordinates, one point per line, with a header.
std::string cloud_to_csv(const Cloud& c, const std::vector<std::size_t>& coords);

}  // namespace tranche
