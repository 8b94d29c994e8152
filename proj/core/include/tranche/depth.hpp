#pragma once

// Infinite-depth construction on depth_f: lap tables P^n, composites g,
// lifted parametrizations phi_n and the truncated spaces X_n.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tranche/curves.hpp"
#include "tranche/decomposition.hpp"
#include "tranche/hilbert.hpp"

namespace tranche {

inline constexpr std::size_t kIndexMax = 12;  // largest materialized i0
inline constexpr std::size_t kLevelMax = 4;   // largest materialized n

// Nonincreasing index sequence i0 >= i1 >= ... >= in >= 1.
using IndexSeq = std::vector<std::size_t>;
void validate_seq(const IndexSeq& seq);

struct AffineMap {
  double scale = 1.0;
  double shift = 0.0;
  double operator()(double v) const { return scale * v + shift; }
};

// P0_i = [y(i+1), z(i)], a lap on which depth_f increases.
Interval lap_P0(std::size_t i);
// Increasing affine bijection f(P0_i) -> [0,1].
AffineMap affine_h(std::size_t i);

// P^n_seq for seq = (i0, ..., in), by pulling P^{n-1}_{i1..in} back through h_{i0} o f.
Interval build_Pn(const IndexSeq& seq);

class LapTable {
 public:
  LapTable(std::size_t index_max, std::size_t level_max);
  std::size_t index_max() const { return index_max_; }
  std::size_t level_max() const { return level_max_; }
  const std::map<IndexSeq, Interval>& entries() const { return entries_; }
  const Interval& at(const IndexSeq& seq) const;

 private:
  std::size_t index_max_;
  std::size_t level_max_;
  std::map<IndexSeq, Interval> entries_;
};

// Shared read-only table with the default truncation.
const LapTable& lap_table();

// g_seq(t) = f_in o h_in o ... o f_i0 o h_i0 o f (t). Intermediate values are
// checked against their domains with tolerance `tol`; a violation throws
// ConstructionError. t outside P^n_seq throws DomainError.
double g_eval(const IndexSeq& seq, double t, double tol = 1e-8);

// phi_n(t) with coordinates 0..n+1. Laps with index above `index_max` are not
// materialized: t < y(index_max + 1) throws DomainError.
std::vector<double> phi_eval(std::size_t n, double t, std::size_t index_max = kIndexMax);
// Index sequence whose P-interval contains t and drives coordinate n+1 of phi_n (empty if none).
IndexSeq phi_sequence(std::size_t n, double t, std::size_t index_max = kIndexMax);

struct LiftedArc {
  std::size_t level = 0;
  std::vector<double> params;
  std::vector<double> coords;  // params.size() * (level + 2)
  double chord = 0.0;          // max distance between consecutive samples
  std::size_t dim() const { return level + 2; }
};

// phi_n sampled over [y(index_max + 1), 1]: every table interval of the innermost level
// gets at least 16 samples, the rest is refined adaptively up to `samples` points.
LiftedArc build_phi(std::size_t n, std::size_t samples = 20000);

// X_n = G u L_n u 1/2 theta(X_{n-1}) sampled; X_0 = G u L_0 u 1/2 theta(G).
// Chart: G at x0, L_n at 2 - t, the limit copy at 0 (periodic on [0,2]).
SampledSpace build_Xinf_space(std::size_t n, std::size_t samples = 20000);
Cloud build_Xinf(std::size_t n, std::size_t samples = 20000);

struct TailReport {
  double t_cut = 0.0;
  double distance = 0.0;
  std::vector<std::pair<double, double>> ladder;  // (t_cut, distance) tried
};
// d_H of phi_n over [t_min, t_cut] to 1/2 theta(X_{n-1}), with t_cut halved until two
// successive distances agree within the mesh. The tail is sampled through laps
// up to index 160 (t_min about 0.003), well below the materialized table.
TailReport omega_tail(std::size_t n, std::size_t samples = 20000);

// Path from x to (1,0,...) inside the X_n model of `cloud` (dimension n+2).
// Throws DomainError when x is not within 2 mesh of a recognizable piece.
Cloud arcwise_witness(const HPoint& x, const Cloud& cloud);

struct ConditionReport {
  std::string condition;
  bool ok = false;
  double residual = 0.0;
  std::string detail;
};

// Glueing: max |g_seq(e)| over every endpoint e of every table entry.
double glueing_residual(const LapTable& table);
// Max endpoint mismatch of (h_i0 o f)(P^n_seq) against P^{n-1}_{i1..in}.
double forward_image_residual(const LapTable& table);
// Nesting P^n_seq inside P^{n-1}_{i0..i_{n-1}}: number of violations.
std::size_t nesting_violations(const LapTable& table);
// sup_t d(phi_n(t), phi_{n+1}(t)) over the samples of phi_{n+1}.
double phi_step_distance(std::size_t n, std::size_t samples = 20000);

// Numeric checks of the testable conditions (A1, A5, A7, A8, A9, A10) at level n.
std::vector<ConditionReport> verify_conditions(std::size_t n, std::size_t samples = 20000);
std::string reports_to_json(const std::vector<ConditionReport>& reports);

}  // namespace tranche
