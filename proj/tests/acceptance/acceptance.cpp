// Acceptance run: one PASS/FAIL line per criterion, exit 1 on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tranche/decomposition.hpp"
#include "tranche/depth.hpp"
#include "tranche/dynamics.hpp"
#include "tranche/gallery.hpp"
#include "tranche/graph.hpp"
#include "tranche/hilbert.hpp"
#include "tranche/mahavier.hpp"
#include "tranche/symbolic.hpp"

using namespace tranche;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

Outcome hausdorff_equivalence() {
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<std::size_t> size(1, 2000), dim(1, 12);
  std::size_t mismatches = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < 200; ++k) {
    const std::size_t d = dim(rng);
    const Cloud a = oracle::random_cloud(rng, size(rng), d);
    const Cloud b = oracle::random_cloud(rng, size(rng), d);
    if (hausdorff(a, b, HausdorffMode::Fast) != oracle::hausdorff(a, b)) ++mismatches;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {mismatches == 0 && secs < 10.0,
          "200 pairs, mismatches " + std::to_string(mismatches) + ", " + fmt(secs) + " s"};
}

Outcome metric_identities() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_scale = 0.0, worst_inverse = 0.0;
  for (int k = 0; k < 10000; ++k) {
    std::vector<double> x(kDefaultDim), y(kDefaultDim);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    const HPoint px(x), py(y);
    const double lhs = product_metric(right_shift(px), right_shift(py));
    worst_scale = std::max(worst_scale, std::fabs(lhs - 0.5 * oracle::metric(x, y)));
    const HPoint back = left_shift(right_shift(px));
    worst_inverse = std::max(worst_inverse,
                             oracle::metric(std::vector<double>(back.coords().begin(), back.coords().end()), x));
  }
  return {worst_scale < 1e-12 && worst_inverse < 1e-12,
          "theta scaling residual " + fmt(worst_scale) + ", sigma theta residual " + fmt(worst_inverse)};
}

Outcome orbit_convergence() {
  bool ok = true;
  std::ostringstream os;
  Cloud prev = build_A_n(0, 20000);
  for (std::size_t n = 0; n <= 8; ++n) {
    const Cloud next = build_A_n(n + 1, 20000);
    const double d = hausdorff(prev, next);
    const double bound = std::ldexp(1.0, -static_cast<int>(n + 2)) + std::max(prev.mesh(), next.mesh());
    if (!(d <= bound) || !(d <= std::ldexp(1.0, -static_cast<int>(n + 2)) + 1e-3)) ok = false;
    os << (n ? ", " : "") << n << ":" << fmt(d) << "/" << fmt(bound);
    prev = next;
  }
  return {ok, "d_H(A_n,A_n+1)/bound " + os.str()};
}

Outcome tranche_gap_law() {
  bool ok = true;
  std::ostringstream os;
  for (std::size_t level = 1; level <= 5; ++level) {
    const GapReport g = longest_tranche_gap(level);
    Rational expect(1, 1);
    for (std::size_t k = 1; k < level; ++k) expect = expect * Rational(1, 4);
    if (!(g.longest == expect)) ok = false;
    os << "L" << level << " gap " << g.longest.to_string() << "; ";
  }
  std::size_t missed = 0, total = 0;
  for (std::size_t level = 1; level <= 5; ++level) {
    const Cloud x = build_X_n(level, 4000);
    ProfileOptions opt;
    const FiberProfile p = fiber_profile(x, Chart::coordinate(x, 0), 1000, opt);
    std::vector<char> flagged(p.grid.size(), 0);
    for (std::size_t c : p.flagged) flagged[c] = 1;
    for (double b : tranche_bases(level)) {
      const auto c = static_cast<long>(std::min(b / p.step, static_cast<double>(p.grid.size() - 1)));
      bool hit = false;
      for (long k = c - 1; k <= c + 1; ++k)
        if (k >= 0 && k < static_cast<long>(flagged.size()) && flagged[static_cast<std::size_t>(k)] &&
            std::fabs(p.grid[static_cast<std::size_t>(k)] - b) <= 1.5 * p.step)
          hit = true;
      if (!hit) ++missed;
    }
    total += tranche_bases(level).size();
    os << "L" << level << " flagged " << p.flagged.size() << "/" << p.grid.size() << "; ";
  }
  if (missed) ok = false;
  os << "profile misses " << missed << " of " << total << " bases";
  return {ok, os.str()};
}

Outcome fiber_self_similarity() {
  bool ok = true;
  std::ostringstream os;
  for (std::size_t D : {6, 8, 10}) {
    const Cloud x = build_Xhat(D, 4000);
    const Cloud lower = build_Xhat(D - 1, 4000);
    const Cloud shifted = left_shift(fiber(x, 0.0, 0.0));
    const double d = hausdorff(shifted.with_dim(lower.dim()), lower);
    const double bound = 2.0 * std::max(x.mesh(), lower.mesh());
    if (!(d <= bound)) ok = false;
    os << "D" << D << " " << fmt(d) << "/" << fmt(bound) << "; ";
  }
  return {ok, os.str()};
}

Outcome infinite_depth_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream os;
  bool ok = true;
  const LapTable& table = lap_table();
  const double glue = glueing_residual(table), fwd = forward_image_residual(table);
  ok = ok && glue <= 1e-9 && fwd <= 1e-9;
  os << "(a) " << fmt(glue) << " (b) " << fmt(fwd);
  os << " (c)";
  for (std::size_t n = 0; n <= 4; ++n) {
    const double d = phi_step_distance(n);
    const double bound = std::ldexp(1.0, -static_cast<int>(n + 2));
    ok = ok && d <= bound;
    os << " " << fmt(d) << "/" << fmt(bound);
  }
  os << " (d)";
  for (std::size_t n = 1; n <= 3; ++n) {
    const TailReport t = omega_tail(n);
    const double mesh = build_Xinf_space(n).cloud.mesh();
    ok = ok && t.distance <= 5.0 * mesh;
    os << " " << fmt(t.distance) << "/" << fmt(5.0 * mesh);
  }
  const SampledSpace xs = build_Xinf_space(2);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, xs.cloud.size() - 1);
  double worst = 0.0;
  std::size_t failures = 0;
  for (int k = 0; k < 100; ++k) {
    try {
      const Cloud path = arcwise_witness(xs.cloud.point(pick(rng)), xs.cloud);
      worst = std::max(worst, directed_hausdorff(path, xs.cloud));
    } catch (const std::exception&) {
      ++failures;
    }
  }
  ok = ok && failures == 0 && worst <= 2.0 * xs.cloud.mesh();
  os << " (e) " << fmt(worst) << "/" << fmt(2.0 * xs.cloud.mesh()) << " failures " << failures;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 120.0;
  os << ", " << fmt(secs) << " s";
  return {ok, os.str()};
}

double best_over(const GalleryModel& m) {
  double best = INFINITY;
  for (const auto& y : m.y0) best = std::min(best, approximate(m, y.cloud, 0.0).min);
  return best;
}

Outcome approximation_dichotomy() {
  std::ostringstream os;
  bool ok = true;
  const GalleryModel w = warsaw_model();
  double worst = 0.0;
  for (const auto& y : w.y0) {
    const auto r = approximate(w, y.cloud, 3.0 * w.space.cloud.mesh());
    worst = std::max(worst, r.min / w.space.cloud.mesh());
    ok = ok && r.min < 3.0 * w.space.cloud.mesh();
  }
  os << "warsaw worst min/mesh " << fmt(worst);
  const GalleryModel g = star4_good_model();
  worst = 0.0;
  for (const auto& y : g.y0) {
    const auto r = approximate(g, y.cloud, 3.0 * g.space.cloud.mesh());
    worst = std::max(worst, r.min / g.space.cloud.mesh());
    ok = ok && r.min < 3.0 * g.space.cloud.mesh();
  }
  os << "; star4_good worst min/mesh " << fmt(worst);

  auto failing = [&](const char* name, const GalleryModel& a, const GalleryModel& b) {
    const double m1 = approximate(a, a.y0.front().cloud, 0.0).min;
    const double m2 = approximate(b, b.y0.front().cloud, 0.0).min;
    const double drift = std::fabs(m2 - m1) / m1;
    const bool fails = m1 >= 3.0 * a.space.cloud.mesh() && m2 >= 3.0 * b.space.cloud.mesh();
    ok = ok && fails && drift < 0.10;
    os << "; " << name << " min " << fmt(m1) << " -> " << fmt(m2) << " drift " << fmt(drift);
  };
  failing("star4_route", star4_route_model(20000), star4_route_model(40000));
  failing("circle_spiral", circle_spiral_model(20000), circle_spiral_model(40000));
  return {ok, os.str()};
}

QuasiGraphSpec spec(const std::string& name) {
  return QuasiGraphSpec::load(std::string(TRANCHE_DATA_DIR) + "/specs/" + name + ".json");
}

bool has_condition(const std::vector<Violation>& v, const std::string& c) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.condition == c; });
}

Outcome symbolic_suite() {
  std::ostringstream os;
  bool ok = true;
  struct Good {
    const char* name;
    std::size_t depth;
  };
  for (const Good& g : {Good{"warsaw", 1}, Good{"two_chain", 2}, Good{"comb", 2}}) {
    const QuasiGraphSpec s = spec(g.name);
    const bool valid = validate(s).empty();
    const std::size_t depth = order_and_depth(s).depth;
    const ReductionTrace tr = reduce(s);
    bool bound = true;
    for (const auto& st : tr.stages) bound = bound && tranche_count(st) <= betti1(quotient(st));
    const QuasiGraphSpec back = replay_reverse(s, tr);
    const bool replay = validate(back).empty() && back.arcs.size() == s.arcs.size();
    ok = ok && valid && depth == g.depth && bound && replay;
    os << g.name << (valid ? " valid" : " INVALID") << " depth " << depth << (bound ? "" : " b1-bound-broken")
       << (replay ? "" : " replay-failed") << "; ";
  }
  struct Bad {
    const char* name;
    std::vector<const char*> expect;
  };
  const std::vector<Bad> bad{{"bad_partial_overlap", {"iv"}},
                             {"bad_attach_to_arc", {"ii", "iii"}},
                             {"bad_later_limit", {"iii"}},
                             {"bad_empty_limit", {"oscillatory"}},
                             {"bad_disconnected_limit", {"connected"}}};
  for (const Bad& b : bad) {
    const auto v = validate(spec(b.name));
    bool hit = !v.empty();
    for (const char* c : b.expect) hit = hit && has_condition(v, c);
    ok = ok && hit;
    os << b.name << (hit ? " rejected" : " NOT-REJECTED") << "; ";
  }
  return {ok, os.str()};
}

Outcome dynamics_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const EntropyReport e = entropy_lower_bound(8, 0.4);
  const Cloud x = build_Xhat(8, 4000);
  const ExactnessReport r = exactness_witness(fiber(x, 0.0, 0.0), x, 4);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = e.bound >= std::log(2.0) - 0.05 && r.found && r.n == 1 && secs < 30.0;
  return {ok, "entropy " + fmt(e.bound) + " (" + std::to_string(e.separated) + " separated), exact n " +
                  (r.found ? std::to_string(r.n) : "none") + ", " + fmt(secs) + " s"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string only = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"hausdorff-oracle-equivalence", hausdorff_equivalence},
      {"metric-identities", metric_identities},
      {"orbit-space-convergence", orbit_convergence},
      {"tranche-gap-law", tranche_gap_law},
      {"fiber-self-similarity", fiber_self_similarity},
      {"infinite-depth-suite", infinite_depth_suite},
      {"approximation-dichotomy", approximation_dichotomy},
      {"symbolic-suite", symbolic_suite},
      {"dynamics", dynamics_suite},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && only != name) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed ? 1 : 0;
}
