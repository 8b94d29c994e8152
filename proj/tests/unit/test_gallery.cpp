#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tranche/gallery.hpp"

using namespace tranche;

namespace {

double near(const Cloud& c, std::vector<double> p) {
  p.resize(c.dim(), 0.0);
  return nearest_distance(p, c);
}

}  // namespace

TEST_SUITE("gallery") {
  TEST_CASE("warsaw limit segment") {
    const GalleryModel w = warsaw_model(20000);
    const Cloud& c = w.space.cloud;
    for (int k = 0; k <= 10; ++k) CHECK(near(c, {0.0, 0.05 * k}) <= c.mesh());
    CHECK(betti1(w.space.quotient) == 1);
    CHECK(w.space.declared_tranches == 1);
    CHECK(hausdorff(w.space.cloud, warsaw_circle(20000)) <= c.mesh());
  }

  TEST_CASE("star tips and centre") {
    const Cloud s = star_edges({1, 2, 3, 4});
    CHECK(near(s, {0.9, 0.5}) < 1e-12);
    CHECK(near(s, {0.5, 0.9}) < 1e-12);
    CHECK(near(s, {0.5, 0.5}) < 1e-12);
    const Cloud c = center_star({0.5, 0.5, 0.5, 0.5});
    CHECK(near(c, {0.7, 0.5}) < 1e-12);
    CHECK(near(c, {0.9, 0.5}) > 0.05);
  }

  TEST_CASE("route star tail approaches the star") {
    const GalleryModel m = star4_route_model(8000);
    const Track& t = m.space.arcs.front();
    std::vector<double> tail;
    const std::size_t from = t.indices.size() * 3 / 4;
    for (std::size_t k = from; k < t.indices.size(); ++k) {
      auto p = m.space.cloud[t.indices[k]];
      tail.insert(tail.end(), p.begin(), p.end());
    }
    const Cloud tc("tail", 0.0, m.space.cloud.dim(), tail);
    CHECK(hausdorff(tc, star_edges({1, 2, 3, 4}).with_dim(tc.dim())) <= 0.05);
  }

  TEST_CASE("good star approximates every net element") {
    const GalleryModel m = star4_good_model(60000);
    CHECK(m.y0.size() > 100);
    std::size_t failures = 0;
    for (std::size_t k = 0; k < m.y0.size(); k += 9) {
      const auto r = approximate(m, m.y0[k].cloud, 3.0 * m.space.cloud.mesh());
      if (!r.success) ++failures;
    }
    CHECK(failures == 0);
  }

  TEST_CASE("spiral: full circle succeeds, quarter circle fails") {
    const GalleryModel m = circle_spiral_model(20000);
    REQUIRE(m.y0.size() >= 2);
    const auto quarter = approximate(m, m.y0[0].cloud, 3.0 * m.space.cloud.mesh());
    const auto full = approximate(m, m.y0[1].cloud, 3.0 * m.space.cloud.mesh());
    CHECK_FALSE(quarter.success);
    CHECK(full.success);
  }

  TEST_CASE("comb pair") {
    const CombPair c = comb_pair(8000);
    CHECK(c.discrepancies.size() == 4);
    const auto p = comb_normalize(-1.0, 1.0);
    CHECK(p[0] == 0.0);
    CHECK(p[1] == doctest::Approx(2.5 / 3.0));
    CHECK(near(c.x1, {p[0], p[1]}) < 1e-9);
    const double w1 = comb_failure_witness(c, 16.0);
    const double w2 = comb_failure_witness(c, 32.0);
    CHECK(w1 > 0.05);
    CHECK(std::fabs(w1 - w2) < 0.1 * w1);
    CHECK(comb_k_tail_distance(c, 8.0) <= 1.0 / 9.0 + c.space.cloud.mesh());
    CHECK(c.space.declared_tranches == 1);
    CHECK(betti1(c.space.quotient) >= 1);
  }

  TEST_CASE("metadata json") {
    const GalleryModel w = warsaw_model(2000);
    const std::string j = model_metadata_json(w.space);
    CHECK(j.find("\"tranches\"") != std::string::npos);
  }
}
