#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tranche/decomposition.hpp"
#include "tranche/errors.hpp"
#include "tranche/gallery.hpp"
#include "tranche/graph.hpp"

using namespace tranche;

TEST_SUITE("graph") {
  TEST_CASE("first Betti numbers") {
    CHECK(betti1(TopoGraph::circle()) == 1);
    CHECK(betti1(TopoGraph::interval()) == 0);
    CHECK(betti1(TopoGraph::figure_eight()) == 2);
    TopoGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    CHECK_THROWS_AS(betti1(g), DomainError);
  }

  TEST_CASE("valence and branch points") {
    const TopoGraph e = TopoGraph::figure_eight();
    CHECK(e.valence(0) == 4);
    CHECK(e.branch_points().size() == 1);
    CHECK(TopoGraph::interval().endpoints().size() == 2);
  }

  TEST_CASE("disjoint sets") {
    DisjointSets d(5);
    CHECK(d.unite(0, 1));
    CHECK_FALSE(d.unite(1, 0));
    d.unite(3, 4);
    CHECK(d.components() == 3);
  }
}

TEST_SUITE("decomposition") {
  TEST_CASE("interval has no tranche bases") {
    std::vector<double> c;
    for (int k = 0; k <= 1000; ++k) c.push_back(k / 1000.0);
    const Cloud seg("interval", 1e-3, 1, c);
    const FiberProfile p = fiber_profile(seg, Chart::coordinate(seg), 100);
    CHECK(p.detected.empty());
    CHECK(tranche_bound_check(seg, Chart::coordinate(seg), TopoGraph::interval(), 100).holds);
  }

  TEST_CASE("warsaw circle has one tranche base") {
    const GalleryModel w = warsaw_model(20000);
    const FiberProfile p = fiber_profile(w.space.cloud, w.space.chart, 500);
    REQUIRE(p.detected.size() == 1);
    const TrancheBoundReport r = tranche_bound_check(w.space, 500);
    CHECK(r.tranches == 1);
    CHECK(r.betti == 1);
    CHECK(r.holds);
    CHECK(tranche_collapse_spread(w.space.cloud, w.space.chart, p) <= p.step);
  }

  TEST_CASE("grid finer than the mesh is refused") {
    const Cloud c("c", 0.1, 1, {0.0, 0.5, 1.0});
    CHECK_THROWS_AS(fiber_profile(c, Chart::coordinate(c), 1000), ResolutionError);
  }

  TEST_CASE("arc search equals enumeration") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 40 + trial;
      const Cloud cloud = oracle::random_cloud(rng, n, 2);
      const Cloud y0 = oracle::random_cloud(rng, 5 + trial % 4, 2);
      Track t;
      for (std::size_t i = 0; i < n; ++i) {
        t.indices.push_back((i * 7) % n);
        t.params.push_back(static_cast<double>(i));
      }
      for (std::size_t stride : {1u, 3u}) {
        ArcFamily fam = parameter_arcs(t, stride);
        fam.max_span = trial % 2 ? 5 : 0;
        const auto r = approximation_test(cloud, y0, fam, 0.1);
        CHECK(r.min == oracle::best_arc(cloud, y0, fam.sequence, fam.boundaries, fam.max_span));
        CHECK(r.success == (r.min < 0.1));
        CHECK(r.a <= r.b);
      }
    }
  }

  TEST_CASE("warsaw limit segment is approximable and the whole tranche too") {
    const GalleryModel w = warsaw_model(20000);
    for (const auto& y : w.y0) {
      const auto r = approximate(w, y.cloud, 3.0 * w.space.cloud.mesh());
      CHECK_MESSAGE(r.success, y.label << " min " << r.min);
    }
  }

  TEST_CASE("route star fails on opposite edges") {
    const GalleryModel m = star4_route_model(8000);
    const auto r = approximate(m, star_edges({1, 3}), 3.0 * m.space.cloud.mesh());
    CHECK_FALSE(r.success);
    CHECK(r.min > 0.05);
  }

  TEST_CASE("route star approximates a single edge") {
    const GalleryModel m = star4_route_model(8000);
    const auto r = approximate(m, star_edges({2}), 3.0 * m.space.cloud.mesh());
    CHECK(r.success);
  }

  TEST_CASE("json export") {
    const GalleryModel w = warsaw_model(2000);
    const FiberProfile p = fiber_profile(w.space.cloud, w.space.chart, 100);
    CHECK(profile_to_json(p).find("tranches") != std::string::npos);
  }
}
